use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::hfset::{ack_compare, parse_hf_prefix, HfSet};
use crate::text::ParseError;

/// Finite partial map queried by `ORACLE`.
///
/// Text form: one `<hf> => <hf>` per line; blank lines and lines starting with `//` are skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleTable {
    map: HashMap<HfSet, HfSet>,
}

impl OracleTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the previous value at `x`, if any.
    pub fn insert(&mut self, x: HfSet, y: HfSet) -> Option<HfSet> {
        self.map.insert(x, y)
    }

    pub fn get(&self, x: &HfSet) -> Option<&HfSet> {
        self.map.get(x)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Entries in Ackermann order of their arguments.
    pub fn entries(&self) -> Vec<(&HfSet, &HfSet)> {
        let mut v: Vec<_> = self.map.iter().collect();
        v.sort_by(|a, b| ack_compare(a.0, b.0));
        v
    }

    /// True if every entry of `self` appears unchanged in `other`.
    pub fn is_subtable_of(&self, other: &OracleTable) -> bool {
        self.map.iter().all(|(k, v)| other.get(k) == Some(v))
    }
}

impl FromIterator<(HfSet, HfSet)> for OracleTable {
    fn from_iter<I: IntoIterator<Item = (HfSet, HfSet)>>(iter: I) -> Self {
        OracleTable {
            map: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for OracleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.entries() {
            writeln!(f, "{k} => {v}")?;
        }
        Ok(())
    }
}

impl FromStr for OracleTable {
    type Err = ParseError;

    fn from_str(src: &str) -> Result<Self, ParseError> {
        let mut table = OracleTable::new();
        let mut offset = 0;
        for line in src.split('\n') {
            let base = offset;
            offset += line.len() + 1;
            let trimmed = line.trim_start();
            if trimmed.trim().is_empty() || trimmed.starts_with("//") {
                continue;
            }
            let lead = base + line.len() - trimmed.len();
            let (x, used) = parse_hf_prefix(trimmed).map_err(|e| shift(src, lead, e))?;
            let rest = &trimmed[used..];
            let arrow = rest.trim_start();
            let at = lead + used + rest.len() - arrow.len();
            let Some(after) = arrow.strip_prefix("=>") else {
                return Err(ParseError::at(src, at, "expected `=>`"));
            };
            let value_src = after.trim_start();
            let vpos = at + 2 + after.len() - value_src.len();
            let (y, used) = parse_hf_prefix(value_src).map_err(|e| shift(src, vpos, e))?;
            if !value_src[used..].trim().is_empty() {
                return Err(ParseError::at(src, vpos + used, "trailing text after value"));
            }
            if let Some(old) = table.get(&x) {
                if *old != y {
                    return Err(ParseError::at(src, lead, format!("conflicting entries for {x}")));
                }
            }
            table.insert(x, y);
        }
        Ok(table)
    }
}

/// Re-anchors an error found in a substring starting at byte `base` of `src`.
fn shift(src: &str, base: usize, e: ParseError) -> ParseError {
    // Errors from a single-line substring only carry a column.
    let col_bytes: usize = src[base..]
        .chars()
        .take(e.column.saturating_sub(1))
        .map(char::len_utf8)
        .sum();
    ParseError::at(src, base + col_bytes, e.message)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t: OracleTable = "// squares\n#0 => #1\n  {#1} => <#0,#1>\n".parse().unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.get(&HfSet::empty()), Some(&HfSet::numeral(1)));
        let again: OracleTable = t.to_string().parse().unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn errors() {
        let e = "#0 => #1\n#1 -> #2".parse::<OracleTable>().unwrap_err();
        assert_eq!(e.line, 2);
        assert!("#0 => #1\n#0 => #2".parse::<OracleTable>().is_err());
        let e = "#0 => {#1".parse::<OracleTable>().unwrap_err();
        assert_eq!(e.line, 1);
    }
}
