//! The `.beth` text format:
//!
//! ```text
//! # comment
//! state s0 atoms= fallible=0 succ=s1,s0
//! state s1 atoms=p0 fallible=0 succ=s1
//! root s0
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{BethState, RegularBethModel};
use crate::text::ParseError;

impl fmt::Display for RegularBethModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.states {
            let atoms: Vec<String> = s.atoms.iter().map(|a| format!("p{a}")).collect();
            let succ: Vec<&str> = s.successors.iter().map(|&j| self.states[j].name.as_str()).collect();
            writeln!(
                f,
                "state {} atoms={} fallible={} succ={}",
                s.name,
                atoms.join(","),
                u8::from(s.fallible),
                succ.join(",")
            )?;
        }
        writeln!(f, "root {}", self.states[self.root].name)
    }
}

fn list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

impl FromStr for RegularBethModel {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut states = Vec::new();
        let mut succ_names: Vec<(usize, Vec<String>)> = Vec::new();
        let mut root: Option<(usize, String)> = None;
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("root") => {
                    let name = words.next().ok_or_else(|| ParseError::on_line(line_no, "root needs a state name"))?;
                    if root.is_some() {
                        return Err(ParseError::on_line(line_no, "root given twice"));
                    }
                    root = Some((line_no, name.to_string()));
                }
                Some("state") => {
                    let name = words
                        .next()
                        .ok_or_else(|| ParseError::on_line(line_no, "state needs a name"))?
                        .to_string();
                    if states.iter().any(|s: &BethState| s.name == name) {
                        return Err(ParseError::on_line(line_no, format!("state `{name}` defined twice")));
                    }
                    let (mut atoms, mut fallible, mut succ) = (None, None, None);
                    for w in words {
                        let (key, value) = w
                            .split_once('=')
                            .ok_or_else(|| ParseError::on_line(line_no, format!("expected key=value, found `{w}`")))?;
                        match key {
                            "atoms" => {
                                let mut set = BTreeSet::new();
                                for a in list(value) {
                                    let i = a.strip_prefix('p').and_then(|d| d.parse::<u32>().ok()).ok_or_else(
                                        || ParseError::on_line(line_no, format!("bad atom `{a}`, expected p<n>")),
                                    )?;
                                    set.insert(i);
                                }
                                atoms = Some(set);
                            }
                            "fallible" => {
                                fallible = Some(match value {
                                    "0" => false,
                                    "1" => true,
                                    _ => return Err(ParseError::on_line(line_no, "fallible must be 0 or 1")),
                                })
                            }
                            "succ" => succ = Some(list(value).map(str::to_string).collect::<Vec<_>>()),
                            _ => return Err(ParseError::on_line(line_no, format!("unknown key `{key}`"))),
                        }
                    }
                    let missing = |k: &str| ParseError::on_line(line_no, format!("state `{name}` is missing {k}="));
                    let atoms = atoms.ok_or_else(|| missing("atoms"))?;
                    let fallible = fallible.ok_or_else(|| missing("fallible"))?;
                    let succ = succ.ok_or_else(|| missing("succ"))?;
                    succ_names.push((line_no, succ));
                    states.push(BethState {
                        name,
                        atoms,
                        fallible,
                        successors: Vec::new(),
                    });
                }
                Some(other) => {
                    return Err(ParseError::on_line(line_no, format!("expected `state` or `root`, found `{other}`")))
                }
                None => unreachable!(),
            }
        }
        let index = |line: usize, name: &str, states: &[BethState]| {
            states
                .iter()
                .position(|s| s.name == name)
                .ok_or_else(|| ParseError::on_line(line, format!("no state named `{name}`")))
        };
        for (i, (line, names)) in succ_names.iter().enumerate() {
            let succ = names
                .iter()
                .map(|s| index(*line, s, &states))
                .collect::<Result<Vec<_>, _>>()?;
            states[i].successors = succ;
        }
        let (line, name) = root.ok_or_else(|| ParseError::on_line(text.lines().count().max(1), "missing `root` line"))?;
        let root = index(line, &name, &states)?;
        Ok(RegularBethModel { states, root })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = RegularBethModel::excluded_middle_model();
        let text = m.to_string();
        assert_eq!(
            text,
            "state s0 atoms= fallible=0 succ=s1,s0\nstate s1 atoms=p0 fallible=0 succ=s1\nroot s0\n"
        );
        assert_eq!(text.parse::<RegularBethModel>().unwrap(), m);
    }

    #[test]
    fn errors_have_lines() {
        let e = "state a atoms= fallible=0 succ=b\nroot a".parse::<RegularBethModel>().unwrap_err();
        assert_eq!(e.line, 1);
        let e = "state a atoms= fallible=2 succ=a\nroot a".parse::<RegularBethModel>().unwrap_err();
        assert_eq!(e.line, 1);
        let e = "state a atoms= fallible=0 succ=a\n\nbogus".parse::<RegularBethModel>().unwrap_err();
        assert_eq!(e.line, 3);
        assert!("state a atoms= fallible=0 succ=a".parse::<RegularBethModel>().is_err());
    }
}
