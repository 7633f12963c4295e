//! HF literal syntax: `∅` or `{}`, `{t1,...,tn}`, numerals `#n`, ordered pairs `<a,b>`.
//!
//! Printing uses `#n` for von Neumann numerals (including `#0` for the empty set) and braces
//! for everything else, with no whitespace. Parsing is whitespace-insensitive.

use std::fmt;
use std::str::FromStr;

use super::HfSet;
use crate::text::{Cursor, ParseError};

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_natural() {
            return write!(f, "#{n}");
        }
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for HfSet {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(s);
        let set = parse_term(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.error("trailing input after set literal"));
        }
        Ok(set)
    }
}

/// Parses one literal at the start of `s`, returning it and the number of bytes consumed.
pub fn parse_hf_prefix(s: &str) -> Result<(HfSet, usize), ParseError> {
    let mut cur = Cursor::new(s);
    let set = parse_term(&mut cur)?;
    Ok((set, cur.pos))
}

/// Numerals beyond this are refused; they are only ever used for small indices.
const MAX_NUMERAL_LITERAL: u64 = 1 << 16;

pub(crate) fn parse_term(cur: &mut Cursor<'_>) -> Result<HfSet, ParseError> {
    if cur.eat("∅") {
        return Ok(HfSet::empty());
    }
    if cur.eat("#") {
        let start = cur.pos;
        let n = cur.number()?;
        if n > MAX_NUMERAL_LITERAL {
            return Err(crate::text::ParseError::at(cur.src, start, "numeral too large"));
        }
        return Ok(HfSet::numeral(n as usize));
    }
    if cur.eat("<") {
        let a = parse_term(cur)?;
        cur.expect(",")?;
        let b = parse_term(cur)?;
        cur.expect(">")?;
        return Ok(HfSet::ordered_pair(&a, &b));
    }
    if cur.eat("{") {
        let mut elems = Vec::new();
        if cur.eat("}") {
            return Ok(HfSet::empty());
        }
        loop {
            elems.push(parse_term(cur)?);
            if cur.eat("}") {
                break;
            }
            cur.expect(",")?;
        }
        return Ok(HfSet::make_set(elems));
    }
    Err(cur.error("expected a set literal (`∅`, `{…}`, `#n` or `<a,b>`)"))
}
