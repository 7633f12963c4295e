//! Recorded computations, their text form, and the checker for successful computations.
//!
//! ```text
//! @inputs 2
//! 1 #1 #1 #0
//! 2 #1 #1 #0
//! @omega prefix=1 period=3
//! 2 #1 #0 #0
//! ```
//! Each configuration line is the active line followed by the registers. An `@omega` marker
//! precedes a limit configuration; the segment before it holds `prefix + period` entries, the
//! last `period` of which form the cycle.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{step, Configuration, OracleTable, RunLimits, Step};
use crate::asm::Program;
use crate::hfset::{parse_hf_prefix, HfSet};
use crate::text::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitMarker {
    /// Position of the limit configuration in the trace.
    pub index: usize,
    pub prefix: usize,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub input_count: usize,
    pub configurations: Vec<Configuration>,
    /// Ascending by `index`.
    pub limits: Vec<LimitMarker>,
}

impl Trace {
    pub fn new(input_count: usize) -> Self {
        Trace {
            input_count,
            ..Default::default()
        }
    }

    pub fn last(&self) -> Option<&Configuration> {
        self.configurations.last()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "@inputs {}", self.input_count)?;
        let mut markers = self.limits.iter().peekable();
        for (i, c) in self.configurations.iter().enumerate() {
            if let Some(m) = markers.next_if(|m| m.index == i) {
                writeln!(f, "@omega prefix={} period={}", m.prefix, m.period)?;
            }
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Trace {
    type Err = ParseError;

    fn from_str(src: &str) -> Result<Self, ParseError> {
        let mut trace = Trace::default();
        let mut saw_header = false;
        let mut pending: Option<(usize, usize)> = None;
        for (n, line) in src.lines().enumerate() {
            let err = |msg: &str| ParseError {
                line: n + 1,
                column: 1,
                message: msg.to_string(),
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("@inputs") {
                if saw_header {
                    return Err(err("duplicate @inputs header"));
                }
                trace.input_count = rest.trim().parse().map_err(|_| err("bad input count"))?;
                saw_header = true;
            } else if let Some(rest) = line.strip_prefix("@omega") {
                let mut prefix = None;
                let mut period = None;
                for field in rest.split_whitespace() {
                    let (key, value) = field.split_once('=').ok_or_else(|| err("expected key=value"))?;
                    let v: usize = value.parse().map_err(|_| err("bad number in @omega"))?;
                    match key {
                        "prefix" => prefix = Some(v),
                        "period" => period = Some(v),
                        _ => return Err(err("unknown @omega field")),
                    }
                }
                match (prefix, period) {
                    (Some(a), Some(b)) if pending.is_none() => pending = Some((a, b)),
                    _ => return Err(err("@omega needs prefix and period and must precede a configuration")),
                }
            } else {
                if !saw_header {
                    return Err(err("missing @inputs header"));
                }
                let (head, mut rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
                let l: usize = head.parse().map_err(|_| err("expected a line number"))?;
                let mut registers = Vec::new();
                loop {
                    rest = rest.trim_start();
                    if rest.is_empty() {
                        break;
                    }
                    let (x, used) = parse_hf_prefix(rest).map_err(|e| ParseError {
                        line: n + 1,
                        ..e
                    })?;
                    registers.push(x);
                    rest = &rest[used..];
                }
                if let Some((prefix, period)) = pending.take() {
                    trace.limits.push(LimitMarker {
                        index: trace.configurations.len(),
                        prefix,
                        period,
                    });
                }
                trace.configurations.push(Configuration { line: l, registers });
            }
        }
        if pending.is_some() {
            return Err(ParseError {
                line: src.lines().count(),
                column: 1,
                message: "@omega marker at end of trace".into(),
            });
        }
        Ok(trace)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceViolation {
    #[error("trace is empty")]
    Empty,
    #[error("initial configuration is not at line 1 with inputs followed by empty registers")]
    BadInitial,
    #[error("configuration {0} has the wrong number of registers")]
    RegisterCount(usize),
    #[error("configuration {0} is not the successor of its predecessor")]
    BadStep(usize),
    #[error("limit marker at {0} does not match the segment before it")]
    BadMarker(usize),
    #[error("cycle before limit {0} does not close")]
    OpenCycle(usize),
    #[error("configuration {0} is not the limit of the cycle before it")]
    BadLimit(usize),
    #[error("configuration {0} queries the oracle outside its domain")]
    OracleUndefined(usize),
    #[error("final configuration still has a successor")]
    NotFinal,
}

/// True iff `t` is a successful computation of `p`.
pub fn check_trace(p: &Program, t: &Trace, o: &OracleTable) -> bool {
    check_trace_detailed(p, t, o, &checker_limits()).is_ok()
}

fn checker_limits() -> RunLimits {
    // The trace itself bounds the sizes involved; only refuse the absurd.
    RunLimits {
        max_powerset_input: 24,
        ..RunLimits::default()
    }
}

pub fn check_trace_detailed(
    p: &Program,
    t: &Trace,
    o: &OracleTable,
    limits: &RunLimits,
) -> Result<(), TraceViolation> {
    use TraceViolation::*;
    let cs = &t.configurations;
    let first = cs.first().ok_or(Empty)?;
    let width = p.register_count().max(t.input_count);
    if first.line != 1
        || first.registers.len() != width
        || first.registers[t.input_count..].iter().any(|r| !r.is_empty())
    {
        return Err(BadInitial);
    }
    if let Some(i) = cs.iter().position(|c| c.registers.len() != width) {
        return Err(RegisterCount(i));
    }
    let successor = |i: usize| match step(p, &cs[i], o, limits) {
        Ok(Step::Next(c)) => Ok(Some(c)),
        Ok(Step::Halt) => Ok(None),
        Ok(Step::OracleUndefined) => Err(OracleUndefined(i)),
        Err(_) => Err(BadStep(i + 1)),
    };

    let mut markers = t.limits.iter().peekable();
    let mut seg_start = 0;
    for i in 1..cs.len() {
        let next = successor(i - 1)?;
        if let Some(m) = markers.next_if(|m| m.index == i) {
            if m.period == 0 || i - seg_start != m.prefix + m.period {
                return Err(BadMarker(i));
            }
            let cycle = &cs[seg_start + m.prefix..i];
            if next.as_ref() != Some(&cycle[0]) {
                return Err(OpenCycle(i));
            }
            let line = cycle.iter().map(|c| c.line).min().unwrap_or(0);
            let mut regs = cycle[0].registers.clone();
            for c in &cycle[1..] {
                for (a, r) in regs.iter_mut().zip(&c.registers) {
                    *a = HfSet::intersect2(a, r);
                }
            }
            if cs[i].line != line || cs[i].registers != regs {
                return Err(BadLimit(i));
            }
            seg_start = i;
        } else if next.as_ref() != Some(&cs[i]) {
            return Err(BadStep(i));
        }
    }
    if markers.next().is_some() {
        return Err(BadMarker(cs.len()));
    }
    match successor(cs.len() - 1)? {
        None => Ok(()),
        Some(_) => Err(NotFinal),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{assemble, expand_macros};
    use crate::vm::run;

    fn prog(src: &str) -> Program {
        expand_macros(&assemble(src).unwrap())
    }

    #[test]
    fn text_round_trip_with_limit() {
        let p = prog("1: ADD 0 1\n2: JEZ 1 6\n3: REMOVE 0 1\n4: ADD 0 1\n5: JEZ 2 2\n6: ZERO 0\n7: ADD 0 0");
        let (_, t) = run(&p, &[], &OracleTable::new(), &RunLimits::default());
        let text = t.to_string();
        assert!(text.contains("@omega prefix=1 period=4\n2 #0 #0 #0\n"));
        let back: Trace = text.parse().unwrap();
        assert_eq!(back, t);
        assert!(check_trace(&p, &back, &OracleTable::new()));
    }

    #[test]
    fn rejections() {
        let p = prog("1: JEQ 0 1 4\n2: ZERO 0\n3: GOTO 6\n4: ZERO 0\n5: ADD 0 0");
        let o = OracleTable::new();
        let x: HfSet = "#2".parse().unwrap();
        let (_, t) = run(&p, &[x.clone(), x], &o, &RunLimits::default());
        assert!(check_trace(&p, &t, &o));

        let mut cut = t.clone();
        cut.configurations.pop();
        assert_eq!(
            check_trace_detailed(&p, &cut, &o, &RunLimits::default()),
            Err(TraceViolation::NotFinal)
        );

        let mut bad = t.clone();
        bad.configurations[3].registers[0] = HfSet::empty();
        assert!(!check_trace(&p, &bad, &o));

        let mut bad = t.clone();
        bad.configurations[0].registers[2] = HfSet::numeral(1);
        assert_eq!(
            check_trace_detailed(&p, &bad, &o, &RunLimits::default()),
            Err(TraceViolation::BadInitial)
        );
        assert!(!check_trace(&p, &Trace::new(0), &o));
    }

    #[test]
    fn parse_errors() {
        assert!("1 #0".parse::<Trace>().is_err());
        assert!("@inputs 0\n@omega prefix=1\n1 #0".parse::<Trace>().is_err());
        assert!("@inputs 0\n1 {#0".parse::<Trace>().is_err());
        assert!("@inputs 0\n1 #0\n@omega prefix=0 period=1".parse::<Trace>().is_err());
    }
}
