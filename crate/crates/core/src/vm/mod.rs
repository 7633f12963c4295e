//! Deterministic execution with ω-limits.
//!
//! A run iterates the successor relation. When a configuration repeats within the current
//! segment the run is eventually periodic, so its ω-limit is known exactly: the line is the least
//! line on the cycle and each register holds the members common to all of its cycle values.
//! The run continues from that limit configuration.

mod oracle;
mod trace;

pub use oracle::OracleTable;
pub use trace::{check_trace, check_trace_detailed, LimitMarker, Trace, TraceViolation};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::asm::{Instruction, Program};
use crate::hfset::{HfError, HfSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    /// Active line, 1-based.
    pub line: usize,
    pub registers: Vec<HfSet>,
}

impl Configuration {
    /// Line 1 with the inputs in the lowest registers and `∅` elsewhere.
    pub fn initial(register_count: usize, inputs: &[HfSet]) -> Self {
        let mut registers = inputs.to_vec();
        registers.resize(register_count.max(inputs.len()), HfSet::empty());
        Configuration { line: 1, registers }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.line)?;
        for r in &self.registers {
            write!(f, " {r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLimits {
    /// Successor steps over the whole run.
    pub max_steps: u64,
    /// ω-jumps over the whole run.
    pub max_limit_jumps: u32,
    /// Largest cardinality `POW` may be applied to.
    pub max_powerset_input: usize,
    /// Configurations remembered per segment for cycle detection. When exceeded the memory is
    /// cleared, so cycles longer than this may go unnoticed.
    pub cycle_memory: usize,
}

impl Default for RunLimits {
    fn default() -> Self {
        RunLimits {
            max_steps: 1_000_000,
            max_limit_jumps: 16,
            max_powerset_input: 16,
            cycle_memory: 1 << 18,
        }
    }
}

impl RunLimits {
    pub fn with_steps(max_steps: u64) -> Self {
        RunLimits {
            max_steps,
            ..Self::default()
        }
    }

    fn powerset_limit(&self) -> u128 {
        if self.max_powerset_input >= 127 {
            u128::MAX
        } else {
            1u128 << self.max_powerset_input
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VmError {
    #[error("line {line}: {error}")]
    ResourceExceeded { line: usize, error: HfError },
    #[error("configuration has {found} registers, program needs {expected}")]
    RegisterMismatch { expected: usize, found: usize },
    #[error("run did not halt: {0}")]
    DidNotHalt(Outcome),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(Configuration),
    Halt,
    /// The oracle is undefined on the queried register; the machine would loop in place.
    OracleUndefined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Halted {
        value: HfSet,
        steps: u64,
        limit_jumps: u32,
    },
    /// Step budget spent after cycle memory had to be cleared, so a long cycle may have been missed.
    StepBudgetExhausted { steps: u64 },
    /// Step budget spent with every configuration of the current segment remembered: the segment
    /// is not periodic within the budget.
    NoCycleAtBudget { steps: u64 },
    /// A cycle was found after the last permitted ω-jump.
    LimitBudgetExhausted { limit_jumps: u32 },
    OracleDiverged { line: usize },
    ResourceExceeded { line: usize, error: HfError },
}

impl Outcome {
    pub fn value(&self) -> Option<&HfSet> {
        match self {
            Outcome::Halted { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Halted {
                value,
                steps,
                limit_jumps,
            } => write!(f, "halted after {steps} steps and {limit_jumps} limit jumps with R0 = {value}"),
            Outcome::StepBudgetExhausted { steps } => write!(f, "step budget of {steps} exhausted"),
            Outcome::NoCycleAtBudget { steps } => {
                write!(f, "no repeated configuration within {steps} steps")
            }
            Outcome::LimitBudgetExhausted { limit_jumps } => {
                write!(f, "limit budget of {limit_jumps} ω-jumps exhausted")
            }
            Outcome::OracleDiverged { line } => {
                write!(f, "oracle undefined on the query at line {line}")
            }
            Outcome::ResourceExceeded { line, error } => write!(f, "line {line}: {error}"),
        }
    }
}

/// The successor configuration.
pub fn step(
    p: &Program,
    c: &Configuration,
    o: &OracleTable,
    limits: &RunLimits,
) -> Result<Step, VmError> {
    let Some(&ins) = p.line(c.line) else {
        return Ok(Step::Halt);
    };
    let needed = p.register_count();
    if c.registers.len() < needed {
        return Err(VmError::RegisterMismatch {
            expected: needed,
            found: c.registers.len(),
        });
    }
    let r = &c.registers;
    let g = |i: u16| &r[i as usize];
    let mut next = c.clone();
    next.line += 1;
    let mut set = |j: u16, v: HfSet| next.registers[j as usize] = v;
    use Instruction::*;
    match ins {
        Zero(i) => set(i, HfSet::empty()),
        Add(i, j) => set(j, HfSet::add_element(g(i), g(j))),
        Copy(i, j) => set(j, g(i).clone()),
        Take(i, j) => {
            if let Some(m) = g(i).take_least() {
                set(j, m);
            }
        }
        Remove(i, j) => set(j, HfSet::diff_singleton(g(i), g(j))),
        IfEmptyGoto(i, k) => {
            if g(i).is_empty() {
                next.line = k;
            }
        }
        IfMemberGoto(i, j, k) => {
            if g(j).contains(g(i)) {
                next.line = k;
            }
        }
        Pow(i, j) => {
            let v = g(i)
                .powerset(limits.powerset_limit())
                .map_err(|error| VmError::ResourceExceeded { line: c.line, error })?;
            set(j, v);
        }
        Oracle(i, j) => match o.get(g(i)) {
            Some(v) => set(j, v.clone()),
            None => return Ok(Step::OracleUndefined),
        },
    }
    Ok(Step::Next(next))
}

/// Runs `p` on `inputs`, recording the full trace.
pub fn run(p: &Program, inputs: &[HfSet], o: &OracleTable, limits: &RunLimits) -> (Outcome, Trace) {
    let mut trace = Trace::new(inputs.len());
    let outcome = drive(p, inputs, o, limits, Some(&mut trace));
    (outcome, trace)
}

/// Runs `p` without keeping a trace.
pub fn run_outcome(p: &Program, inputs: &[HfSet], o: &OracleTable, limits: &RunLimits) -> Outcome {
    drive(p, inputs, o, limits, None)
}

/// The halting value (final `R0`), or the non-halting outcome as an error.
pub fn run_as_function(
    p: &Program,
    args: &[HfSet],
    o: &OracleTable,
    limits: &RunLimits,
) -> Result<HfSet, VmError> {
    match run_outcome(p, args, o, limits) {
        Outcome::Halted { value, .. } => Ok(value),
        other => Err(VmError::DidNotHalt(other)),
    }
}

/// The limit of the cycle entered at `start` with the given period.
pub(crate) fn limit_of_cycle(
    p: &Program,
    start: &Configuration,
    period: usize,
    o: &OracleTable,
    limits: &RunLimits,
) -> Result<Configuration, VmError> {
    let mut acc = start.clone();
    let mut cur = start.clone();
    for _ in 1..period {
        cur = match step(p, &cur, o, limits)? {
            Step::Next(c) => c,
            _ => unreachable!("a cycle of configurations has successors"),
        };
        acc.line = acc.line.min(cur.line);
        for (a, r) in acc.registers.iter_mut().zip(&cur.registers) {
            *a = HfSet::intersect2(a, r);
        }
    }
    Ok(acc)
}

fn drive(
    p: &Program,
    inputs: &[HfSet],
    o: &OracleTable,
    limits: &RunLimits,
    mut trace: Option<&mut Trace>,
) -> Outcome {
    let mut cur = Configuration::initial(p.register_count(), inputs);
    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    let mut seg_index = 0usize;
    let mut forgot = false;
    let (mut steps, mut jumps) = (0u64, 0u32);
    seen.insert(cur.clone(), 0);
    if let Some(t) = trace.as_deref_mut() {
        t.configurations.push(cur.clone());
    }
    let resource = |e: VmError| match e {
        VmError::ResourceExceeded { line, error } => Outcome::ResourceExceeded { line, error },
        other => unreachable!("{other}"),
    };
    loop {
        let next = match step(p, &cur, o, limits) {
            Ok(Step::Next(n)) => n,
            Ok(Step::Halt) => {
                return Outcome::Halted {
                    value: cur.registers[0].clone(),
                    steps,
                    limit_jumps: jumps,
                }
            }
            Ok(Step::OracleUndefined) => return Outcome::OracleDiverged { line: cur.line },
            Err(e) => return resource(e),
        };
        steps += 1;
        if let Some(&prefix) = seen.get(&next) {
            if jumps >= limits.max_limit_jumps {
                return Outcome::LimitBudgetExhausted { limit_jumps: jumps };
            }
            let period = seg_index + 1 - prefix;
            let limit = match limit_of_cycle(p, &next, period, o, limits) {
                Ok(l) => l,
                Err(e) => return resource(e),
            };
            jumps += 1;
            if let Some(t) = trace.as_deref_mut() {
                t.limits.push(LimitMarker {
                    index: t.configurations.len(),
                    prefix,
                    period,
                });
                t.configurations.push(limit.clone());
            }
            seen.clear();
            seen.insert(limit.clone(), 0);
            seg_index = 0;
            forgot = false;
            cur = limit;
        } else {
            seg_index += 1;
            if seen.len() >= limits.cycle_memory {
                seen.clear();
                forgot = true;
            }
            seen.insert(next.clone(), seg_index);
            if let Some(t) = trace.as_deref_mut() {
                t.configurations.push(next.clone());
            }
            cur = next;
        }
        if steps >= limits.max_steps {
            // The final configuration may still halt; give it that chance.
            if p.line(cur.line).is_none() {
                continue;
            }
            return if forgot {
                Outcome::StepBudgetExhausted { steps }
            } else {
                Outcome::NoCycleAtBudget { steps }
            };
        }
    }
}
