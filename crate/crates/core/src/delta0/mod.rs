//! Δ₀ formulas over hereditarily finite sets: a native evaluator, a bounded witness search for
//! Σ₁ formulas, and a compiler from Δ₀ formulas to set-register programs.

mod compile;
mod gen;

pub use compile::compile_delta0;
pub use gen::random_delta0;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::asm::expand_macros;
use crate::hfset::{f_tau, random_hf, HfSet};
use crate::vm::{run_as_function, OracleTable, RunLimits};
use crate::lang::{SetFormula, Term};

pub type Env = BTreeMap<String, HfSet>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Delta0Error {
    #[error("variable `{0}` is unbound")]
    UnboundVariable(String),
    #[error("not a Δ₀ formula: {0}")]
    NotDelta0(String),
    #[error("not an existential prefix over a Δ₀ formula: {0}")]
    NotSigma1(String),
}

fn term_value<'a>(t: &'a Term, env: &'a Env) -> Result<&'a HfSet, Delta0Error> {
    match t {
        Term::Var(v) => env.get(v).ok_or_else(|| Delta0Error::UnboundVariable(v.clone())),
        Term::Const(c) => Ok(c),
    }
}

/// Truth of a Δ₀ formula under `env`.
pub fn eval_delta0(f: &SetFormula, env: &Env) -> Result<bool, Delta0Error> {
    if !f.is_delta0() {
        return Err(Delta0Error::NotDelta0(f.to_string()));
    }
    let mut env = env.clone();
    eval(f, &mut env)
}

fn eval(f: &SetFormula, env: &mut Env) -> Result<bool, Delta0Error> {
    use SetFormula::*;
    Ok(match f {
        Eq(a, b) => term_value(a, env)? == term_value(b, env)?,
        In(a, b) => term_value(b, env)?.contains(term_value(a, env)?),
        Bot => false,
        And(a, b) => eval(a, env)? && eval(b, env)?,
        Or(a, b) => eval(a, env)? || eval(b, env)?,
        Imp(a, b) => !eval(a, env)? || eval(b, env)?,
        BExists(v, bound, body) | BForall(v, bound, body) => {
            let members = term_value(bound, env)?.clone();
            let want = matches!(f, BExists(..));
            let saved = env.get(v).cloned();
            let mut result = !want;
            for m in members.iter() {
                env.insert(v.clone(), m.clone());
                if eval(body, env)? == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(s) => env.insert(v.clone(), s),
                None => env.remove(v),
            };
            result
        }
        Exists(..) | Forall(..) => unreachable!("checked Δ₀"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sigma1Verdict {
    /// True, with witnesses for the existential prefix in order.
    True(Vec<(String, HfSet)>),
    /// No witness among the candidates searched.
    Unknown,
}

/// Searches witnesses for `∃x₁…∃xₖ φ` with φ Δ₀. Each variable ranges over the first
/// `search_bound` sets in Ackermann order; tuples are tried lexicographically.
pub fn eval_sigma1(f: &SetFormula, env: &Env, search_bound: u64) -> Result<Sigma1Verdict, Delta0Error> {
    let mut vars = Vec::new();
    let mut matrix = f;
    while let SetFormula::Exists(v, body) = matrix {
        vars.push(v.clone());
        matrix = body;
    }
    if !matrix.is_delta0() {
        return Err(Delta0Error::NotSigma1(f.to_string()));
    }
    let candidates: Vec<HfSet> = (0..search_bound).map(f_tau).collect();
    let mut env = env.clone();
    let mut idx = vec![0usize; vars.len()];
    if !vars.is_empty() && candidates.is_empty() {
        return Ok(Sigma1Verdict::Unknown);
    }
    loop {
        for (v, &i) in vars.iter().zip(&idx) {
            env.insert(v.clone(), candidates[i].clone());
        }
        if eval(matrix, &mut env)? {
            let witnesses = vars
                .iter()
                .zip(&idx)
                .map(|(v, &i)| (v.clone(), candidates[i].clone()))
                .collect();
            return Ok(Sigma1Verdict::True(witnesses));
        }
        // Odometer increment, last variable fastest.
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(Sigma1Verdict::Unknown);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < candidates.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// One disagreement found by [`differential_fuzz`].
#[derive(Debug, Clone)]
pub struct FuzzMismatch {
    pub formula: SetFormula,
    pub args: Vec<HfSet>,
    pub expected: bool,
    pub got: Result<HfSet, String>,
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub cases: usize,
    pub mismatches: Vec<FuzzMismatch>,
    pub runtime: Duration,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cases={} mismatches={} runtime={:.3}s",
            self.cases,
            self.mismatches.len(),
            self.runtime.as_secs_f64()
        )?;
        for m in &self.mismatches {
            let args: Vec<String> = m.args.iter().map(|a| a.to_string()).collect();
            let got = match &m.got {
                Ok(v) => v.to_string(),
                Err(e) => e.clone(),
            };
            write!(f, "\n  {} on ({}) expected {} got {got}", m.formula, args.join(", "), m.expected)?;
        }
        Ok(())
    }
}

/// Compiles `cases` random formulas over `x, y, z` and compares each compiled program against
/// [`eval_delta0`] on random arguments.
pub fn differential_fuzz(
    cases: usize,
    max_depth: usize,
    max_rank: u32,
    seed: u64,
    limits: &RunLimits,
) -> FuzzReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = ["x", "y", "z"];
    let mut mismatches = Vec::new();
    for _ in 0..cases {
        let f = random_delta0(&mut rng, max_depth, &vars);
        let args: Vec<HfSet> = vars.iter().map(|_| random_hf(&mut rng, max_rank)).collect();
        let env: Env = vars.iter().map(|v| v.to_string()).zip(args.iter().cloned()).collect();
        let expected = eval_delta0(&f, &env).expect("generated formulas are Δ₀ over x, y, z");
        let program = expand_macros(&compile_delta0(&f, &vars).expect("generated formulas compile"));
        let got = run_as_function(&program, &args, &OracleTable::new(), limits).map_err(|e| e.to_string());
        if got.as_ref().ok() != Some(&HfSet::numeral(expected as usize)) {
            mismatches.push(FuzzMismatch { formula: f, args, expected, got });
        }
    }
    FuzzReport { cases, mismatches, runtime: start.elapsed() }
}
