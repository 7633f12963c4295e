//! A falsifier for realisability by set register machines.
//!
//! A realizer is a program with a block of parameters placed in the lowest registers; the
//! argument goes in the register after them. When the result of an application must itself act
//! as a realizer it is read as a code `⟨encode_program(p), sequence(parameters)⟩`.
//!
//! Clauses, for closed formulas:
//! - atoms hold iff they are true; `⊥` has no realizer;
//! - `r ⊩ φ₀ ∧ φ₁` iff `r(#0) ⊩ φ₀` and `r(#1) ⊩ φ₁`;
//! - `r ⊩ φ₀ ∨ φ₁` iff `r(#0)` is `#0` or `#1` and `r(#1)` realizes the selected disjunct;
//! - `r ⊩ φ₀ → φ₁` iff `r(code(s)) ⊩ φ₁` for every `s ⊩ φ₀`;
//! - `r ⊩ ∃x φ` iff `r(#1) ⊩ φ(r(#0))`; for `∃x ∈ t` also `r(#0) ∈ t`;
//! - `r ⊩ ∀x φ` iff `r(a) ⊩ φ(a)` for every `a`; for `∀x ∈ t`, every `a ∈ t`.
//!
//! Unbounded `∀` ranges over a finite sample and `s` over a finite pool, so a pass is only a
//! pass on that data. A refutation records the path of clauses taken and replays exactly.

mod axioms;

pub use axioms::{
    axiom_formula, corrupted_realizers, get_axiom_realizer, separation_instance,
    separation_realizer, standard_pool, standard_sample, Corrupted, AXIOMS,
};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::asm::{decode_program, encode_program, Program};
use crate::hfset::HfSet;
use crate::lang::{SetFormula, Term};
use crate::vm::{run_as_function, OracleTable, RunLimits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("unknown axiom `{0}`")]
    UnknownName(String),
    #[error("formula is not closed: {0}")]
    NotClosed(String),
    #[error("the domain sample is empty")]
    EmptySample,
    #[error("separation needs a Δ₀ formula without ∨ or ∃ in one free variable: {0}")]
    UnsupportedSeparation(String),
    #[error("not a realizer code: {0}")]
    NotARealizer(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Realizer {
    pub program: Program,
    pub parameters: Vec<HfSet>,
}

impl Realizer {
    pub fn new(program: Program, parameters: Vec<HfSet>) -> Self {
        Realizer { program, parameters }
    }

    pub fn code(&self) -> HfSet {
        HfSet::ordered_pair(&encode_program(&self.program), &HfSet::sequence(&self.parameters))
    }

    pub fn from_code(code: &HfSet) -> Result<Self, RealizeError> {
        let bad = || RealizeError::NotARealizer(code.to_string());
        let (p, params) = code.as_ordered_pair().ok_or_else(bad)?;
        let program = decode_program(&p).map_err(|e| RealizeError::NotARealizer(e.to_string()))?;
        let parameters = params.as_sequence().ok_or_else(bad)?;
        Ok(Realizer { program, parameters })
    }

    /// Runs the program on the parameters followed by `x`.
    pub fn apply(&self, x: &HfSet, limits: &RunLimits) -> Result<HfSet, String> {
        let mut inputs = self.parameters.clone();
        inputs.push(x.clone());
        run_as_function(&self.program, &inputs, &OracleTable::new(), limits).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct CheckContext {
    /// Stands in for "every set" in unbounded universal clauses.
    pub domain_sample: Vec<HfSet>,
    /// Candidate realizers for the premise of an implication.
    pub implication_pool: Vec<Realizer>,
    pub limits: RunLimits,
    /// How many implications deep premises are examined; past it implications are not refuted.
    pub depth_budget: usize,
}

impl CheckContext {
    pub fn standard() -> Self {
        CheckContext {
            domain_sample: standard_sample(),
            implication_pool: standard_pool(),
            limits: RunLimits::default(),
            depth_budget: 4,
        }
    }
}

/// One clause taken on the way to a refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathStep {
    /// `∧`: continue with `r(#i)` on the `i`-th conjunct.
    Conjunct(usize),
    /// `∨`: `r(#0)` selected this disjunct; continue with `r(#1)`.
    Disjunct(usize),
    /// `→`: pool member `i` realizes the premise; continue with `r(code)` on the conclusion.
    Premise(usize),
    /// `∃`: `r(#0)` produced this witness; continue with `r(#1)`.
    Witness(HfSet),
    /// `∀`: continue with `r(a)` on this instance.
    Instance(HfSet),
}

impl fmt::Display for PathStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathStep::Conjunct(i) => write!(f, "conjunct {i}"),
            PathStep::Disjunct(i) => write!(f, "disjunct {i}"),
            PathStep::Premise(i) => write!(f, "premise pool[{i}]"),
            PathStep::Witness(w) => write!(f, "witness {w}"),
            PathStep::Instance(a) => write!(f, "instance {a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    AtomicFalse(SetFormula),
    Bottom,
    BadSelector(HfSet),
    WitnessOutsideBound { witness: HfSet, bound: HfSet },
    ApplicationFailed { input: HfSet, error: String },
    NotARealizer { input: HfSet, value: HfSet },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::AtomicFalse(a) => write!(f, "atomic formula {a} is false"),
            Failure::Bottom => write!(f, "bot has no realizer"),
            Failure::BadSelector(s) => write!(f, "disjunction selector {s} is neither #0 nor #1"),
            Failure::WitnessOutsideBound { witness, bound } => {
                write!(f, "witness {witness} is not a member of {bound}")
            }
            Failure::ApplicationFailed { input, error } => write!(f, "application to {input} failed: {error}"),
            Failure::NotARealizer { input, value } => {
                write!(f, "application to {input} returned {value}, which is not a realizer code")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub path: Vec<PathStep>,
    pub failure: Failure,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "path: ")?;
        if self.path.is_empty() {
            write!(f, "(root)")?;
        }
        for (i, s) in self.path.iter().enumerate() {
            if i > 0 {
                write!(f, " / ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "\nfailure: {}", self.failure)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Refuted(Refutation),
    /// Passed on the sample and pool; not a proof.
    NotRefuted,
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Refuted(r) => write!(f, "refuted\n{r}"),
            Verdict::NotRefuted => write!(f, "not refuted (sampled check, not a proof)"),
        }
    }
}

/// Result of checking one node: a definite failure, a full pass, or a pass that ran out of
/// implication depth somewhere. Only full passes qualify a pool member as a premise realizer.
enum Node {
    Fail(Failure),
    Pass,
    Unknown,
}

struct Checker<'a> {
    ctx: &'a CheckContext,
    codes: Vec<HfSet>,
    decoded: HashMap<HfSet, Realizer>,
}

fn bool_set(i: usize) -> HfSet {
    HfSet::numeral(i)
}

fn term_value(t: &Term) -> &HfSet {
    match t {
        Term::Const(c) => c,
        Term::Var(v) => panic!("free variable `{v}` in a closed formula"),
    }
}

fn atom_true(f: &SetFormula) -> bool {
    match f {
        SetFormula::Eq(a, b) => term_value(a) == term_value(b),
        SetFormula::In(a, b) => term_value(b).contains(term_value(a)),
        _ => unreachable!(),
    }
}

impl<'a> Checker<'a> {
    fn new(ctx: &'a CheckContext) -> Self {
        Checker {
            ctx,
            codes: ctx.implication_pool.iter().map(Realizer::code).collect(),
            decoded: HashMap::new(),
        }
    }

    fn apply(&self, r: &Realizer, x: &HfSet) -> Result<HfSet, Failure> {
        r.apply(x, &self.ctx.limits).map_err(|error| Failure::ApplicationFailed { input: x.clone(), error })
    }

    /// `r(x)` read as a realizer.
    fn sub(&mut self, r: &Realizer, x: &HfSet) -> Result<Realizer, Failure> {
        let value = self.apply(r, x)?;
        if let Some(d) = self.decoded.get(&value) {
            return Ok(d.clone());
        }
        match Realizer::from_code(&value) {
            Ok(d) => {
                self.decoded.insert(value, d.clone());
                Ok(d)
            }
            Err(_) => Err(Failure::NotARealizer { input: x.clone(), value }),
        }
    }

    fn check(&mut self, r: &Realizer, f: &SetFormula, depth: usize, path: &mut Vec<PathStep>) -> Node {
        use SetFormula::*;
        match f {
            Eq(..) | In(..) => {
                if atom_true(f) {
                    Node::Pass
                } else {
                    Node::Fail(Failure::AtomicFalse(f.clone()))
                }
            }
            Bot => Node::Fail(Failure::Bottom),
            And(a, b) => {
                let mut unknown = false;
                for (i, part) in [a, b].into_iter().enumerate() {
                    let r2 = match self.sub(r, &bool_set(i)) {
                        Ok(r2) => r2,
                        Err(e) => return Node::Fail(e),
                    };
                    path.push(PathStep::Conjunct(i));
                    match self.check(&r2, part, depth, path) {
                        Node::Fail(e) => return Node::Fail(e),
                        Node::Unknown => unknown = true,
                        Node::Pass => {}
                    }
                    path.pop();
                }
                if unknown {
                    Node::Unknown
                } else {
                    Node::Pass
                }
            }
            Or(a, b) => {
                let sel = match self.apply(r, &bool_set(0)) {
                    Ok(s) => s,
                    Err(e) => return Node::Fail(e),
                };
                let i = match sel.to_natural() {
                    Some(i @ (0 | 1)) => i,
                    _ => return Node::Fail(Failure::BadSelector(sel)),
                };
                let r2 = match self.sub(r, &bool_set(1)) {
                    Ok(r2) => r2,
                    Err(e) => return Node::Fail(e),
                };
                path.push(PathStep::Disjunct(i));
                let out = self.check(&r2, if i == 0 { a } else { b }, depth, path);
                if !matches!(out, Node::Fail(_)) {
                    path.pop();
                }
                out
            }
            Imp(a, b) => {
                if depth == 0 {
                    return Node::Unknown;
                }
                let mut unknown = false;
                for i in 0..self.ctx.implication_pool.len() {
                    let s = self.ctx.implication_pool[i].clone();
                    if !matches!(self.check(&s, a, depth - 1, &mut Vec::new()), Node::Pass) {
                        continue;
                    }
                    let code = self.codes[i].clone();
                    let r2 = match self.sub(r, &code) {
                        Ok(r2) => r2,
                        Err(e) => return Node::Fail(e),
                    };
                    path.push(PathStep::Premise(i));
                    match self.check(&r2, b, depth, path) {
                        Node::Fail(e) => return Node::Fail(e),
                        Node::Unknown => unknown = true,
                        Node::Pass => {}
                    }
                    path.pop();
                }
                if unknown {
                    Node::Unknown
                } else {
                    Node::Pass
                }
            }
            Exists(v, body) | BExists(v, _, body) => {
                let w = match self.apply(r, &bool_set(0)) {
                    Ok(w) => w,
                    Err(e) => return Node::Fail(e),
                };
                if let BExists(_, t, _) = f {
                    let bound = term_value(t);
                    if !bound.contains(&w) {
                        return Node::Fail(Failure::WitnessOutsideBound { witness: w, bound: bound.clone() });
                    }
                }
                let r2 = match self.sub(r, &bool_set(1)) {
                    Ok(r2) => r2,
                    Err(e) => return Node::Fail(e),
                };
                let inst = body.instantiate(v, &w);
                path.push(PathStep::Witness(w));
                let out = self.check(&r2, &inst, depth, path);
                if !matches!(out, Node::Fail(_)) {
                    path.pop();
                }
                out
            }
            Forall(v, body) | BForall(v, _, body) => {
                let domain: Vec<HfSet> = match f {
                    BForall(_, t, _) => term_value(t).elements().to_vec(),
                    _ => self.ctx.domain_sample.clone(),
                };
                let mut unknown = false;
                for a in domain {
                    let r2 = match self.sub(r, &a) {
                        Ok(r2) => r2,
                        Err(e) => return Node::Fail(e),
                    };
                    let inst = body.instantiate(v, &a);
                    path.push(PathStep::Instance(a));
                    match self.check(&r2, &inst, depth, path) {
                        Node::Fail(e) => return Node::Fail(e),
                        Node::Unknown => unknown = true,
                        Node::Pass => {}
                    }
                    path.pop();
                }
                if unknown {
                    Node::Unknown
                } else {
                    Node::Pass
                }
            }
        }
    }
}

fn validate(f: &SetFormula, ctx: &CheckContext) -> Result<(), RealizeError> {
    if !f.is_closed() {
        return Err(RealizeError::NotClosed(f.to_string()));
    }
    if ctx.domain_sample.is_empty() {
        return Err(RealizeError::EmptySample);
    }
    Ok(())
}

/// Looks for a violation of `r ⊩ f` on the context's sample and pool.
pub fn check(r: &Realizer, f: &SetFormula, ctx: &CheckContext) -> Result<Verdict, RealizeError> {
    validate(f, ctx)?;
    let mut path = Vec::new();
    Ok(match Checker::new(ctx).check(r, f, ctx.depth_budget, &mut path) {
        Node::Fail(failure) => Verdict::Refuted(Refutation { path, failure }),
        Node::Pass | Node::Unknown => Verdict::NotRefuted,
    })
}

/// Re-runs the applications along `refutation.path` and confirms the recorded failure.
pub fn replay(r: &Realizer, f: &SetFormula, ctx: &CheckContext, refutation: &Refutation) -> bool {
    if validate(f, ctx).is_err() {
        return false;
    }
    let mut checker = Checker::new(ctx);
    let (mut r, mut f) = (r.clone(), f.clone());
    let depth = ctx.depth_budget;
    for step in &refutation.path {
        use SetFormula::*;
        let next = match (step, &f) {
            (PathStep::Conjunct(i), And(a, b)) if *i < 2 => {
                checker.sub(&r, &bool_set(*i)).ok().map(|r2| (r2, if *i == 0 { a } else { b }.as_ref().clone()))
            }
            (PathStep::Disjunct(i), Or(a, b)) => match checker.apply(&r, &bool_set(0)) {
                Ok(sel) if sel.to_natural() == Some(*i) && *i < 2 => checker
                    .sub(&r, &bool_set(1))
                    .ok()
                    .map(|r2| (r2, if *i == 0 { a } else { b }.as_ref().clone())),
                _ => None,
            },
            (PathStep::Premise(i), Imp(a, b)) if depth > 0 && *i < ctx.implication_pool.len() => {
                let s = ctx.implication_pool[*i].clone();
                if !matches!(checker.check(&s, a, depth - 1, &mut Vec::new()), Node::Pass) {
                    return false;
                }
                let code = checker.codes[*i].clone();
                checker.sub(&r, &code).ok().map(|r2| (r2, b.as_ref().clone()))
            }
            (PathStep::Witness(w), Exists(v, body) | BExists(v, _, body)) => {
                let in_bound = match &f {
                    BExists(_, t, _) => term_value(t).contains(w),
                    _ => true,
                };
                match checker.apply(&r, &bool_set(0)) {
                    Ok(got) if &got == w && in_bound => {
                        checker.sub(&r, &bool_set(1)).ok().map(|r2| (r2, body.instantiate(v, w)))
                    }
                    _ => None,
                }
            }
            (PathStep::Instance(a), Forall(v, body) | BForall(v, _, body)) => {
                let in_domain = match &f {
                    BForall(_, t, _) => term_value(t).contains(a),
                    _ => ctx.domain_sample.contains(a),
                };
                if in_domain {
                    checker.sub(&r, a).ok().map(|r2| (r2, body.instantiate(v, a)))
                } else {
                    None
                }
            }
            _ => None,
        };
        let Some((r2, f2)) = next else { return false };
        r = r2;
        f = f2;
    }
    match &refutation.failure {
        Failure::AtomicFalse(a) => a == &f && matches!(f, SetFormula::Eq(..) | SetFormula::In(..)) && !atom_true(&f),
        Failure::Bottom => f == SetFormula::Bot,
        Failure::BadSelector(sel) => {
            matches!(f, SetFormula::Or(..))
                && checker.apply(&r, &bool_set(0)).as_ref() == Ok(sel)
                && !matches!(sel.to_natural(), Some(0 | 1))
        }
        Failure::WitnessOutsideBound { witness, bound } => match &f {
            SetFormula::BExists(_, t, _) => {
                term_value(t) == bound
                    && !bound.contains(witness)
                    && checker.apply(&r, &bool_set(0)).as_ref() == Ok(witness)
            }
            _ => false,
        },
        Failure::ApplicationFailed { input, .. } => checker.apply(&r, input).is_err(),
        Failure::NotARealizer { input, value } => {
            checker.apply(&r, input).as_ref() == Ok(value) && Realizer::from_code(value).is_err()
        }
    }
}
