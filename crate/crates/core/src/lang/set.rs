use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::syntax::{self, Quant, Syntax, View};
use crate::hfset::HfSet;
use crate::text::{Cursor, ParseError};

/// A term of the set language: a variable or a hereditarily finite constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(HfSet),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    fn free_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }

    fn subst(&self, map: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(_) => self.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

impl From<HfSet> for Term {
    fn from(s: HfSet) -> Self {
        Term::Const(s)
    }
}

/// First-order formulas of set theory. Bounded quantifiers are primitive nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetFormula {
    Eq(Term, Term),
    In(Term, Term),
    Bot,
    And(Box<SetFormula>, Box<SetFormula>),
    Or(Box<SetFormula>, Box<SetFormula>),
    Imp(Box<SetFormula>, Box<SetFormula>),
    Exists(String, Box<SetFormula>),
    Forall(String, Box<SetFormula>),
    BExists(String, Term, Box<SetFormula>),
    BForall(String, Term, Box<SetFormula>),
}

impl SetFormula {
    pub fn eq(a: impl Into<Term>, b: impl Into<Term>) -> Self {
        SetFormula::Eq(a.into(), b.into())
    }

    pub fn mem(a: impl Into<Term>, b: impl Into<Term>) -> Self {
        SetFormula::In(a.into(), b.into())
    }

    pub fn and(a: Self, b: Self) -> Self {
        SetFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        SetFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Self, b: Self) -> Self {
        SetFormula::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Self) -> Self {
        SetFormula::imp(a, SetFormula::Bot)
    }

    /// `(a -> b) /\ (b -> a)`.
    pub fn iff(a: Self, b: Self) -> Self {
        SetFormula::and(SetFormula::imp(a.clone(), b.clone()), SetFormula::imp(b, a))
    }

    pub fn exists(v: &str, body: Self) -> Self {
        SetFormula::Exists(v.to_string(), Box::new(body))
    }

    pub fn forall(v: &str, body: Self) -> Self {
        SetFormula::Forall(v.to_string(), Box::new(body))
    }

    pub fn bexists(v: &str, bound: impl Into<Term>, body: Self) -> Self {
        SetFormula::BExists(v.to_string(), bound.into(), Box::new(body))
    }

    pub fn bforall(v: &str, bound: impl Into<Term>, body: Self) -> Self {
        SetFormula::BForall(v.to_string(), bound.into(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            SetFormula::Eq(a, b) | SetFormula::In(a, b) => {
                out.extend(a.free_var().map(str::to_string));
                out.extend(b.free_var().map(str::to_string));
            }
            SetFormula::Bot => {}
            SetFormula::And(a, b) | SetFormula::Or(a, b) | SetFormula::Imp(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            SetFormula::Exists(v, body) | SetFormula::Forall(v, body) => {
                let mut inner = body.free_vars();
                inner.remove(v);
                out.extend(inner);
            }
            SetFormula::BExists(v, bound, body) | SetFormula::BForall(v, bound, body) => {
                out.extend(bound.free_var().map(str::to_string));
                let mut inner = body.free_vars();
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// True iff every quantifier is bounded.
    pub fn is_delta0(&self) -> bool {
        match self {
            SetFormula::Eq(..) | SetFormula::In(..) | SetFormula::Bot => true,
            SetFormula::And(a, b) | SetFormula::Or(a, b) | SetFormula::Imp(a, b) => {
                a.is_delta0() && b.is_delta0()
            }
            SetFormula::Exists(..) | SetFormula::Forall(..) => false,
            SetFormula::BExists(_, _, body) | SetFormula::BForall(_, _, body) => body.is_delta0(),
        }
    }

    /// Connective/quantifier nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            SetFormula::Eq(..) | SetFormula::In(..) | SetFormula::Bot => 0,
            SetFormula::And(a, b) | SetFormula::Or(a, b) | SetFormula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
            SetFormula::Exists(_, b)
            | SetFormula::Forall(_, b)
            | SetFormula::BExists(_, _, b)
            | SetFormula::BForall(_, _, b) => 1 + b.depth(),
        }
    }

    /// `self[var := value]`.
    pub fn instantiate(&self, var: &str, value: &HfSet) -> SetFormula {
        let mut map = BTreeMap::new();
        map.insert(var.to_string(), Term::Const(value.clone()));
        self.subst(&map)
    }

    /// Capture-avoiding simultaneous substitution of terms for free variables.
    pub fn subst(&self, map: &BTreeMap<String, Term>) -> SetFormula {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            SetFormula::Eq(a, b) => SetFormula::Eq(a.subst(map), b.subst(map)),
            SetFormula::In(a, b) => SetFormula::In(a.subst(map), b.subst(map)),
            SetFormula::Bot => SetFormula::Bot,
            SetFormula::And(a, b) => SetFormula::and(a.subst(map), b.subst(map)),
            SetFormula::Or(a, b) => SetFormula::or(a.subst(map), b.subst(map)),
            SetFormula::Imp(a, b) => SetFormula::imp(a.subst(map), b.subst(map)),
            SetFormula::Exists(v, body) => {
                let (v, body) = subst_binder(v, body, map);
                SetFormula::Exists(v, Box::new(body))
            }
            SetFormula::Forall(v, body) => {
                let (v, body) = subst_binder(v, body, map);
                SetFormula::Forall(v, Box::new(body))
            }
            SetFormula::BExists(v, bound, body) => {
                let bound = bound.subst(map);
                let (v, body) = subst_binder(v, body, map);
                SetFormula::BExists(v, bound, Box::new(body))
            }
            SetFormula::BForall(v, bound, body) => {
                let bound = bound.subst(map);
                let (v, body) = subst_binder(v, body, map);
                SetFormula::BForall(v, bound, Box::new(body))
            }
        }
    }
}

fn subst_binder(v: &str, body: &SetFormula, map: &BTreeMap<String, Term>) -> (String, SetFormula) {
    let mut inner: BTreeMap<String, Term> = map.clone();
    inner.remove(v);
    let body_free = body.free_vars();
    inner.retain(|k, _| body_free.contains(k));
    let captures = inner.values().any(|t| t.free_var() == Some(v));
    if !captures {
        return (v.to_string(), body.subst(&inner));
    }
    let mut avoid: BTreeSet<String> = body_free;
    avoid.extend(inner.values().filter_map(|t| t.free_var().map(str::to_string)));
    let mut fresh = format!("{v}'");
    while avoid.contains(&fresh) {
        fresh.push('\'');
    }
    inner.insert(v.to_string(), Term::Var(fresh.clone()));
    (fresh, body.subst(&inner))
}

pub(crate) fn parse_term(cur: &mut Cursor<'_>) -> Result<Term, ParseError> {
    match cur.peek_char() {
        Some('∅' | '{' | '#' | '<') => Ok(Term::Const(crate::hfset::literal_term(cur)?)),
        _ => syntax::parse_var(cur).map(Term::Var),
    }
}

impl Syntax for SetFormula {
    type Bound = Term;

    fn bot() -> Self {
        SetFormula::Bot
    }
    fn and(a: Self, b: Self) -> Self {
        SetFormula::and(a, b)
    }
    fn or(a: Self, b: Self) -> Self {
        SetFormula::or(a, b)
    }
    fn imp(a: Self, b: Self) -> Self {
        SetFormula::imp(a, b)
    }
    fn quant(
        _cur: &Cursor<'_>,
        q: Quant,
        var: String,
        bound: Option<Term>,
        body: Self,
    ) -> Result<Self, ParseError> {
        let body = Box::new(body);
        Ok(match (q, bound) {
            (Quant::Forall, None) => SetFormula::Forall(var, body),
            (Quant::Exists, None) => SetFormula::Exists(var, body),
            (Quant::Forall, Some(b)) => SetFormula::BForall(var, b, body),
            (Quant::Exists, Some(b)) => SetFormula::BExists(var, b, body),
        })
    }
    fn parse_bound(cur: &mut Cursor<'_>) -> Result<Term, ParseError> {
        parse_term(cur)
    }
    fn parse_atom(cur: &mut Cursor<'_>) -> Result<Self, ParseError> {
        let lhs = parse_term(cur)?;
        if cur.eat("=") {
            return Ok(SetFormula::Eq(lhs, parse_term(cur)?));
        }
        if cur.eat_keyword("in") || cur.eat("∈") {
            return Ok(SetFormula::In(lhs, parse_term(cur)?));
        }
        Err(cur.error("expected `=` or `in`"))
    }

    fn view(&self) -> View<'_, Self> {
        match self {
            SetFormula::Eq(..) | SetFormula::In(..) => View::Atom,
            SetFormula::Bot => View::Bot,
            SetFormula::And(a, b) => View::And(a, b),
            SetFormula::Or(a, b) => View::Or(a, b),
            SetFormula::Imp(a, b) => View::Imp(a, b),
            SetFormula::Exists(v, b) => View::Quant(Quant::Exists, v, None, b),
            SetFormula::Forall(v, b) => View::Quant(Quant::Forall, v, None, b),
            SetFormula::BExists(v, t, b) => View::Quant(Quant::Exists, v, Some(t), b),
            SetFormula::BForall(v, t, b) => View::Quant(Quant::Forall, v, Some(t), b),
        }
    }
    fn write_atom(&self, out: &mut String) {
        match self {
            SetFormula::Eq(a, b) => syntax::push_display(out, format_args!("{a} = {b}")),
            SetFormula::In(a, b) => syntax::push_display(out, format_args!("{a} in {b}")),
            _ => {}
        }
    }
    fn write_bound(bound: &Term, out: &mut String) {
        syntax::push_display(out, bound);
    }
}

impl fmt::Display for SetFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        syntax::display(self, f)
    }
}

impl FromStr for SetFormula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        syntax::parse_complete(s)
    }
}

pub fn parse_setformula(s: &str) -> Result<SetFormula, ParseError> {
    s.parse()
}

pub fn print_setformula(f: &SetFormula) -> String {
    f.to_string()
}
