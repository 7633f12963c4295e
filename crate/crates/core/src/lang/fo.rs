use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::set::{SetFormula, Term};
use super::syntax::{self, Quant, Syntax, View};
use super::LangError;
use crate::text::{Cursor, ParseError};

/// Formulas of pure predicate logic: predicates `P0, P1, …` applied to variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FoFormula {
    Pred(u32, Vec<String>),
    Bot,
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Imp(Box<FoFormula>, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
    Forall(String, Box<FoFormula>),
}

impl FoFormula {
    pub fn pred(i: u32, args: &[&str]) -> Self {
        FoFormula::Pred(i, args.iter().map(|s| s.to_string()).collect())
    }
}

impl Syntax for FoFormula {
    type Bound = ();

    fn bot() -> Self {
        FoFormula::Bot
    }
    fn and(a: Self, b: Self) -> Self {
        FoFormula::And(Box::new(a), Box::new(b))
    }
    fn or(a: Self, b: Self) -> Self {
        FoFormula::Or(Box::new(a), Box::new(b))
    }
    fn imp(a: Self, b: Self) -> Self {
        FoFormula::Imp(Box::new(a), Box::new(b))
    }
    fn quant(
        cur: &Cursor<'_>,
        q: Quant,
        var: String,
        bound: Option<()>,
        body: Self,
    ) -> Result<Self, ParseError> {
        if bound.is_some() {
            return Err(cur.error("bounded quantifiers are not part of predicate logic"));
        }
        Ok(match q {
            Quant::Forall => FoFormula::Forall(var, Box::new(body)),
            Quant::Exists => FoFormula::Exists(var, Box::new(body)),
        })
    }
    fn parse_bound(cur: &mut Cursor<'_>) -> Result<(), ParseError> {
        Err(cur.error("bounded quantifiers are not part of predicate logic"))
    }
    fn parse_atom(cur: &mut Cursor<'_>) -> Result<Self, ParseError> {
        let save = cur.pos;
        let index = cur
            .ident()
            .and_then(|id| id.strip_prefix('P'))
            .and_then(|d| d.parse::<u32>().ok());
        let Some(index) = index else {
            cur.pos = save;
            return Err(cur.error("expected a predicate `P<n>(…)`"));
        };
        let mut args = Vec::new();
        if cur.eat("(") && !cur.eat(")") {
            loop {
                args.push(syntax::parse_var(cur)?);
                if cur.eat(")") {
                    break;
                }
                cur.expect(",")?;
            }
        }
        Ok(FoFormula::Pred(index, args))
    }

    fn view(&self) -> View<'_, Self> {
        match self {
            FoFormula::Pred(..) => View::Atom,
            FoFormula::Bot => View::Bot,
            FoFormula::And(a, b) => View::And(a, b),
            FoFormula::Or(a, b) => View::Or(a, b),
            FoFormula::Imp(a, b) => View::Imp(a, b),
            FoFormula::Exists(v, b) => View::Quant(Quant::Exists, v, None, b),
            FoFormula::Forall(v, b) => View::Quant(Quant::Forall, v, None, b),
        }
    }
    fn write_atom(&self, out: &mut String) {
        if let FoFormula::Pred(i, args) = self {
            if args.is_empty() {
                syntax::push_display(out, format_args!("P{i}"));
            } else {
                syntax::push_display(out, format_args!("P{i}({})", args.join(",")));
            }
        }
    }
    fn write_bound(_: &(), _: &mut String) {}
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        syntax::display(self, f)
    }
}

impl FromStr for FoFormula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        syntax::parse_complete(s)
    }
}

/// Assignment of set formulas to predicate symbols. Each entry lists the formal
/// parameters; the formula's free variables must be among them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FoTranslation {
    map: BTreeMap<u32, (Vec<String>, SetFormula)>,
}

impl FoTranslation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, pred: u32, params: &[&str], body: SetFormula) -> Result<(), LangError> {
        let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        let allowed: BTreeSet<&String> = params.iter().collect();
        if let Some(v) = body.free_vars().into_iter().find(|v| !allowed.contains(v)) {
            return Err(LangError::NotClosed(v));
        }
        self.map.insert(pred, (params, body));
        Ok(())
    }
}

/// `τ(R(x̄)) = φ(x̄)`, homomorphic on connectives and commuting with quantifiers.
pub fn apply_fo_translation(t: &FoTranslation, a: &FoFormula) -> Result<SetFormula, LangError> {
    Ok(match a {
        FoFormula::Pred(i, args) => {
            let (params, body) = t.map.get(i).ok_or(LangError::MissingPredicate(*i))?;
            if params.len() != args.len() {
                return Err(LangError::ArityMismatch {
                    predicate: *i,
                    expected: params.len(),
                    found: args.len(),
                });
            }
            let map = params
                .iter()
                .cloned()
                .zip(args.iter().map(|a| Term::Var(a.clone())))
                .collect();
            body.subst(&map)
        }
        FoFormula::Bot => SetFormula::Bot,
        FoFormula::And(x, y) => SetFormula::and(apply_fo_translation(t, x)?, apply_fo_translation(t, y)?),
        FoFormula::Or(x, y) => SetFormula::or(apply_fo_translation(t, x)?, apply_fo_translation(t, y)?),
        FoFormula::Imp(x, y) => SetFormula::imp(apply_fo_translation(t, x)?, apply_fo_translation(t, y)?),
        FoFormula::Exists(v, body) => SetFormula::exists(v, apply_fo_translation(t, body)?),
        FoFormula::Forall(v, body) => SetFormula::forall(v, apply_fo_translation(t, body)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn translation() -> FoTranslation {
        let mut t = FoTranslation::new();
        t.insert(0, &["a"], "exists y . a in y".parse().unwrap()).unwrap();
        t.insert(1, &["a", "b"], "a in b".parse().unwrap()).unwrap();
        t
    }

    #[test]
    fn predicate_case_renames_parameters() {
        let t = translation();
        let f: FoFormula = "P1(x,z)".parse().unwrap();
        assert_eq!(apply_fo_translation(&t, &f).unwrap().to_string(), "x in z");
    }

    #[test]
    fn quantifiers_commute_and_capture_is_avoided() {
        let t = translation();
        let f: FoFormula = "forall y . P0(y) /\\ bot".parse().unwrap();
        let g = apply_fo_translation(&t, &f).unwrap();
        assert_eq!(g.to_string(), "forall y . (exists y' . y in y') /\\ bot");
    }

    #[test]
    fn connectives_are_homomorphic() {
        let t = translation();
        let f: FoFormula = "P1(u,v) -> P1(v,u) \\/ bot".parse().unwrap();
        let g = apply_fo_translation(&t, &f).unwrap();
        assert_eq!(g.to_string(), "u in v -> v in u \\/ bot");
    }

    #[test]
    fn errors() {
        let t = translation();
        assert_eq!(
            apply_fo_translation(&t, &FoFormula::pred(5, &[])),
            Err(LangError::MissingPredicate(5))
        );
        assert!(matches!(
            apply_fo_translation(&t, &FoFormula::pred(1, &["x"])),
            Err(LangError::ArityMismatch { .. })
        ));
        let mut bad = FoTranslation::new();
        assert!(bad.insert(0, &["a"], "a in w".parse().unwrap()).is_err());
    }
}
