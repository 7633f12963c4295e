use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::set::SetFormula;
use super::syntax::{self, Quant, Syntax, View};
use super::LangError;
use crate::text::{Cursor, ParseError};

/// Propositional formulas over atoms `p0, p1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropFormula {
    Atom(u32),
    Bot,
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Imp(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn atom(i: u32) -> Self {
        PropFormula::Atom(i)
    }

    pub fn and(a: Self, b: Self) -> Self {
        PropFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        PropFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Self, b: Self) -> Self {
        PropFormula::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Self) -> Self {
        PropFormula::imp(a, PropFormula::Bot)
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conj_all(items: impl IntoIterator<Item = Self>) -> Option<Self> {
        items.into_iter().reduce(PropFormula::and)
    }

    pub fn disj_all(items: impl IntoIterator<Item = Self>) -> Option<Self> {
        items.into_iter().reduce(PropFormula::or)
    }

    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            PropFormula::Atom(i) => {
                out.insert(*i);
            }
            PropFormula::Bot => {}
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Every distinct subformula, children before parents.
    pub fn subformulas(&self) -> Vec<PropFormula> {
        let mut out: Vec<PropFormula> = Vec::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut Vec<PropFormula>) {
        match self {
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            PropFormula::Atom(_) | PropFormula::Bot => {}
        }
        if !out.contains(self) {
            out.push(self.clone());
        }
    }

    /// Top-level disjuncts of a left- or right-nested disjunction.
    pub fn disjuncts(&self) -> Vec<&PropFormula> {
        match self {
            PropFormula::Or(a, b) => {
                let mut v = a.disjuncts();
                v.extend(b.disjuncts());
                v
            }
            other => vec![other],
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            PropFormula::Atom(_) | PropFormula::Bot => 0,
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Prints with a custom atom naming.
    pub fn display_with<'a>(&'a self, names: &'a dyn Fn(u32) -> String) -> impl fmt::Display + 'a {
        Named { f: self, names }
    }
}

struct Named<'a> {
    f: &'a PropFormula,
    names: &'a dyn Fn(u32) -> String,
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = syntax::print(self.f);
        // Atoms print as `p<i>`; rename them token by token.
        let mut out = String::new();
        let mut chars = text.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            let prev_ident = i > 0 && text[..i].chars().last().is_some_and(crate::text::is_ident_char);
            if c == 'p' && !prev_ident {
                let digits: String = text[i + 1..].chars().take_while(char::is_ascii_digit).collect();
                if let Ok(n) = digits.parse::<u32>() {
                    out.push_str(&(self.names)(n));
                    for _ in 0..digits.len() {
                        chars.next();
                    }
                    continue;
                }
            }
            out.push(c);
        }
        f.write_str(&out)
    }
}

impl Syntax for PropFormula {
    type Bound = ();

    fn bot() -> Self {
        PropFormula::Bot
    }
    fn and(a: Self, b: Self) -> Self {
        PropFormula::and(a, b)
    }
    fn or(a: Self, b: Self) -> Self {
        PropFormula::or(a, b)
    }
    fn imp(a: Self, b: Self) -> Self {
        PropFormula::imp(a, b)
    }
    fn quant(
        cur: &Cursor<'_>,
        _q: Quant,
        _var: String,
        _bound: Option<()>,
        _body: Self,
    ) -> Result<Self, ParseError> {
        Err(cur.error("quantifiers are not propositional"))
    }
    fn parse_bound(cur: &mut Cursor<'_>) -> Result<(), ParseError> {
        Err(cur.error("quantifiers are not propositional"))
    }
    fn parse_atom(cur: &mut Cursor<'_>) -> Result<Self, ParseError> {
        let save = cur.pos;
        if let Some(id) = cur.ident() {
            if let Some(n) = id.strip_prefix('p').and_then(|d| d.parse::<u32>().ok()) {
                return Ok(PropFormula::Atom(n));
            }
        }
        cur.pos = save;
        Err(cur.error("expected a propositional atom `p<n>`"))
    }

    fn view(&self) -> View<'_, Self> {
        match self {
            PropFormula::Atom(_) => View::Atom,
            PropFormula::Bot => View::Bot,
            PropFormula::And(a, b) => View::And(a, b),
            PropFormula::Or(a, b) => View::Or(a, b),
            PropFormula::Imp(a, b) => View::Imp(a, b),
        }
    }
    fn write_atom(&self, out: &mut String) {
        if let PropFormula::Atom(i) = self {
            syntax::push_display(out, format_args!("p{i}"));
        }
    }
    fn write_bound(_: &(), _: &mut String) {}
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        syntax::display(self, f)
    }
}

impl FromStr for PropFormula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        syntax::parse_complete(s)
    }
}

pub fn parse_prop(s: &str) -> Result<PropFormula, ParseError> {
    s.parse()
}

pub fn print_prop(f: &PropFormula) -> String {
    f.to_string()
}

/// Assignment of closed set-theoretic sentences to propositional atoms.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PropTranslation {
    map: BTreeMap<u32, SetFormula>,
}

impl PropTranslation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns `sentence` to atom `atom`; the sentence must be closed.
    pub fn insert(&mut self, atom: u32, sentence: SetFormula) -> Result<(), LangError> {
        let free = sentence.free_vars();
        if let Some(v) = free.into_iter().next() {
            return Err(LangError::NotClosed(v));
        }
        self.map.insert(atom, sentence);
        Ok(())
    }

    pub fn get(&self, atom: u32) -> Option<&SetFormula> {
        self.map.get(&atom)
    }
}

/// `τ(⊥) = ⊥`, `τ(A ∘ B) = τ(A) ∘ τ(B)`.
pub fn apply_prop_translation(t: &PropTranslation, a: &PropFormula) -> Result<SetFormula, LangError> {
    Ok(match a {
        PropFormula::Atom(i) => t.get(*i).cloned().ok_or(LangError::MissingAtom(*i))?,
        PropFormula::Bot => SetFormula::Bot,
        PropFormula::And(x, y) => {
            SetFormula::and(apply_prop_translation(t, x)?, apply_prop_translation(t, y)?)
        }
        PropFormula::Or(x, y) => {
            SetFormula::or(apply_prop_translation(t, x)?, apply_prop_translation(t, y)?)
        }
        PropFormula::Imp(x, y) => {
            SetFormula::imp(apply_prop_translation(t, x)?, apply_prop_translation(t, y)?)
        }
    })
}

/// The restricted Visser rule `V_n` as (antecedent, consequent).
///
/// Atoms: `p_i` is `Atom(i)` for `1 ≤ i ≤ n+2` and `q_i` is `Atom(n+2+i)` for `1 ≤ i ≤ n`;
/// see [`visser_atom_name`] for printing them under their usual names.
pub fn visser_rule(n: u32) -> Result<(PropFormula, PropFormula), LangError> {
    if n == 0 {
        return Err(LangError::InvalidArgument("Visser rules start at n = 1".into()));
    }
    let p = PropFormula::Atom;
    let q = |i: u32| PropFormula::Atom(n + 2 + i);
    let hyps = || PropFormula::conj_all((1..=n).map(|i| PropFormula::imp(p(i), q(i)))).unwrap();
    let antecedent = PropFormula::imp(hyps(), PropFormula::or(p(n + 1), p(n + 2)));
    let consequent =
        PropFormula::disj_all((1..=n + 2).map(|j| PropFormula::imp(hyps(), p(j)))).unwrap();
    Ok((antecedent, consequent))
}

/// Names atom `idx` of `V_n` as `p<i>` or `q<i>`.
pub fn visser_atom_name(n: u32, idx: u32) -> String {
    if idx > n + 2 {
        format!("q{}", idx - n - 2)
    } else {
        format!("p{idx}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_prop("p0 -> p0").unwrap(),
            PropFormula::imp(PropFormula::Atom(0), PropFormula::Atom(0))
        );
        let f = parse_prop("¬p1 ∨ (p2 → ⊥) ∧ p3").unwrap();
        assert_eq!(f.to_string(), "~p1 \\/ ~p2 /\\ p3");
        assert!(parse_prop("forall x . p0").is_err());
        assert!(parse_prop("p0 ->").is_err());
    }

    #[test]
    fn printer_parenthesizes_by_associativity() {
        for s in ["(p0 -> p1) -> p2", "p0 -> p1 -> p2", "p0 /\\ (p1 /\\ p2)", "~(p0 \\/ p1)"] {
            assert_eq!(parse_prop(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn visser_shapes() {
        let (a, c) = visser_rule(1).unwrap();
        let names = |i| visser_atom_name(1, i);
        assert_eq!(a.display_with(&names).to_string(), "(p1 -> q1) -> p2 \\/ p3");
        assert_eq!(c.disjuncts().len(), 3);
        assert_eq!(visser_rule(2).unwrap().1.disjuncts().len(), 4);
        assert!(visser_rule(0).is_err());
        for n in 1..6 {
            let (a, c) = visser_rule(n).unwrap();
            let expected: BTreeSet<u32> = (1..=2 * n + 2).collect();
            assert_eq!(a.atoms(), expected);
            assert_eq!(c.atoms(), expected);
        }
    }

    #[test]
    fn translation_examples() {
        let phi: SetFormula = "#0 in #1".parse().unwrap();
        let psi: SetFormula = "#1 = #1".parse().unwrap();
        let mut t = PropTranslation::new();
        t.insert(0, phi.clone()).unwrap();
        t.insert(1, psi.clone()).unwrap();
        assert_eq!(apply_prop_translation(&t, &PropFormula::Bot).unwrap(), SetFormula::Bot);
        assert_eq!(apply_prop_translation(&t, &PropFormula::Atom(0)).unwrap(), phi);
        assert_eq!(
            apply_prop_translation(&t, &parse_prop("p0 /\\ p1").unwrap()).unwrap(),
            SetFormula::and(phi, psi)
        );
        assert_eq!(
            apply_prop_translation(&t, &PropFormula::Atom(7)),
            Err(LangError::MissingAtom(7))
        );
        assert!(t.insert(2, "x in #1".parse().unwrap()).is_err());
    }
}
