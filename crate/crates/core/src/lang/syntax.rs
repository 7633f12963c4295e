//! Precedence parser and printer shared by the three formula languages.
//!
//! ```text
//! formula := or ( "->" formula )?                       (right associative)
//! or      := and ( "\/" and )*                          (left associative)
//! and     := unary ( "/\" unary )*
//! unary   := "~" unary | quant | "(" formula ")" | "bot" | atom
//! quant   := ("forall" | "exists") var ( "in" term )? "." formula
//! ```
//! Unicode forms `→ ∨ ∧ ¬ ⊥ ∀ ∃ ∈` are accepted alongside the ASCII ones. `~A` is sugar
//! for `A -> bot`. Quantifier bodies extend as far to the right as possible.

use std::fmt::{self, Write};

use crate::text::{Cursor, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Quant {
    Forall,
    Exists,
}

/// A formula language plugged into the shared grammar.
pub(crate) trait Syntax: Sized {
    /// Bound of a bounded quantifier, where the language has them.
    type Bound;

    fn bot() -> Self;
    fn and(a: Self, b: Self) -> Self;
    fn or(a: Self, b: Self) -> Self;
    fn imp(a: Self, b: Self) -> Self;
    fn quant(
        cur: &Cursor<'_>,
        q: Quant,
        var: String,
        bound: Option<Self::Bound>,
        body: Self,
    ) -> Result<Self, ParseError>;
    fn parse_bound(cur: &mut Cursor<'_>) -> Result<Self::Bound, ParseError>;
    fn parse_atom(cur: &mut Cursor<'_>) -> Result<Self, ParseError>;

    fn view(&self) -> View<'_, Self>;
    fn write_atom(&self, out: &mut String);
    fn write_bound(bound: &Self::Bound, out: &mut String);
}

pub(crate) enum View<'a, F: Syntax> {
    Atom,
    Bot,
    And(&'a F, &'a F),
    Or(&'a F, &'a F),
    Imp(&'a F, &'a F),
    Quant(Quant, &'a str, Option<&'a F::Bound>, &'a F),
}

pub(crate) const KEYWORDS: &[&str] = &["forall", "exists", "in", "bot"];

pub(crate) fn parse_complete<F: Syntax>(src: &str) -> Result<F, ParseError> {
    let mut cur = Cursor::new(src);
    let f = parse_formula::<F>(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(f)
}

fn parse_formula<F: Syntax>(cur: &mut Cursor<'_>) -> Result<F, ParseError> {
    let lhs = parse_or::<F>(cur)?;
    if cur.eat("->") || cur.eat("→") {
        let rhs = parse_formula::<F>(cur)?;
        return Ok(F::imp(lhs, rhs));
    }
    Ok(lhs)
}

fn parse_or<F: Syntax>(cur: &mut Cursor<'_>) -> Result<F, ParseError> {
    let mut acc = parse_and::<F>(cur)?;
    while cur.eat("\\/") || cur.eat("∨") {
        let rhs = parse_and::<F>(cur)?;
        acc = F::or(acc, rhs);
    }
    Ok(acc)
}

fn parse_and<F: Syntax>(cur: &mut Cursor<'_>) -> Result<F, ParseError> {
    let mut acc = parse_unary::<F>(cur)?;
    while cur.eat("/\\") || cur.eat("∧") {
        let rhs = parse_unary::<F>(cur)?;
        acc = F::and(acc, rhs);
    }
    Ok(acc)
}

fn parse_unary<F: Syntax>(cur: &mut Cursor<'_>) -> Result<F, ParseError> {
    if cur.eat("~") || cur.eat("¬") {
        let inner = parse_unary::<F>(cur)?;
        return Ok(F::imp(inner, F::bot()));
    }
    let quant = if cur.eat_keyword("forall") || cur.eat("∀") {
        Some(Quant::Forall)
    } else if cur.eat_keyword("exists") || cur.eat("∃") {
        Some(Quant::Exists)
    } else {
        None
    };
    if let Some(q) = quant {
        let var = parse_var(cur)?;
        let bound = if cur.eat_keyword("in") || cur.eat("∈") {
            Some(F::parse_bound(cur)?)
        } else {
            None
        };
        cur.expect(".")?;
        let body = parse_formula::<F>(cur)?;
        return F::quant(cur, q, var, bound, body);
    }
    if cur.eat("(") {
        let f = parse_formula::<F>(cur)?;
        cur.expect(")")?;
        return Ok(f);
    }
    if cur.eat_keyword("bot") || cur.eat("⊥") {
        return Ok(F::bot());
    }
    F::parse_atom(cur)
}

pub(crate) fn parse_var(cur: &mut Cursor<'_>) -> Result<String, ParseError> {
    let save = cur.pos;
    match cur.ident() {
        Some(id) if !KEYWORDS.contains(&id) => Ok(id.to_string()),
        _ => {
            cur.pos = save;
            Err(cur.error("expected a variable name"))
        }
    }
}

/// Binding strength used to decide where parentheses are needed.
fn level<F: Syntax>(f: &F) -> u8 {
    match f.view() {
        View::Quant(..) => 0,
        View::Imp(_, b) if matches!(b.view(), View::Bot) => 4,
        View::Imp(..) => 1,
        View::Or(..) => 2,
        View::And(..) => 3,
        View::Atom | View::Bot => 4,
    }
}

pub(crate) fn print<F: Syntax>(f: &F) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_wrapped<F: Syntax>(f: &F, min_level: u8, out: &mut String) {
    if level(f) < min_level {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}

fn write_formula<F: Syntax>(f: &F, out: &mut String) {
    match f.view() {
        View::Atom => f.write_atom(out),
        View::Bot => out.push_str("bot"),
        View::Imp(a, b) if matches!(b.view(), View::Bot) => {
            out.push('~');
            write_wrapped(a, 4, out);
        }
        View::And(a, b) => {
            write_wrapped(a, 3, out);
            out.push_str(" /\\ ");
            write_wrapped(b, 4, out);
        }
        View::Or(a, b) => {
            write_wrapped(a, 2, out);
            out.push_str(" \\/ ");
            write_wrapped(b, 3, out);
        }
        View::Imp(a, b) => {
            write_wrapped(a, 2, out);
            out.push_str(" -> ");
            write_wrapped(b, 1, out);
        }
        View::Quant(q, var, bound, body) => {
            out.push_str(match q {
                Quant::Forall => "forall ",
                Quant::Exists => "exists ",
            });
            out.push_str(var);
            if let Some(b) = bound {
                out.push_str(" in ");
                F::write_bound(b, out);
            }
            out.push_str(" . ");
            write_formula(body, out);
        }
    }
}

/// Display adapter used by the formula types.
pub(crate) fn display<F: Syntax>(f: &F, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
    fmt.write_str(&print(f))
}

pub(crate) fn push_display(out: &mut String, value: impl fmt::Display) {
    let _ = write!(out, "{value}");
}
