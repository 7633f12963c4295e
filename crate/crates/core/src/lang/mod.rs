//! Propositional, predicate-logic and set-theoretic formulas; translations between them;
//! Visser rule instances; Δ₀ classification and Gödel coding.

mod fo;
mod godel;
mod prop;
mod set;
mod syntax;

pub use fo::{apply_fo_translation, FoFormula, FoTranslation};
pub use godel::{godel_decode_formula, godel_encode_formula};
pub use prop::{
    apply_prop_translation, parse_prop, print_prop, visser_atom_name, visser_rule, PropFormula,
    PropTranslation,
};
pub use set::{parse_setformula, print_setformula, SetFormula, Term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("translation has no entry for atom p{0}")]
    MissingAtom(u32),
    #[error("translation has no entry for predicate P{0}")]
    MissingPredicate(u32),
    #[error("predicate P{predicate} takes {expected} arguments, got {found}")]
    ArityMismatch {
        predicate: u32,
        expected: usize,
        found: usize,
    },
    #[error("variable `{0}` is free where it may not be")]
    NotClosed(String),
    #[error("malformed code: {0}")]
    MalformedCode(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
