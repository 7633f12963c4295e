//! Injective coding of set formulas as hereditarily finite sets.
//!
//! Every node is `⟨#tag, payload⟩`. Terms: `⟨#0, name⟩` for variables and `⟨#1, a⟩` for
//! constants, where a name is the sequence of its characters, each character `c` coded as the
//! `c`-th set in Ackermann order. Formula tags: `=` 0, `∈` 1, `⊥` 2, `∧` 3, `∨` 4, `→` 5,
//! `∃` 6, `∀` 7, bounded `∃` 8, bounded `∀` 9; binary payloads are pairs, quantifier
//! payloads `⟨var, body⟩` or `⟨var, ⟨bound, body⟩⟩`.

use super::set::{SetFormula, Term};
use super::LangError;
use crate::hfset::{f_tau, f_tau_inv, HfSet};

fn node(tag: usize, payload: HfSet) -> HfSet {
    HfSet::ordered_pair(&HfSet::numeral(tag), &payload)
}

fn pair(a: HfSet, b: HfSet) -> HfSet {
    HfSet::ordered_pair(&a, &b)
}

fn encode_name(name: &str) -> HfSet {
    let chars: Vec<HfSet> = name.chars().map(|c| f_tau(c as u64)).collect();
    HfSet::sequence(&chars)
}

fn encode_term(t: &Term) -> HfSet {
    match t {
        Term::Var(v) => node(0, encode_name(v)),
        Term::Const(c) => node(1, c.clone()),
    }
}

pub fn godel_encode_formula(f: &SetFormula) -> HfSet {
    match f {
        SetFormula::Eq(a, b) => node(0, pair(encode_term(a), encode_term(b))),
        SetFormula::In(a, b) => node(1, pair(encode_term(a), encode_term(b))),
        SetFormula::Bot => node(2, HfSet::empty()),
        SetFormula::And(a, b) => node(3, pair(godel_encode_formula(a), godel_encode_formula(b))),
        SetFormula::Or(a, b) => node(4, pair(godel_encode_formula(a), godel_encode_formula(b))),
        SetFormula::Imp(a, b) => node(5, pair(godel_encode_formula(a), godel_encode_formula(b))),
        SetFormula::Exists(v, b) => node(6, pair(encode_name(v), godel_encode_formula(b))),
        SetFormula::Forall(v, b) => node(7, pair(encode_name(v), godel_encode_formula(b))),
        SetFormula::BExists(v, t, b) => node(
            8,
            pair(encode_name(v), pair(encode_term(t), godel_encode_formula(b))),
        ),
        SetFormula::BForall(v, t, b) => node(
            9,
            pair(encode_name(v), pair(encode_term(t), godel_encode_formula(b))),
        ),
    }
}

fn malformed(what: &str, a: &HfSet) -> LangError {
    LangError::MalformedCode(format!("{what}: {a}"))
}

fn split(a: &HfSet, what: &str) -> Result<(HfSet, HfSet), LangError> {
    a.as_ordered_pair().ok_or_else(|| malformed(what, a))
}

fn split_node(a: &HfSet) -> Result<(usize, HfSet), LangError> {
    let (tag, payload) = split(a, "expected a tagged node")?;
    let tag = tag.to_natural().ok_or_else(|| malformed("tag is not a numeral", &tag))?;
    Ok((tag, payload))
}

fn decode_name(a: &HfSet) -> Result<String, LangError> {
    let items = a.as_sequence().ok_or_else(|| malformed("name is not a sequence", a))?;
    items
        .iter()
        .map(|c| {
            f_tau_inv(c)
                .ok()
                .and_then(|n| u32::try_from(n).ok())
                .and_then(char::from_u32)
                .ok_or_else(|| malformed("bad character code", c))
        })
        .collect()
}

fn decode_term(a: &HfSet) -> Result<Term, LangError> {
    match split_node(a)? {
        (0, name) => Ok(Term::Var(decode_name(&name)?)),
        (1, c) => Ok(Term::Const(c)),
        _ => Err(malformed("unknown term tag", a)),
    }
}

pub fn godel_decode_formula(a: &HfSet) -> Result<SetFormula, LangError> {
    let (tag, payload) = split_node(a)?;
    let binary = |payload: &HfSet| -> Result<(SetFormula, SetFormula), LangError> {
        let (x, y) = split(payload, "expected a pair of subformulas")?;
        Ok((godel_decode_formula(&x)?, godel_decode_formula(&y)?))
    };
    Ok(match tag {
        0 | 1 => {
            let (x, y) = split(&payload, "expected a pair of terms")?;
            let (x, y) = (decode_term(&x)?, decode_term(&y)?);
            if tag == 0 {
                SetFormula::Eq(x, y)
            } else {
                SetFormula::In(x, y)
            }
        }
        2 if payload.is_empty() => SetFormula::Bot,
        3 => {
            let (x, y) = binary(&payload)?;
            SetFormula::and(x, y)
        }
        4 => {
            let (x, y) = binary(&payload)?;
            SetFormula::or(x, y)
        }
        5 => {
            let (x, y) = binary(&payload)?;
            SetFormula::imp(x, y)
        }
        6 | 7 => {
            let (v, body) = split(&payload, "expected ⟨var, body⟩")?;
            let (v, body) = (decode_name(&v)?, Box::new(godel_decode_formula(&body)?));
            if tag == 6 {
                SetFormula::Exists(v, body)
            } else {
                SetFormula::Forall(v, body)
            }
        }
        8 | 9 => {
            let (v, rest) = split(&payload, "expected ⟨var, ⟨bound, body⟩⟩")?;
            let (bound, body) = split(&rest, "expected ⟨bound, body⟩")?;
            let v = decode_name(&v)?;
            let bound = decode_term(&bound)?;
            let body = Box::new(godel_decode_formula(&body)?);
            if tag == 8 {
                SetFormula::BExists(v, bound, body)
            } else {
                SetFormula::BForall(v, bound, body)
            }
        }
        _ => return Err(malformed("unknown formula tag", a)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_examples() {
        for s in [
            "x in y",
            "bot",
            "forall x in {#1,#3} . exists y . x in y \\/ ~y = #0",
            "exists zz' in w . zz' = w -> bot",
        ] {
            let f: SetFormula = s.parse().unwrap();
            assert_eq!(godel_decode_formula(&godel_encode_formula(&f)).unwrap(), f);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(godel_decode_formula(&HfSet::numeral(3)).is_err());
        let bad_tag = HfSet::ordered_pair(&HfSet::numeral(11), &HfSet::empty());
        assert!(matches!(godel_decode_formula(&bad_tag), Err(LangError::MalformedCode(_))));
    }
}
