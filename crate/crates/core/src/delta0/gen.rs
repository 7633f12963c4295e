use rand::Rng;

use crate::hfset::random_hf;
use crate::lang::{SetFormula, Term};

/// A random Δ₀ formula of depth at most `max_depth` whose free variables are among `free`.
/// Terms are variables in scope or, occasionally, constants of rank at most 2.
pub fn random_delta0<R: Rng + ?Sized>(rng: &mut R, max_depth: usize, free: &[&str]) -> SetFormula {
    let scope: Vec<String> = free.iter().map(|s| s.to_string()).collect();
    let mut counter = 0;
    formula(rng, max_depth, &scope, &mut counter)
}

fn term<R: Rng + ?Sized>(rng: &mut R, scope: &[String]) -> Term {
    if scope.is_empty() || rng.gen_ratio(1, 6) {
        Term::Const(random_hf(rng, 2))
    } else {
        Term::Var(scope[rng.gen_range(0..scope.len())].clone())
    }
}

fn formula<R: Rng + ?Sized>(rng: &mut R, depth: usize, scope: &[String], counter: &mut usize) -> SetFormula {
    let choice = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..9) };
    match choice {
        0 => SetFormula::Eq(term(rng, scope), term(rng, scope)),
        1 => SetFormula::In(term(rng, scope), term(rng, scope)),
        2 if rng.gen_ratio(1, 8) => SetFormula::Bot,
        2 => SetFormula::In(term(rng, scope), term(rng, scope)),
        3 => SetFormula::and(formula(rng, depth - 1, scope, counter), formula(rng, depth - 1, scope, counter)),
        4 => SetFormula::or(formula(rng, depth - 1, scope, counter), formula(rng, depth - 1, scope, counter)),
        5 => SetFormula::imp(formula(rng, depth - 1, scope, counter), formula(rng, depth - 1, scope, counter)),
        6 => SetFormula::not(formula(rng, depth - 1, scope, counter)),
        _ => {
            let bound = term(rng, scope);
            *counter += 1;
            let v = format!("q{counter}");
            let mut inner = scope.to_vec();
            inner.push(v.clone());
            let body = Box::new(formula(rng, depth - 1, &inner, counter));
            if choice == 7 {
                SetFormula::BExists(v, bound, body)
            } else {
                SetFormula::BForall(v, bound, body)
            }
        }
    }
}

