//! Input generators for differential testing. `max_rank` bounds every randomly drawn set; for
//! structured inputs (pairs, functions, sequences) it bounds the components.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::hfset::{random_hf, HfSet};

pub(crate) type Gen = fn(&mut ChaCha8Rng, u32) -> Vec<HfSet>;

fn nonempty(rng: &mut ChaCha8Rng, max_rank: u32) -> HfSet {
    loop {
        let x = random_hf(rng, max_rank.max(1));
        if !x.is_empty() {
            return x;
        }
    }
}

fn function(rng: &mut ChaCha8Rng, max_rank: u32) -> HfSet {
    let dom = random_hf(rng, max_rank);
    HfSet::make_set(
        dom.iter()
            .map(|a| HfSet::ordered_pair(a, &random_hf(rng, max_rank)))
            .collect::<Vec<_>>(),
    )
}

fn sequence(rng: &mut ChaCha8Rng, max_rank: u32, min_len: usize) -> Vec<HfSet> {
    let len = rng.gen_range(min_len..=4);
    (0..len).map(|_| random_hf(rng, max_rank)).collect()
}

pub(crate) fn one(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    vec![random_hf(rng, r)]
}

pub(crate) fn two(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    vec![random_hf(rng, r), random_hf(rng, r)]
}

/// Equal with probability 1/3.
pub(crate) fn two_maybe_equal(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    let a = random_hf(rng, r);
    let b = if rng.gen_ratio(1, 3) { a.clone() } else { random_hf(rng, r) };
    vec![a, b]
}

pub(crate) fn opair(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    let (a, b) = (random_hf(rng, r), random_hf(rng, r));
    let b = if rng.gen_ratio(1, 4) { a.clone() } else { b };
    vec![HfSet::ordered_pair(&a, &b)]
}

/// Pairs, near-pairs `{{a},{b,c}}`, and arbitrary sets.
pub(crate) fn maybe_opair(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    match rng.gen_range(0..3) {
        0 => opair(rng, r),
        1 => {
            let [a, b, c] = [0; 3].map(|_| random_hf(rng, r));
            vec![HfSet::pair(HfSet::singleton(a), HfSet::pair(b, c))]
        }
        _ => one(rng, r),
    }
}

/// Functions, sets of pairs that may repeat a first coordinate, and arbitrary sets.
pub(crate) fn maybe_function(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    match rng.gen_range(0..4) {
        0 | 1 => vec![function(rng, r)],
        2 => {
            let f = function(rng, r);
            let extra = match f.take_least().and_then(|p| p.as_ordered_pair()) {
                Some((a, _)) => HfSet::ordered_pair(&a, &random_hf(rng, r)),
                None => HfSet::ordered_pair(&random_hf(rng, r), &random_hf(rng, r)),
            };
            vec![HfSet::add_element(&extra, &f)]
        }
        _ => one(rng, r),
    }
}

pub(crate) fn nonempty_set(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    vec![nonempty(rng, r)]
}

pub(crate) fn a_function(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    vec![function(rng, r)]
}

/// A nonempty function and a point of its domain.
pub(crate) fn function_and_point(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    loop {
        let f = function(rng, r);
        if f.is_empty() {
            continue;
        }
        let i = rng.gen_range(0..f.len());
        let x = f.elements()[i].proj1().expect("members are pairs");
        return vec![f, x];
    }
}

/// Numerals, numerals with one member dropped or one set added, and arbitrary sets.
pub(crate) fn maybe_ordinal(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    let n = HfSet::numeral(rng.gen_range(0..=(r as usize + 1).min(5)));
    vec![match rng.gen_range(0..4) {
        0 => n,
        1 if !n.is_empty() => {
            let i = rng.gen_range(0..n.len());
            HfSet::diff_singleton(&n.elements()[i], &n)
        }
        2 => HfSet::add_element(&random_hf(rng, r), &n),
        _ => random_hf(rng, r),
    }]
}

/// Sequences, sequences with a gap, other functions, and arbitrary sets.
pub(crate) fn maybe_sequence(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    vec![match rng.gen_range(0..5) {
        0 | 1 => HfSet::sequence(&sequence(rng, r, 0)),
        2 => {
            let s = HfSet::sequence(&sequence(rng, r, 2));
            HfSet::diff_singleton(&s.elements()[0], &s)
        }
        3 => function(rng, r),
        _ => random_hf(rng, r),
    }]
}

/// A set mixing numerals with arbitrary sets.
pub(crate) fn mixed_ordinals(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    let k = rng.gen_range(0..=4);
    vec![HfSet::make_set(
        (0..k)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    HfSet::numeral(rng.gen_range(0..=3))
                } else {
                    random_hf(rng, r)
                }
            })
            .collect::<Vec<_>>(),
    )]
}

pub(crate) fn sequence_and_index(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    let s = sequence(rng, r, 1);
    let i = rng.gen_range(0..s.len());
    vec![HfSet::sequence(&s), HfSet::numeral(i)]
}

pub(crate) fn nonempty_sequence(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    vec![HfSet::sequence(&sequence(rng, r, 1))]
}

/// `(x, y)` with `x = P(y)` half the time, otherwise a near miss or an arbitrary set.
pub(crate) fn maybe_powerset(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    let y = random_hf(rng, r);
    let p = y.powerset(1 << 16).expect("rank-bounded sets are small");
    let x = match rng.gen_range(0..4) {
        0 | 1 => p,
        2 => {
            let i = rng.gen_range(0..p.len());
            HfSet::diff_singleton(&p.elements()[i], &p)
        }
        _ => random_hf(rng, r + 1),
    };
    vec![x, y]
}

pub(crate) fn small_numeral(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    vec![HfSet::numeral(rng.gen_range(0..=(r as usize).min(4)))]
}

pub(crate) fn code_below_16(rng: &mut ChaCha8Rng, _: u32) -> Vec<HfSet> {
    vec![HfSet::numeral(rng.gen_range(0..16))]
}

pub(crate) fn rank_at_most_3(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    vec![random_hf(rng, r.min(3))]
}

/// A family of nonempty sets.
pub(crate) fn nonempty_family(rng: &mut ChaCha8Rng, r: u32) -> Vec<HfSet> {
    let k = rng.gen_range(0..=4);
    vec![HfSet::make_set((0..k).map(|_| nonempty(rng, r)).collect::<Vec<_>>())]
}
