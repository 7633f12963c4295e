mod common;

use std::cmp::Ordering;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::{hf, hf_from_seed};
use srm::hfset::{ack_compare, f_tau, f_tau_inv, liminf_cycle, liminf_stabilized, v_stage, DEFAULT_POWERSET_LIMIT};
use srm::HfSet;

/// Ackermann code as an unbounded integer, computed without the library order.
fn code(x: &HfSet) -> BigUint {
    x.iter().fold(BigUint::default(), |acc, y| {
        let k = code(y);
        let shift = usize::try_from(&k).expect("member codes stay small");
        acc + (BigUint::from(1u8) << shift)
    })
}

fn set(max_rank: u32) -> impl Strategy<Value = HfSet> {
    any::<u64>().prop_map(move |s| hf_from_seed(s, max_rank))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn order_matches_ackermann_integers(a in set(5), b in set(5)) {
        prop_assert_eq!(ack_compare(&a, &b), code(&a).cmp(&code(&b)));
    }

    #[test]
    fn order_is_strict_total(a in set(4), b in set(4), c in set(4)) {
        prop_assert_eq!(ack_compare(&a, &b), ack_compare(&b, &a).reverse());
        prop_assert_eq!(ack_compare(&a, &b) == Ordering::Equal, a == b);
        if ack_compare(&a, &b) == Ordering::Less && ack_compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(ack_compare(&a, &c), Ordering::Less);
        }
        if a.rank() < b.rank() {
            prop_assert_eq!(ack_compare(&a, &b), Ordering::Less);
        }
    }

    #[test]
    fn canonical_form(a in set(4)) {
        let rebuilt = HfSet::make_set(a.iter().rev().cloned().chain(a.iter().cloned()));
        prop_assert_eq!(&rebuilt, &a);
        prop_assert_eq!(HfSet::make_set(rebuilt.iter().cloned()), rebuilt);
        let text = a.to_string();
        prop_assert_eq!(text.parse::<HfSet>().unwrap(), a);
    }

    #[test]
    fn rank_is_one_above_members(a in set(4)) {
        let expected = a.iter().map(|y| y.rank() + 1).max().unwrap_or(0);
        prop_assert_eq!(a.rank(), expected);
    }

    #[test]
    fn pairing_laws(a in set(3), b in set(3)) {
        let p = HfSet::ordered_pair(&a, &b);
        prop_assert_eq!(p.proj1().unwrap(), a.clone());
        prop_assert_eq!(p.proj2().unwrap(), b.clone());
        prop_assert_eq!(p.big_intersect().unwrap(), HfSet::singleton(a.clone()));
        prop_assert_eq!(p.big_union(), HfSet::pair(a, b));
    }

    #[test]
    fn enumeration_position_is_ackermann_code(a in set(4)) {
        prop_assert_eq!(BigUint::from(f_tau_inv(&a).unwrap()), code(&a));
    }

    /// For a stream `prefix · cycle^ω` the library liminf of the cycle agrees with the tail
    /// formula on an unrolling and with the membership characterisation.
    #[test]
    fn liminf_agreement(seed in any::<u64>(), k in 0usize..4, p in 1usize..5) {
        let xs: Vec<HfSet> = (0..k + p).map(|i| hf_from_seed(seed.wrapping_add(i as u64), 3)).collect();
        let cycle = &xs[k..];
        let lim = liminf_cycle(cycle).unwrap();
        let mut unrolled = xs[..k].to_vec();
        for _ in 0..3 {
            unrolled.extend_from_slice(cycle);
        }
        prop_assert_eq!(liminf_stabilized(&unrolled, p).unwrap(), lim.clone());
        for v in cycle {
            for x in v.iter() {
                prop_assert_eq!(lim.contains(x), cycle.iter().all(|c| c.contains(x)));
            }
        }
    }
}

#[test]
fn enumeration_inverts_and_increases() {
    let mut prev: Option<HfSet> = None;
    for n in 0..1000u64 {
        let s = f_tau(n);
        assert_eq!(f_tau_inv(&s).unwrap(), n);
        if let Some(p) = prev {
            assert_eq!(ack_compare(&p, &s), Ordering::Less);
        }
        prev = Some(s);
    }
}

#[test]
fn stage_sizes_double_exponentially() {
    let mut last = 0usize;
    for n in 0..=4 {
        let v = v_stage(n, DEFAULT_POWERSET_LIMIT).unwrap();
        if n > 0 {
            assert_eq!(v.len(), 1 << last);
        }
        last = v.len();
    }
    assert_eq!(last, 16);
}

#[test]
fn literal_sugar() {
    assert_eq!(hf("<#0,#1>"), HfSet::ordered_pair(&HfSet::empty(), &HfSet::numeral(1)));
    assert_eq!(hf("{}"), hf("∅"));
    assert_eq!(hf("#2"), hf("{ ∅ , {∅} }"));
}
