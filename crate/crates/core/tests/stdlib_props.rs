mod common;

use proptest::prelude::*;

use common::hf_from_seed;
use srm::stdlib::run_entry;
use srm::vm::RunLimits;
use srm::HfSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eq_is_reflexive_and_symmetric(s in any::<u64>(), t in any::<u64>()) {
        let lim = RunLimits::default();
        let (a, b) = (hf_from_seed(s, 3), hf_from_seed(t, 3));
        prop_assert_eq!(run_entry("eq", &[a.clone(), a.clone()], &lim).unwrap(), HfSet::numeral(1));
        let ab = run_entry("eq", &[a.clone(), b.clone()], &lim).unwrap();
        prop_assert_eq!(&ab, &run_entry("eq", &[b.clone(), a.clone()], &lim).unwrap());
        prop_assert_eq!(ab == HfSet::numeral(1), a == b);
    }

    #[test]
    fn projections_invert_pairing(s in any::<u64>(), t in any::<u64>()) {
        let lim = RunLimits::default();
        let (a, b) = (hf_from_seed(s, 3), hf_from_seed(t, 3));
        let p = run_entry("opair", &[a.clone(), b.clone()], &lim).unwrap();
        prop_assert_eq!(run_entry("proj1", std::slice::from_ref(&p), &lim).unwrap(), a);
        prop_assert_eq!(run_entry("proj2", &[p], &lim).unwrap(), b);
    }
}

#[test]
fn worked_values() {
    let lim = RunLimits::default();
    let hf = |s: &str| s.parse::<HfSet>().unwrap();
    assert_eq!(run_entry("tau_less", &[hf("∅"), hf("{∅}")], &lim).unwrap(), hf("#1"));
    assert_eq!(run_entry("f_tau", &[hf("#2")], &lim).unwrap(), hf("{{∅}}"));
    assert_eq!(run_entry("vstage", &[hf("#3")], &lim).unwrap().len(), 4);
}
