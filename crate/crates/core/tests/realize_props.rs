mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use common::rng;
use srm::realize::{axiom_formula, check, corrupted_realizers, replay, standard_sample, CheckContext, Verdict};

fn sub_context(seed: u64, keep: usize) -> CheckContext {
    let mut ctx = CheckContext::standard();
    let mut sample = standard_sample();
    sample.shuffle(&mut rng(seed));
    sample.truncate(keep);
    ctx.domain_sample = sample;
    ctx
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// A refutation found on a subsample survives enlarging the sample and replays.
    #[test]
    fn refutations_persist_under_enlargement(seed in any::<u64>(), keep in 3usize..10) {
        let small = sub_context(seed, keep);
        let full = CheckContext::standard();
        for c in corrupted_realizers() {
            let f = axiom_formula(c.axiom).unwrap();
            if let Verdict::Refuted(w) = check(&c.realizer, &f, &small).unwrap() {
                prop_assert!(replay(&c.realizer, &f, &small, &w), "{}", c.name);
                prop_assert!(check(&c.realizer, &f, &full).unwrap().is_refuted(), "{}", c.name);
            }
        }
    }
}
