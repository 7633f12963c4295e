mod common;

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use rand::Rng;

use common::{random_prop, rng};
use srm::delta0::random_delta0;
use srm::lang::{
    apply_prop_translation, godel_decode_formula, godel_encode_formula, visser_rule, PropFormula, PropTranslation,
    SetFormula,
};

fn translation() -> PropTranslation {
    let mut t = PropTranslation::new();
    t.insert(0, "exists x . forall y . ~y in x".parse().unwrap()).unwrap();
    t.insert(1, "forall x . exists y . x in y".parse().unwrap()).unwrap();
    t.insert(2, "bot".parse().unwrap()).unwrap();
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn set_formula_text_round_trip(seed in any::<u64>()) {
        let f = random_delta0(&mut rng(seed), 4, &["x", "y"]);
        let back: SetFormula = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn prop_formula_text_round_trip(seed in any::<u64>()) {
        let f = random_prop(&mut rng(seed), 5, 4);
        let back: PropFormula = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn godel_round_trip(seed in any::<u64>()) {
        let f = random_delta0(&mut rng(seed), 3, &["x"]);
        prop_assert_eq!(godel_decode_formula(&godel_encode_formula(&f)).unwrap(), f);
    }

    #[test]
    fn translation_is_homomorphic(seed in any::<u64>()) {
        let t = translation();
        let f = random_prop(&mut rng(seed), 4, 3);
        let tr = |g: &PropFormula| apply_prop_translation(&t, g).unwrap();
        let expected = match &f {
            PropFormula::And(a, b) => SetFormula::and(tr(a), tr(b)),
            PropFormula::Or(a, b) => SetFormula::or(tr(a), tr(b)),
            PropFormula::Imp(a, b) => SetFormula::imp(tr(a), tr(b)),
            PropFormula::Bot => SetFormula::Bot,
            PropFormula::Atom(i) => t.get(*i).unwrap().clone(),
        };
        prop_assert_eq!(tr(&f), expected);
    }
}

#[test]
fn godel_coding_is_injective_on_corpus() {
    let mut r = rng(11);
    let mut seen: HashMap<srm::HfSet, SetFormula> = HashMap::new();
    let mut distinct = 0;
    for _ in 0..10_000 {
        let depth = r.gen_range(0..=3);
        let f = random_delta0(&mut r, depth, &["x", "y"]);
        let code = godel_encode_formula(&f);
        match seen.get(&code) {
            Some(g) => assert_eq!(g, &f, "two formulas share a code"),
            None => {
                distinct += 1;
                seen.insert(code, f);
            }
        }
    }
    assert!(distinct > 1000);
}

#[test]
fn visser_rules_use_expected_atoms() {
    for n in 1..6u32 {
        let (a, c) = visser_rule(n).unwrap();
        let expected: BTreeSet<u32> = (1..=2 * n + 2).collect();
        let mut used = a.atoms();
        used.extend(c.atoms());
        assert_eq!(used, expected, "n = {n}");
        assert_eq!(c.disjuncts().len(), n as usize + 2);
    }
    assert!(visser_rule(0).is_err());
}
