mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{cycling_suite, halting_traces, hf, limits_are_sound, mutate, oracle_case, program, random_program, rng};
use srm::vm::{check_trace, run, step, OracleTable, Outcome, RunLimits, Step, Trace};
use srm::HfSet;

#[test]
fn cycling_suite_matches_hand_derivations() {
    for c in cycling_suite() {
        let p = program(c.source);
        let (out, t) = run(&p, &[], &OracleTable::new(), &c.limits);
        let m = t.limits.first().unwrap_or_else(|| panic!("{}: no limit ({out})", c.name));
        let post = &t.configurations[m.index];
        let (line, regs) = c.first_limit;
        assert_eq!(post.line, line, "{}", c.name);
        let expected: Vec<HfSet> = regs.iter().map(|s| hf(s)).collect();
        assert_eq!(post.registers, expected, "{}", c.name);
        limits_are_sound(&t).unwrap_or_else(|e| panic!("{}: {e}", c.name));
        assert!(check_trace(&p, &t, &OracleTable::new()) || out.value().is_none(), "{}", c.name);
    }
}

#[test]
fn halting_traces_are_accepted_and_mutants_rejected() {
    let corpus = halting_traces(40, 3);
    let o = OracleTable::new();
    for (p, t) in &corpus {
        assert!(check_trace(p, t, &o));
        let text = t.to_string();
        assert_eq!(&text.parse::<Trace>().unwrap(), t);
    }
    let mut r = rng(4);
    for i in 0..100 {
        let (p, t) = &corpus[i % corpus.len()];
        let bad = mutate(t, &mut r);
        assert_ne!(&bad, t);
        assert!(!check_trace(p, &bad, &o), "mutant {i} accepted:\n{bad}");
    }
}

#[test]
fn undefined_oracle_query_diverges_at_its_line() {
    let p = program("1: ADD 0 1\n2: ORACLE 1 2\n3: COPY 2 0");
    let o: OracleTable = "#2 => #3".parse().unwrap();
    let lim = RunLimits::default();
    assert_eq!(run(&p, &[], &o, &lim).0, Outcome::OracleDiverged { line: 2 });
    let o: OracleTable = "#2 => #0\n{#0} => #3".parse().unwrap();
    assert_eq!(run(&p, &[], &o, &lim).0.value(), Some(&hf("#3")));
}

#[test]
fn extending_the_oracle_keeps_halting_values() {
    let lim = RunLimits::with_steps(20_000);
    let mut halted = 0;
    for seed in 0..400 {
        let c = oracle_case(seed);
        assert!(c.table.is_subtable_of(&c.extended));
        let (out, _) = run(&c.program, &c.inputs, &c.table, &lim);
        if let Some(v) = out.value() {
            let (ext, _) = run(&c.program, &c.inputs, &c.extended, &lim);
            assert_eq!(ext.value(), Some(v), "seed {seed}");
            halted += 1;
        }
    }
    assert!(halted >= 50);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn runs_are_deterministic_and_limits_sound(seed in any::<u64>()) {
        let p = random_program(&mut rng(seed), 10, 4, false);
        let inputs = [common::hf_from_seed(seed, 2)];
        let lim = RunLimits { max_steps: 5000, max_limit_jumps: 3, ..Default::default() };
        let a = run(&p, &inputs, &OracleTable::new(), &lim);
        let b = run(&p, &inputs, &OracleTable::new(), &lim);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(limits_are_sound(&a.1), Ok(()));
        if a.0.value().is_some() {
            prop_assert!(check_trace(&p, &a.1, &OracleTable::new()));
        }
    }

    #[test]
    fn a_step_changes_at_most_one_register(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_program(&mut r, 10, 4, false);
        let inputs = [common::hf_from_seed(seed, 2), common::hf_from_seed(seed ^ 7, 2)];
        let lim = RunLimits { max_steps: 300, max_limit_jumps: 0, ..Default::default() };
        let (_, t) = run(&p, &inputs, &OracleTable::new(), &lim);
        let i = r.gen_range(0..t.configurations.len());
        let c = &t.configurations[i];
        if let Ok(Step::Next(d)) = step(&p, c, &OracleTable::new(), &lim) {
            let changed = c.registers.iter().zip(&d.registers).filter(|(x, y)| x != y).count();
            prop_assert!(changed <= 1);
        }
    }
}
