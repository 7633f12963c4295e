mod common;

use std::collections::HashMap;

use proptest::prelude::*;

use common::{hf_from_seed, random_macro_program, random_program, reference_run, rng};
use srm::asm::{assemble, decode_program, disassemble, disassemble_program, encode_program, expand_macros, Program};
use srm::vm::{run_outcome, OracleTable, Outcome, RunLimits};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn code_round_trip(seed in any::<u64>()) {
        let p = random_program(&mut rng(seed), 10, 5, true);
        prop_assert_eq!(decode_program(&encode_program(&p)).unwrap(), p);
    }

    #[test]
    fn assembly_round_trip(seed in any::<u64>()) {
        let mp = random_macro_program(&mut rng(seed), 10, 5);
        let text = disassemble(&mp);
        let back = assemble(&text).unwrap();
        prop_assert_eq!(disassemble(&back), text);
        let p = random_program(&mut rng(seed), 10, 5, true);
        let text = disassemble_program(&p);
        prop_assert_eq!(expand_macros(&assemble(&text).unwrap()), p);
    }

    #[test]
    fn expansion_uses_fresh_registers_and_keeps_result(seed in any::<u64>()) {
        let mp = random_macro_program(&mut rng(seed), 8, 3);
        let p = expand_macros(&mp);
        let top = mp.max_register().unwrap_or(0);
        let source_regs: Vec<u16> = mp.lines.iter().flat_map(|l| l.registers()).collect();
        for line in &p.lines {
            for r in line.registers() {
                prop_assert!(source_regs.contains(&r) || r > top, "register {} is new but not above {}", r, top);
            }
        }
        if !mp.has_macros() {
            prop_assert_eq!(p.len(), mp.len());
        }
        let inputs = [hf_from_seed(seed, 3), hf_from_seed(seed ^ 1, 3)];
        if let Some(expected) = reference_run(&mp, &inputs, 400) {
            let out = run_outcome(&p, &inputs, &OracleTable::new(), &RunLimits::with_steps(200_000));
            match out {
                Outcome::Halted { value, limit_jumps: 0, .. } => prop_assert_eq!(value, expected),
                other => prop_assert!(false, "reference halted, expansion gave {}", other),
            }
        }
    }
}

#[test]
fn code_is_injective_on_corpus() {
    let mut r = rng(5);
    let mut seen: HashMap<srm::HfSet, Program> = HashMap::new();
    for _ in 0..3000 {
        let p = random_program(&mut r, 6, 4, true);
        let c = encode_program(&p);
        if let Some(q) = seen.insert(c, p.clone()) {
            assert_eq!(q, p);
        }
    }
}

#[test]
fn expansion_agrees_with_reference_on_many_halting_runs() {
    let mut r = rng(21);
    let mut compared = 0;
    for i in 0..400u64 {
        let mp = random_macro_program(&mut r, 8, 3);
        let inputs = [hf_from_seed(i, 3), hf_from_seed(i + 1000, 3)];
        let Some(expected) = reference_run(&mp, &inputs, 400) else { continue };
        let out = run_outcome(&expand_macros(&mp), &inputs, &OracleTable::new(), &RunLimits::with_steps(200_000));
        assert_eq!(out.value(), Some(&expected), "{}", disassemble(&mp));
        compared += 1;
    }
    assert!(compared >= 100, "only {compared} halting runs");
}
