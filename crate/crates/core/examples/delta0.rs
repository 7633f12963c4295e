//! Δ₀ formulas: native evaluation, compilation to a program, and a differential fuzz.
use std::collections::BTreeMap;

use srm::asm::{disassemble_program, expand_macros};
use srm::delta0::{compile_delta0, differential_fuzz, eval_delta0, eval_sigma1};
use srm::lang::SetFormula;
use srm::vm::{run_as_function, OracleTable, RunLimits};
use srm::HfSet;

fn main() {
    let f: SetFormula = "forall y in x . y in z".parse().unwrap();
    let (x, z): (HfSet, HfSet) = ("{#0, #1}".parse().unwrap(), HfSet::numeral(2));
    let env = BTreeMap::from([("x".to_string(), x.clone()), ("z".to_string(), z.clone())]);
    println!("{f}: {}", eval_delta0(&f, &env).unwrap());

    let p = expand_macros(&compile_delta0(&f, &["x", "z"]).unwrap());
    print!("{}", disassemble_program(&p));
    let out = run_as_function(&p, &[x, z], &OracleTable::new(), &RunLimits::default()).unwrap();
    println!("compiled: {out}");

    let g: SetFormula = "exists w . x in w /\\ z in w".parse().unwrap();
    println!("{g}: {:?}", eval_sigma1(&g, &env, 512).unwrap());

    println!("{}", differential_fuzz(100, 3, 3, 1, &RunLimits::default()));
}
