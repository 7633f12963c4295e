//! Runs relative to a finite oracle table; a query outside the table diverges.
use srm::asm::assemble;
use srm::asm::expand_macros;
use srm::vm::{run_outcome, OracleTable, RunLimits};
use srm::HfSet;

fn main() {
    let p = expand_macros(&assemble("1: ORACLE 0 1\n2: COPY 1 0").unwrap());
    let table: OracleTable = "#1 => #3\n#2 => {#0}".parse().unwrap();
    for x in 0..4 {
        let out = run_outcome(&p, &[HfSet::numeral(x)], &table, &RunLimits::default());
        println!("x = #{x}: {out}");
    }
}
