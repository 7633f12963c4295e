//! A program that never halts in finitely many steps: the ω-limit rule sends it to line 2
//! with the loop register empty, and it leaves the loop.
use srm::asm::{assemble, expand_macros};
use srm::vm::{run, OracleTable, RunLimits};

fn main() {
    let src = "1: ADD 0 1\n2: JEZ 1 6\n3: REMOVE 0 1\n4: ADD 0 1\n5: JEZ 2 2\n6: ZERO 0\n7: ADD 0 0";
    let p = expand_macros(&assemble(src).unwrap());
    let (out, trace) = run(&p, &[], &OracleTable::new(), &RunLimits::default());
    println!("{out}");
    for m in &trace.limits {
        let c = &trace.configurations[m.index];
        println!("limit after prefix {} with period {}: line {}, registers {:?}", m.prefix, m.period, c.line,
            c.registers.iter().map(|r| r.to_string()).collect::<Vec<_>>());
    }
    print!("{trace}");
}
