//! Record a run, check the trace, then tamper with it.
use srm::stdlib;
use srm::vm::{check_trace_detailed, run, OracleTable, RunLimits, Trace};
use srm::HfSet;

fn main() {
    let p = &stdlib::get("union2").unwrap().expanded;
    let o = OracleTable::new();
    let lim = RunLimits::default();
    let (_, trace) = run(p, &[HfSet::numeral(2), "{#5}".parse().unwrap()], &o, &lim);
    let text = trace.to_string();
    print!("{text}");
    println!("original: {:?}", check_trace_detailed(p, &trace, &o, &lim));

    let mut bad: Trace = text.parse().unwrap();
    let last = bad.configurations.len() - 1;
    bad.configurations[last].registers[0] = HfSet::numeral(9);
    match check_trace_detailed(p, &bad, &o, &lim) {
        Ok(()) => println!("tampered: accepted"),
        Err(v) => println!("tampered: {v}"),
    }
}
