//! Every catalogue program against its native reference.
use srm::stdlib;
use srm::HfSet;
use srm::vm::RunLimits;

fn main() {
    let lim = RunLimits::default();
    let v = stdlib::run_entry("vstage", &[HfSet::numeral(3)], &lim).unwrap();
    println!("vstage(#3) = {v}");
    for name in stdlib::list() {
        let r = stdlib::differential_test(name, 50, 3, 7).unwrap();
        println!("{r}");
    }
}
