//! Regular Beth models: the excluded-middle countermodel, forcing tables and bars.
use srm::beth::{bar_witness, countermodel_search, force, validate_model, RegularBethModel};
use srm::lang::PropFormula;

fn main() {
    let m = RegularBethModel::excluded_middle_model();
    print!("{m}");
    println!("violations: {}", validate_model(&m).len());
    let em: PropFormula = "p0 \\/ ~p0".parse().unwrap();
    let nnem: PropFormula = "~~(p0 \\/ ~p0)".parse().unwrap();
    println!("root forces {em}: {:?}", force(&m, &em).root_forces(&em));
    println!("root forces {nnem}: {:?}", force(&m, &nnem).root_forces(&nnem));

    let p0: PropFormula = "p0 \\/ p0".parse().unwrap();
    println!("bar for {p0} at s1: {:?}", bar_witness(&m, 1, &p0));

    let dummett: PropFormula = "(p0 -> p1) \\/ (p1 -> p0)".parse().unwrap();
    match countermodel_search(&dummett, 3, 3) {
        Some(c) => print!("countermodel for {dummett}:\n{c}"),
        None => println!("no countermodel"),
    }
}
