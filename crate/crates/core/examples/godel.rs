//! Formulas as sets, and a first-order translation.
use srm::lang::{apply_fo_translation, godel_decode_formula, godel_encode_formula, FoFormula, FoTranslation, SetFormula};

fn main() {
    let f: SetFormula = "forall y in x . exists z . y in z".parse().unwrap();
    let code = godel_encode_formula(&f);
    println!("{f}\n  code rank {}", code.rank());
    assert_eq!(godel_decode_formula(&code).unwrap(), f);

    let mut t = FoTranslation::new();
    t.insert(0, &["a", "b"], "a in b".parse().unwrap()).unwrap();
    let g: FoFormula = "forall u . exists v . P0(u,v)".parse().unwrap();
    println!("{g}  =>  {}", apply_fo_translation(&t, &g).unwrap());
}
