//! The restricted Visser rules and the translation of a propositional formula into set theory.
use srm::lang::{apply_prop_translation, visser_atom_name, visser_rule, PropFormula, PropTranslation};

fn main() {
    for n in 1..4 {
        let (a, c) = visser_rule(n).unwrap();
        let names = |i| visser_atom_name(n, i);
        println!("V{n}: {}  /  {}", a.display_with(&names), c.display_with(&names));
    }
    let mut t = PropTranslation::new();
    t.insert(0, "exists x . forall y . ~y in x".parse().unwrap()).unwrap();
    let f: PropFormula = "p0 \\/ ~p0".parse().unwrap();
    println!("{}", apply_prop_translation(&t, &f).unwrap());
}
