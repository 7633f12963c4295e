//! Check the axiom realizers on the standard sample and show a refutation of a broken one.
use srm::realize::{axiom_formula, check, corrupted_realizers, get_axiom_realizer, replay, CheckContext, AXIOMS};

fn main() {
    let ctx = CheckContext::standard();
    for name in AXIOMS {
        let f = axiom_formula(name).unwrap();
        let r = get_axiom_realizer(name).unwrap();
        println!("{name}: {}", check(&r, &f, &ctx).unwrap());
    }
    let c = &corrupted_realizers()[1];
    let f = axiom_formula(c.axiom).unwrap();
    let v = check(&c.realizer, &f, &ctx).unwrap();
    println!("{}: {v}", c.name);
    if let srm::realize::Verdict::Refuted(w) = &v {
        println!("replays: {}", replay(&c.realizer, &f, &ctx, w));
    }
}
