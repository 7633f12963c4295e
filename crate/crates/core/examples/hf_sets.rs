//! Hereditarily finite sets: literals, Ackermann order, pairs and sequences.
use srm::hfset::{ack_compare, f_tau, f_tau_inv, v_stage, DEFAULT_POWERSET_LIMIT};
use srm::HfSet;

fn main() {
    let x: HfSet = "{#0, {#2}, #3}".parse().unwrap();
    println!("x = {x}, rank {}, {} members", x.rank(), x.len());

    for n in 0..8 {
        let s = f_tau(n);
        println!("f_tau({n}) = {s}  (back: {})", f_tau_inv(&s).unwrap());
    }
    println!("#2 vs {{#1}}: {:?}", ack_compare(&HfSet::numeral(2), &"{#1}".parse().unwrap()));

    let p = HfSet::ordered_pair(&HfSet::numeral(1), &x);
    println!("<#1, x> = {p}");
    let (a, b) = p.as_ordered_pair().unwrap();
    println!("projections: {a}, {b}");

    let s = HfSet::sequence(&[HfSet::numeral(3), HfSet::empty(), x.clone()]);
    println!("sequence = {s}, decoded length {}", s.as_sequence().unwrap().len());

    for n in 0..5 {
        println!("|V_{n}| = {}", v_stage(n, DEFAULT_POWERSET_LIMIT).unwrap().len());
    }
}
