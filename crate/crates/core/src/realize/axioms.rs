//! Realizers for set-theoretic axioms over HF, and deliberately broken variants.
//!
//! Most realizers return codes of further realizers built at run time. Each program that does
//! so receives the program codes it needs as parameters, together with `pc` (the selector
//! program: `#0 ↦ A`, otherwise `B`) and `t`, the code of a realizer that returns its own code
//! on every input. `t` realizes every true formula built from atoms with `∧`, `→` and `∀`.

use super::{RealizeError, Realizer};
use crate::asm::{encode_program, expand_macros, Instruction, Program, ProgramBuilder, Reg};
use crate::hfset::{v_stage, HfSet, DEFAULT_POWERSET_LIMIT};
use crate::lang::SetFormula;
use crate::stdlib::{self, emit_opair};

pub const AXIOMS: &[&str] = &["empty_set", "pairing", "union", "powerset", "delta0_separation", "ac"];

/// `out := ⟨code, sequence(items)⟩`, a realizer code built at run time.
fn emit_closure(b: &mut ProgramBuilder, code: Reg, items: &[Reg], out: Reg) {
    let (seq, index, entry) = (b.fresh(), b.fresh(), b.fresh());
    b.zero(seq);
    for (i, &r) in items.iter().enumerate() {
        b.load_const(index, &HfSet::numeral(i));
        emit_opair(b, index, r, entry);
        b.add(entry, seq);
    }
    emit_opair(b, code, seq, out);
}

fn call_stdlib(b: &mut ProgramBuilder, name: &str, args: &[Reg], out: Reg) {
    let entry = stdlib::get(name).expect("catalogue entry");
    b.call(&entry.program, args, out);
}

/// `#0 ↦ R0`, anything else `↦ R1`.
fn selector_program() -> Program {
    Program::new(vec![Instruction::IfEmptyGoto(2, 3), Instruction::Copy(1, 0)])
}

/// Returns `R0` unchanged: with one parameter a constant function, with none the identity.
fn constant_program() -> Program {
    Program::new(vec![Instruction::Copy(0, 0)])
}

/// Parameter: its own program code. Output: its own realizer code.
fn trivial_program() -> Program {
    let mut b = ProgramBuilder::new(2);
    let out = b.fresh();
    emit_closure(&mut b, 0, &[0], out);
    b.copy(out, 0);
    expand_macros(&b.build())
}

struct Kit {
    pc: HfSet,
    t: HfSet,
}

impl Kit {
    fn new() -> Self {
        let tp = encode_program(&trivial_program());
        let t = Realizer::new(trivial_program(), vec![tp]).code();
        Kit {
            pc: encode_program(&selector_program()),
            t,
        }
    }

    fn selector(&self, a: HfSet, b: HfSet) -> Realizer {
        Realizer::new(selector_program(), vec![a, b])
    }
}

fn trivial() -> Realizer {
    let tp = encode_program(&trivial_program());
    Realizer::new(trivial_program(), vec![tp])
}

fn finish(b: ProgramBuilder) -> Program {
    expand_macros(&b.build())
}

/// Parameters `pc, t, p1`; on `a` returns the code of `p1` with `pc, t, a`.
fn pairing_outer() -> Program {
    let mut b = ProgramBuilder::new(4);
    let out = b.fresh();
    emit_closure(&mut b, 2, &[0, 1, 3], out);
    b.copy(out, 0);
    finish(b)
}

/// Parameters `pc, t, a`; on `b` returns `sel({a, b}, t)`, or `sel({a}, t)` when `broken`.
fn pairing_inner(broken: bool) -> Program {
    let mut b = ProgramBuilder::new(4);
    let (c, out) = (b.fresh(), b.fresh());
    b.zero(c);
    b.add(2, c);
    if !broken {
        b.add(3, c);
    }
    emit_closure(&mut b, 0, &[c, 1], out);
    b.copy(out, 0);
    finish(b)
}

/// Parameters `pc, t, u1, s`; on `a` returns `sel(⋃a, u1[pc, t, a, s])`, or with `a` in
/// place of `⋃a` when `broken`.
fn union_outer(broken: bool) -> Program {
    let mut b = ProgramBuilder::new(5);
    let (u, inner, out) = (b.fresh(), b.fresh(), b.fresh());
    if broken {
        b.copy(4, u);
    } else {
        call_stdlib(&mut b, "bigunion", &[4], u);
    }
    emit_closure(&mut b, 2, &[0, 1, 4, 3], inner);
    emit_closure(&mut b, 0, &[u, inner], out);
    b.copy(out, 0);
    finish(b)
}

/// Parameters `pc, t, a, s`; on `x` returns `sel(s[pc, t, a, x], t)`.
fn union_middle() -> Program {
    let mut b = ProgramBuilder::new(5);
    let (search, out) = (b.fresh(), b.fresh());
    emit_closure(&mut b, 3, &[0, 1, 2, 4], search);
    emit_closure(&mut b, 0, &[search, 1], out);
    b.copy(out, 0);
    finish(b)
}

/// Parameters `pc, t, a, x`; ignores its argument and returns `sel(y, t)` for the least
/// `y ∈ a` with `x ∈ y`.
fn union_search() -> Program {
    let mut b = ProgramBuilder::new(5);
    let (w, y, out) = (b.fresh(), b.fresh(), b.fresh());
    let (top, found) = (b.label(), b.label());
    b.copy(2, w);
    b.zero(y);
    b.place(top);
    b.jez(w, found);
    b.take(w, y);
    b.remove(y, w);
    b.jmem(3, y, found);
    b.goto(top);
    b.place(found);
    emit_closure(&mut b, 0, &[y, 1], out);
    b.copy(out, 0);
    finish(b)
}

/// Parameters `pc, t`; on `a` returns `sel(P(a), t)`.
fn powerset_program() -> Program {
    let mut b = ProgramBuilder::new(3);
    let (p, out) = (b.fresh(), b.fresh());
    b.pow(2, p);
    emit_closure(&mut b, 0, &[p, 1], out);
    b.copy(out, 0);
    finish(b)
}

/// Parameters `pc, t`; on `x` returns `sel({z ∈ x : φ(z)}, t)`; `broken` skips the filter.
fn separation_program(phi: &SetFormula, var: &str, broken: bool) -> Result<Program, RealizeError> {
    let test = crate::delta0::compile_delta0(phi, &[var])
        .map_err(|e| RealizeError::UnsupportedSeparation(e.to_string()))?;
    let mut b = ProgramBuilder::new(3);
    let (w, z, y, verdict, out) = (b.fresh(), b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let (top, done) = (b.label(), b.label());
    b.copy(2, w);
    b.zero(y);
    b.place(top);
    b.jez(w, done);
    b.take(w, z);
    b.remove(z, w);
    if broken {
        b.add(z, y);
    } else {
        let skip = b.label();
        b.call(&test, &[z], verdict);
        b.jez(verdict, skip);
        b.add(z, y);
        b.place(skip);
    }
    b.goto(top);
    b.place(done);
    emit_closure(&mut b, 0, &[y, 1], out);
    b.copy(out, 0);
    Ok(finish(b))
}

/// Parameters `pc, t, a1, g`; on `x` returns `a1[pc, t, g, x]`.
fn ac_outer() -> Program {
    let mut b = ProgramBuilder::new(5);
    let out = b.fresh();
    emit_closure(&mut b, 2, &[0, 1, 3, 4], out);
    b.copy(out, 0);
    finish(b)
}

/// Parameters `pc, t, g, x`; ignores the premise realizer and returns
/// `sel(f, g[pc, t])` with `f` the choice function on `x`.
fn ac_middle() -> Program {
    let mut b = ProgramBuilder::new(5);
    let (f, g, out) = (b.fresh(), b.fresh(), b.fresh());
    call_stdlib(&mut b, "choice_fn", &[3], f);
    emit_closure(&mut b, 2, &[0, 1], g);
    emit_closure(&mut b, 0, &[f, g], out);
    b.copy(out, 0);
    finish(b)
}

/// Parameters `pc, t`; on `y` returns `sel(⟨y, z⟩, sel(z, t))` with `z` the least member of
/// `y`, or `z = y` when `broken`.
fn ac_inner(broken: bool) -> Program {
    let mut b = ProgramBuilder::new(3);
    let (z, p, inner, out) = (b.fresh(), b.fresh(), b.fresh(), b.fresh());
    if broken {
        b.copy(2, z);
    } else {
        b.zero(z);
        b.take(2, z);
    }
    emit_opair(&mut b, 2, z, p);
    emit_closure(&mut b, 0, &[z, 1], inner);
    emit_closure(&mut b, 0, &[p, inner], out);
    b.copy(out, 0);
    finish(b)
}

/// Parameters `pc, t`; on `y` returns `sel(least member of y, t)`. Realizes
/// `∀y ∈ x ∃z z ∈ y` whenever every member of `x` is nonempty.
fn chooser_program() -> Program {
    let mut b = ProgramBuilder::new(3);
    let (z, out) = (b.fresh(), b.fresh());
    b.zero(z);
    b.take(2, z);
    emit_closure(&mut b, 0, &[z, 1], out);
    b.copy(out, 0);
    finish(b)
}

fn parse(s: &str) -> SetFormula {
    s.parse().expect("axiom text parses")
}

/// `p = ⟨y, z⟩` written with `∧`, `→`, `⊥` and bounded `∀` only, so that `t` realizes it
/// whenever it is true.
fn pair_formula() -> SetFormula {
    parse(
        "(forall s in p . y in s /\\ (forall u in s . ~(~u = y /\\ ~u = z))) \
         /\\ ~(forall s in p . ~((forall u in s . u = y) /\\ y in s)) \
         /\\ ~(forall s in p . ~(y in s /\\ z in s))",
    )
}

/// The default separation formula: `z` is transitive.
fn default_separation_formula() -> SetFormula {
    parse("forall w in z . forall v in w . v in z")
}

/// `∀x ∃y ∀var (var ∈ y ↔ var ∈ x ∧ φ)`.
pub fn separation_instance(phi: &SetFormula, var: &str) -> SetFormula {
    let body = SetFormula::iff(
        SetFormula::mem(crate::lang::Term::var(var), crate::lang::Term::var("y'")),
        SetFormula::and(SetFormula::mem(crate::lang::Term::var(var), crate::lang::Term::var("x'")), phi.clone()),
    );
    SetFormula::forall("x'", SetFormula::exists("y'", SetFormula::forall(var, body)))
}

/// The formula a catalogue realizer is meant to realize.
pub fn axiom_formula(name: &str) -> Result<SetFormula, RealizeError> {
    Ok(match name {
        "empty_set" => parse("exists x . forall y . y in x -> bot"),
        "pairing" => parse("forall a . forall b . exists c . a in c /\\ b in c"),
        "union" => {
            let rhs = parse("exists y in a . x in y");
            let body = SetFormula::iff(parse("x in u"), rhs);
            SetFormula::forall("a", SetFormula::exists("u", SetFormula::forall("x", body)))
        }
        "powerset" => {
            let body = SetFormula::iff(parse("z in p"), parse("forall w in z . w in a"));
            SetFormula::forall("a", SetFormula::exists("p", SetFormula::forall("z", body)))
        }
        "delta0_separation" => separation_instance(&default_separation_formula(), "z"),
        "ac" => {
            let conclusion = SetFormula::exists(
                "f",
                SetFormula::bforall(
                    "y",
                    crate::lang::Term::var("x"),
                    SetFormula::bexists(
                        "p",
                        crate::lang::Term::var("f"),
                        SetFormula::bexists("z", crate::lang::Term::var("y"), pair_formula()),
                    ),
                ),
            );
            SetFormula::forall("x", SetFormula::imp(parse("forall y in x . exists z . z in y"), conclusion))
        }
        _ => return Err(RealizeError::UnknownName(name.to_string())),
    })
}

fn build(name: &str, broken: bool) -> Result<Realizer, RealizeError> {
    let k = Kit::new();
    let code = |p: Program| encode_program(&p);
    Ok(match name {
        "empty_set" => {
            let witness = if broken { HfSet::singleton(HfSet::empty()) } else { HfSet::empty() };
            k.selector(witness, k.t.clone())
        }
        "pairing" => Realizer::new(
            pairing_outer(),
            vec![k.pc.clone(), k.t.clone(), code(pairing_inner(broken))],
        ),
        "union" => Realizer::new(
            union_outer(broken),
            vec![k.pc.clone(), k.t.clone(), code(union_middle()), code(union_search())],
        ),
        "powerset" => Realizer::new(powerset_program(), vec![k.pc.clone(), k.t.clone()]),
        "delta0_separation" => Realizer::new(
            separation_program(&default_separation_formula(), "z", broken)?,
            vec![k.pc.clone(), k.t.clone()],
        ),
        "ac" => Realizer::new(
            ac_outer(),
            vec![k.pc.clone(), k.t.clone(), code(ac_middle()), code(ac_inner(broken))],
        ),
        _ => return Err(RealizeError::UnknownName(name.to_string())),
    })
}

pub fn get_axiom_realizer(name: &str) -> Result<Realizer, RealizeError> {
    build(name, false)
}

fn only_negative(f: &SetFormula) -> bool {
    use SetFormula::*;
    match f {
        Eq(..) | In(..) | Bot => true,
        And(a, b) | Imp(a, b) => only_negative(a) && only_negative(b),
        BForall(_, _, b) => only_negative(b),
        Or(..) | Exists(..) | Forall(..) | BExists(..) => false,
    }
}

/// A realizer for [`separation_instance`]`(phi, var)`. `phi` must be Δ₀ in the single free
/// variable `var` and use neither `∨` nor `∃`, so that its truth is realized by `t`.
pub fn separation_realizer(phi: &SetFormula, var: &str) -> Result<Realizer, RealizeError> {
    let free = phi.free_vars();
    if !only_negative(phi) || free.iter().any(|v| v != var) {
        return Err(RealizeError::UnsupportedSeparation(phi.to_string()));
    }
    let k = Kit::new();
    Ok(Realizer::new(separation_program(phi, var, false)?, vec![k.pc, k.t]))
}

/// A broken realizer together with the axiom it fails to realize.
#[derive(Debug, Clone)]
pub struct Corrupted {
    pub name: &'static str,
    pub axiom: &'static str,
    pub realizer: Realizer,
}

/// Five realizers that each get one thing wrong: a nonempty "empty set", a pair missing its
/// second element, `a` in place of `⋃a`, separation without the filter, and a choice function
/// that picks `y` itself.
pub fn corrupted_realizers() -> Vec<Corrupted> {
    [
        ("nonempty_empty_set", "empty_set"),
        ("pair_drops_second", "pairing"),
        ("union_is_identity", "union"),
        ("separation_keeps_all", "delta0_separation"),
        ("choice_picks_self", "ac"),
    ]
    .into_iter()
    .map(|(name, axiom)| Corrupted {
        name,
        axiom,
        realizer: build(axiom, true).expect("catalogue axiom"),
    })
    .collect()
}

/// `V_4` together with the numerals `#4` through `#9`: 22 sets.
pub fn standard_sample() -> Vec<HfSet> {
    let mut out: Vec<HfSet> = v_stage(4, DEFAULT_POWERSET_LIMIT)
        .expect("V_4 has 16 elements")
        .elements()
        .to_vec();
    out.extend((4..10).map(HfSet::numeral));
    out
}

/// The trivial realizer, the identity, the selectors `sel(#0, t)` and `sel(#1, t)`, a constant
/// `∅`, and the chooser `y ↦ sel(least member of y, t)`.
pub fn standard_pool() -> Vec<Realizer> {
    let k = Kit::new();
    vec![
        trivial(),
        Realizer::new(constant_program(), vec![]),
        k.selector(HfSet::numeral(0), k.t.clone()),
        k.selector(HfSet::numeral(1), k.t.clone()),
        Realizer::new(constant_program(), vec![HfSet::empty()]),
        Realizer::new(chooser_program(), vec![k.pc.clone(), k.t.clone()]),
    ]
}
