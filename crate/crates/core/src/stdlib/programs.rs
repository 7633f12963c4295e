//! Builder definitions for the library programs that are not hand-written listings.
//!
//! Conventions: inputs in `R0, R1, …`, result in `R0`, booleans `#0`/`#1`.

use crate::asm::{assemble, Label, MacroProgram, ProgramBuilder, Reg};

pub(crate) const LISTINGS: &[(&str, &str)] = &[
    ("eq", include_str!("../../stdlib/eq.srm")),
    ("union2", include_str!("../../stdlib/union2.srm")),
    ("intersect2", include_str!("../../stdlib/intersect2.srm")),
    ("vstage", include_str!("../../stdlib/vstage.srm")),
];

pub(crate) fn listing(name: &str) -> MacroProgram {
    let src = LISTINGS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .unwrap_or_else(|| panic!("no listing named {name}"));
    assemble(src).expect("shipped listing assembles")
}

/// Names of the builder-made programs, in catalogue order.
pub(crate) const BUILT: &[&str] = &[
    "singleton",
    "pair",
    "opair",
    "proj1",
    "proj2",
    "is_opair",
    "is_func",
    "bigunion",
    "bigintersect",
    "dom",
    "apply_fn",
    "is_ordinal",
    "is_ordseq",
    "least_sat",
    "seq_proj",
    "pow",
    "is_pow",
    "liminf_seq",
    "tau_less",
    "f_tau",
    "f_tau_inv",
    "choice_fn",
];

pub(crate) fn build(name: &str) -> Option<MacroProgram> {
    Some(match name {
        "singleton" => singleton(),
        "pair" => pair(),
        "opair" => opair(),
        "proj1" => projection(true),
        "proj2" => projection(false),
        "is_opair" => is_opair(),
        "is_func" => is_func(),
        "bigunion" => bigunion(),
        "bigintersect" => bigintersect(),
        "dom" => dom(),
        "apply_fn" => apply_fn(),
        "is_transitive" => is_transitive(),
        "is_ordinal" => is_ordinal(),
        "is_ordseq" => is_ordseq(),
        "least_sat" => least_sat_program(&is_ordinal()),
        "seq_proj" => seq_proj(),
        "pow" => pow(),
        "is_pow" => is_pow(),
        "liminf_seq" => liminf_seq(),
        "tau_less" => tau_less(),
        "f_tau" => f_tau(),
        "f_tau_inv" => f_tau_inv(),
        "choice_fn" => choice_fn(),
        _ => return None,
    })
}

/// Ends a predicate: `R0 := #1` at `yes`, `R0 := #0` at `no`.
fn verdict(b: &mut ProgramBuilder, yes: Label, no: Label) {
    let halt = b.halt();
    b.place(yes);
    b.set_bool(0, true);
    b.goto(halt);
    b.place(no);
    b.set_bool(0, false);
}

fn singleton() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let t = b.fresh();
    b.zero(t);
    b.add(0, t);
    b.copy(t, 0);
    b.build()
}

fn pair() -> MacroProgram {
    let mut b = ProgramBuilder::new(2);
    let t = b.fresh();
    b.zero(t);
    b.add(0, t);
    b.add(1, t);
    b.copy(t, 0);
    b.build()
}

/// `out := ⟨x, y⟩ = {{x}, {x, y}}`.
pub(crate) fn emit_opair(b: &mut ProgramBuilder, x: Reg, y: Reg, out: Reg) {
    let (s, u) = (b.fresh(), b.fresh());
    b.zero(s);
    b.add(x, s);
    b.zero(u);
    b.add(x, u);
    b.add(y, u);
    b.zero(out);
    b.add(s, out);
    b.add(u, out);
}

fn opair() -> MacroProgram {
    let mut b = ProgramBuilder::new(2);
    let t = b.fresh();
    emit_opair(&mut b, 0, 1, t);
    b.copy(t, 0);
    b.build()
}

/// Sets `first`, `second` to the components of `x` when `x` is an ordered pair; on other sets
/// the values are meaningless but the code still terminates.
///
/// The least member of `⟨u, v⟩` is `{u}`; the other member, if any, is `{u, v}`.
fn emit_projections(b: &mut ProgramBuilder, x: Reg, first: Reg, second: Reg) {
    let (least, rest, other) = (b.fresh(), b.fresh(), b.fresh());
    let (same, done) = (b.label(), b.label());
    for r in [least, first, rest, other, second] {
        b.zero(r);
    }
    b.take(x, least);
    b.take(least, first);
    b.copy(x, rest);
    b.remove(least, rest);
    b.jez(rest, same);
    b.take(rest, other);
    b.remove(first, other);
    b.jez(other, same);
    b.take(other, second);
    b.goto(done);
    b.place(same);
    b.copy(first, second);
    b.place(done);
}

fn projection(first: bool) -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (y, z) = (b.fresh(), b.fresh());
    emit_projections(&mut b, 0, y, z);
    b.copy(if first { y } else { z }, 0);
    b.build()
}

fn is_opair() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (y, z, w) = (b.fresh(), b.fresh(), b.fresh());
    let (yes, no) = (b.label(), b.label());
    emit_projections(&mut b, 0, y, z);
    emit_opair(&mut b, y, z, w);
    b.jeq(w, 0, yes);
    b.goto(no);
    verdict(&mut b, yes, no);
    b.build()
}

fn is_func() -> MacroProgram {
    let pair_test = is_opair();
    let mut b = ProgramBuilder::new(1);
    let (w, seen, p, t, y, z) = (b.fresh(), b.fresh(), b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let (yes, no) = (b.label(), b.label());
    b.copy(0, w);
    b.zero(seen);
    let top = b.here();
    b.jez(w, yes);
    b.take(w, p);
    b.remove(p, w);
    b.call(&pair_test, &[p], t);
    b.jez(t, no);
    emit_projections(&mut b, p, y, z);
    b.jmem(y, seen, no);
    b.add(y, seen);
    b.goto(top);
    verdict(&mut b, yes, no);
    b.build()
}

fn bigunion() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (acc, member, elem) = (b.fresh(), b.fresh(), b.fresh());
    let (outer, done) = (b.label(), b.label());
    b.place(outer);
    b.jez(0, done);
    b.take(0, member);
    b.remove(member, 0);
    let inner = b.here();
    b.jez(member, outer);
    b.take(member, elem);
    b.remove(elem, member);
    b.add(elem, acc);
    b.goto(inner);
    b.place(done);
    b.copy(acc, 0);
    b.build()
}

fn bigintersect() -> MacroProgram {
    let meet = listing("intersect2");
    let mut b = ProgramBuilder::new(1);
    let (w, acc, m) = (b.fresh(), b.fresh(), b.fresh());
    let done = b.label();
    b.copy(0, w);
    b.take(w, acc);
    b.remove(acc, w);
    let top = b.here();
    b.jez(w, done);
    b.take(w, m);
    b.remove(m, w);
    b.call(&meet, &[acc, m], acc);
    b.goto(top);
    b.place(done);
    b.copy(acc, 0);
    b.build()
}

fn dom() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (w, d, p, y, z) = (b.fresh(), b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let done = b.label();
    b.copy(0, w);
    b.zero(d);
    let top = b.here();
    b.jez(w, done);
    b.take(w, p);
    b.remove(p, w);
    emit_projections(&mut b, p, y, z);
    b.add(y, d);
    b.goto(top);
    b.place(done);
    b.copy(d, 0);
    b.build()
}

fn apply_fn() -> MacroProgram {
    let mut b = ProgramBuilder::new(2);
    let (w, res, p, y, z) = (b.fresh(), b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let (found, done) = (b.label(), b.label());
    b.copy(0, w);
    b.zero(res);
    let top = b.here();
    b.jez(w, done);
    b.take(w, p);
    b.remove(p, w);
    emit_projections(&mut b, p, y, z);
    b.jeq(y, 1, found);
    b.goto(top);
    b.place(found);
    b.copy(z, res);
    b.place(done);
    b.copy(res, 0);
    b.build()
}

/// `R0 := #1` iff every member of a member of `R0` is a member of `R0`.
fn is_transitive() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (w, y, v, z) = (b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let (yes, no, outer) = (b.label(), b.label(), b.label());
    b.copy(0, w);
    b.place(outer);
    b.jez(w, yes);
    b.take(w, y);
    b.remove(y, w);
    b.copy(y, v);
    let inner = b.here();
    b.jez(v, outer);
    b.take(v, z);
    b.remove(z, v);
    b.jmem(z, 0, inner);
    b.goto(no);
    verdict(&mut b, yes, no);
    b.build()
}

/// A transitive set of transitive sets.
fn is_ordinal() -> MacroProgram {
    let trans = is_transitive();
    let mut b = ProgramBuilder::new(1);
    let (t, w, y) = (b.fresh(), b.fresh(), b.fresh());
    let (yes, no) = (b.label(), b.label());
    b.call(&trans, &[0], t);
    b.jez(t, no);
    b.copy(0, w);
    let top = b.here();
    b.jez(w, yes);
    b.take(w, y);
    b.remove(y, w);
    b.call(&trans, &[y], t);
    b.jez(t, no);
    b.goto(top);
    verdict(&mut b, yes, no);
    b.build()
}

/// A function whose domain is an ordinal.
fn is_ordseq() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (t, d) = (b.fresh(), b.fresh());
    let no = b.label();
    let halt = b.halt();
    b.call(&is_func(), &[0], t);
    b.jez(t, no);
    b.call(&dom(), &[0], d);
    b.call(&is_ordinal(), &[d], 0);
    b.goto(halt);
    b.place(no);
    b.set_bool(0, false);
    b.build()
}

/// The Ackermann-least member `x` of `R0` with `predicate(x) ≠ ∅`, or `∅` if there is none.
/// The predicate program is inlined.
pub fn least_sat_program(predicate: &MacroProgram) -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (w, res, x, t) = (b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let done = b.label();
    b.copy(0, w);
    b.zero(res);
    let top = b.here();
    b.jez(w, done);
    b.take(w, x);
    b.remove(x, w);
    b.call(predicate, &[x], t);
    b.jez(t, top);
    b.copy(x, res);
    b.place(done);
    b.copy(res, 0);
    b.build()
}

fn seq_proj() -> MacroProgram {
    let mut b = ProgramBuilder::new(2);
    b.call(&apply_fn(), &[0, 1], 0);
    b.build()
}

fn pow() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    b.pow(0, 0);
    b.build()
}

/// `R0 := #1` iff `R0 = P(R1)`.
fn is_pow() -> MacroProgram {
    let mut b = ProgramBuilder::new(2);
    let t = b.fresh();
    let (yes, no) = (b.label(), b.label());
    b.pow(1, t);
    b.jeq(0, t, yes);
    b.goto(no);
    verdict(&mut b, yes, no);
    b.build()
}

/// `⋃_β ⋂_{γ>β} x_γ` over a sequence `{⟨#i, x_i⟩}`, with `β` restricted to indices that have a
/// later one; a one-term sequence yields its term.
fn liminf_seq() -> MacroProgram {
    let (meet, join) = (listing("intersect2"), listing("union2"));
    let mut b = ProgramBuilder::new(1);
    let (acc, outer, p, beta, xb) = (b.fresh(), b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let (have, inter, inner, q, gamma, xg) =
        (b.fresh(), b.fresh(), b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let t = b.fresh();
    let (oloop, fin, icheck, member, first, single) =
        (b.label(), b.label(), b.label(), b.label(), b.label(), b.label());
    let halt = b.halt();

    b.zero(acc);
    b.copy(0, outer);
    b.place(oloop);
    b.jez(outer, fin);
    b.take(outer, p);
    b.remove(p, outer);
    emit_projections(&mut b, p, beta, xb);
    b.zero(have);
    b.zero(inter);
    b.copy(0, inner);
    let iloop = b.here();
    b.jez(inner, icheck);
    b.take(inner, q);
    b.remove(q, inner);
    emit_projections(&mut b, q, gamma, xg);
    b.jmem(beta, gamma, member);
    b.goto(iloop);
    b.place(member);
    b.jez(have, first);
    b.call(&meet, &[inter, xg], inter);
    b.goto(iloop);
    b.place(first);
    b.copy(xg, inter);
    b.add(have, have);
    b.goto(iloop);
    b.place(icheck);
    b.jez(have, oloop);
    b.call(&join, &[acc, inter], acc);
    b.goto(oloop);

    b.place(fin);
    b.zero(p);
    b.copy(0, t);
    b.take(t, p);
    b.remove(p, t);
    b.jez(t, single);
    b.copy(acc, 0);
    b.goto(halt);
    b.place(single);
    emit_projections(&mut b, p, beta, xb);
    b.copy(xb, 0);
    b.build()
}

/// `R0 := #1` iff `R0` precedes `R1` in Ackermann order: the least member of `{R0, R1}`.
fn tau_less() -> MacroProgram {
    let mut b = ProgramBuilder::new(2);
    let (s, c) = (b.fresh(), b.fresh());
    let (yes, no) = (b.label(), b.label());
    b.jeq(0, 1, no);
    b.zero(s);
    b.add(0, s);
    b.add(1, s);
    b.take(s, c);
    b.jeq(c, 0, yes);
    b.goto(no);
    verdict(&mut b, yes, no);
    b.build()
}

/// The `n`-th set in Ackermann order. Each `V_k` is an initial segment of the order, so the
/// stages are enumerated in turn until one has more than `n` members.
fn f_tau() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (stage, w, cnt, c) = (b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let (next, found) = (b.label(), b.label());
    b.zero(stage);
    let sloop = b.here();
    b.copy(stage, w);
    b.zero(cnt);
    let tloop = b.here();
    b.jez(w, next);
    b.take(w, c);
    b.remove(c, w);
    b.jeq(cnt, 0, found);
    b.add(cnt, cnt);
    b.goto(tloop);
    b.place(next);
    b.pow(stage, stage);
    b.goto(sloop);
    b.place(found);
    b.copy(c, 0);
    b.build()
}

/// The position of `R0` in Ackermann order, as a numeral.
fn f_tau_inv() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (stage, w, cnt, c) = (b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let (count, done) = (b.label(), b.label());
    b.zero(stage);
    let sloop = b.here();
    b.jmem(0, stage, count);
    b.pow(stage, stage);
    b.goto(sloop);
    b.place(count);
    b.copy(stage, w);
    b.zero(cnt);
    let cloop = b.here();
    b.take(w, c);
    b.remove(c, w);
    b.jeq(c, 0, done);
    b.add(cnt, cnt);
    b.goto(cloop);
    b.place(done);
    b.copy(cnt, 0);
    b.build()
}

/// `{⟨y, least member of y⟩ : y ∈ R0}`.
fn choice_fn() -> MacroProgram {
    let mut b = ProgramBuilder::new(1);
    let (w, f, y, z, p) = (b.fresh(), b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let done = b.label();
    b.copy(0, w);
    b.zero(f);
    let top = b.here();
    b.jez(w, done);
    b.take(w, y);
    b.remove(y, w);
    b.zero(z);
    b.take(y, z);
    emit_opair(&mut b, y, z, p);
    b.add(p, f);
    b.goto(top);
    b.place(done);
    b.copy(f, 0);
    b.build()
}
