//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use common::{cycling_suite, halting_traces, hf, limits_are_sound, mutate, oracle_case, program, rng};
use srm::beth::{force, ipc_axioms, random_model, validate_model, RegularBethModel};
use srm::delta0::differential_fuzz;
use srm::hfset::{ack_compare, f_tau, f_tau_inv, random_hf, v_stage, DEFAULT_POWERSET_LIMIT};
use srm::lang::PropFormula;
use srm::realize::{self, CheckContext, Verdict};
use srm::stdlib;
use srm::vm::{check_trace, run, OracleTable, Outcome, RunLimits};
use srm::HfSet;

type Outcome_ = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome_);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < budget, || format!("took {t:.2?}, budget {budget:?}"))?;
    Ok(t)
}

fn eq_listing() -> Outcome_ {
    let start = Instant::now();
    let r = stdlib::differential_test("eq", 1000, 4, 1).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.to_string())?;
    // Independent pairs as well, since equal pairs are rare among random sets.
    let mut g = rng(2);
    let lim = RunLimits::default();
    for _ in 0..1000 {
        let a = random_hf(&mut g, 4);
        let b = if g.gen_bool(0.5) { a.clone() } else { random_hf(&mut g, 4) };
        let v = stdlib::run_entry("eq", &[a.clone(), b.clone()], &lim).map_err(|e| e.to_string())?;
        ensure((v == HfSet::numeral(1)) == (a == b), || format!("eq({a}, {b}) = {v}"))?;
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("2000 pairs of rank <= 4, 0 mismatches, {t:.2?}"))
}

fn catalogue() -> Outcome_ {
    let mut total = 0;
    let names = stdlib::list();
    for name in &names {
        let rank = if matches!(*name, "pow" | "is_pow") { 2 } else { 3 };
        let r = stdlib::differential_test(name, 200, rank, 3).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.samples >= 200, || r.to_string())?;
        total += r.samples;
    }
    ensure(names.len() >= 18, || format!("only {} entries", names.len()))?;
    Ok(format!("{} entries x 200 samples ({total} runs), 0 mismatches", names.len()))
}

fn vstage() -> Outcome_ {
    let start = Instant::now();
    let lim = RunLimits::default();
    for n in 0..=4 {
        let got = stdlib::run_entry("vstage", &[HfSet::numeral(n)], &lim).map_err(|e| e.to_string())?;
        let want = v_stage(n, DEFAULT_POWERSET_LIMIT).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("vstage(#{n}) = {got}"))?;
        if n == 4 {
            ensure(got.len() == 16, || format!("|V_4| = {}", got.len()))?;
        }
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("n = 0..4 agree, |V_4| = 16, {t:.2?}"))
}

fn delta0_compiler() -> Outcome_ {
    let r = differential_fuzz(500, 3, 3, 4, &RunLimits::default());
    ensure(r.passed(), || r.to_string())?;
    ensure(r.runtime < Duration::from_secs(60), || r.to_string())?;
    Ok(format!("500 formulas, 100% agreement, {:.2?}", r.runtime))
}

fn order_laws() -> Outcome_ {
    let mut g = rng(5);
    for _ in 0..10_000 {
        let (a, b, c) = (random_hf(&mut g, 4), random_hf(&mut g, 4), random_hf(&mut g, 4));
        let (ab, bc, ac) = (ack_compare(&a, &b), ack_compare(&b, &c), ack_compare(&a, &c));
        ensure(ab == ack_compare(&b, &a).reverse(), || format!("antisymmetry fails on {a}, {b}"))?;
        ensure((ab == Ordering::Equal) == (a == b), || format!("trichotomy fails on {a}, {b}"))?;
        ensure(!(ab == Ordering::Less && bc == Ordering::Less) || ac == Ordering::Less, || {
            format!("transitivity fails on {a}, {b}, {c}")
        })?;
    }
    let mut pairs = 0;
    while pairs < 10_000 {
        let (a, b) = (random_hf(&mut g, 5), random_hf(&mut g, 5));
        if a.rank() < b.rank() {
            ensure(ack_compare(&a, &b) == Ordering::Less, || format!("rank order fails on {a}, {b}"))?;
            pairs += 1;
        }
    }
    for n in 0..1000 {
        let back = f_tau_inv(&f_tau(n)).map_err(|e| e.to_string())?;
        ensure(back == n, || format!("f_tau_inv(f_tau({n})) = {back}"))?;
    }
    Ok("10^4 triples, 10^4 rank-ordered pairs, 1000 enumeration inverses".into())
}

fn omega_limits() -> Outcome_ {
    let suite = cycling_suite();
    let mut jumps = 0;
    for c in &suite {
        let (_, t) = run(&program(c.source), &[], &OracleTable::new(), &c.limits);
        let m = t.limits.first().ok_or_else(|| format!("{}: no limit", c.name))?;
        let post = &t.configurations[m.index];
        let want: Vec<HfSet> = c.first_limit.1.iter().map(|s| hf(s)).collect();
        ensure(post.line == c.first_limit.0 && post.registers == want, || {
            format!("{}: limit configuration differs from the derived one", c.name)
        })?;
        limits_are_sound(&t).map_err(|e| format!("{}: {e}", c.name))?;
        jumps += t.limits.len();
    }
    Ok(format!("{} cycling programs, {jumps} limit configurations checked", suite.len()))
}

fn trace_checker() -> Outcome_ {
    let corpus = halting_traces(60, 6);
    let o = OracleTable::new();
    for (i, (p, t)) in corpus.iter().enumerate() {
        ensure(check_trace(p, t, &o), || format!("halting trace {i} rejected"))?;
    }
    let mut g = rng(7);
    for i in 0..100 {
        let (p, t) = &corpus[i % corpus.len()];
        let bad = mutate(t, &mut g);
        ensure(!check_trace(p, &bad, &o), || format!("mutant {i} accepted"))?;
    }
    Ok(format!("{} halting traces accepted, 100/100 mutants rejected", corpus.len()))
}

fn oracles() -> Outcome_ {
    let p = program("1: ADD 0 1\n2: ORACLE 1 2\n3: COPY 2 0");
    let lim = RunLimits::default();
    let o: OracleTable = "#2 => #3".parse().map_err(|e: srm::ParseError| e.to_string())?;
    let out = run(&p, &[], &o, &lim).0;
    ensure(out == Outcome::OracleDiverged { line: 2 }, || format!("undefined query gave {out}"))?;
    let lim = RunLimits::with_steps(20_000);
    let (mut cases, mut seed) = (0, 0);
    while cases < 50 {
        let c = oracle_case(seed);
        seed += 1;
        let (out, t) = run(&c.program, &c.inputs, &c.table, &lim);
        let Some(v) = out.value().cloned() else { continue };
        let queried = t.configurations.iter().any(|cf| {
            matches!(c.program.line(cf.line), Some(srm::asm::Instruction::Oracle(..)))
        });
        if !queried {
            continue;
        }
        let ext = run(&c.program, &c.inputs, &c.extended, &lim).0;
        ensure(ext.value() == Some(&v), || format!("seed {}: {v} became {ext}", seed - 1))?;
        cases += 1;
    }
    Ok(format!("OracleDiverged at line 2; 50 halting runs that query the oracle unchanged by extension ({seed} tried)"))
}

fn monotone(m: &RegularBethModel, f: &PropFormula) -> bool {
    let t = force(m, f);
    t.subformulas().iter().all(|sub| {
        let row = t.row(sub).unwrap();
        m.states.iter().enumerate().all(|(s, st)| !row[s] || st.successors.iter().all(|&n| row[n]))
    })
}

fn beth() -> Outcome_ {
    let start = Instant::now();
    let em = RegularBethModel::excluded_middle_model();
    ensure(validate_model(&em).is_empty(), || "EM model invalid".into())?;
    let f: PropFormula = "p0 \\/ (p0 -> bot)".parse().map_err(|e: srm::ParseError| e.to_string())?;
    ensure(force(&em, &f).root_forces(&f) == Some(false), || "EM forced at root".into())?;
    let p: Vec<PropFormula> = (0..3).map(PropFormula::atom).collect();
    let mut formulas = vec![f];
    let mut g = rng(8);
    let mut states = BTreeSet::new();
    for _ in 0..50 {
        let m = random_model(&mut g, 6, 3);
        ensure(validate_model(&m).is_empty(), || format!("random model invalid:\n{m}"))?;
        states.insert(m.len());
        for (a, b, c) in [(&p[0], &p[1], &p[2]), (&p[2], &p[0], &p[1])] {
            for ax in ipc_axioms(a, b, c) {
                ensure(force(&m, &ax).row(&ax).unwrap().iter().all(|&x| x), || format!("{ax} not forced:\n{m}"))?;
                formulas.push(ax);
            }
        }
        for f in &formulas {
            ensure(monotone(&m, f), || format!("forcing of {f} not monotone:\n{m}"))?;
        }
    }
    for f in &formulas {
        ensure(monotone(&em, f), || format!("forcing of {f} on the EM model not monotone"))?;
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("EM refuted; 50 models with sizes {states:?} force the axioms; tables monotone; {t:.2?}"))
}

fn realizers() -> Outcome_ {
    let ctx = CheckContext::standard();
    ensure(ctx.domain_sample.len() == 22, || format!("sample has {} sets", ctx.domain_sample.len()))?;
    let mut held = Vec::new();
    for name in realize::AXIOMS {
        let f = realize::axiom_formula(name).map_err(|e| e.to_string())?;
        let r = realize::get_axiom_realizer(name).map_err(|e| e.to_string())?;
        let v = realize::check(&r, &f, &ctx).map_err(|e| e.to_string())?;
        ensure(!v.is_refuted(), || format!("{name}: {v}"))?;
        held.push(*name);
    }
    let mut refuted = 0;
    for c in realize::corrupted_realizers() {
        let f = realize::axiom_formula(c.axiom).map_err(|e| e.to_string())?;
        match realize::check(&c.realizer, &f, &ctx).map_err(|e| e.to_string())? {
            Verdict::Refuted(w) => {
                ensure(realize::replay(&c.realizer, &f, &ctx, &w), || format!("{}: refutation does not replay", c.name))?;
                refuted += 1;
            }
            Verdict::NotRefuted => return Err(format!("{} not refuted", c.name)),
        }
    }
    ensure(refuted >= 5, || format!("only {refuted} corrupted realizers"))?;
    Ok(format!("not refuted: {}; {refuted} corrupted realizers refuted and replayed", held.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "equality listing vs native equality", eq_listing),
        ("AC2", "catalogue differential tests", catalogue),
        ("AC3", "V-stages", vstage),
        ("AC4", "Delta0 compiler vs evaluator", delta0_compiler),
        ("AC5", "Ackermann order laws", order_laws),
        ("AC6", "omega-limit soundness", omega_limits),
        ("AC7", "trace checker", trace_checker),
        ("AC8", "oracle semantics", oracles),
        ("AC9", "Beth models", beth),
        ("AC10", "realisability falsifier", realizers),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        match f() {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
