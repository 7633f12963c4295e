#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use srm::asm::{Instruction, MacroInstruction, MacroProgram, Program, Reg};
use srm::hfset::random_hf;
use srm::lang::PropFormula;
use srm::HfSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hf(s: &str) -> HfSet {
    s.parse().unwrap()
}

pub fn hf_from_seed(seed: u64, max_rank: u32) -> HfSet {
    random_hf(&mut rng(seed), max_rank)
}

/// A random core instruction over registers `0..regs` jumping into `1..=len + 1`.
pub fn random_instruction(r: &mut impl Rng, regs: Reg, len: usize, oracle: bool) -> Instruction {
    use Instruction::*;
    let mut reg = || r.gen_range(0..regs);
    let (a, b) = (reg(), reg());
    let k = r.gen_range(1..=len + 1);
    match r.gen_range(0..if oracle { 8 } else { 7 }) {
        0 => Zero(a),
        1 => Add(a, b),
        2 => Copy(a, b),
        3 => Take(a, b),
        4 => Remove(a, b),
        5 => IfEmptyGoto(a, k),
        6 => IfMemberGoto(a, b, k),
        _ => Oracle(a, b),
    }
}

pub fn random_program(r: &mut impl Rng, max_len: usize, regs: Reg, oracle: bool) -> Program {
    let len = r.gen_range(1..=max_len);
    Program::new((0..len).map(|_| random_instruction(r, regs, len, oracle)).collect())
}

pub fn random_macro_program(r: &mut impl Rng, max_len: usize, regs: Reg) -> MacroProgram {
    let len = r.gen_range(1..=max_len);
    let lines = (0..len)
        .map(|_| match r.gen_range(0..10) {
            0 => MacroInstruction::Goto(r.gen_range(1..=len + 1)),
            1 => MacroInstruction::IfEqualGoto(r.gen_range(0..regs), r.gen_range(0..regs), r.gen_range(1..=len + 1)),
            _ => MacroInstruction::Core(random_instruction(r, regs, len, false)),
        })
        .collect();
    MacroProgram::new(lines)
}

/// Direct interpreter for oracle-free macro programs: the final `R_0` if the run halts
/// within `max_steps` steps.
pub fn reference_run(p: &MacroProgram, inputs: &[HfSet], max_steps: usize) -> Option<HfSet> {
    use Instruction::*;
    let regs = p.max_register().map_or(1, |m| m as usize + 1).max(inputs.len()).max(1);
    let mut r = vec![HfSet::empty(); regs];
    r[..inputs.len()].clone_from_slice(inputs);
    let mut line: usize = 1;
    for _ in 0..max_steps {
        let Some(ins) = line.checked_sub(1).and_then(|i| p.lines.get(i)) else {
            return Some(r[0].clone());
        };
        let mut next = line + 1;
        match *ins {
            MacroInstruction::Goto(k) => next = k,
            MacroInstruction::IfEqualGoto(i, j, k) => {
                if r[i as usize] == r[j as usize] {
                    next = k
                }
            }
            MacroInstruction::Core(c) => match c {
                Zero(i) => r[i as usize] = HfSet::empty(),
                Add(i, j) => r[j as usize] = HfSet::add_element(&r[i as usize], &r[j as usize]),
                Copy(i, j) => r[j as usize] = r[i as usize].clone(),
                Take(i, j) => {
                    if let Some(x) = r[i as usize].take_least() {
                        r[j as usize] = x
                    }
                }
                Remove(i, j) => r[j as usize] = HfSet::diff_singleton(&r[i as usize], &r[j as usize]),
                IfEmptyGoto(i, k) => {
                    if r[i as usize].is_empty() {
                        next = k
                    }
                }
                IfMemberGoto(i, j, k) => {
                    if r[j as usize].contains(&r[i as usize]) {
                        next = k
                    }
                }
                Pow(..) | Oracle(..) => unimplemented!("reference interpreter is oracle- and pow-free"),
            },
        }
        line = next;
    }
    None
}

pub fn random_prop(r: &mut impl Rng, depth: usize, atoms: u32) -> PropFormula {
    if depth == 0 || r.gen_bool(0.25) {
        return if r.gen_bool(0.1) { PropFormula::Bot } else { PropFormula::atom(r.gen_range(0..atoms)) };
    }
    let a = random_prop(r, depth - 1, atoms);
    let b = random_prop(r, depth - 1, atoms);
    match r.gen_range(0..3) {
        0 => PropFormula::and(a, b),
        1 => PropFormula::or(a, b),
        _ => PropFormula::imp(a, b),
    }
}

pub struct Cycling {
    pub name: &'static str,
    pub source: &'static str,
    pub limits: srm::vm::RunLimits,
    /// Line and registers right after the first ω-jump, derived by hand.
    pub first_limit: (usize, &'static [&'static str]),
}

fn jumps(k: u32) -> srm::vm::RunLimits {
    srm::vm::RunLimits {
        max_limit_jumps: k,
        ..Default::default()
    }
}

/// Programs that need ω-jumps, with their first limit configuration worked out by hand.
pub fn cycling_suite() -> Vec<Cycling> {
    vec![
        Cycling {
            name: "alternating",
            source: "1: ZERO 1\n2: ADD 0 1\n3: REMOVE 0 1\n4: JEZ 2 2",
            limits: jumps(1),
            first_limit: (2, &["#0", "#0", "#0"]),
        },
        Cycling {
            name: "exit_at_limit",
            source: "1: ADD 0 1\n2: JEZ 1 6\n3: REMOVE 0 1\n4: ADD 0 1\n5: JEZ 2 2\n6: ZERO 0\n7: ADD 0 0",
            limits: jumps(4),
            first_limit: (2, &["#0", "#0", "#0"]),
        },
        Cycling {
            name: "keep_common_member",
            source: "1: ADD 3 3\n2: COPY 3 4\n3: ADD 4 4\n4: ADD 3 0\n5: ADD 4 0\n6: REMOVE 4 0\n7: JEZ 5 5",
            limits: jumps(2),
            first_limit: (5, &["{#1}", "#0", "#0", "#1", "#2", "#0"]),
        },
        Cycling {
            name: "two_limits",
            source: "1: ADD 0 1\n2: JEZ 1 6\n3: REMOVE 0 1\n4: ADD 0 1\n5: JEZ 2 2\n\
                     6: ADD 0 3\n7: JEZ 3 11\n8: REMOVE 0 3\n9: ADD 0 3\n10: JEZ 2 7\n11: ADD 0 0",
            limits: jumps(4),
            first_limit: (2, &["#0", "#0", "#0", "#0"]),
        },
        Cycling {
            name: "drop_added_member",
            source: "1: ADD 0 1\n2: ADD 0 3\n3: ADD 1 3\n4: REMOVE 1 3\n5: JEZ 2 3",
            limits: jumps(1),
            first_limit: (3, &["#0", "#1", "#0", "#1"]),
        },
        Cycling {
            name: "period_five",
            source: "1: ADD 0 1\n2: ADD 1 1\n3: ADD 1 2\n4: REMOVE 1 2\n5: ADD 0 2\n6: REMOVE 0 2\n7: JEZ 3 3",
            limits: jumps(1),
            first_limit: (3, &["#0", "#2", "#0", "#0"]),
        },
    ]
}

pub fn program(src: &str) -> srm::asm::Program {
    srm::asm::expand_macros(&srm::asm::assemble(src).unwrap())
}

/// One single-point change per case: a register value or a line number somewhere after the
/// initial configuration, or the initial line.
pub fn mutate(t: &srm::vm::Trace, r: &mut impl Rng) -> srm::vm::Trace {
    let mut m = t.clone();
    let i = r.gen_range(0..m.configurations.len());
    let c = &mut m.configurations[i];
    if i == 0 || r.gen_bool(0.3) {
        c.line = if c.line > 1 && r.gen_bool(0.5) { c.line - 1 } else { c.line + 1 };
    } else {
        let k = r.gen_range(0..c.registers.len());
        let old = c.registers[k].clone();
        c.registers[k] = if r.gen_bool(0.5) || old.is_empty() {
            HfSet::add_element(&old, &old)
        } else {
            HfSet::diff_singleton(&old.take_least().unwrap(), &old)
        };
    }
    m
}

/// Traces of halting runs: catalogue programs on random inputs plus the halting cycling programs.
pub fn halting_traces(count: usize, seed: u64) -> Vec<(srm::asm::Program, srm::vm::Trace)> {
    use srm::vm::{run, OracleTable, RunLimits};
    let mut r = rng(seed);
    let mut out = Vec::new();
    for c in cycling_suite() {
        let p = program(c.source);
        let (o, t) = run(&p, &[], &OracleTable::new(), &c.limits);
        if o.value().is_some() {
            out.push((p, t));
        }
    }
    let names = srm::stdlib::list();
    while out.len() < count {
        let e = srm::stdlib::get(names[r.gen_range(0..names.len())]).unwrap();
        if e.flavor() != srm::asm::Flavor::Srm {
            continue;
        }
        let inputs = e.sample_inputs(&mut r, 2);
        let (o, t) = run(&e.expanded, &inputs, &OracleTable::new(), &RunLimits::default());
        if o.value().is_some() && t.configurations.len() < 400 {
            out.push((e.expanded.clone(), t));
        }
    }
    out
}

pub struct OracleCase {
    pub program: Program,
    pub inputs: Vec<HfSet>,
    pub table: srm::vm::OracleTable,
    pub extended: srm::vm::OracleTable,
}

/// A random oracle program with a table on small keys and an extension on further keys.
pub fn oracle_case(seed: u64) -> OracleCase {
    use srm::hfset::f_tau;
    let mut r = rng(seed);
    let program = random_program(&mut r, 8, 3, true);
    let inputs = vec![random_hf(&mut r, 2)];
    let mut table = srm::vm::OracleTable::new();
    for n in 0..6 {
        if r.gen_bool(0.7) {
            table.insert(f_tau(n), random_hf(&mut r, 2));
        }
    }
    let mut extended = table.clone();
    for n in 0..16 {
        if table.get(&f_tau(n)).is_none() {
            extended.insert(f_tau(n), random_hf(&mut r, 2));
        }
    }
    OracleCase { program, inputs, table, extended }
}

/// Every limit configuration in `t` is the pointwise liminf of the cycle just before it.
pub fn limits_are_sound(t: &srm::vm::Trace) -> Result<(), String> {
    for m in &t.limits {
        let cycle = &t.configurations[m.index - m.period..m.index];
        let post = &t.configurations[m.index];
        let line = cycle.iter().map(|c| c.line).min().unwrap();
        if post.line != line {
            return Err(format!("limit line {} but cycle minimum {line}", post.line));
        }
        for k in 0..post.registers.len() {
            let values: Vec<HfSet> = cycle.iter().map(|c| c.registers[k].clone()).collect();
            let lim = srm::hfset::liminf_cycle(&values).unwrap();
            let mut unrolled = t.configurations[m.index - m.period - m.prefix..m.index - m.period]
                .iter()
                .map(|c| c.registers[k].clone())
                .collect::<Vec<_>>();
            for _ in 0..3 {
                unrolled.extend(values.iter().cloned());
            }
            if srm::hfset::liminf_stabilized(&unrolled, m.period).unwrap() != lim || post.registers[k] != lim {
                return Err(format!("register {k} at limit {} is {}, expected {lim}", m.index, post.registers[k]));
            }
            for v in &values {
                for x in v.iter() {
                    if lim.contains(x) != values.iter().all(|w| w.contains(x)) {
                        return Err(format!("membership of {x} in register {k}"));
                    }
                }
            }
        }
    }
    Ok(())
}
