//! Library of set-register programs, each paired with a native reference implementation.
//!
//! The programs are shipped as `.srm` files under `stdlib/`. Four are hand-written listings
//! (`eq`, `union2`, `intersect2`, `vstage`); the rest are produced by [`ProgramBuilder`]
//! code and checked against the shipped files by a golden test.
//!
//! [`ProgramBuilder`]: crate::asm::ProgramBuilder

mod inputs;
#[cfg_attr(not(test), allow(dead_code))]
mod programs;

pub use programs::least_sat_program;
pub(crate) use programs::emit_opair;

use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::asm::{assemble, expand_macros, Flavor, MacroProgram, Program};
use crate::hfset::{f_tau, f_tau_inv, liminf_formula, v_stage, HfError, HfSet, DEFAULT_POWERSET_LIMIT};
use crate::vm::{run_as_function, OracleTable, RunLimits, VmError};

use inputs::Gen;

type Native = fn(&[HfSet]) -> Result<HfSet, HfError>;

pub struct StdlibEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub arity: usize,
    pub program: MacroProgram,
    pub expanded: Program,
    native: Native,
    gen: Gen,
}

impl StdlibEntry {
    pub fn flavor(&self) -> Flavor {
        self.expanded.flavor
    }

    /// The reference value on `args`.
    pub fn native(&self, args: &[HfSet]) -> Result<HfSet, HfError> {
        (self.native)(args)
    }

    /// A random argument tuple from this entry's test distribution.
    pub fn sample_inputs(&self, rng: &mut ChaCha8Rng, max_rank: u32) -> Vec<HfSet> {
        (self.gen)(rng, max_rank)
    }
}

impl fmt::Debug for StdlibEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StdlibEntry")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("lines", &self.program.len())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StdlibError {
    #[error("no library program named `{0}`")]
    UnknownName(String),
    #[error("`{name}` takes {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Vm(#[from] VmError),
}

fn b(v: bool) -> HfSet {
    HfSet::numeral(v as usize)
}

fn seq_of(a: &HfSet) -> Result<Vec<HfSet>, HfError> {
    a.as_sequence()
        .ok_or_else(|| HfError::MalformedValue(format!("{a} is not a sequence")))
}

fn choice(a: &[HfSet]) -> Result<HfSet, HfError> {
    let pairs = a[0]
        .iter()
        .map(|y| {
            let z = y
                .take_least()
                .ok_or_else(|| HfError::MalformedValue("empty member".into()))?;
            Ok(HfSet::ordered_pair(y, &z))
        })
        .collect::<Result<Vec<_>, HfError>>()?;
    Ok(HfSet::make_set(pairs))
}

/// `(name, summary, arity, native, generator)`.
const CATALOGUE: &[(&str, &str, usize, Native, Gen)] = &[
    ("eq", "#1 iff x = y", 2, |a| Ok(b(a[0] == a[1])), inputs::two_maybe_equal),
    ("union2", "x ∪ y", 2, |a| Ok(HfSet::union2(&a[0], &a[1])), inputs::two),
    ("intersect2", "x ∩ y", 2, |a| Ok(HfSet::intersect2(&a[0], &a[1])), inputs::two),
    ("singleton", "{x}", 1, |a| Ok(HfSet::singleton(a[0].clone())), inputs::one),
    ("pair", "{x, y}", 2, |a| Ok(HfSet::pair(a[0].clone(), a[1].clone())), inputs::two),
    ("opair", "⟨x, y⟩", 2, |a| Ok(HfSet::ordered_pair(&a[0], &a[1])), inputs::two),
    ("proj1", "first component of a pair", 1, |a| a[0].proj1(), inputs::opair),
    ("proj2", "second component of a pair", 1, |a| a[0].proj2(), inputs::opair),
    ("is_opair", "#1 iff x is an ordered pair", 1, |a| Ok(b(a[0].is_ordered_pair())), inputs::maybe_opair),
    ("is_func", "#1 iff x is a function", 1, |a| Ok(b(a[0].is_function())), inputs::maybe_function),
    ("bigunion", "⋃x", 1, |a| Ok(a[0].big_union()), inputs::one),
    ("bigintersect", "⋂x for nonempty x", 1, |a| a[0].big_intersect(), inputs::nonempty_set),
    ("dom", "domain of a function", 1, |a| a[0].domain(), inputs::a_function),
    ("apply_fn", "f(x)", 2, |a| a[0].apply(&a[1]), inputs::function_and_point),
    ("is_ordinal", "#1 iff x is an ordinal", 1, |a| Ok(b(a[0].is_ordinal())), inputs::maybe_ordinal),
    ("is_ordseq", "#1 iff x is a sequence of ordinal length", 1, |a| Ok(b(a[0].is_ord_sequence())), inputs::maybe_sequence),
    (
        "least_sat",
        "least member of y that is an ordinal, else ∅",
        1,
        |a| Ok(a[0].iter().find(|x| x.is_ordinal()).cloned().unwrap_or_default()),
        inputs::mixed_ordinals,
    ),
    ("seq_proj", "s(α) for a sequence s", 2, |a| a[0].apply(&a[1]), inputs::sequence_and_index),
    ("pow", "P(x)", 1, |a| a[0].powerset(DEFAULT_POWERSET_LIMIT), inputs::one),
    (
        "is_pow",
        "#1 iff x = P(y)",
        2,
        |a| Ok(b(a[1].powerset(DEFAULT_POWERSET_LIMIT)? == a[0])),
        inputs::maybe_powerset,
    ),
    ("liminf_seq", "liminf of a nonempty sequence of sets", 1, |a| liminf_formula(&seq_of(&a[0])?), inputs::nonempty_sequence),
    (
        "vstage",
        "V_n",
        1,
        |a| {
            let n = a[0].to_natural().ok_or_else(|| HfError::MalformedValue("not a numeral".into()))?;
            v_stage(n, DEFAULT_POWERSET_LIMIT)
        },
        inputs::small_numeral,
    ),
    ("tau_less", "#1 iff x precedes y in Ackermann order", 2, |a| Ok(b(a[0] < a[1])), inputs::two_maybe_equal),
    (
        "f_tau",
        "the n-th set in Ackermann order",
        1,
        |a| {
            let n = a[0].to_natural().ok_or_else(|| HfError::MalformedValue("not a numeral".into()))?;
            Ok(f_tau(n as u64))
        },
        inputs::code_below_16,
    ),
    ("f_tau_inv", "position of x in Ackermann order", 1, |a| Ok(HfSet::numeral(f_tau_inv(&a[0])? as usize)), inputs::rank_at_most_3),
    ("choice_fn", "y ↦ least member of y, on a family of nonempty sets", 1, choice, inputs::nonempty_family),
];

fn source_of(name: &str) -> &'static str {
    programs::LISTINGS
        .iter()
        .chain(GENERATED)
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .unwrap_or_else(|| panic!("no source for {name}"))
}

macro_rules! generated {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../stdlib/", $name, ".srm")))),*]
    };
}

const GENERATED: &[(&str, &str)] = generated!(
    "singleton", "pair", "opair", "proj1", "proj2", "is_opair", "is_func", "bigunion",
    "bigintersect", "dom", "apply_fn", "is_ordinal", "is_ordseq", "least_sat", "seq_proj", "pow",
    "is_pow", "liminf_seq", "tau_less", "f_tau", "f_tau_inv", "choice_fn",
);

fn entries() -> &'static [StdlibEntry] {
    static ENTRIES: OnceLock<Vec<StdlibEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        CATALOGUE
            .iter()
            .map(|&(name, summary, arity, native, gen)| {
                let program = assemble(source_of(name)).expect("shipped program assembles");
                let expanded = expand_macros(&program);
                StdlibEntry {
                    name,
                    summary,
                    arity,
                    program,
                    expanded,
                    native,
                    gen,
                }
            })
            .collect()
    })
}

pub fn list() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

pub fn get(name: &str) -> Result<&'static StdlibEntry, StdlibError> {
    entries()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| StdlibError::UnknownName(name.to_string()))
}

/// The shipped `.srm` text of an entry.
pub fn source(name: &str) -> Result<&'static str, StdlibError> {
    get(name).map(|e| source_of(e.name))
}

/// Runs an entry on fresh copies of `args` (values are immutable, so copies are free).
pub fn run_entry(name: &str, args: &[HfSet], limits: &RunLimits) -> Result<HfSet, StdlibError> {
    let e = get(name)?;
    if args.len() != e.arity {
        return Err(StdlibError::Arity {
            name: name.to_string(),
            expected: e.arity,
            found: args.len(),
        });
    }
    Ok(run_as_function(&e.expanded, args, &OracleTable::new(), limits)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub inputs: Vec<HfSet>,
    pub expected: HfSet,
    /// Program output, or the reason it produced none.
    pub got: Result<HfSet, String>,
}

#[derive(Debug, Clone)]
pub struct DiffReport {
    pub name: String,
    pub samples: usize,
    /// Inputs outside the reference implementation's domain; not counted as samples.
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
    pub runtime: Duration,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "name={} samples={} mismatches={} runtime={:.3}s",
            self.name,
            self.samples,
            self.mismatches.len(),
            self.runtime.as_secs_f64()
        )?;
        for m in &self.mismatches {
            let args: Vec<String> = m.inputs.iter().map(|x| x.to_string()).collect();
            let got = match &m.got {
                Ok(v) => v.to_string(),
                Err(e) => e.clone(),
            };
            write!(f, "\n  inputs=[{}] expected={} got={}", args.join(", "), m.expected, got)?;
        }
        Ok(())
    }
}

/// Runs `name` against its reference implementation on `samples` seeded random inputs.
pub fn differential_test(
    name: &str,
    samples: usize,
    max_rank: u32,
    seed: u64,
) -> Result<DiffReport, StdlibError> {
    differential_test_with(name, samples, max_rank, seed, &RunLimits::default())
}

pub fn differential_test_with(
    name: &str,
    samples: usize,
    max_rank: u32,
    seed: u64,
    limits: &RunLimits,
) -> Result<DiffReport, StdlibError> {
    let e = get(name)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let mut report = DiffReport {
        name: name.to_string(),
        samples: 0,
        skipped: 0,
        mismatches: Vec::new(),
        runtime: Duration::ZERO,
    };
    while report.samples < samples {
        let args = e.sample_inputs(&mut rng, max_rank);
        let Ok(expected) = e.native(&args) else {
            report.skipped += 1;
            continue;
        };
        report.samples += 1;
        let got = run_as_function(&e.expanded, &args, &OracleTable::new(), limits);
        if got.as_ref() != Ok(&expected) {
            report.mismatches.push(Mismatch {
                inputs: args,
                expected,
                got: got.map_err(|err| err.to_string()),
            });
        }
    }
    report.runtime = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::disassemble;

    fn hf(s: &str) -> HfSet {
        s.parse().unwrap()
    }

    /// Shipped builder programs match the builder; `SRM_BLESS=1` rewrites them.
    #[test]
    fn generated_files_match_builder() {
        let bless = std::env::var_os("SRM_BLESS").is_some();
        for name in programs::BUILT {
            let built = programs::build(name).unwrap();
            if bless {
                let e = CATALOGUE.iter().find(|c| c.0 == *name).unwrap();
                let text = format!(
                    "# {}\n# Generated by the program builder (SRM_BLESS=1 cargo test -p srm stdlib).\n{}",
                    e.1,
                    disassemble(&built)
                );
                let path = format!("{}/stdlib/{name}.srm", env!("CARGO_MANIFEST_DIR"));
                std::fs::write(path, text).unwrap();
            } else {
                assert_eq!(assemble(source_of(name)).unwrap(), built, "{name}.srm is stale");
            }
        }
    }

    #[test]
    fn listings_have_their_shape() {
        assert_eq!(get("eq").unwrap().program.len(), 14);
        assert_eq!(get("union2").unwrap().program.len(), 5);
        assert_eq!(get("intersect2").unwrap().program.len(), 8);
        assert_eq!(get("vstage").unwrap().flavor(), Flavor::SrmPlus);
        assert_eq!(get("eq").unwrap().flavor(), Flavor::Srm);
        assert_eq!(list().len(), 26);
        assert!(matches!(get("nope"), Err(StdlibError::UnknownName(_))));
    }

    #[test]
    fn spot_values() {
        let lim = RunLimits::default();
        assert_eq!(run_entry("eq", &[hf("#1"), hf("#1")], &lim).unwrap(), hf("#1"));
        assert_eq!(run_entry("eq", &[hf("∅"), hf("{∅}")], &lim).unwrap(), hf("#0"));
        assert_eq!(run_entry("vstage", &[hf("#3")], &lim).unwrap().len(), 4);
        assert_eq!(run_entry("tau_less", &[hf("∅"), hf("{∅}")], &lim).unwrap(), hf("#1"));
        assert_eq!(run_entry("f_tau", &[hf("#2")], &lim).unwrap(), hf("{{∅}}"));
        assert!(matches!(
            run_entry("eq", &[hf("#1")], &lim),
            Err(StdlibError::Arity { .. })
        ));
    }
}

#[cfg(test)]
mod differential {
    use super::*;

    #[test]
    fn every_entry_agrees_on_a_small_sample() {
        for name in list() {
            let r = differential_test(name, 40, 3, 7).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
