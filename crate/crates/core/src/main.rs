use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use srm::asm::{assemble, decode_program, disassemble_program, encode_program, expand_macros, validate, Program};
use srm::beth::{self, RegularBethModel};
use srm::delta0::{self, Sigma1Verdict};
use srm::lang::{visser_atom_name, visser_rule, PropFormula, SetFormula};
use srm::realize::{self, CheckContext, Realizer, Verdict};
use srm::stdlib;
use srm::vm::{check_trace_detailed, run, OracleTable, RunLimits, Trace};
use srm::HfSet;

/// Set register machines over hereditarily finite sets.
#[derive(Parser)]
#[command(name = "srm", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized command.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Successor steps per run.
    #[arg(long, global = true)]
    max_steps: Option<u64>,
    /// ω-jumps per run.
    #[arg(long, global = true)]
    max_limits: Option<u32>,
    /// Largest set POW may be applied to.
    #[arg(long, global = true)]
    max_pow: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble and expand a program; prints core assembly, or its code with --code.
    Asm {
        file: PathBuf,
        #[arg(long)]
        code: bool,
    },
    /// Disassemble a program code (an HF literal).
    Dis { file: PathBuf },
    /// Run a program.
    Run {
        file: PathBuf,
        #[arg(long = "in", num_args = 0..)]
        inputs: Vec<String>,
        #[arg(long)]
        oracle: Option<PathBuf>,
        /// Write the trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a recorded trace against a program.
    CheckTrace {
        program: PathBuf,
        trace: PathBuf,
        #[arg(long)]
        oracle: Option<PathBuf>,
    },
    #[command(subcommand)]
    Stdlib(StdlibCmd),
    #[command(subcommand)]
    Delta0(Delta0Cmd),
    #[command(subcommand)]
    Realize(RealizeCmd),
    #[command(subcommand)]
    Beth(BethCmd),
    /// Print the antecedent and consequent of the restricted Visser rule V_n.
    Visser { n: u32 },
}

#[derive(Subcommand)]
enum StdlibCmd {
    List,
    /// Print the source of an entry.
    Show { name: String },
    Run {
        name: String,
        #[arg(long = "in", num_args = 0..)]
        inputs: Vec<String>,
    },
    /// Differential test against the native implementation; `all` tests every entry.
    Fuzz {
        name: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
    },
}

#[derive(Subcommand)]
enum Delta0Cmd {
    /// Evaluate a formula; unbounded ∃ prefixes are searched up to --bound candidates.
    Eval {
        formula: String,
        /// Assignments `var=<hf>`.
        #[arg(long = "let", num_args = 0..)]
        env: Vec<String>,
        #[arg(long, default_value_t = 256)]
        bound: u64,
    },
    /// Compile a Δ₀ formula to assembly; arguments are read from R0, R1, … in order.
    Compile {
        formula: String,
        #[arg(long, value_delimiter = ',')]
        args: Vec<String>,
        /// Emit the macro-level program instead of expanded core instructions.
        #[arg(long)]
        macros: bool,
    },
    /// Compare compiled programs against the evaluator on random formulas.
    Fuzz {
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
    },
}

#[derive(Subcommand)]
enum RealizeCmd {
    /// List the axiom realizers and their formulas.
    List,
    /// Look for a violation of `realizer ⊩ formula`.
    Check {
        /// A closed set formula; defaults to the axiom's formula with --axiom.
        #[arg(long)]
        formula: Option<String>,
        /// Assembly file of the realizer's program.
        #[arg(long)]
        realizer: Option<PathBuf>,
        /// Parameters placed before the argument.
        #[arg(long = "param", num_args = 0..)]
        params: Vec<String>,
        /// Use a catalogue realizer instead of a file.
        #[arg(long)]
        axiom: Option<String>,
        /// File with one HF set per line, or `standard`.
        #[arg(long, default_value = "standard")]
        sample: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Check every catalogue realizer and every corrupted one on the standard context.
    Suite,
}

#[derive(Subcommand)]
enum BethCmd {
    Validate { file: PathBuf },
    /// Report whether the root forces a formula; --all prints every state and subformula.
    Force {
        file: PathBuf,
        formula: String,
        #[arg(long)]
        all: bool,
    },
    /// Search for a countermodel; exits 1 when one is found.
    Search {
        formula: String,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        #[arg(long, default_value_t = 2)]
        max_branching: usize,
    },
    /// Print a random valid model.
    Random {
        #[arg(long, default_value_t = 4)]
        max_states: usize,
        #[arg(long, default_value_t = 2)]
        atoms: u32,
    },
}

enum Fail {
    /// Bad input: exit code 2.
    Usage(String),
    /// The command ran and reports a negative result: exit code 1.
    Semantic(String),
}

type CmdResult = Result<(), Fail>;

fn usage(e: impl std::fmt::Display) -> Fail {
    Fail::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_hf(s: &str) -> Result<HfSet, Fail> {
    s.parse().map_err(|e| usage(format!("bad set `{s}`: {e}")))
}

fn parse_hfs(v: &[String]) -> Result<Vec<HfSet>, Fail> {
    v.iter().map(|s| parse_hf(s)).collect()
}

fn load_program(path: &Path) -> Result<Program, Fail> {
    let src = read(path)?;
    let mp = assemble(&src).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(expand_macros(&mp))
}

fn load_oracle(path: Option<&PathBuf>) -> Result<OracleTable, Fail> {
    match path {
        None => Ok(OracleTable::new()),
        Some(p) => read(p)?.parse().map_err(|e| usage(format!("{}: {e}", p.display()))),
    }
}

/// Defaults, then `SRM_DEFAULT_LIMITS` (`steps=N,limits=K,pow=P`), then flags.
fn limits(g: &Global) -> Result<RunLimits, Fail> {
    let mut l = RunLimits::default();
    if let Ok(spec) = std::env::var("SRM_DEFAULT_LIMITS") {
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || usage(format!("SRM_DEFAULT_LIMITS: cannot read `{part}`"));
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "steps" => l.max_steps = v.trim().parse().map_err(|_| bad())?,
                "limits" => l.max_limit_jumps = v.trim().parse().map_err(|_| bad())?,
                "pow" => l.max_powerset_input = v.trim().parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
    }
    if let Some(s) = g.max_steps {
        l.max_steps = s;
    }
    if let Some(k) = g.max_limits {
        l.max_limit_jumps = k;
    }
    if let Some(p) = g.max_pow {
        l.max_powerset_input = p;
    }
    Ok(l)
}

fn cmd_run(g: &Global, file: &Path, inputs: &[String], oracle: Option<&PathBuf>, trace: Option<&PathBuf>) -> CmdResult {
    let p = load_program(file)?;
    for d in validate(&p) {
        eprintln!("{d}");
    }
    let o = load_oracle(oracle)?;
    let (out, t) = run(&p, &parse_hfs(inputs)?, &o, &limits(g)?);
    if let Some(path) = trace {
        fs::write(path, t.to_string()).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    println!("{out}");
    match out.value() {
        Some(v) => {
            println!("{v}");
            Ok(())
        }
        None => Err(Fail::Semantic("did not halt".into())),
    }
}

fn cmd_check_trace(program: &Path, trace: &Path, oracle: Option<&PathBuf>) -> CmdResult {
    let p = load_program(program)?;
    let t: Trace = read(trace)?.parse().map_err(|e| usage(format!("{}: {e}", trace.display())))?;
    let o = load_oracle(oracle)?;
    let checker_limits = RunLimits {
        max_powerset_input: 24,
        ..RunLimits::default()
    };
    match check_trace_detailed(&p, &t, &o, &checker_limits) {
        Ok(()) => {
            println!("accepted");
            Ok(())
        }
        Err(v) => {
            println!("rejected: {v}");
            Err(Fail::Semantic(String::new()))
        }
    }
}

fn cmd_stdlib(g: &Global, c: &StdlibCmd) -> CmdResult {
    match c {
        StdlibCmd::List => {
            for name in stdlib::list() {
                let e = stdlib::get(name).map_err(usage)?;
                println!("{name:<12} arity {}  {:<5} {}", e.arity, e.flavor().name(), e.summary);
            }
            Ok(())
        }
        StdlibCmd::Show { name } => {
            print!("{}", stdlib::source(name).map_err(usage)?);
            Ok(())
        }
        StdlibCmd::Run { name, inputs } => {
            let v = stdlib::run_entry(name, &parse_hfs(inputs)?, &limits(g)?).map_err(|e| match e {
                stdlib::StdlibError::Vm(v) => Fail::Semantic(v.to_string()),
                other => usage(other),
            })?;
            println!("{v}");
            Ok(())
        }
        StdlibCmd::Fuzz { name, samples, max_rank } => {
            let names: Vec<&str> = if name == "all" { stdlib::list() } else { vec![name.as_str()] };
            let mut ok = true;
            for n in names {
                let r = stdlib::differential_test_with(n, *samples, *max_rank, g.seed, &limits(g)?).map_err(usage)?;
                println!("{r}");
                ok &= r.passed();
            }
            if ok {
                Ok(())
            } else {
                Err(Fail::Semantic("mismatches found".into()))
            }
        }
    }
}

fn parse_formula(s: &str) -> Result<SetFormula, Fail> {
    s.parse().map_err(|e| usage(format!("bad formula: {e}")))
}

fn cmd_delta0(g: &Global, c: &Delta0Cmd) -> CmdResult {
    match c {
        Delta0Cmd::Eval { formula, env, bound } => {
            let f = parse_formula(formula)?;
            let mut map = BTreeMap::new();
            for e in env {
                let (k, v) = e.split_once('=').ok_or_else(|| usage(format!("expected var=<set>, found `{e}`")))?;
                map.insert(k.trim().to_string(), parse_hf(v.trim())?);
            }
            if f.is_delta0() {
                let v = delta0::eval_delta0(&f, &map).map_err(usage)?;
                println!("{v}");
                return if v { Ok(()) } else { Err(Fail::Semantic(String::new())) };
            }
            match delta0::eval_sigma1(&f, &map, *bound).map_err(usage)? {
                Sigma1Verdict::True(w) => {
                    println!("true");
                    for (v, x) in w {
                        println!("{v} = {x}");
                    }
                    Ok(())
                }
                Sigma1Verdict::Unknown => {
                    println!("unknown (no witness among {bound} candidates)");
                    Err(Fail::Semantic(String::new()))
                }
            }
        }
        Delta0Cmd::Compile { formula, args, macros } => {
            let f = parse_formula(formula)?;
            let names: Vec<&str> = args.iter().map(String::as_str).collect();
            let mp = delta0::compile_delta0(&f, &names).map_err(usage)?;
            if *macros {
                print!("{}", srm::asm::disassemble(&mp));
            } else {
                print!("{}", disassemble_program(&expand_macros(&mp)));
            }
            Ok(())
        }
        Delta0Cmd::Fuzz { cases, depth, max_rank } => {
            let r = delta0::differential_fuzz(*cases, *depth, *max_rank, g.seed, &limits(g)?);
            println!("{r}");
            if r.passed() {
                Ok(())
            } else {
                Err(Fail::Semantic(String::new()))
            }
        }
    }
}

fn report(r: &Realizer, f: &SetFormula, ctx: &CheckContext) -> Result<bool, Fail> {
    let v = realize::check(r, f, ctx).map_err(usage)?;
    println!("{v}");
    if let Verdict::Refuted(w) = &v {
        println!("replays: {}", realize::replay(r, f, ctx, w));
    }
    Ok(v.is_refuted())
}

fn cmd_realize(g: &Global, c: &RealizeCmd) -> CmdResult {
    match c {
        RealizeCmd::List => {
            for name in realize::AXIOMS {
                println!("{name}: {}", realize::axiom_formula(name).map_err(usage)?);
            }
            Ok(())
        }
        RealizeCmd::Check { formula, realizer, params, axiom, sample, depth } => {
            let mut ctx = CheckContext::standard();
            ctx.limits = limits(g)?;
            ctx.depth_budget = *depth;
            if sample != "standard" {
                ctx.domain_sample = read(Path::new(sample))?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with("//"))
                    .map(parse_hf)
                    .collect::<Result<_, _>>()?;
            }
            let f = match (formula, axiom) {
                (Some(f), _) => parse_formula(f)?,
                (None, Some(a)) => realize::axiom_formula(a).map_err(usage)?,
                (None, None) => return Err(usage("give --formula or --axiom")),
            };
            let r = match (realizer, axiom) {
                (Some(path), _) => Realizer::new(load_program(path)?, parse_hfs(params)?),
                (None, Some(a)) => realize::get_axiom_realizer(a).map_err(usage)?,
                (None, None) => return Err(usage("give --realizer or --axiom")),
            };
            if report(&r, &f, &ctx)? {
                Err(Fail::Semantic(String::new()))
            } else {
                Ok(())
            }
        }
        RealizeCmd::Suite => {
            let mut ctx = CheckContext::standard();
            ctx.limits = limits(g)?;
            let mut ok = true;
            for name in realize::AXIOMS {
                println!("== {name}");
                let f = realize::axiom_formula(name).map_err(usage)?;
                let r = realize::get_axiom_realizer(name).map_err(usage)?;
                ok &= !report(&r, &f, &ctx)?;
            }
            for c in realize::corrupted_realizers() {
                println!("== {} (corrupted {})", c.name, c.axiom);
                let f = realize::axiom_formula(c.axiom).map_err(usage)?;
                ok &= report(&c.realizer, &f, &ctx)?;
            }
            if ok {
                Ok(())
            } else {
                Err(Fail::Semantic("unexpected verdict".into()))
            }
        }
    }
}

fn load_model(path: &Path) -> Result<RegularBethModel, Fail> {
    read(path)?.parse().map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_prop(s: &str) -> Result<PropFormula, Fail> {
    s.parse().map_err(|e| usage(format!("bad formula: {e}")))
}

fn cmd_beth(g: &Global, c: &BethCmd) -> CmdResult {
    match c {
        BethCmd::Validate { file } => {
            let m = load_model(file)?;
            let v = beth::validate_model(&m);
            if v.is_empty() {
                println!("valid");
                return Ok(());
            }
            for d in &v {
                println!("{d}");
            }
            Err(Fail::Semantic(String::new()))
        }
        BethCmd::Force { file, formula, all } => {
            let m = load_model(file)?;
            let f = parse_prop(formula)?;
            for d in beth::validate_model(&m) {
                eprintln!("warning: {d}");
            }
            let t = beth::force(&m, &f);
            if *all {
                for sub in t.subformulas() {
                    let row = t.row(sub).expect("computed");
                    let forced: Vec<&str> = m
                        .states
                        .iter()
                        .zip(row)
                        .filter(|(_, &b)| b)
                        .map(|(s, _)| s.name.as_str())
                        .collect();
                    println!("{sub}: {{{}}}", forced.join(","));
                }
            }
            let root = t.root_forces(&f).expect("computed");
            println!("root: {}", if root { "forced" } else { "not forced" });
            Ok(())
        }
        BethCmd::Search { formula, max_states, max_branching } => {
            let f = parse_prop(formula)?;
            match beth::countermodel_search(&f, *max_states, *max_branching) {
                Some(m) => {
                    print!("{m}");
                    Err(Fail::Semantic(String::new()))
                }
                None => {
                    println!("no countermodel with at most {max_states} states and branching {max_branching}");
                    Ok(())
                }
            }
        }
        BethCmd::Random { max_states, atoms } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(g.seed);
            print!("{}", beth::random_model(&mut rng, *max_states, *atoms));
            Ok(())
        }
    }
}

fn cmd_visser(n: u32) -> CmdResult {
    let (a, c) = visser_rule(n).map_err(usage)?;
    let names = |i: u32| visser_atom_name(n, i);
    println!("V{n}a: {}", a.display_with(&names));
    println!("V{n}c: {}", c.display_with(&names));
    Ok(())
}

fn dispatch(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Asm { file, code } => {
            let p = load_program(file)?;
            if *code {
                println!("{}", encode_program(&p));
            } else {
                print!("{}", disassemble_program(&p));
            }
            Ok(())
        }
        Command::Dis { file } => {
            let code = parse_hf(read(file)?.trim())?;
            let p = decode_program(&code).map_err(usage)?;
            print!("{}", disassemble_program(&p));
            Ok(())
        }
        Command::Run { file, inputs, oracle, trace } => cmd_run(g, file, inputs, oracle.as_ref(), trace.as_ref()),
        Command::CheckTrace { program, trace, oracle } => cmd_check_trace(program, trace, oracle.as_ref()),
        Command::Stdlib(c) => cmd_stdlib(g, c),
        Command::Delta0(c) => cmd_delta0(g, c),
        Command::Realize(c) => cmd_realize(g, c),
        Command::Beth(c) => cmd_beth(g, c),
        Command::Visser { n } => cmd_visser(*n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Semantic(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
