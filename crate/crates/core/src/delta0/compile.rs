use std::collections::BTreeMap;

use super::Delta0Error;
use crate::asm::{Label, MacroProgram, ProgramBuilder, Reg};
use crate::hfset::HfSet;
use crate::lang::{SetFormula, Term};

struct Compiler {
    b: ProgramBuilder,
    consts: Vec<(HfSet, Reg)>,
}

impl Compiler {
    fn term(&self, t: &Term, env: &BTreeMap<String, Reg>) -> Result<Reg, Delta0Error> {
        match t {
            Term::Var(v) => env.get(v).copied().ok_or_else(|| Delta0Error::UnboundVariable(v.clone())),
            Term::Const(c) => Ok(self.consts.iter().find(|(k, _)| k == c).expect("constants preloaded").1),
        }
    }

    /// Emits code that jumps to `yes` if `f` holds and to `no` otherwise.
    fn formula(
        &mut self,
        f: &SetFormula,
        env: &BTreeMap<String, Reg>,
        yes: Label,
        no: Label,
    ) -> Result<(), Delta0Error> {
        use SetFormula::*;
        match f {
            Eq(a, c) => {
                let (a, c) = (self.term(a, env)?, self.term(c, env)?);
                self.b.jeq(a, c, yes);
                self.b.goto(no);
            }
            In(a, c) => {
                let (a, c) = (self.term(a, env)?, self.term(c, env)?);
                self.b.jmem(a, c, yes);
                self.b.goto(no);
            }
            Bot => self.b.goto(no),
            And(a, c) => {
                let mid = self.b.label();
                self.formula(a, env, mid, no)?;
                self.b.place(mid);
                self.formula(c, env, yes, no)?;
            }
            Or(a, c) => {
                let mid = self.b.label();
                self.formula(a, env, yes, mid)?;
                self.b.place(mid);
                self.formula(c, env, yes, no)?;
            }
            Imp(a, c) => {
                let mid = self.b.label();
                self.formula(a, env, mid, yes)?;
                self.b.place(mid);
                self.formula(c, env, yes, no)?;
            }
            BExists(v, bound, body) | BForall(v, bound, body) => {
                let src = self.term(bound, env)?;
                let (rest, x) = (self.b.fresh(), self.b.fresh());
                let mut inner = env.clone();
                inner.insert(v.clone(), x);
                self.b.copy(src, rest);
                let top = self.b.here();
                // The copy shrinks by one member per pass, so the loop always ends.
                if matches!(f, BExists(..)) {
                    self.b.jez(rest, no);
                    self.b.take(rest, x);
                    self.b.remove(x, rest);
                    self.formula(body, &inner, yes, top)?;
                } else {
                    self.b.jez(rest, yes);
                    self.b.take(rest, x);
                    self.b.remove(x, rest);
                    self.formula(body, &inner, top, no)?;
                }
            }
            Exists(..) | Forall(..) => return Err(Delta0Error::NotDelta0(f.to_string())),
        }
        Ok(())
    }
}

fn collect_consts(f: &SetFormula, out: &mut Vec<HfSet>) {
    use SetFormula::*;
    let mut term = |t: &Term| {
        if let Term::Const(c) = t {
            if !out.contains(c) {
                out.push(c.clone());
            }
        }
    };
    match f {
        Eq(a, b) | In(a, b) => {
            term(a);
            term(b);
        }
        Bot => {}
        And(a, b) | Or(a, b) | Imp(a, b) => {
            collect_consts(a, out);
            collect_consts(b, out);
        }
        Exists(_, b) | Forall(_, b) => collect_consts(b, out),
        BExists(_, t, b) | BForall(_, t, b) => {
            term(t);
            collect_consts(b, out);
        }
    }
}

/// Compiles a Δ₀ formula into a program deciding it: the variables `args[i]` are read from
/// `R_i` and the result is `#1` or `#0` in `R0`. Bounded quantifiers loop over a scratch copy of
/// their bound, so argument registers other than `R0` are left intact.
pub fn compile_delta0(f: &SetFormula, args: &[&str]) -> Result<MacroProgram, Delta0Error> {
    if !f.is_delta0() {
        return Err(Delta0Error::NotDelta0(f.to_string()));
    }
    let arity = Reg::try_from(args.len().max(1)).expect("argument count fits a register index");
    let env: BTreeMap<String, Reg> = args
        .iter()
        .enumerate()
        .map(|(i, v)| (v.to_string(), i as Reg))
        .collect();
    let mut c = Compiler {
        b: ProgramBuilder::new(arity),
        consts: Vec::new(),
    };
    let mut values = Vec::new();
    collect_consts(f, &mut values);
    for v in values {
        let r = c.b.fresh();
        c.b.load_const(r, &v);
        c.consts.push((v, r));
    }
    let (yes, no) = (c.b.label(), c.b.label());
    c.formula(f, &env, yes, no)?;
    let halt = c.b.halt();
    c.b.place(yes);
    c.b.set_bool(0, true);
    c.b.goto(halt);
    c.b.place(no);
    c.b.set_bool(0, false);
    Ok(c.b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::expand_macros;
    use crate::vm::{run_as_function, OracleTable, RunLimits};

    fn run(f: &str, args: &[&str], vals: &[&str]) -> HfSet {
        let f: SetFormula = f.parse().unwrap();
        let p = expand_macros(&compile_delta0(&f, args).unwrap());
        let vals: Vec<HfSet> = vals.iter().map(|v| v.parse().unwrap()).collect();
        run_as_function(&p, &vals, &OracleTable::new(), &RunLimits::default()).unwrap()
    }

    #[test]
    fn small_cases() {
        let one = HfSet::numeral(1);
        let zero = HfSet::empty();
        assert_eq!(run("x = x", &["x"], &["{#1,#3}"]), one);
        assert_eq!(run("x in y", &["x", "y"], &["∅", "{∅}"]), one);
        assert_eq!(run("x in y", &["x", "y"], &["{∅}", "{∅}"]), zero);
        assert_eq!(run("forall x in a . exists y in a . x in y", &["a"], &["{∅,{∅}}"]), zero);
        assert_eq!(run("forall x in a . exists y in #3 . x = y", &["a"], &["#2"]), one);
        assert_eq!(run("bot -> x = #0", &["x"], &["#5"]), one);
        assert_eq!(run("~(x in {#1,<#0,#1>})", &["x"], &["<#0,#1>"]), zero);
    }

    #[test]
    fn errors() {
        let f: SetFormula = "x in y".parse().unwrap();
        assert_eq!(compile_delta0(&f, &["x"]), Err(Delta0Error::UnboundVariable("y".into())));
        let f: SetFormula = "forall z . z = z".parse().unwrap();
        assert!(matches!(compile_delta0(&f, &[]), Err(Delta0Error::NotDelta0(_))));
    }
}
