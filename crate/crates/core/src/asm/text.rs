//! `.srm` assembly text.
//!
//! ```text
//! # comment
//! .flavor srm+          # optional; otherwise the least fitting flavor is used
//! 1: JEQ 0 1 5          # labels are optional but must match the instruction's position
//! POW 2 2
//! ```

use std::fmt::{self, Write as _};

use super::{AsmError, Flavor, Instruction, MacroInstruction, MacroProgram, Program, Reg};
use crate::text::ParseError;

fn mnemonic(ins: &MacroInstruction) -> &'static str {
    use Instruction::*;
    match ins {
        MacroInstruction::Core(c) => match c {
            Zero(..) => "ZERO",
            Add(..) => "ADD",
            Copy(..) => "COPY",
            Take(..) => "TAKE",
            Remove(..) => "REMOVE",
            IfEmptyGoto(..) => "JEZ",
            IfMemberGoto(..) => "JMEM",
            Pow(..) => "POW",
            Oracle(..) => "ORACLE",
        },
        MacroInstruction::Goto(_) => "GOTO",
        MacroInstruction::IfEqualGoto(..) => "JEQ",
    }
}

fn operands(ins: &MacroInstruction) -> Vec<usize> {
    use Instruction::*;
    let r = |x: Reg| x as usize;
    match *ins {
        MacroInstruction::Core(c) => match c {
            Zero(i) => vec![r(i)],
            Add(i, j) | Copy(i, j) | Take(i, j) | Remove(i, j) | Pow(i, j) | Oracle(i, j) => {
                vec![r(i), r(j)]
            }
            IfEmptyGoto(i, k) => vec![r(i), k],
            IfMemberGoto(i, j, k) => vec![r(i), r(j), k],
        },
        MacroInstruction::Goto(k) => vec![k],
        MacroInstruction::IfEqualGoto(i, j, k) => vec![r(i), r(j), k],
    }
}

impl fmt::Display for MacroInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(mnemonic(self))?;
        for x in operands(self) {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        MacroInstruction::Core(*self).fmt(f)
    }
}

pub(crate) fn format_instruction(ins: &Instruction) -> String {
    ins.to_string()
}

/// Normalized text: optional `.flavor` line, then `n: MNEMONIC args` per instruction.
pub fn disassemble(p: &MacroProgram) -> String {
    let mut out = String::new();
    if let Some(fl) = p.flavor {
        let _ = writeln!(out, ".flavor {fl}");
    }
    for (n, ins) in p.lines.iter().enumerate() {
        let _ = writeln!(out, "{}: {ins}", n + 1);
    }
    out
}

pub fn disassemble_program(p: &Program) -> String {
    disassemble(&MacroProgram::from(p.clone()))
}

struct Token<'a> {
    text: &'a str,
    offset: usize,
}

fn tokens(line: &str, base: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    offset: base + s,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            offset: base + s,
        });
    }
    out
}

fn number(src: &str, t: &Token<'_>, what: &str) -> Result<usize, ParseError> {
    t.text
        .parse::<usize>()
        .map_err(|_| ParseError::at(src, t.offset, format!("expected {what}, found `{}`", t.text)))
}

fn register(src: &str, t: &Token<'_>) -> Result<Reg, ParseError> {
    let n = number(src, t, "a register index")?;
    Reg::try_from(n)
        .map_err(|_| ParseError::at(src, t.offset, format!("register index {n} exceeds 65535")))
}

pub fn assemble(src: &str) -> Result<MacroProgram, AsmError> {
    let mut lines = Vec::new();
    let mut flavor = None;
    let mut offset = 0;
    for (idx, raw) in src.split('\n').enumerate() {
        let base = offset;
        offset += raw.len() + 1;
        let code = raw.split('#').next().unwrap_or("");
        let toks = tokens(code, base);
        let Some(first) = toks.first() else { continue };

        if first.text.starts_with('.') {
            if first.text != ".flavor" || toks.len() != 2 {
                return Err(ParseError::at(src, first.offset, "expected `.flavor srm|srm+|srmo`").into());
            }
            let fl = Flavor::from_name(toks[1].text).ok_or_else(|| {
                ParseError::at(src, toks[1].offset, format!("unknown flavor `{}`", toks[1].text))
            })?;
            if flavor.replace(fl).is_some() {
                return Err(ParseError::at(src, first.offset, "flavor declared twice").into());
            }
            continue;
        }

        let mut rest = &toks[..];
        if let Some(label) = first.text.strip_suffix(':') {
            let t = Token {
                text: label,
                offset: first.offset,
            };
            let found = number(src, &t, "a line label")?;
            if found != lines.len() + 1 {
                return Err(AsmError::BadLineNumber {
                    source_line: idx + 1,
                    expected: lines.len() + 1,
                    found,
                });
            }
            rest = &toks[1..];
        }
        let Some((op, args)) = rest.split_first() else {
            return Err(ParseError::at(src, first.offset, "label without an instruction").into());
        };
        lines.push(instruction(src, op, args)?);
    }
    Ok(MacroProgram { lines, flavor })
}

fn instruction(src: &str, op: &Token<'_>, args: &[Token<'_>]) -> Result<MacroInstruction, ParseError> {
    use Instruction::*;
    let name = op.text.to_ascii_uppercase();
    let arity = match name.as_str() {
        "ZERO" | "GOTO" => 1,
        "ADD" | "COPY" | "TAKE" | "REMOVE" | "JEZ" | "POW" | "ORACLE" => 2,
        "JMEM" | "JEQ" => 3,
        _ => return Err(ParseError::at(src, op.offset, format!("unknown mnemonic `{}`", op.text))),
    };
    if args.len() != arity {
        let at = args.get(arity).map_or(op.offset, |t| t.offset);
        return Err(ParseError::at(
            src,
            at,
            format!("{name} takes {arity} operand(s), found {}", args.len()),
        ));
    }
    let r = |n: usize| register(src, &args[n]);
    let k = |n: usize| number(src, &args[n], "a line number");
    Ok(match name.as_str() {
        "ZERO" => Zero(r(0)?).into(),
        "ADD" => Add(r(0)?, r(1)?).into(),
        "COPY" => Copy(r(0)?, r(1)?).into(),
        "TAKE" => Take(r(0)?, r(1)?).into(),
        "REMOVE" => Remove(r(0)?, r(1)?).into(),
        "JEZ" => IfEmptyGoto(r(0)?, k(1)?).into(),
        "JMEM" => IfMemberGoto(r(0)?, r(1)?, k(2)?).into(),
        "POW" => Pow(r(0)?, r(1)?).into(),
        "ORACLE" => Oracle(r(0)?, r(1)?).into(),
        "GOTO" => MacroInstruction::Goto(k(0)?),
        _ => MacroInstruction::IfEqualGoto(r(0)?, r(1)?, k(2)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_take() {
        let p = assemble("1: TAKE 0 2").unwrap();
        assert_eq!(p.lines, vec![MacroInstruction::Core(Instruction::Take(0, 2))]);
    }

    #[test]
    fn comments_labels_and_round_trip() {
        let src = "# header\n.flavor srm+\n\n1: JEQ 0 1 5   # test\nPOW 2,2\n  add 1 1\nGOTO 1\n";
        let p = assemble(src).unwrap();
        assert_eq!(p.flavor, Some(Flavor::SrmPlus));
        assert_eq!(p.len(), 4);
        let text = disassemble(&p);
        assert_eq!(text, ".flavor srm+\n1: JEQ 0 1 5\n2: POW 2 2\n3: ADD 1 1\n4: GOTO 1\n");
        assert_eq!(assemble(&text).unwrap(), p);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            assemble("1: ZERO 0\n3: ZERO 1"),
            Err(AsmError::BadLineNumber {
                source_line: 2,
                expected: 2,
                found: 3
            })
        ));
        let Err(AsmError::Parse(e)) = assemble("ZERO 0\nFLY 1 2") else {
            panic!()
        };
        assert_eq!((e.line, e.column), (2, 1));
        assert!(assemble("ADD 1").is_err());
        assert!(assemble("ZERO 70000").is_err());
        assert!(assemble(".flavor big").is_err());
        assert!(assemble("4:").is_err());
    }
}
