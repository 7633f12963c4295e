//! Programs as sets: `{⟨#n, ⟨#op, ⟨#i, ⟨#j, #k⟩⟩⟩⟩ : line n}` with unused fields `#0`.
//!
//! Opcodes: ZERO 0, ADD 1, COPY 2, TAKE 3, REMOVE 4, JEZ 5, JMEM 6, POW 7, ORACLE 8.
//! The flavor is not coded; decoding yields the least flavor that fits.

use super::{AsmError, Instruction, Program, Reg};
use crate::hfset::HfSet;

fn fields(ins: &Instruction) -> [usize; 4] {
    use Instruction::*;
    let r = |x: Reg| x as usize;
    match *ins {
        Zero(i) => [0, r(i), 0, 0],
        Add(i, j) => [1, r(i), r(j), 0],
        Copy(i, j) => [2, r(i), r(j), 0],
        Take(i, j) => [3, r(i), r(j), 0],
        Remove(i, j) => [4, r(i), r(j), 0],
        IfEmptyGoto(i, k) => [5, r(i), 0, k],
        IfMemberGoto(i, j, k) => [6, r(i), r(j), k],
        Pow(i, j) => [7, r(i), r(j), 0],
        Oracle(i, j) => [8, r(i), r(j), 0],
    }
}

fn encode_instruction(ins: &Instruction) -> HfSet {
    let [op, i, j, k] = fields(ins).map(HfSet::numeral);
    HfSet::ordered_pair(
        &op,
        &HfSet::ordered_pair(&i, &HfSet::ordered_pair(&j, &k)),
    )
}

pub fn encode_program(p: &Program) -> HfSet {
    HfSet::make_set(
        p.lines
            .iter()
            .enumerate()
            .map(|(n, ins)| HfSet::ordered_pair(&HfSet::numeral(n + 1), &encode_instruction(ins))),
    )
}

fn malformed(msg: impl Into<String>) -> AsmError {
    AsmError::MalformedCode(msg.into())
}

fn natural(a: &HfSet) -> Result<usize, AsmError> {
    a.to_natural().ok_or_else(|| malformed(format!("{a} is not a numeral")))
}

fn pair(a: &HfSet) -> Result<(HfSet, HfSet), AsmError> {
    a.as_ordered_pair().ok_or_else(|| malformed(format!("{a} is not an ordered pair")))
}

fn decode_instruction(a: &HfSet) -> Result<Instruction, AsmError> {
    use Instruction::*;
    let (op, rest) = pair(a)?;
    let (i, rest) = pair(&rest)?;
    let (j, k) = pair(&rest)?;
    let [op, i, j, k] = [natural(&op)?, natural(&i)?, natural(&j)?, natural(&k)?];
    let reg = |x: usize| Reg::try_from(x).map_err(|_| malformed(format!("register {x} out of range")));
    let (i_r, j_r) = (reg(i)?, reg(j)?);
    let ins = match op {
        0 => Zero(i_r),
        1 => Add(i_r, j_r),
        2 => Copy(i_r, j_r),
        3 => Take(i_r, j_r),
        4 => Remove(i_r, j_r),
        5 => IfEmptyGoto(i_r, k),
        6 => IfMemberGoto(i_r, j_r, k),
        7 => Pow(i_r, j_r),
        8 => Oracle(i_r, j_r),
        _ => return Err(malformed(format!("unknown opcode {op}"))),
    };
    if fields(&ins) != [op, i, j, k] {
        return Err(malformed(format!("unused operand not #0 in {a}")));
    }
    Ok(ins)
}

pub fn decode_program(a: &HfSet) -> Result<Program, AsmError> {
    let mut lines = Vec::with_capacity(a.len());
    let mut entries: Vec<(usize, HfSet)> = a
        .iter()
        .map(|e| {
            let (n, code) = pair(e)?;
            Ok((natural(&n)?, code))
        })
        .collect::<Result<_, AsmError>>()?;
    entries.sort_by_key(|(n, _)| *n);
    for (idx, (n, code)) in entries.iter().enumerate() {
        if *n != idx + 1 {
            return Err(malformed(format!("line numbers are not 1..{}", a.len())));
        }
        lines.push(decode_instruction(code)?);
    }
    if lines.is_empty() {
        return Err(AsmError::EmptyProgram);
    }
    Ok(Program::new(lines))
}
