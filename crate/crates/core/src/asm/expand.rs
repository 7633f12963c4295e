use super::{minimal_flavor, Instruction, MacroInstruction, MacroProgram, Program, Reg};

const EQ_BLOCK: usize = 12;

fn block_len(ins: &MacroInstruction) -> usize {
    match ins {
        MacroInstruction::IfEqualGoto(..) => EQ_BLOCK,
        _ => 1,
    }
}

/// Replaces macros by core instructions.
///
/// `GOTO k` becomes `JEZ g k` on a register `g` that nothing else mentions. `JEQ i j k` inlines
/// the element-by-element equality test on copies of `R_i` and `R_j` held in scratch registers,
/// so the operands survive. All scratch registers lie above every register of the source. A
/// program run with more inputs than it mentions may find one of them in `g`, so any expansion
/// that uses `g` starts with `ZERO g`.
/// Jump targets are re-pointed at the start of the expanded block for their line; targets past
/// the end keep their distance past the end, so halting jumps still halt.
pub fn expand_macros(mp: &MacroProgram) -> Program {
    let top = mp.max_register().unwrap_or(0);
    let goto_reg: Reg = top + 1;
    let (a, b, c) = (top + 2, top + 3, top + 4);

    let mut starts = Vec::with_capacity(mp.len());
    let prologue = usize::from(mp.has_macros());
    let mut next = 1 + prologue;
    for ins in &mp.lines {
        starts.push(next);
        next += block_len(ins);
    }
    let new_len = next - 1;
    let remap = |t: usize| match t {
        0 => 0,
        t if t <= mp.len() => starts[t - 1],
        t => new_len + (t - mp.len()),
    };

    use Instruction::*;
    let mut lines = Vec::with_capacity(new_len);
    if prologue == 1 {
        lines.push(Zero(goto_reg));
    }
    for (ins, &s) in mp.lines.iter().zip(&starts) {
        match *ins {
            MacroInstruction::Core(c) => {
                lines.push(match c.jump_target() {
                    Some(k) => c.with_target(remap(k)),
                    None => c,
                });
            }
            MacroInstruction::Goto(k) => lines.push(IfEmptyGoto(goto_reg, remap(k))),
            MacroInstruction::IfEqualGoto(i, j, k) => {
                let (target, after) = (remap(k), s + EQ_BLOCK);
                lines.extend([
                    Copy(i, a),
                    Copy(j, b),
                    IfEmptyGoto(a, s + 4),
                    IfEmptyGoto(goto_reg, s + 6),
                    IfEmptyGoto(b, target),
                    IfEmptyGoto(goto_reg, after),
                    Take(a, c),
                    Remove(c, a),
                    IfMemberGoto(c, b, s + 10),
                    IfEmptyGoto(goto_reg, after),
                    Remove(c, b),
                    IfEmptyGoto(goto_reg, s + 2),
                ]);
            }
        }
    }
    let flavor = mp.flavor.unwrap_or_else(|| minimal_flavor(lines.iter()));
    Program { lines, flavor }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::assemble;

    #[test]
    fn goto_uses_fresh_register() {
        let p = expand_macros(&MacroProgram::new(vec![MacroInstruction::Goto(1)]));
        assert_eq!(p.lines, vec![Instruction::Zero(1), Instruction::IfEmptyGoto(1, 2)]);
        let p = expand_macros(&assemble("ADD 3 4\nGOTO 1").unwrap());
        assert_eq!(p.lines[2], Instruction::IfEmptyGoto(5, 2));
        let p = expand_macros(&assemble("ADD 3 4\nJEZ 0 1").unwrap());
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn targets_are_remapped() {
        let mp = assemble("JEQ 0 1 3\nGOTO 1\nZERO 0\nJEZ 0 6").unwrap();
        let p = expand_macros(&mp);
        assert_eq!(p.len(), 16);
        assert_eq!(p.lines[0], Instruction::Zero(2));
        assert_eq!(p.lines[5], Instruction::IfEmptyGoto(4, 15));
        assert_eq!(p.lines[13], Instruction::IfEmptyGoto(2, 2));
        // 6 is two past the end of the 4-line source.
        assert_eq!(p.lines[15], Instruction::IfEmptyGoto(0, 18));
        assert!(p.max_register().unwrap() > mp.max_register().unwrap());
    }

    #[test]
    fn surplus_inputs_do_not_break_jumps() {
        use crate::vm::{run_as_function, OracleTable, RunLimits};
        let p = expand_macros(&assemble("JEQ 0 0 3\nZERO 0\nGOTO 5\nZERO 0").unwrap());
        let one = crate::HfSet::numeral(1);
        let args = [one.clone(), one.clone(), one.clone()];
        let out = run_as_function(&p, &args, &OracleTable::new(), &RunLimits::default()).unwrap();
        assert_eq!(out, one);
    }
}
