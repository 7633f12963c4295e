//! Programmatic construction of macro programs with symbolic labels and inlined calls.

use super::{Flavor, Instruction, MacroInstruction, MacroProgram, Reg};
use crate::hfset::HfSet;

/// A jump target, placed at most once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Label(usize);

#[derive(Debug, Clone)]
pub struct ProgramBuilder {
    lines: Vec<(MacroInstruction, Option<Label>)>,
    labels: Vec<Option<usize>>,
    next_reg: u32,
    const_temps: Vec<Reg>,
    halt: Label,
    flavor: Option<Flavor>,
}

impl ProgramBuilder {
    /// Registers below `reserved` belong to the caller (inputs, output); `fresh` allocates above.
    pub fn new(reserved: Reg) -> Self {
        ProgramBuilder {
            lines: Vec::new(),
            labels: vec![None],
            next_reg: reserved as u32,
            const_temps: Vec::new(),
            halt: Label(0),
            flavor: None,
        }
    }

    pub fn declare_flavor(&mut self, flavor: Flavor) {
        self.flavor = Some(flavor);
    }

    pub fn fresh(&mut self) -> Reg {
        let r = Reg::try_from(self.next_reg).expect("register space exhausted");
        self.next_reg += 1;
        r
    }

    /// A label resolving to the line just past the end of the finished program.
    pub fn halt(&self) -> Label {
        self.halt
    }

    pub fn label(&mut self) -> Label {
        self.labels.push(None);
        Label(self.labels.len() - 1)
    }

    /// Binds `l` to the next instruction emitted.
    pub fn place(&mut self, l: Label) {
        assert!(l != self.halt, "the halt label is placed by build");
        let slot = &mut self.labels[l.0];
        assert!(slot.is_none(), "label placed twice");
        *slot = Some(self.lines.len() + 1);
    }

    pub fn here(&mut self) -> Label {
        let l = self.label();
        self.place(l);
        l
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    fn emit(&mut self, ins: impl Into<MacroInstruction>) {
        self.lines.push((ins.into(), None));
    }

    fn emit_jump(&mut self, ins: MacroInstruction, to: Label) {
        self.lines.push((ins, Some(to)));
    }

    pub fn zero(&mut self, r: Reg) {
        self.emit(Instruction::Zero(r));
    }
    pub fn add(&mut self, i: Reg, j: Reg) {
        self.emit(Instruction::Add(i, j));
    }
    pub fn copy(&mut self, i: Reg, j: Reg) {
        self.emit(Instruction::Copy(i, j));
    }
    pub fn take(&mut self, i: Reg, j: Reg) {
        self.emit(Instruction::Take(i, j));
    }
    pub fn remove(&mut self, i: Reg, j: Reg) {
        self.emit(Instruction::Remove(i, j));
    }
    pub fn pow(&mut self, i: Reg, j: Reg) {
        self.emit(Instruction::Pow(i, j));
    }
    pub fn oracle(&mut self, i: Reg, j: Reg) {
        self.emit(Instruction::Oracle(i, j));
    }
    pub fn jez(&mut self, r: Reg, to: Label) {
        self.emit_jump(Instruction::IfEmptyGoto(r, 0).into(), to);
    }
    pub fn jmem(&mut self, i: Reg, j: Reg, to: Label) {
        self.emit_jump(Instruction::IfMemberGoto(i, j, 0).into(), to);
    }
    pub fn goto(&mut self, to: Label) {
        self.emit_jump(MacroInstruction::Goto(0), to);
    }
    pub fn jeq(&mut self, i: Reg, j: Reg, to: Label) {
        self.emit_jump(MacroInstruction::IfEqualGoto(i, j, 0), to);
    }

    /// `R_r := #0` or `#1`.
    pub fn set_bool(&mut self, r: Reg, value: bool) {
        self.zero(r);
        if value {
            self.add(r, r);
        }
    }

    /// Builds the constant `value` in `r` with ZERO and ADD.
    pub fn load_const(&mut self, r: Reg, value: &HfSet) {
        self.load_const_at(r, value, 0);
    }

    fn load_const_at(&mut self, r: Reg, value: &HfSet, depth: usize) {
        self.zero(r);
        if value.is_empty() {
            return;
        }
        while self.const_temps.len() <= depth {
            let t = self.fresh();
            self.const_temps.push(t);
        }
        let t = self.const_temps[depth];
        for m in value.iter() {
            self.load_const_at(t, m, depth + 1);
            self.add(t, r);
        }
    }

    /// Inlines `callee` as a subroutine: its registers are relocated to fresh ones and cleared,
    /// `args` are copied into its input registers, any jump that would halt it continues after
    /// the inlined body, and its final `R_0` is copied to `out`.
    pub fn call(&mut self, callee: &MacroProgram, args: &[Reg], out: Reg) {
        let count = callee
            .max_register()
            .map_or(1, |r| r as usize + 1)
            .max(args.len())
            .max(1);
        let base: Vec<Reg> = (0..count).map(|_| self.fresh()).collect();
        for &r in &base[args.len()..] {
            self.zero(r);
        }
        for (&a, &r) in args.iter().zip(&base) {
            self.copy(a, r);
        }
        let ret = self.label();
        let entry: Vec<Label> = (0..callee.len()).map(|_| self.label()).collect();
        let reloc = |r: Reg| base[r as usize];
        for (n, ins) in callee.lines.iter().enumerate() {
            self.place(entry[n]);
            let to = ins.jump_target().map(|k| match k {
                k if (1..=callee.len()).contains(&k) => entry[k - 1],
                _ => ret,
            });
            use Instruction::*;
            let moved = match *ins {
                MacroInstruction::Core(c) => MacroInstruction::Core(match c {
                    Zero(i) => Zero(reloc(i)),
                    Add(i, j) => Add(reloc(i), reloc(j)),
                    Copy(i, j) => Copy(reloc(i), reloc(j)),
                    Take(i, j) => Take(reloc(i), reloc(j)),
                    Remove(i, j) => Remove(reloc(i), reloc(j)),
                    IfEmptyGoto(i, k) => IfEmptyGoto(reloc(i), k),
                    IfMemberGoto(i, j, k) => IfMemberGoto(reloc(i), reloc(j), k),
                    Pow(i, j) => Pow(reloc(i), reloc(j)),
                    Oracle(i, j) => Oracle(reloc(i), reloc(j)),
                }),
                MacroInstruction::Goto(k) => MacroInstruction::Goto(k),
                MacroInstruction::IfEqualGoto(i, j, k) => {
                    MacroInstruction::IfEqualGoto(reloc(i), reloc(j), k)
                }
            };
            self.lines.push((moved, to));
        }
        self.place(ret);
        self.copy(base[0], out);
    }

    /// Resolves labels.
    ///
    /// # Panics
    /// If a jump refers to a label that was never placed.
    pub fn build(self) -> MacroProgram {
        let end = self.lines.len() + 1;
        let lines = self
            .lines
            .into_iter()
            .map(|(ins, to)| match to {
                None => ins,
                Some(l) if l == self.halt => ins.with_target(end),
                Some(l) => ins.with_target(self.labels[l.0].expect("jump to an unplaced label")),
            })
            .collect();
        MacroProgram {
            lines,
            flavor: self.flavor,
        }
    }
}
