//! Instruction set, assembly text, validation, macro expansion and program coding.
//!
//! Lines are numbered from 1. A jump to any line outside `1..=len` halts the machine.

mod builder;
mod code;
mod expand;
mod text;

pub use builder::{Label, ProgramBuilder};
pub use code::{decode_program, encode_program};
pub use expand::expand_macros;
pub use text::{assemble, disassemble, disassemble_program};

use std::fmt;

use thiserror::Error;

use crate::text::ParseError;

/// Register index.
pub type Reg = u16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// `R_i := ∅`.
    Zero(Reg),
    /// `R_j := R_j ∪ {R_i}`.
    Add(Reg, Reg),
    /// `R_j := R_i`.
    Copy(Reg, Reg),
    /// `R_j :=` the Ackermann-least member of `R_i`; no effect when `R_i = ∅`.
    Take(Reg, Reg),
    /// `R_j := R_j ∖ {R_i}`.
    Remove(Reg, Reg),
    /// Jump to line `k` if `R_i = ∅`.
    IfEmptyGoto(Reg, usize),
    /// Jump to line `k` if `R_i ∈ R_j`.
    IfMemberGoto(Reg, Reg, usize),
    /// `R_j := P(R_i)`.
    Pow(Reg, Reg),
    /// `R_j := O(R_i)`.
    Oracle(Reg, Reg),
}

impl Instruction {
    pub fn registers(&self) -> Vec<Reg> {
        use Instruction::*;
        match *self {
            Zero(i) | IfEmptyGoto(i, _) => vec![i],
            Add(i, j) | Copy(i, j) | Take(i, j) | Remove(i, j) | Pow(i, j) | Oracle(i, j) => {
                vec![i, j]
            }
            IfMemberGoto(i, j, _) => vec![i, j],
        }
    }

    pub fn jump_target(&self) -> Option<usize> {
        match *self {
            Instruction::IfEmptyGoto(_, k) | Instruction::IfMemberGoto(_, _, k) => Some(k),
            _ => None,
        }
    }

    pub(crate) fn with_target(self, k: usize) -> Self {
        match self {
            Instruction::IfEmptyGoto(i, _) => Instruction::IfEmptyGoto(i, k),
            Instruction::IfMemberGoto(i, j, _) => Instruction::IfMemberGoto(i, j, k),
            other => other,
        }
    }

    /// The least flavor that admits this instruction.
    pub fn flavor(&self) -> Flavor {
        match self {
            Instruction::Pow(..) => Flavor::SrmPlus,
            Instruction::Oracle(..) => Flavor::SrmOracle,
            _ => Flavor::Srm,
        }
    }
}

/// Instruction-set level. Each flavor admits everything the lower ones do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Flavor {
    #[default]
    Srm,
    /// Adds `POW`.
    SrmPlus,
    /// Adds `POW` and `ORACLE`.
    SrmOracle,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Srm => "srm",
            Flavor::SrmPlus => "srm+",
            Flavor::SrmOracle => "srmo",
        }
    }

    pub fn from_name(s: &str) -> Option<Flavor> {
        match s {
            "srm" => Some(Flavor::Srm),
            "srm+" => Some(Flavor::SrmPlus),
            "srmo" => Some(Flavor::SrmOracle),
            _ => None,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Executable program: core instructions only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Program {
    pub lines: Vec<Instruction>,
    pub flavor: Flavor,
}

impl Program {
    /// A program at the least flavor admitting all its instructions.
    pub fn new(lines: Vec<Instruction>) -> Self {
        let flavor = minimal_flavor(lines.iter());
        Program { lines, flavor }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Instruction at a 1-based line, if in range.
    pub fn line(&self, l: usize) -> Option<&Instruction> {
        l.checked_sub(1).and_then(|i| self.lines.get(i))
    }

    pub fn max_register(&self) -> Option<Reg> {
        self.lines.iter().flat_map(|i| i.registers()).max()
    }

    /// Size of the register file: one past the highest register mentioned, at least 1.
    pub fn register_count(&self) -> usize {
        self.max_register().map_or(1, |r| r as usize + 1)
    }

    /// Errors for the program as a whole: emptiness and flavor violations.
    pub fn check(&self) -> Result<(), AsmError> {
        match validate(self).into_iter().find(|d| d.severity == Severity::Error) {
            Some(d) => Err(d.into_error()),
            None => Ok(()),
        }
    }
}

pub(crate) fn minimal_flavor<'a>(lines: impl Iterator<Item = &'a Instruction>) -> Flavor {
    lines.map(Instruction::flavor).max().unwrap_or_default()
}

/// One line of a macro program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MacroInstruction {
    Core(Instruction),
    /// Unconditional jump.
    Goto(usize),
    /// Jump to line `k` if `R_i = R_j` (extensionally); both registers are left intact.
    IfEqualGoto(Reg, Reg, usize),
}

impl From<Instruction> for MacroInstruction {
    fn from(i: Instruction) -> Self {
        MacroInstruction::Core(i)
    }
}

impl MacroInstruction {
    pub fn registers(&self) -> Vec<Reg> {
        match self {
            MacroInstruction::Core(i) => i.registers(),
            MacroInstruction::Goto(_) => Vec::new(),
            MacroInstruction::IfEqualGoto(i, j, _) => vec![*i, *j],
        }
    }

    pub fn jump_target(&self) -> Option<usize> {
        match *self {
            MacroInstruction::Core(i) => i.jump_target(),
            MacroInstruction::Goto(k) | MacroInstruction::IfEqualGoto(_, _, k) => Some(k),
        }
    }

    pub(crate) fn with_target(self, k: usize) -> Self {
        match self {
            MacroInstruction::Core(i) => MacroInstruction::Core(i.with_target(k)),
            MacroInstruction::Goto(_) => MacroInstruction::Goto(k),
            MacroInstruction::IfEqualGoto(i, j, _) => MacroInstruction::IfEqualGoto(i, j, k),
        }
    }
}

/// Source-level program. `flavor` is `None` unless declared with a `.flavor` directive, in
/// which case expansion infers the least flavor that fits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MacroProgram {
    pub lines: Vec<MacroInstruction>,
    pub flavor: Option<Flavor>,
}

impl MacroProgram {
    pub fn new(lines: Vec<MacroInstruction>) -> Self {
        MacroProgram { lines, flavor: None }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn max_register(&self) -> Option<Reg> {
        self.lines.iter().flat_map(|i| i.registers()).max()
    }

    pub fn has_macros(&self) -> bool {
        self.lines.iter().any(|l| !matches!(l, MacroInstruction::Core(_)))
    }
}

impl From<Program> for MacroProgram {
    fn from(p: Program) -> Self {
        MacroProgram {
            lines: p.lines.into_iter().map(MacroInstruction::Core).collect(),
            flavor: Some(p.flavor),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsmError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("line {source_line}: label {found} does not match instruction number {expected}")]
    BadLineNumber {
        source_line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {instruction} is not allowed in a {flavor} program")]
    FlavorViolation {
        line: usize,
        instruction: String,
        flavor: Flavor,
    },
    #[error("program has no instructions")]
    EmptyProgram,
    #[error("malformed program code: {0}")]
    MalformedCode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    EmptyProgram,
    FlavorViolation { instruction: Instruction },
    /// Jump to a line outside `1..=len+1`. Legal: the machine halts there.
    JumpOutOfRange { target: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    /// 1-based program line, when the finding is local.
    pub line: Option<usize>,
    pub kind: DiagnosticKind,
    flavor: Flavor,
}

impl Diagnostic {
    fn into_error(self) -> AsmError {
        match self.kind {
            DiagnosticKind::EmptyProgram => AsmError::EmptyProgram,
            DiagnosticKind::FlavorViolation { instruction } => AsmError::FlavorViolation {
                line: self.line.unwrap_or(0),
                instruction: text::format_instruction(&instruction),
                flavor: self.flavor,
            },
            DiagnosticKind::JumpOutOfRange { target } => {
                AsmError::MalformedCode(format!("jump to {target}"))
            }
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        if let Some(l) = self.line {
            write!(f, "{level}: line {l}: ")?;
        } else {
            write!(f, "{level}: ")?;
        }
        match &self.kind {
            DiagnosticKind::EmptyProgram => write!(f, "program has no instructions"),
            DiagnosticKind::FlavorViolation { instruction } => write!(
                f,
                "{} is not allowed in a {} program",
                text::format_instruction(instruction),
                self.flavor
            ),
            DiagnosticKind::JumpOutOfRange { target } => {
                write!(f, "jump to line {target} is out of range and halts the machine")
            }
        }
    }
}

pub fn validate(p: &Program) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let diag = |severity, line, kind| Diagnostic {
        severity,
        line,
        kind,
        flavor: p.flavor,
    };
    if p.lines.is_empty() {
        out.push(diag(Severity::Error, None, DiagnosticKind::EmptyProgram));
    }
    for (n, ins) in p.lines.iter().enumerate() {
        if ins.flavor() > p.flavor {
            out.push(diag(
                Severity::Error,
                Some(n + 1),
                DiagnosticKind::FlavorViolation { instruction: *ins },
            ));
        }
        if let Some(k) = ins.jump_target() {
            if k == 0 || k > p.len() + 1 {
                out.push(diag(
                    Severity::Warning,
                    Some(n + 1),
                    DiagnosticKind::JumpOutOfRange { target: k },
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Instruction::*;

    #[test]
    fn validate_flavor_and_ranges() {
        let p = Program {
            lines: vec![Pow(0, 0)],
            flavor: Flavor::Srm,
        };
        let d = validate(&p);
        assert!(d.iter().any(|d| d.severity == Severity::Error));
        assert!(matches!(p.check(), Err(AsmError::FlavorViolation { line: 1, .. })));

        let p = Program::new(vec![IfEmptyGoto(1, 6)]);
        let d = validate(&p);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].severity, Severity::Warning);
        assert!(p.check().is_ok());

        let p = Program::new(vec![IfEmptyGoto(1, 2)]);
        assert!(validate(&p).is_empty());

        assert_eq!(Program::new(vec![]).check(), Err(AsmError::EmptyProgram));
    }

    #[test]
    fn minimal_flavor_and_registers() {
        assert_eq!(Program::new(vec![Add(0, 3)]).flavor, Flavor::Srm);
        assert_eq!(Program::new(vec![Pow(0, 1)]).flavor, Flavor::SrmPlus);
        assert_eq!(Program::new(vec![Pow(0, 1), Oracle(1, 2)]).flavor, Flavor::SrmOracle);
        assert_eq!(Program::new(vec![IfMemberGoto(2, 7, 1)]).register_count(), 8);
        assert_eq!(Program::new(vec![]).register_count(), 1);
    }
}
