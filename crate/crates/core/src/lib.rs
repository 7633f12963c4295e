//! Set register machines over hereditarily finite sets.

pub mod hfset;
pub mod lang;
pub mod asm;
pub mod vm;
pub mod stdlib;
pub mod delta0;
pub mod realize;
pub mod beth;
pub mod text;

pub use hfset::HfSet;
pub use text::ParseError;
