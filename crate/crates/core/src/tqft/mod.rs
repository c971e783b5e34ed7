//! The Frobenius algebra on `{ONE, X}` and surgery programs between closed diagrams.

mod program;
mod vector;

pub use program::{stack_program, Assembler, Program, Step};
pub use vector::TqftVector;

pub(crate) use vector::{checked_add, checked_mul};
