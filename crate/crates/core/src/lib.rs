#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod algebra;
pub mod bimodules;
pub mod center;
pub mod complexes;
pub mod error;
pub mod level_two;
pub mod planar;
pub mod rings;
pub mod tqft;
pub mod verify;

pub use error::{Error, Result};
