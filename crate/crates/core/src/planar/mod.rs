//! Crossingless matchings with platforms, flat tangles, closures and circle bookkeeping.

mod closure;
mod matching;
mod order;
mod tangle;

pub use closure::{
    compatibility, deform_to_matching, glue_and_close, Circle, CircleType, ClosedDiagram, Compatibility, Deformed,
    Frame, Grid, Layer,
};
pub use matching::{enumerate_matchings, Matching, Side, Triple};
pub use order::{arrow_relation, horizontal_merges, linear_extension};
pub use tangle::{compose_flat, FlatTangle, Slice};
