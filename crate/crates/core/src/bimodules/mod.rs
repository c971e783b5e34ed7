//! Bimodules of flat tangles over arc rings, cobordism maps and tensor products.

mod bimodule;
mod checks;
mod cobordism;
mod projective;
mod tensor;

pub use bimodule::{BimoduleBasis, TangleBimodule};
pub use checks::{check_actions, ActionReport};
pub use cobordism::{check_bimodule_map, cobordism_map, isotopy_map, BimoduleMap, Event};
pub use projective::{decompose_left_projective, ProjectiveSummand};
pub use tensor::{tensor_over_ring, TensorReport};
