use serde::Serialize;

use super::bimodule::TangleBimodule;
use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::planar::{deform_to_matching, Compatibility, Deformed, Matching};
use crate::rings::ArcRing;

/// `F(T a) ≅ P(a'){shift} ⊗ 𝒜^{⊗ circles}` as graded left modules, checked block by block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveSummand {
    /// `None` when `T a` joins two slots of one platform and the summand vanishes.
    pub target: Option<Matching>,
    pub circles: usize,
    pub shift: i32,
    pub holds: bool,
}

/// Identifies the column `F(T a)` of a compatible bimodule with a shifted projective.
pub fn decompose_left_projective(m: &TangleBimodule, ring: &ArcRing, a: usize) -> Result<ProjectiveSummand> {
    if m.compatibility() == Compatibility::Incompatible {
        return Err(Error::Incompatible("projectivity needs compatible triples".into()));
    }
    if ring.triple() != m.left_triple() {
        return Err(Error::Incompatible(format!(
            "ring {} is not the left ring {}",
            ring.triple(),
            m.left_triple()
        )));
    }
    let left = m.left_triple();
    let right = m.right_triple();
    let tops = 0..m.top_matchings().len();
    match deform_to_matching(m.tangle(), &m.bottom_matchings()[a], left)? {
        Deformed::Zero { circles } => {
            let holds = tops.clone().all(|c| m.block(c, a).is_empty());
            Ok(ProjectiveSummand {
                target: None,
                circles,
                shift: 0,
                holds,
            })
        }
        Deformed::Matching { matching, circles, .. } => {
            let f = m.frame();
            let shift = right.shift() + f.excess(right) as i32 - left.shift() - f.excess(left) as i32;
            let ai = ring
                .matching_index(&matching)
                .ok_or_else(|| Error::Inconsistent("deformed matching not in the ring".into()))?;
            let factor = LaurentPoly::circle_power(circles as u32).shift(shift);
            let holds = tops
                .clone()
                .all(|c| m.block_graded_rank(c, a) == &factor * &ring.block_graded_rank(c, ai));
            Ok(ProjectiveSummand {
                target: Some(matching),
                circles,
                shift,
                holds,
            })
        }
    }
}
