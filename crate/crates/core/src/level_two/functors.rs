use std::collections::HashMap;

use rayon::prelude::*;

use super::tableaux::weight_triple;
use super::weights::{Direction, HighestWeight, Weight};
use crate::bimodules::TangleBimodule;
use crate::error::{invalid, Result};
use crate::planar::{FlatTangle, Slice};
use crate::rings::ArcRing;

/// The flat tangle of `E_i` or `F_i` on the ring of `μ` with its target weight, or `None` for the zero functor.
pub fn functor_tangle(
    hw: &HighestWeight,
    i: usize,
    mu: &Weight,
    dir: Direction,
) -> Result<Option<(FlatTangle, Weight)>> {
    hw.check_index(i)?;
    if !hw.is_admissible(mu) {
        return invalid(format!("{mu} is not a weight of {hw}"));
    }
    let Some(nu) = mu.step(i, dir).filter(|nu| hw.is_admissible(nu)) else {
        return Ok(None);
    };
    let m = mu.m();
    let p = mu.ones().iter().filter(|&&x| x < i).count();
    let slices = match (mu.at(i), mu.at(i + 1), dir) {
        (0, 1, Direction::E) | (1, 2, Direction::E) | (1, 0, Direction::F) | (2, 1, Direction::F) => vec![],
        (0, 2, Direction::E) | (2, 0, Direction::F) => vec![Slice::Cup(p)],
        (1, 1, _) => vec![Slice::Cap(p)],
        _ => unreachable!("step() admits only these cases"),
    };
    Ok(Some((FlatTangle::new(m, slices)?, nu)))
}

/// One factor of a functor word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

/// The weights of `V` with their rings, the common setting for functor computations.
pub struct LevelTwo {
    hw: HighestWeight,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    rings: Vec<ArcRing>,
    offsets: Vec<usize>,
}

impl LevelTwo {
    pub fn build(hw: HighestWeight) -> Result<LevelTwo> {
        let weights = hw.admissible_weights();
        let rings = weights
            .par_iter()
            .map(|mu| ArcRing::build(weight_triple(&hw, mu)?))
            .collect::<Result<Vec<_>>>()?;
        let index = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut offsets = Vec::with_capacity(weights.len() + 1);
        let mut acc = 0;
        for r in &rings {
            offsets.push(acc);
            acc += r.matchings().len();
        }
        offsets.push(acc);
        Ok(LevelTwo {
            hw,
            weights,
            index,
            rings,
            offsets,
        })
    }

    pub fn highest_weight(&self) -> HighestWeight {
        self.hw
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_index(&self, mu: &Weight) -> Option<usize> {
        self.index.get(mu).copied()
    }

    pub fn ring(&self, w: usize) -> &ArcRing {
        &self.rings[w]
    }

    /// First global index of the matchings of weight `w`.
    pub fn offset(&self, w: usize) -> usize {
        self.offsets[w]
    }

    /// Total number of matchings, the rank of the Grothendieck group.
    pub fn rank(&self) -> usize {
        self.offsets[self.weights.len()]
    }

    /// Weight of the global index `g`.
    pub fn weight_of(&self, g: usize) -> usize {
        self.offsets.partition_point(|&o| o <= g) - 1
    }

    /// Applies `word` right to left (written as a product of functors) starting on weight `w`.
    ///
    /// Returns the target weight, the composite flat tangle and the total grading shift from the `K` factors,
    /// or `None` if some factor is the zero functor.
    pub fn compose(&self, w: usize, word: &[Step]) -> Result<Option<(usize, FlatTangle, i32)>> {
        let mut cur = w;
        let mut tangle = FlatTangle::identity(self.weights[w].m());
        let mut shift = 0;
        for step in word.iter().rev() {
            let mu = &self.weights[cur];
            match *step {
                Step::E(i) | Step::F(i) => {
                    let dir = if matches!(step, Step::E(_)) {
                        Direction::E
                    } else {
                        Direction::F
                    };
                    let Some((t, nu)) = functor_tangle(&self.hw, i, mu, dir)? else {
                        return Ok(None);
                    };
                    tangle = tangle.then(&t)?;
                    cur = self.index[&nu];
                }
                Step::K(i) => {
                    self.hw.check_index(i)?;
                    shift += mu.k_exponent(i);
                }
                Step::KInv(i) => {
                    self.hw.check_index(i)?;
                    shift -= mu.k_exponent(i);
                }
            }
        }
        Ok(Some((cur, tangle, shift)))
    }

    /// The bimodule of a single `E_i` or `F_i` on weight `w` with its target weight.
    pub fn functor_bimodule(&self, w: usize, i: usize, dir: Direction) -> Result<Option<(usize, TangleBimodule)>> {
        let Some((t, nu)) = functor_tangle(&self.hw, i, &self.weights[w], dir)? else {
            return Ok(None);
        };
        let v = self.index[&nu];
        let m = TangleBimodule::build(&t, self.rings[v].triple(), self.rings[w].triple())?;
        Ok(Some((v, m)))
    }
}
