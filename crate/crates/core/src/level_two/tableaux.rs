use serde::{Deserialize, Serialize};

use super::weights::{HighestWeight, Weight};
use crate::error::{invalid, Result};
use crate::planar::{Matching, Triple};

/// A filling of the two-column diagram, columns listed top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Tableau {
    /// The weight `μ` counting each entry, or an error if the filling is not semi-standard for `hw`.
    pub fn validate(&self, hw: &HighestWeight) -> Result<Weight> {
        if self.left.len() != hw.s + hw.k || self.right.len() != hw.s {
            return invalid(format!(
                "columns have lengths {} and {}, expected {} and {}",
                self.left.len(),
                self.right.len(),
                hw.s + hw.k,
                hw.s
            ));
        }
        let mut mu = vec![0u8; hw.n];
        for col in [&self.left, &self.right] {
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return invalid("column is not strictly increasing");
            }
            for &x in col.iter() {
                if x == 0 || x > hw.n {
                    return invalid(format!("entry {x} outside 1..={}", hw.n));
                }
                mu[x - 1] += 1;
            }
        }
        if self.right.iter().zip(&self.left).any(|(r, l)| l > r) {
            return invalid("row is decreasing");
        }
        Weight::new(mu)
    }
}

/// The ring triple `(m(μ), k, 0)` whose matchings index `V_μ`.
pub fn weight_triple(hw: &HighestWeight, mu: &Weight) -> Result<Triple> {
    Triple::new(mu.m(), hw.k, 0)
}

/// All semi-standard fillings of weight `μ`, sorted.
///
/// Twos sit in both columns, so a filling is a choice of which ones go to the right column.
pub fn enumerate_tableaux(hw: &HighestWeight, mu: &Weight) -> Result<Vec<Tableau>> {
    if mu.entries().len() != hw.n {
        return invalid(format!("weight {mu} has the wrong length for N = {}", hw.n));
    }
    if !hw.is_admissible(mu) {
        return Ok(Vec::new());
    }
    let ones = mu.ones();
    let twos = mu.twos();
    let need = hw.s - twos.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << ones.len()) {
        if mask.count_ones() as usize != need {
            continue;
        }
        let pick = |inside: bool| -> Vec<usize> {
            let mut v: Vec<usize> = (0..ones.len())
                .filter(|&j| (mask >> j & 1 == 1) == inside)
                .map(|j| ones[j])
                .chain(twos.iter().copied())
                .collect();
            v.sort_unstable();
            v
        };
        let t = Tableau {
            left: pick(false),
            right: pick(true),
        };
        if t.validate(hw).is_ok() {
            out.push(t);
        }
    }
    out.sort();
    Ok(out)
}

/// `dim V_μ` as the number of tableaux.
pub fn weight_dim(hw: &HighestWeight, mu: &Weight) -> Result<usize> {
    Ok(enumerate_tableaux(hw, mu)?.len())
}

/// Tableau to matching: each right-column one grabs the nearest free one to its left, leftovers go to the platform.
pub fn phi(hw: &HighestWeight, t: &Tableau) -> Result<Matching> {
    let mu = t.validate(hw)?;
    let ones = mu.ones();
    let mut used = vec![false; ones.len()];
    let mut arcs = Vec::new();
    for (j, x) in ones.iter().enumerate() {
        if !t.right.contains(x) {
            continue;
        }
        used[j] = true;
        let Some(i) = (0..j).rev().find(|&i| !used[i]) else {
            return invalid(format!("right-column entry {x} has no partner"));
        };
        used[i] = true;
        arcs.push((i + 1, j + 1));
    }
    // outermost platform slot takes the rightmost leftover point
    let left: Vec<usize> = (0..ones.len()).rev().filter(|&j| !used[j]).map(|j| j + 1).collect();
    Matching::from_parts(weight_triple(hw, &mu)?, &arcs, &left, &[])
}

/// Matching to tableau: right endpoints of the free arcs join the twos in the right column.
pub fn psi(hw: &HighestWeight, mu: &Weight, a: &Matching) -> Result<Tableau> {
    if a.triple() != weight_triple(hw, mu)? {
        return invalid(format!("matching lives on {}, not on the ring of {mu}", a.triple()));
    }
    let ones = mu.ones();
    let twos = mu.twos();
    let ends: Vec<usize> = a.free_arcs().into_iter().map(|(_, j)| ones[j - 1]).collect();
    let mut left: Vec<usize> = ones
        .iter()
        .filter(|x| !ends.contains(x))
        .chain(&twos)
        .copied()
        .collect();
    let mut right: Vec<usize> = ends.into_iter().chain(twos.iter().copied()).collect();
    left.sort_unstable();
    right.sort_unstable();
    let t = Tableau { left, right };
    t.validate(hw)?;
    Ok(t)
}
