use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{binomial, cokernel_summary, IntegerMatrix, LaurentPoly};
use crate::error::{invalid, Error, Result};

pub const SPRINGER_MAX_N: usize = 12;

/// `Z[X_1..X_n]` modulo `X_i^2`, `X_I` for `|I| = (n-m)/2 + 1` and `e_k(I)` for `k + |I| = n + 1`,
/// computed degree by degree on square-free monomials (bit `i` of a monomial is `X_{i+1}`).
#[derive(Clone, Debug, Serialize)]
pub struct SpringerPresentation {
    pub n: usize,
    pub m: usize,
    /// Monomials whose images form a basis of the quotient over the rationals.
    pub basis: Vec<u32>,
    /// Rank of the quotient in polynomial degree `d` (cohomological degree `2d`).
    pub ranks: Vec<usize>,
    pub torsion: Vec<u64>,
}

impl SpringerPresentation {
    pub fn rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Poincaré polynomial with `deg X_i = 2`.
    pub fn poincare(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (d, &r) in self.ranks.iter().enumerate() {
            p.add_term(2 * d as i32, &BigInt::from(r));
        }
        p
    }

    pub fn expected_rank(&self) -> BigInt {
        binomial(self.n as i64, ((self.n - self.m) / 2) as i64)
    }
}

/// Subsets of `0..n` of size `k`, as bit masks.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|s| s.count_ones() as usize == k).collect()
}

/// Relation generators as sparse sums of monomials: `X_I` and `e_k(I)`.
pub(crate) fn relation_generators(n: usize, m: usize) -> Vec<Vec<u32>> {
    let h = (n - m) / 2;
    let mut out: Vec<Vec<u32>> = subsets(n, h + 1).into_iter().map(|i| vec![i]).collect();
    for size in 0..=n {
        let k = n + 1 - size;
        if k > size {
            continue;
        }
        for i in subsets(n, size) {
            let terms: Vec<u32> = (0..1u32 << n)
                .filter(|j| j & !i == 0 && j.count_ones() as usize == k)
                .collect();
            out.push(terms);
        }
    }
    out
}

pub fn springer_presentation(n: usize, m: usize) -> Result<SpringerPresentation> {
    if m > n || (n - m) % 2 == 1 {
        return invalid(format!("(n, m) = ({n}, {m}) needs n ≥ m and n ≡ m mod 2"));
    }
    if n > SPRINGER_MAX_N {
        return Err(Error::TooLarge(format!("n = {n} exceeds {SPRINGER_MAX_N}")));
    }
    let gens = relation_generators(n, m);
    let mut ranks = Vec::new();
    let mut torsion = Vec::new();
    let mut basis = Vec::new();
    for d in 0..=n {
        let monos = subsets(n, d);
        let index = |x: u32| monos.binary_search(&x).expect("monomial of degree d");
        // every multiple X_K g landing in degree d, deduplicated
        let mut cols: HashSet<Vec<(usize, i64)>> = HashSet::new();
        for g in &gens {
            let gd = g[0].count_ones() as usize;
            if gd > d {
                continue;
            }
            for kmask in subsets(n, d - gd) {
                let mut v: Vec<(usize, i64)> = g
                    .iter()
                    .filter(|&&j| j & kmask == 0)
                    .map(|&j| (index(j | kmask), 1))
                    .collect();
                v.sort_unstable();
                if !v.is_empty() {
                    cols.insert(v);
                }
            }
        }
        let cols: Vec<Vec<(usize, i64)>> = cols.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut rel = IntegerMatrix::zeros(monos.len(), cols.len());
        for (c, v) in cols.iter().enumerate() {
            for &(r, x) in v {
                rel.add_at(r, c, &BigInt::from(x));
            }
        }
        let summary = cokernel_summary(&rel);
        ranks.push(summary.free_rank);
        torsion.extend(summary.torsion);
        // greedy choice of surviving monomials
        let mut chosen = rel.clone();
        let mut rank = chosen.rank();
        for (i, &mono) in monos.iter().enumerate() {
            if rank == monos.len() {
                break;
            }
            let unit = IntegerMatrix::from_fn(monos.len(), 1, |r, _| BigInt::from((r == i) as i64));
            let next = chosen.hcat(&unit);
            let r = next.rank();
            if r > rank {
                chosen = next;
                rank = r;
                basis.push(mono);
            }
        }
    }
    while ranks.len() > 1 && *ranks.last().unwrap() == 0 {
        ranks.pop();
    }
    Ok(SpringerPresentation {
        n,
        m,
        basis,
        ranks,
        torsion,
    })
}
