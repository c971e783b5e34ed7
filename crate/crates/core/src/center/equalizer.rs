use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{kernel_basis, IntegerMatrix, LaurentPoly};
use crate::error::{Error, Result};
use crate::planar::Triple;
use crate::rings::{ArcRing, RingElement};

/// Saturated graded basis of the center, each element a sum of diagonal-block components.
#[derive(Clone, Debug, Serialize)]
pub struct Center {
    pub triple: Triple,
    pub elements: Vec<RingElement>,
    pub degrees: Vec<i32>,
}

impl Center {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    pub fn graded_rank(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &d in &self.degrees {
            p.add_term(d, &1.into());
        }
        p
    }

    pub fn degree_slice(&self, d: i32) -> Vec<&RingElement> {
        self.elements
            .iter()
            .zip(&self.degrees)
            .filter(|(_, &e)| e == d)
            .map(|(x, _)| x)
            .collect()
    }
}

/// Diagonal basis elements grouped by degree.
fn diagonal_by_degree(ring: &ArcRing) -> BTreeMap<i32, Vec<usize>> {
    let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for a in 0..ring.matchings().len() {
        for i in ring.block(a, a) {
            out.entry(ring.degree(i)).or_default().push(i);
        }
    }
    out
}

/// `Z(A)` as the equalizer of `x_a ↦ x_a 1_ab` and `x_b ↦ 1_ab x_b` over all pairs `a ≠ b`.
pub fn center(ring: &ArcRing) -> Result<Center> {
    let m = ring.matchings().len();
    // connecting elements 1_ab: the all-ONE labeling of each nonzero off-diagonal block
    let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for a in 0..m {
        for b in 0..m {
            let blk = ring.block(a, b);
            if a != b && !blk.is_empty() {
                links[a].push((b, blk.start));
            }
        }
    }
    let slices: Vec<(i32, Vec<usize>)> = diagonal_by_degree(ring).into_iter().collect();
    let solved: Vec<Vec<(i32, RingElement)>> = slices
        .par_iter()
        .map(|(d, cols)| {
            let mut rows: HashMap<(usize, usize, usize), usize> = HashMap::new();
            let mut entries: Vec<(usize, usize, i64)> = Vec::new();
            for (ci, &x) in cols.iter().enumerate() {
                let a = ring.basis()[x].top as usize;
                // x_a 1_ab enters equation (a, b) with +, 1_ba x_a enters (b, a) with -
                for &(b, e) in &links[a] {
                    for &(t, c) in ring.product(x, e) {
                        let key = (a, b, t as usize);
                        let n = rows.len();
                        let r = *rows.entry(key).or_insert(n);
                        entries.push((r, ci, c));
                    }
                }
                for b in 0..m {
                    let blk = ring.block(b, a);
                    if b == a || blk.is_empty() {
                        continue;
                    }
                    for &(t, c) in ring.product(blk.start, x) {
                        let key = (b, a, t as usize);
                        let n = rows.len();
                        let r = *rows.entry(key).or_insert(n);
                        entries.push((r, ci, -c));
                    }
                }
            }
            let mut mat = IntegerMatrix::zeros(rows.len(), cols.len());
            for (r, c, v) in entries {
                mat.add_at(r, c, &BigInt::from(v));
            }
            let ker = kernel_basis(&mat);
            (0..ker.cols())
                .map(|j| {
                    let terms = (0..cols.len()).filter_map(|i| {
                        let v = ker.get(i, j);
                        (!v.is_zero()).then(|| (cols[i], v.to_i64().expect("center coefficient fits in i64")))
                    });
                    (*d, RingElement::from_terms(terms))
                })
                .collect()
        })
        .collect();
    let (degrees, elements) = solved.into_iter().flatten().unzip();
    Ok(Center {
        triple: ring.triple(),
        elements,
        degrees,
    })
}

/// `z·e = e·z` for every ring basis element `e`.
pub fn is_central(ring: &ArcRing, z: &RingElement) -> bool {
    (0..ring.dim()).into_par_iter().all(|i| {
        let e = RingElement::basis(i);
        ring.multiply(z, &e) == ring.multiply(&e, z)
    })
}

/// Commutation of every basis element with the whole ring, plus closure and commutativity of
/// products of basis elements.
#[derive(Clone, Debug, Serialize)]
pub struct CenterChecks {
    pub central: bool,
    pub closed: bool,
    pub commutative: bool,
}

impl CenterChecks {
    pub fn passed(&self) -> bool {
        self.central && self.closed && self.commutative
    }
}

pub fn check_center(ring: &ArcRing, z: &Center) -> CenterChecks {
    let central = z.elements.iter().all(|x| is_central(ring, x));
    let mut closed = true;
    let mut commutative = true;
    for (i, x) in z.elements.iter().enumerate() {
        for y in &z.elements[i..] {
            let xy = ring.multiply(x, y);
            commutative &= xy == ring.multiply(y, x);
            closed &= is_central(ring, &xy);
        }
    }
    CenterChecks {
        central,
        closed,
        commutative,
    }
}

/// Degree-zero part of the center.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeZeroReport {
    pub triple: Triple,
    pub rank: usize,
    /// The degree-zero part is `Z·1`, so its invertible elements are `±1`.
    pub spanned_by_unit: bool,
}

pub fn degree_zero_center(ring: &ArcRing) -> Result<DegreeZeroReport> {
    let z = center(ring)?;
    let slice = z.degree_slice(0);
    let unit = ring.unit();
    let spanned_by_unit = slice.len() == 1 && (*slice[0] == unit || *slice[0] == unit.scale(-1));
    if !is_central(ring, &unit) {
        return Err(Error::Inconsistent("unit is not central".into()));
    }
    Ok(DegreeZeroReport {
        triple: ring.triple(),
        rank: slice.len(),
        spanned_by_unit,
    })
}
