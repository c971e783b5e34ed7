use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::ring::ArcRing;
use crate::algebra::IntegerMatrix;
use crate::error::{Error, Result};

/// `τ(e_i)`: 1 on the all-`X` labeling of a diagonal block `W(a)a`, else 0.
pub fn frobenius_trace(ring: &ArcRing, i: usize) -> i64 {
    let e = ring.basis()[i];
    if e.top != e.bottom {
        return 0;
    }
    let d = ring.diagram(e.top as usize, e.bottom as usize);
    let all = (1u64 << d.type_one().len()) - 1;
    i64::from(e.mask == all)
}

fn tau_product(ring: &ArcRing, x: usize, y: usize) -> i64 {
    ring.product(x, y)
        .iter()
        .map(|&(k, c)| c * frobenius_trace(ring, k as usize))
        .sum()
}

/// Full Gram matrix of `(x, y) -> τ(xy)` in the ring basis.
pub fn frobenius_gram(ring: &ArcRing) -> Result<IntegerMatrix> {
    if ring.triple().k != 0 {
        return Err(Error::Invalid("the trace form is defined for k = 0".into()));
    }
    Ok(IntegerMatrix::from_fn(ring.dim(), ring.dim(), |i, j| {
        BigInt::from(tau_product(ring, i, j))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub triple: String,
    pub symmetric: bool,
    pub determinant: String,
    pub unimodular: bool,
}

/// Symmetry and determinant of the trace form, computed block pair by block pair.
pub fn frobenius_report(ring: &ArcRing) -> Result<FrobeniusReport> {
    if ring.triple().k != 0 {
        return Err(Error::Invalid("the trace form is defined for k = 0".into()));
    }
    let m = ring.matchings().len();
    let mut symmetric = true;
    let mut det = BigInt::one();
    for c in 0..m {
        for b in c..m {
            let xs = ring.block(c, b);
            let ys = ring.block(b, c);
            if xs.len() != ys.len() {
                return Err(Error::Inconsistent("mirror blocks differ in rank".into()));
            }
            if xs.is_empty() {
                continue;
            }
            let g = IntegerMatrix::from_fn(xs.len(), ys.len(), |i, j| {
                BigInt::from(tau_product(ring, xs.start + i, ys.start + j))
            });
            let h = IntegerMatrix::from_fn(ys.len(), xs.len(), |i, j| {
                BigInt::from(tau_product(ring, ys.start + i, xs.start + j))
            });
            if g.transpose() != h {
                symmetric = false;
            }
            if c == b {
                det *= g.determinant();
            } else {
                // [[0, G], [H, 0]] with square blocks of size d
                let d = xs.len();
                let sign = if d % 2 == 1 { -BigInt::one() } else { BigInt::one() };
                det *= sign * g.determinant() * h.determinant();
            }
        }
    }
    let unimodular = det.abs().is_one();
    Ok(FrobeniusReport {
        triple: ring.triple().to_string(),
        symmetric,
        determinant: det.to_string(),
        unimodular,
    })
}
