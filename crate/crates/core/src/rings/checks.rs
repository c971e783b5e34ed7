use rayon::prelude::*;
use serde::Serialize;

use super::ring::ArcRing;

/// Outcome of the structural checks on a built ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RingReport {
    pub triple: String,
    pub dim: usize,
    pub associativity_triples: u64,
    pub associativity_failures: u64,
    pub unit_ok: bool,
    pub idempotents_ok: bool,
    pub degree_ok: bool,
    pub first_failure: Option<String>,
}

impl RingReport {
    pub fn passed(&self) -> bool {
        self.associativity_failures == 0 && self.unit_ok && self.idempotents_ok && self.degree_ok
    }
}

/// `(xy)z = x(yz)` on every composable triple of basis elements; returns (triples, failures, first).
pub fn check_associativity(ring: &ArcRing) -> (u64, u64, Option<(usize, usize, usize)>) {
    let basis = ring.basis();
    let results: Vec<(u64, u64, Option<(usize, usize, usize)>)> = (0..ring.dim())
        .into_par_iter()
        .map(|x| {
            let mut count = 0u64;
            let mut fails = 0u64;
            let mut first = None;
            let mut lhs: Vec<i64> = Vec::new();
            let mut rhs: Vec<i64> = Vec::new();
            let top = basis[x].top as usize;
            for y in ring.top_range(basis[x].bottom as usize) {
                let xy = ring.product(x, y);
                let mid = basis[y].bottom as usize;
                for z in ring.top_range(mid) {
                    count += 1;
                    let tb = ring.block(top, basis[z].bottom as usize);
                    let (base, len) = (tb.start, tb.len());
                    if len == 0 {
                        continue;
                    }
                    lhs.clear();
                    lhs.resize(len, 0);
                    rhs.clear();
                    rhs.resize(len, 0);
                    for &(w, a) in xy {
                        ring.add_product_into(w as usize, z, a, &mut lhs, base);
                    }
                    for &(v, b) in ring.product(y, z) {
                        ring.add_product_into(x, v as usize, b, &mut rhs, base);
                    }
                    if lhs != rhs {
                        fails += 1;
                        if first.is_none() {
                            first = Some((x, y, z));
                        }
                    }
                }
            }
            (count, fails, first)
        })
        .collect();
    let mut total = (0u64, 0u64, None);
    for (c, f, fst) in results {
        total.0 += c;
        total.1 += f;
        if total.2.is_none() {
            total.2 = fst;
        }
    }
    total
}

/// Left and right multiplication by the unit fix every basis element.
pub fn check_unit(ring: &ArcRing) -> bool {
    let basis = ring.basis();
    (0..ring.dim()).into_par_iter().all(|x| {
        let l = ring.idempotent(basis[x].top as usize);
        let r = ring.idempotent(basis[x].bottom as usize);
        let want = [(x as u32, 1i64)];
        ring.product(l, x) == want && ring.product(x, r) == want
    })
}

/// `1_a 1_b = δ_ab 1_a`
pub fn check_idempotents(ring: &ArcRing) -> bool {
    let m = ring.matchings().len();
    (0..m).all(|a| {
        (0..m).all(|b| {
            let p = ring.product(ring.idempotent(a), ring.idempotent(b));
            if a == b {
                p == [(ring.idempotent(a) as u32, 1)]
            } else {
                p.is_empty()
            }
        })
    })
}

/// Every product term has degree `deg x + deg y`.
pub fn check_degrees(ring: &ArcRing) -> bool {
    let basis = ring.basis();
    (0..ring.dim()).into_par_iter().all(|x| {
        ring.top_range(basis[x].bottom as usize).all(|y| {
            let d = ring.degree(x) + ring.degree(y);
            ring.product(x, y).iter().all(|&(k, _)| ring.degree(k as usize) == d)
        })
    })
}

pub fn check_ring(ring: &ArcRing) -> RingReport {
    let (triples, fails, first) = check_associativity(ring);
    RingReport {
        triple: ring.triple().to_string(),
        dim: ring.dim(),
        associativity_triples: triples,
        associativity_failures: fails,
        unit_ok: check_unit(ring),
        idempotents_ok: check_idempotents(ring),
        degree_ok: check_degrees(ring),
        first_failure: first.map(|(x, y, z)| format!("basis triple ({x}, {y}, {z})")),
    }
}
