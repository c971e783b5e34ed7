use std::collections::BTreeMap;

use serde::Serialize;

use super::bimodule::TangleBimodule;
use crate::error::Result;
use crate::rings::ArcRing;

/// Bimodule axioms checked on full bases.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub dim: usize,
    pub left_unit_ok: bool,
    pub right_unit_ok: bool,
    pub left_assoc_failures: u64,
    pub right_assoc_failures: u64,
    pub commute_checked: u64,
    pub commute_failures: u64,
    pub degree_ok: bool,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.left_unit_ok
            && self.right_unit_ok
            && self.left_assoc_failures == 0
            && self.right_assoc_failures == 0
            && self.commute_failures == 0
            && self.degree_ok
    }
}

fn add_scaled(acc: &mut BTreeMap<usize, i64>, terms: &[(usize, i64)], k: i64) {
    for &(i, c) in terms {
        let e = acc.entry(i).or_insert(0);
        *e += k * c;
        if *e == 0 {
            acc.remove(&i);
        }
    }
}

fn sparse(terms: Vec<(usize, i64)>) -> BTreeMap<usize, i64> {
    let mut m = BTreeMap::new();
    add_scaled(&mut m, &terms, 1);
    m
}

/// Unit, associativity and commutation of both actions, and degree additivity.
pub fn check_actions(m: &TangleBimodule, left: &ArcRing, right: &ArcRing) -> Result<ActionReport> {
    let mut rep = ActionReport {
        dim: m.dim(),
        left_unit_ok: true,
        right_unit_ok: true,
        degree_ok: true,
        ..Default::default()
    };
    let basis = m.basis();
    for v in 0..m.dim() {
        let (c, b) = (basis[v].top as usize, basis[v].bottom as usize);
        rep.left_unit_ok &= m.left_act(left, left.idempotent(c), v)? == [(v, 1)];
        rep.right_unit_ok &= m.right_act(v, right, right.idempotent(b))? == [(v, 1)];
        // x · (x' · v) = (x x') · v
        for x2 in (0..left.matchings().len()).flat_map(|a| left.block(a, c)) {
            let x2v = m.left_act(left, x2, v)?;
            for &(w, _) in &x2v {
                rep.degree_ok &= m.degree(w) == left.degree(x2) + m.degree(v);
            }
            let a = left.basis()[x2].top as usize;
            for x1 in (0..left.matchings().len()).flat_map(|d| left.block(d, a)) {
                let mut lhs = BTreeMap::new();
                for &(w, k) in &x2v {
                    add_scaled(&mut lhs, &m.left_act(left, x1, w)?, k);
                }
                let mut rhs = BTreeMap::new();
                for &(z, k) in left.product(x1, x2) {
                    add_scaled(&mut rhs, &m.left_act(left, z as usize, v)?, k);
                }
                if lhs != rhs {
                    rep.left_assoc_failures += 1;
                }
            }
        }
        // (v · y) · y' = v · (y y')
        for y in right.top_range(b) {
            let vy = m.right_act(v, right, y)?;
            for &(w, _) in &vy {
                rep.degree_ok &= m.degree(w) == right.degree(y) + m.degree(v);
            }
            for y2 in right.top_range(right.basis()[y].bottom as usize) {
                let mut lhs = BTreeMap::new();
                for &(w, k) in &vy {
                    add_scaled(&mut lhs, &m.right_act(w, right, y2)?, k);
                }
                let mut rhs = BTreeMap::new();
                for &(z, k) in right.product(y, y2) {
                    add_scaled(&mut rhs, &m.right_act(v, right, z as usize)?, k);
                }
                if lhs != rhs {
                    rep.right_assoc_failures += 1;
                }
            }
            // (x · v) · y = x · (v · y)
            for x in (0..left.matchings().len()).flat_map(|a| left.block(a, c)) {
                rep.commute_checked += 1;
                let mut lhs = BTreeMap::new();
                for (w, k) in m.left_act(left, x, v)? {
                    add_scaled(&mut lhs, &m.right_act(w, right, y)?, k);
                }
                let mut rhs = BTreeMap::new();
                for &(w, k) in &vy {
                    add_scaled(&mut rhs, &m.left_act(left, x, w)?, k);
                }
                if lhs != rhs {
                    rep.commute_failures += 1;
                }
            }
        }
    }
    Ok(rep)
}

/// Sparse image of one basis vector, as a map for comparisons.
pub(crate) fn as_map(terms: Vec<(usize, i64)>) -> BTreeMap<usize, i64> {
    sparse(terms)
}
