use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::functors::{LevelTwo, Step};
use super::weights::{HighestWeight, Weight};
use crate::algebra::LaurentPoly;
use crate::bimodules::TangleBimodule;
use crate::error::Result;

/// Blockwise graded ranks keyed by (target weight, top matching, bottom matching).
type BlockRanks = BTreeMap<(usize, usize, usize), LaurentPoly>;

/// A formal sum of shifted functor words, each word written as a product (rightmost applied first).
type Side = Vec<(i32, Vec<Step>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropFailure {
    pub relation: String,
    pub weight: Weight,
    pub i: usize,
    pub j: usize,
    pub target: Weight,
    pub block: (usize, usize),
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropReport {
    pub highest_weight: HighestWeight,
    pub checked: usize,
    pub bimodules: usize,
    pub failures: Vec<PropFailure>,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Relation {
    name: &'static str,
    i: usize,
    j: usize,
    lhs: Side,
    rhs: Side,
}

fn cartan(i: usize, j: usize) -> i32 {
    match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

fn relations(hw: &HighestWeight, mu: &Weight) -> Vec<Relation> {
    use Step::*;
    let id = || (0, Vec::new());
    let idx: Vec<usize> = (1..hw.n).collect();
    let mut out = Vec::new();
    let mut rel = |name, i, j, lhs: Side, rhs: Side| out.push(Relation { name, i, j, lhs, rhs });
    for &i in &idx {
        rel("K_i K_i^-1 = Id", i, i, vec![(0, vec![K(i), KInv(i)])], vec![id()]);
        rel("K_i^-1 K_i = Id", i, i, vec![(0, vec![KInv(i), K(i)])], vec![id()]);
        for &j in &idx {
            let c = cartan(i, j);
            rel(
                "K_i K_j = K_j K_i",
                i,
                j,
                vec![(0, vec![K(i), K(j)])],
                vec![(0, vec![K(j), K(i)])],
            );
            rel(
                "K_i E_j = E_j K_i {c}",
                i,
                j,
                vec![(0, vec![K(i), E(j)])],
                vec![(c, vec![E(j), K(i)])],
            );
            rel(
                "K_i F_j = F_j K_i {-c}",
                i,
                j,
                vec![(0, vec![K(i), F(j)])],
                vec![(-c, vec![F(j), K(i)])],
            );
            if i != j {
                rel(
                    "E_i F_j = F_j E_i",
                    i,
                    j,
                    vec![(0, vec![E(i), F(j)])],
                    vec![(0, vec![F(j), E(i)])],
                );
            }
            if i.abs_diff(j) > 1 {
                rel(
                    "E_i E_j = E_j E_i",
                    i,
                    j,
                    vec![(0, vec![E(i), E(j)])],
                    vec![(0, vec![E(j), E(i)])],
                );
                rel(
                    "F_i F_j = F_j F_i",
                    i,
                    j,
                    vec![(0, vec![F(i), F(j)])],
                    vec![(0, vec![F(j), F(i)])],
                );
            }
            if i.abs_diff(j) == 1 {
                for (name, x) in [("Serre E", E as fn(usize) -> Step), ("Serre F", F)] {
                    rel(
                        name,
                        i,
                        j,
                        vec![(0, vec![x(i), x(i), x(j)]), (0, vec![x(j), x(i), x(i)])],
                        vec![(1, vec![x(i), x(j), x(i)]), (-1, vec![x(i), x(j), x(i)])],
                    );
                }
            }
        }
        // the commutator, with identity summands on the side the sign of μ_i − μ_{i+1} dictates
        let d = mu.k_exponent(i);
        let ids: Side = match d.abs() {
            0 => vec![],
            1 => vec![id()],
            _ => vec![(1, Vec::new()), (-1, Vec::new())],
        };
        let mut lhs = vec![(0, vec![E(i), F(i)])];
        let mut rhs = vec![(0, vec![F(i), E(i)])];
        if d > 0 {
            rhs.extend(ids);
        } else {
            lhs.extend(ids);
        }
        rel("E_i F_i vs F_i E_i", i, i, lhs, rhs);
    }
    out
}

fn side_ranks(lt: &LevelTwo, w: usize, side: &Side, built: &mut usize) -> Result<BlockRanks> {
    let mut out = BlockRanks::new();
    for (shift, word) in side {
        let Some((v, tangle, s)) = lt.compose(w, word)? else {
            continue;
        };
        let m = TangleBimodule::build(&tangle, lt.ring(v).triple(), lt.ring(w).triple())?;
        *built += 1;
        for c in 0..m.top_matchings().len() {
            for b in 0..m.bottom_matchings().len() {
                let r = m.block_graded_rank(c, b).shift(shift + s);
                let e = out.entry((v, c, b)).or_default();
                *e += &r;
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// Checks the functor isomorphisms of both propositions as equalities of blockwise graded ranks of the bimodules.
pub fn verify_prop1_prop2(hw: HighestWeight) -> Result<PropReport> {
    let lt = LevelTwo::build(hw)?;
    let per_weight = (0..lt.weights().len())
        .into_par_iter()
        .map(|w| -> Result<(usize, usize, Vec<PropFailure>)> {
            let mu = &lt.weights()[w];
            let mut built = 0;
            let mut failures = Vec::new();
            let rels = relations(&hw, mu);
            for r in &rels {
                let lhs = side_ranks(&lt, w, &r.lhs, &mut built)?;
                let rhs = side_ranks(&lt, w, &r.rhs, &mut built)?;
                if lhs == rhs {
                    continue;
                }
                let key = lhs
                    .keys()
                    .chain(rhs.keys())
                    .find(|k| lhs.get(k) != rhs.get(k))
                    .copied()
                    .expect("maps differ");
                failures.push(PropFailure {
                    relation: r.name.to_string(),
                    weight: mu.clone(),
                    i: r.i,
                    j: r.j,
                    target: lt.weights()[key.0].clone(),
                    block: (key.1, key.2),
                    lhs: lhs.get(&key).cloned().unwrap_or_default(),
                    rhs: rhs.get(&key).cloned().unwrap_or_default(),
                });
            }
            Ok((rels.len(), built, failures))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = PropReport {
        highest_weight: hw,
        checked: 0,
        bimodules: 0,
        failures: Vec::new(),
    };
    for (c, b, f) in per_weight {
        report.checked += c;
        report.bimodules += b;
        report.failures.extend(f);
    }
    Ok(report)
}
