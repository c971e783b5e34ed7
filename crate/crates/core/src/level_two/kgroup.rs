use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::functors::LevelTwo;
use super::tableaux::weight_dim;
use super::weights::{Direction, HighestWeight, Weight};
use crate::algebra::LaurentPoly;
use crate::bimodules::decompose_left_projective;
use crate::error::{Error, Result};

/// Sparse square matrix over `ℤ[q, q^-1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(size: usize) -> Self {
        LaurentMatrix {
            size,
            entries: BTreeMap::new(),
        }
    }

    pub fn diagonal(diag: Vec<LaurentPoly>) -> Self {
        let mut m = Self::zero(diag.len());
        for (i, p) in diag.into_iter().enumerate() {
            m.add_at(i, i, &p);
        }
        m
    }

    pub fn identity(size: usize) -> Self {
        Self::diagonal(vec![LaurentPoly::one(); size])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> LaurentPoly {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.entries.iter().map(|(&(r, c), p)| (r, c, p))
    }

    pub fn add_at(&mut self, r: usize, c: usize, p: &LaurentPoly) {
        let e = self.entries.entry((r, c)).or_default();
        *e += p;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let mut out = Self::zero(self.size);
        for (&(r, k), a) in &self.entries {
            for (&(_, c), b) in other.entries.range((k, 0)..(k + 1, 0)) {
                out.add_at(r, c, &(a * b));
            }
        }
        out
    }

    pub fn add(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let mut out = self.clone();
        for (&(r, c), p) in &other.entries {
            out.add_at(r, c, p);
        }
        out
    }

    pub fn sub(&self, other: &LaurentMatrix) -> LaurentMatrix {
        self.add(&other.scale(&LaurentPoly::from(-1)))
    }

    pub fn scale(&self, s: &LaurentPoly) -> LaurentMatrix {
        let mut out = Self::zero(self.size);
        for (&(r, c), p) in &self.entries {
            out.add_at(r, c, &(p * s));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// First position where the two matrices differ.
    pub fn first_difference(&self, other: &LaurentMatrix) -> Option<(usize, usize)> {
        let d = self.sub(other);
        d.entries.keys().next().copied()
    }
}

impl LevelTwo {
    /// `[E_i]` or `[F_i]` on the basis of projectives, via `F(T a) ≅ P(a'){shift} ⊗ 𝒜^{⊗ circles}`.
    pub fn kgroup_matrix(&self, i: usize, dir: Direction) -> Result<LaurentMatrix> {
        self.highest_weight().check_index(i)?;
        let columns = (0..self.weights().len())
            .into_par_iter()
            .map(|w| -> Result<Vec<(usize, usize, LaurentPoly)>> {
                let Some((v, m)) = self.functor_bimodule(w, i, dir)? else {
                    return Ok(Vec::new());
                };
                let mut col = Vec::new();
                for a in 0..self.ring(w).matchings().len() {
                    let p = decompose_left_projective(&m, self.ring(v), a)?;
                    if !p.holds {
                        return Err(Error::Inconsistent(format!(
                            "{dir:?}_{i} on {} is not projective at matching {a}",
                            self.weights()[w]
                        )));
                    }
                    if let Some(t) = p.target {
                        let row = self.offset(v) + self.ring(v).matching_index(&t).expect("matching from the ring");
                        let e = LaurentPoly::circle_power(p.circles as u32).shift(p.shift);
                        col.push((row, self.offset(w) + a, e));
                    }
                }
                Ok(col)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = LaurentMatrix::zero(self.rank());
        for (r, c, e) in columns.into_iter().flatten() {
            out.add_at(r, c, &e);
        }
        Ok(out)
    }

    /// `[K_i]^{±1}`, the diagonal `q^{±(μ_i − μ_{i+1})}`.
    pub fn k_matrix(&self, i: usize, inverse: bool) -> Result<LaurentMatrix> {
        self.highest_weight().check_index(i)?;
        let sign = if inverse { -1 } else { 1 };
        let diag = (0..self.rank())
            .map(|g| LaurentPoly::monomial(sign * self.weights()[self.weight_of(g)].k_exponent(i), 1))
            .collect();
        Ok(LaurentMatrix::diagonal(diag))
    }
}

/// Where a relation fails: the row and column weights and matching indices inside their rings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixCounterexample {
    pub row_weight: Weight,
    pub row: usize,
    pub col_weight: Weight,
    pub col: usize,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub i: usize,
    pub j: usize,
    pub holds: bool,
    pub counterexample: Option<MatrixCounterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QRelReport {
    pub highest_weight: HighestWeight,
    pub weights: usize,
    pub rank: usize,
    pub tableaux: usize,
    /// `E_i` and `F_i` only connect `μ` to `μ ± ε_i`.
    pub block_sparsity: bool,
    pub checks: Vec<RelationCheck>,
}

impl QRelReport {
    pub fn passed(&self) -> bool {
        self.rank == self.tableaux && self.block_sparsity && self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn cartan(i: usize, j: usize) -> i32 {
    match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// Checks every relation family of `U_q(sl_N)` on the Grothendieck group as exact matrix identities.
///
/// The commutator relation is checked multiplied through by `q − q^-1`.
pub fn verify_qrel(hw: HighestWeight) -> Result<QRelReport> {
    let lt = LevelTwo::build(hw)?;
    let tableaux: usize = lt
        .weights()
        .iter()
        .map(|mu| weight_dim(&hw, mu))
        .sum::<Result<usize>>()?;
    let idx: Vec<usize> = (1..hw.n).collect();
    let mut e = vec![LaurentMatrix::zero(lt.rank())];
    let mut f = vec![LaurentMatrix::zero(lt.rank())];
    let mut k = vec![LaurentMatrix::zero(lt.rank())];
    let mut kinv = vec![LaurentMatrix::zero(lt.rank())];
    for &i in &idx {
        e.push(lt.kgroup_matrix(i, Direction::E)?);
        f.push(lt.kgroup_matrix(i, Direction::F)?);
        k.push(lt.k_matrix(i, false)?);
        kinv.push(lt.k_matrix(i, true)?);
    }
    let block_sparsity = idx.iter().all(|&i| {
        [(&e[i], Direction::E), (&f[i], Direction::F)].iter().all(|(m, dir)| {
            m.entries().all(|(r, c, _)| {
                let src = &lt.weights()[lt.weight_of(c)];
                src.step(i, *dir).as_ref() == Some(&lt.weights()[lt.weight_of(r)])
            })
        })
    });

    let one = LaurentMatrix::identity(lt.rank());
    let q = |d: i32| LaurentPoly::monomial(d, 1);
    let bracket = LaurentPoly::circle_power(1);
    let mut checks = Vec::new();
    let mut record = |relation: &str, i: usize, j: usize, lhs: LaurentMatrix, rhs: LaurentMatrix| {
        let counterexample = lhs.first_difference(&rhs).map(|(r, c)| {
            let (wr, wc) = (lt.weight_of(r), lt.weight_of(c));
            MatrixCounterexample {
                row_weight: lt.weights()[wr].clone(),
                row: r - lt.offset(wr),
                col_weight: lt.weights()[wc].clone(),
                col: c - lt.offset(wc),
                lhs: lhs.get(r, c),
                rhs: rhs.get(r, c),
            }
        });
        checks.push(RelationCheck {
            relation: relation.to_string(),
            i,
            j,
            holds: counterexample.is_none(),
            counterexample,
        });
    };
    for &i in &idx {
        record("K_i K_i^-1 = 1", i, i, k[i].mul(&kinv[i]), one.clone());
        record("K_i^-1 K_i = 1", i, i, kinv[i].mul(&k[i]), one.clone());
        for &j in &idx {
            let c = cartan(i, j);
            record("K_i K_j = K_j K_i", i, j, k[i].mul(&k[j]), k[j].mul(&k[i]));
            record(
                "K_i E_j = q^c E_j K_i",
                i,
                j,
                k[i].mul(&e[j]),
                e[j].mul(&k[i]).scale(&q(c)),
            );
            record(
                "K_i F_j = q^-c F_j K_i",
                i,
                j,
                k[i].mul(&f[j]),
                f[j].mul(&k[i]).scale(&q(-c)),
            );
            let comm = e[i].mul(&f[j]).sub(&f[j].mul(&e[i]));
            let rhs = if i == j {
                k[i].sub(&kinv[i])
            } else {
                LaurentMatrix::zero(lt.rank())
            };
            record(
                "E_i F_j - F_j E_i = delta_ij [K_i]",
                i,
                j,
                comm.scale(&(q(1) - q(-1))),
                rhs,
            );
            if i.abs_diff(j) > 1 {
                record("E_i E_j = E_j E_i", i, j, e[i].mul(&e[j]), e[j].mul(&e[i]));
                record("F_i F_j = F_j F_i", i, j, f[i].mul(&f[j]), f[j].mul(&f[i]));
            }
            if i.abs_diff(j) == 1 {
                for (name, x) in [("Serre E", &e), ("Serre F", &f)] {
                    let (a, b) = (&x[i], &x[j]);
                    let lhs = a.mul(a).mul(b).add(&b.mul(a).mul(a));
                    let rhs = a.mul(b).mul(a).scale(&bracket);
                    record(name, i, j, lhs, rhs);
                }
            }
        }
    }
    Ok(QRelReport {
        highest_weight: hw,
        weights: lt.weights().len(),
        rank: lt.rank(),
        tableaux,
        block_sparsity,
        checks,
    })
}
