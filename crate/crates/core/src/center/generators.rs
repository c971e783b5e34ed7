use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::equalizer::{center, is_central, Center};
use super::graph::cell_count;
use super::springer::{relation_generators, springer_presentation, SpringerPresentation};
use crate::algebra::{binomial, invariant_factors, IntegerMatrix, LaurentPoly};
use crate::error::{invalid, Result};
use crate::planar::Triple;
use crate::rings::{ArcRing, RingElement};

/// `c_i` for free points `i = 1..n`: on each diagonal block, `(-1)^i` times `X` on the circle
/// through point `i`, or 0 when that circle is not of type I.
pub fn candidate_generators(ring: &ArcRing, signed: bool) -> Vec<RingElement> {
    let Triple { n, k, .. } = ring.triple();
    (1..=n)
        .map(|i| {
            let sign = if signed && i % 2 == 1 { -1 } else { 1 };
            let mut c = RingElement::zero();
            for a in 0..ring.matchings().len() {
                let d = ring.diagram(a, a);
                let circle = d.circle_of(d.grid().node(0, k + i - 1));
                if let Some(j) = d.type_one().iter().position(|&t| t as usize == circle) {
                    c.add_term(ring.block(a, a).start + (1 << j), sign);
                }
            }
            c
        })
        .collect()
}

/// Relations and spanning checks for the candidate generators of one ring.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub central: bool,
    pub squares_vanish: bool,
    pub products_vanish: bool,
    pub elementary_vanish: bool,
    /// Square-free monomials in the `c_i` span the center over the integers.
    pub span_center: bool,
}

impl GeneratorReport {
    pub fn passed(&self) -> bool {
        self.central && self.squares_vanish && self.products_vanish && self.elementary_vanish && self.span_center
    }
}

/// Products `c_J` for every subset `J` (bit `i` for `c_{i+1}`).
fn monomials(ring: &ArcRing, c: &[RingElement]) -> Vec<RingElement> {
    let n = c.len();
    let mut out = vec![ring.unit()];
    for j in 1..1u32 << n {
        let top = 31 - j.leading_zeros() as usize;
        let rest = &out[(j & !(1 << top)) as usize];
        out.push(ring.multiply(rest, &c[top]));
    }
    out
}

pub fn check_generators(ring: &ArcRing, z: &Center, c: &[RingElement], m: usize) -> GeneratorReport {
    let n = c.len();
    let central = c.iter().all(|x| is_central(ring, x));
    let squares_vanish = c.iter().all(|x| ring.multiply(x, x).is_zero());
    let mono = monomials(ring, c);
    let mut products_vanish = true;
    let mut elementary_vanish = true;
    for g in relation_generators(n, m) {
        let mut sum = RingElement::zero();
        for &j in &g {
            sum = sum.add(&mono[j as usize]);
        }
        let ok = sum.is_zero();
        if g.len() == 1 {
            products_vanish &= ok;
        } else {
            elementary_vanish &= ok;
        }
    }
    // the span of the monomials equals the saturated center lattice iff it has full rank and
    // all invariant factors are 1
    let support: Vec<usize> = {
        let mut s: Vec<usize> = z.elements.iter().flat_map(|x| x.terms().map(|(i, _)| i)).collect();
        s.extend(mono.iter().flat_map(|x| x.terms().map(|(i, _)| i)));
        s.sort_unstable();
        s.dedup();
        s
    };
    let mat = IntegerMatrix::from_fn(support.len(), mono.len(), |r, col| {
        BigInt::from(mono[col].coeff(support[r]))
    });
    let f = invariant_factors(&mat);
    let span_center = central && f.len() == z.rank() && f.iter().all(|d| d.is_one());
    GeneratorReport {
        central,
        squares_vanish,
        products_vanish,
        elementary_vanish,
        span_center,
    }
}

/// Center of `A_n^{0,m}` against the Springer presentation and the cell count.
#[derive(Clone, Debug, Serialize)]
pub struct CenterSpringerReport {
    pub n: usize,
    pub m: usize,
    pub center_rank: usize,
    pub center_poincare: LaurentPoly,
    pub springer: SpringerPresentation,
    pub springer_poincare: LaurentPoly,
    pub cells: u64,
    pub binomial: u64,
    pub generators: GeneratorReport,
    /// Whether the elementary relations also hold without the signs `(-1)^i`.
    pub unsigned_elementary_vanish: bool,
}

impl CenterSpringerReport {
    pub fn passed(&self) -> bool {
        let r = self.center_rank as u64;
        r == self.springer.rank() as u64
            && r == self.cells
            && r == self.binomial
            && self.springer.torsion.is_empty()
            && self.center_poincare == self.springer_poincare
            && self.generators.passed()
    }
}

pub fn center_vs_springer(n: usize, m: usize) -> Result<CenterSpringerReport> {
    if m > n || (n - m) % 2 == 1 {
        return invalid(format!("(n, m) = ({n}, {m}) needs n ≥ m and n ≡ m mod 2"));
    }
    let ring = ArcRing::build(Triple::new(n, 0, m)?)?;
    let z = center(&ring)?;
    let springer = springer_presentation(n, m)?;
    let generators = check_generators(&ring, &z, &candidate_generators(&ring, true), m);
    let unsigned = check_generators(&ring, &z, &candidate_generators(&ring, false), m);
    Ok(CenterSpringerReport {
        n,
        m,
        center_rank: z.rank(),
        center_poincare: z.graded_rank(),
        springer_poincare: springer.poincare(),
        springer,
        cells: cell_count(n, m)?.to_u64().expect("cell count fits in u64"),
        binomial: binomial(n as i64, ((n - m) / 2) as i64)
            .to_u64()
            .expect("binomial fits in u64"),
        generators,
        unsigned_elementary_vanish: unsigned.elementary_vanish,
    })
}

/// `Z(A_n^{k,l})` against `Z(A_n^{0,|l-k|})`.
#[derive(Clone, Debug, Serialize)]
pub struct PlatformReport {
    pub triple: Triple,
    pub reduced: Triple,
    pub graded_rank: LaurentPoly,
    pub reduced_graded_rank: LaurentPoly,
    pub ranks_equal: bool,
    /// Both centers are generated by the `c_i` subject to the same relations.
    pub rings_match: bool,
}

pub fn platform_reduction_check(t: Triple) -> Result<PlatformReport> {
    let m = t.l.abs_diff(t.k);
    if m > t.n {
        return invalid(format!("{t}: platform difference exceeds n"));
    }
    let reduced = Triple::new(t.n, 0, m)?;
    let ring = ArcRing::build(t)?;
    let small = ArcRing::build(reduced)?;
    let (z, zr) = (center(&ring)?, center(&small)?);
    let g = check_generators(&ring, &z, &candidate_generators(&ring, true), m);
    let gr = check_generators(&small, &zr, &candidate_generators(&small, true), m);
    Ok(PlatformReport {
        triple: t,
        reduced,
        graded_rank: z.graded_rank(),
        reduced_graded_rank: zr.graded_rank(),
        ranks_equal: z.graded_rank() == zr.graded_rank(),
        rings_match: g.passed() && gr.passed(),
    })
}
