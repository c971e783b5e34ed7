use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Suite, SuiteConfig, SuiteOutcome, Tally};
use crate::algebra::{catalan_number, series_sqrt_inverse_identity};
use crate::bimodules::{tensor_over_ring, TangleBimodule};
use crate::center::{center_vs_springer, degree_zero_center, platform_reduction_check};
use crate::complexes::{catalog, check_pair, diagram_homology, unknot};
use crate::error::Result;
use crate::level_two::{
    enumerate_tableaux, phi, psi, sl2_invariant_dimension, verify_prop1_prop2, verify_qrel, weight_triple,
    HighestWeight,
};
use crate::planar::{enumerate_matchings, FlatTangle, Triple};
use crate::rings::{check_ring, check_ring_map, frobenius_report, reflection_map, stabilization_map, ArcRing};

/// Coherent triples with `n + k + l ≤ max`, smallest first.
pub(crate) fn triples_up_to(max: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for total in 0..=max {
        for n in 0..=total {
            for k in 0..=total - n {
                let t = Triple { n, k, l: total - n - k };
                if t.is_coherent() {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn ring(t: Triple) -> Result<ArcRing> {
    ArcRing::build(t)
}

pub struct CountsSuite;

impl Suite for CountsSuite {
    fn name(&self) -> &'static str {
        "counts"
    }
    fn criterion(&self) -> u8 {
        1
    }
    fn description(&self) -> &'static str {
        "matching counts against Catalan numbers and the sl2 invariant dimension"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut t = Tally::default();
        let count = |n, k, l| enumerate_matchings(Triple::new(n, k, l)?).map(|v| v.len());
        t.check(count(3, 1, 2)? == 3, || "|B_3^{1,2}| != 3".into());
        t.check(count(5, 0, 1)? == 5, || "|B_5^{0,1}| != 5".into());
        let max = cfg.bound(12);
        for n in (0..=max).step_by(2) {
            let c = count(n, 0, 0)?;
            t.check(catalan_number(n as u64 / 2) == c.into(), || {
                format!("|B_{n}^{{0,0}}| = {c}")
            });
        }
        for tr in triples_up_to(max) {
            let c = enumerate_matchings(tr)?.len() as u128;
            let d = sl2_invariant_dimension(tr.k, tr.l, tr.n).dimension;
            t.check(c == d, || format!("{tr}: {c} matchings, sl2 dimension {d}"));
        }
        Ok(t.finish(self))
    }
}

pub struct RingSuite;

impl Suite for RingSuite {
    fn name(&self) -> &'static str {
        "rings"
    }
    fn criterion(&self) -> u8 {
        2
    }
    fn description(&self) -> &'static str {
        "associativity, unit, idempotents, degrees and block ranks of every ring in range"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let results = triples_up_to(cfg.bound(10))
            .into_par_iter()
            .map(|tr| -> Result<(Triple, bool, bool)> {
                let r = ring(tr)?;
                let rep = check_ring(&r);
                let n = r.matchings().len();
                let blocks = (0..n).all(|c| {
                    (0..n).all(|b| {
                        let d = r.diagram(c, b);
                        let law = if d.has_type_three() { 0 } else { 1 << d.type_one().len() };
                        r.block(c, b).len() == law
                    })
                });
                Ok((tr, rep.passed(), blocks))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut t = Tally::default();
        for (tr, ring_ok, blocks) in results {
            t.check(ring_ok, || format!("{tr}: ring axioms fail"));
            t.check(blocks, || format!("{tr}: block rank law fails"));
        }
        Ok(t.finish(self))
    }
}

pub struct IsomorphismSuite;

impl Suite for IsomorphismSuite {
    fn name(&self) -> &'static str {
        "isomorphisms"
    }
    fn criterion(&self) -> u8 {
        3
    }
    fn description(&self) -> &'static str {
        "reflection and stabilization isomorphisms by structure constants"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let max_n = 6.min(cfg.bound(14) / 2);
        let mut cases = Vec::new();
        for n in 0..=max_n {
            for k in 0..=n {
                cases.push((Triple { n, k, l: n - k }, true));
                cases.push((Triple { n, k, l: n - k }, false));
            }
        }
        let results = cases
            .into_par_iter()
            .map(|(tr, reflect)| -> Result<(Triple, bool, bool)> {
                let r1 = ring(tr)?;
                let ok = if reflect {
                    let r2 = ring(tr.reflected())?;
                    check_ring_map(&r1, &r2, &reflection_map(&r1, &r2)?).is_isomorphism()
                } else {
                    let r2 = ring(Triple::new(tr.n, tr.k + 1, tr.l + 1)?)?;
                    check_ring_map(&r1, &r2, &stabilization_map(&r1, &r2)?).is_isomorphism()
                };
                Ok((tr, reflect, ok))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut t = Tally::default();
        for (tr, reflect, ok) in results {
            let what = if reflect { "reflection" } else { "stabilization" };
            t.check(ok, || format!("{tr}: {what} is not an isomorphism"));
        }
        Ok(t.finish(self))
    }
}

pub struct FrobeniusSuite;

impl Suite for FrobeniusSuite {
    fn name(&self) -> &'static str {
        "frobenius"
    }
    fn criterion(&self) -> u8 {
        4
    }
    fn description(&self) -> &'static str {
        "unimodular symmetric trace form on the one-platform rings"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let triples: Vec<Triple> = triples_up_to(cfg.bound(8)).into_iter().filter(|t| t.k == 0).collect();
        let results = triples
            .into_par_iter()
            .map(|tr| frobenius_report(&ring(tr)?).map(|r| (tr, r)))
            .collect::<Result<Vec<_>>>()?;
        let mut t = Tally::default();
        for (tr, r) in results {
            t.check(r.symmetric && r.unimodular, || {
                format!("{tr}: determinant {}", r.determinant)
            });
        }
        Ok(t.finish(self))
    }
}

pub struct CompositionSuite;

/// Random chain of three triples with equal platforms and at most `max` free points in total.
fn random_chain(rng: &mut ChaCha8Rng, max: usize) -> (Triple, Triple, Triple) {
    loop {
        let k = rng.gen_range(0..=2usize);
        let l = rng.gen_range(0..=2usize);
        let base = k.abs_diff(l);
        let mut pick = || base + 2 * rng.gen_range(0..=3usize);
        let (a, b, c) = (pick(), pick(), pick());
        if a + b + c <= max && a + b + c > 0 {
            return (Triple { n: a, k, l }, Triple { n: b, k, l }, Triple { n: c, k, l });
        }
    }
}

impl Suite for CompositionSuite {
    fn name(&self) -> &'static str {
        "composition"
    }
    fn criterion(&self) -> u8 {
        5
    }
    fn description(&self) -> &'static str {
        "F(T2) ⊗ F(T1) -> F(T2 T1) is an isomorphism on random compatible pairs"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let max = cfg.bound(10);
        let mut cases = Vec::with_capacity(cfg.samples);
        for _ in 0..cfg.samples {
            let (a, b, c) = random_chain(&mut rng, max);
            let t1 = FlatTangle::random(a.n, b.n, rng.gen_range(0..=1), &mut rng)?;
            let t2 = FlatTangle::random(b.n, c.n, rng.gen_range(0..=1), &mut rng)?;
            cases.push((a, b, c, t1, t2));
        }
        let results = cases
            .into_par_iter()
            .map(|(a, b, c, t1, t2)| -> Result<(String, bool)> {
                let m1 = TangleBimodule::build(&t1, b, a)?;
                let m2 = TangleBimodule::build(&t2, c, b)?;
                let (rep, _) = tensor_over_ring(&m2, &ring(b)?, &m1)?;
                Ok((format!("{a} -> {b} -> {c}: {t1:?} then {t2:?}"), rep.isomorphism))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut t = Tally::default();
        for (what, ok) in results {
            t.check(ok, || what);
        }
        Ok(t.finish(self))
    }
}

pub struct CenterSuite;

impl Suite for CenterSuite {
    fn name(&self) -> &'static str {
        "center"
    }
    fn criterion(&self) -> u8 {
        6
    }
    fn description(&self) -> &'static str {
        "center against the Springer presentation, cell count, binomial and generators"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let max_n = cfg.bound(6);
        let mut cases = Vec::new();
        for n in 0..=max_n {
            for m in (n % 2..=n).step_by(2) {
                cases.push((n, m));
            }
        }
        let results = cases
            .into_par_iter()
            .map(|(n, m)| center_vs_springer(n, m))
            .collect::<Result<Vec<_>>>()?;
        let mut t = Tally::default();
        for r in &results {
            t.check(r.passed(), || {
                format!("(n, m) = ({}, {}): center rank {}", r.n, r.m, r.center_rank)
            });
        }
        if let Some(r) = results.iter().find(|r| (r.n, r.m) == (5, 1)) {
            t.check(r.center_rank == 10, || {
                format!("Z(A_5^{{0,1}}) has rank {}", r.center_rank)
            });
        }
        Ok(t.finish(self))
    }
}

pub struct PlatformSuite;

impl Suite for PlatformSuite {
    fn name(&self) -> &'static str {
        "platform"
    }
    fn criterion(&self) -> u8 {
        7
    }
    fn description(&self) -> &'static str {
        "platform reduction of centers and the degree-zero center"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let results = triples_up_to(cfg.bound(8))
            .into_par_iter()
            .map(|tr| -> Result<(Triple, bool, bool)> {
                let p = platform_reduction_check(tr)?;
                let z = degree_zero_center(&ring(tr)?)?;
                Ok((tr, p.ranks_equal && p.rings_match, z.rank == 1 && z.spanned_by_unit))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut t = Tally::default();
        for (tr, red, zero) in results {
            t.check(red, || format!("{tr}: platform reduction fails"));
            t.check(zero, || format!("{tr}: degree-zero center is not Z·1"));
        }
        Ok(t.finish(self))
    }
}

pub struct SeriesSuite;

impl Suite for SeriesSuite {
    fn name(&self) -> &'static str {
        "series"
    }
    fn criterion(&self) -> u8 {
        8
    }
    fn description(&self) -> &'static str {
        "Catalan generating-function identity behind the cell count"
    }
    fn run(&self, _cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut t = Tally::default();
        for s in 0..=8 {
            for k in 0..=s {
                t.check(series_sqrt_inverse_identity(s, k), || format!("(s, k) = ({s}, {k})"));
            }
        }
        Ok(t.finish(self))
    }
}

pub struct InvarianceSuite;

impl Suite for InvarianceSuite {
    fn name(&self) -> &'static str {
        "invariance"
    }
    fn criterion(&self) -> u8 {
        9
    }
    fn description(&self) -> &'static str {
        "Reidemeister pairs and trefoil diagrams have equal blockwise homology"
    }
    fn run(&self, _cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let results = catalog()
            .into_par_iter()
            .map(|p| check_pair(&p))
            .collect::<Result<Vec<_>>>()?;
        let mut t = Tally::default();
        for r in results {
            t.check(r.passed, || format!("{}: homology differs", r.name));
        }
        let empty = Triple { n: 0, k: 0, l: 0 };
        let h = diagram_homology(&unknot(), empty, empty)?;
        let got: Vec<(i32, i32, usize, usize)> = h
            .entries
            .iter()
            .map(|e| (e.hdeg, e.qdeg, e.rank, e.torsion.len()))
            .collect();
        t.check(got == [(0, -1, 1, 0), (0, 1, 1, 0)], || {
            format!("unknot homology {got:?}")
        });
        Ok(t.finish(self))
    }
}

pub struct LevelTwoSuite;

/// Highest weights on which the relations and propositions are checked.
pub const LEVEL_TWO_CASES: [(usize, usize, usize); 5] = [(2, 1, 0), (3, 1, 0), (3, 1, 1), (4, 1, 1), (5, 2, 1)];

impl Suite for LevelTwoSuite {
    fn name(&self) -> &'static str {
        "level-two"
    }
    fn criterion(&self) -> u8 {
        10
    }
    fn description(&self) -> &'static str {
        "tableau bijection, Grothendieck group relations and functor isomorphisms"
    }
    fn run(&self, _cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut t = Tally::default();
        for n in 2..=6 {
            for s in 0..=3 {
                for k in 0..=3 - s {
                    let Ok(hw) = HighestWeight::new(n, s, k) else { continue };
                    for mu in hw.admissible_weights() {
                        let ts = enumerate_tableaux(&hw, &mu)?;
                        let ms = enumerate_matchings(weight_triple(&hw, &mu)?)?;
                        let there = ts
                            .iter()
                            .all(|x| phi(&hw, x).and_then(|a| psi(&hw, &mu, &a)).ok().as_ref() == Some(x));
                        let back = ms
                            .iter()
                            .all(|a| psi(&hw, &mu, a).and_then(|x| phi(&hw, &x)).ok().as_ref() == Some(a));
                        t.check(ts.len() == ms.len() && there && back, || {
                            format!("{hw} {mu}: bijection fails")
                        });
                    }
                }
            }
        }
        for (n, s, k) in LEVEL_TWO_CASES {
            let hw = HighestWeight::new(n, s, k)?;
            let q = verify_qrel(hw)?;
            t.check(q.rank == q.tableaux, || {
                format!("{hw}: rank {} vs {} tableaux", q.rank, q.tableaux)
            });
            t.check(q.block_sparsity, || format!("{hw}: E/F leave their weight blocks"));
            for c in &q.checks {
                t.check(c.holds, || {
                    format!("{hw}: {} (i={}, j={}) {:?}", c.relation, c.i, c.j, c.counterexample)
                });
            }
            let p = verify_prop1_prop2(hw)?;
            t.check(p.passed(), || format!("{hw}: {:?}", p.failures.first()));
        }
        Ok(t.finish(self))
    }
}
