use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::bimodule::{close_in, effective_layers, TangleBimodule};
use crate::algebra::{cokernel_summary, invariant_factors, IntegerMatrix, LaurentPoly};
use crate::error::{Error, Result};
use crate::planar::{Compatibility, Frame};
use crate::rings::ArcRing;
use crate::tqft::stack_program;

/// `F(T2) ⊗_A F(T1)` by generators and relations, compared with `F(T2 T1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorReport {
    pub generators: usize,
    pub relations: usize,
    /// Free part of the tensor product, degree by degree.
    pub tensor_graded_rank: LaurentPoly,
    pub torsion: Vec<u64>,
    pub target_graded_rank: LaurentPoly,
    /// The canonical map vanishes on every relation.
    /// Common value of `deg φ(u ⊗ v) - deg u - deg v`, when the map is homogeneous.
    pub map_degree: Option<i32>,
    pub well_defined: bool,
    pub surjective: bool,
    pub injective: bool,
    pub degree_ok: bool,
    pub isomorphism: bool,
}

type Sparse = Vec<(usize, i64)>;

fn normalize(mut v: Sparse) -> Sparse {
    v.sort_unstable();
    let mut out: Sparse = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

fn all_ones(f: &[BigInt]) -> bool {
    f.iter().all(One::is_one)
}

/// Tensor product over the middle ring with its canonical map to `F(T2 T1)`.
///
/// `m1` is an `(A_mid, A_right)`-bimodule and `m2` an `(A_left, A_mid)`-bimodule.
pub fn tensor_over_ring(
    m2: &TangleBimodule,
    ring: &ArcRing,
    m1: &TangleBimodule,
) -> Result<(TensorReport, TangleBimodule)> {
    let mid = ring.triple();
    if m2.right_triple() != mid || m1.left_triple() != mid {
        return Err(Error::Incompatible(format!(
            "middle rings differ: {} vs {} vs {mid}",
            m2.right_triple(),
            m1.left_triple()
        )));
    }
    if m1.compatibility() == Compatibility::Incompatible || m2.compatibility() == Compatibility::Incompatible {
        return Err(Error::Incompatible("tensor products need compatible bimodules".into()));
    }
    let composite_tangle = m1.tangle().then(m2.tangle())?;
    let composite = TangleBimodule::build(&composite_tangle, m2.left_triple(), m1.right_triple())?;
    let frame = Frame::covering(&[m1.right_triple(), mid, m2.left_triple()])?;
    let l1 = effective_layers(m1.tangle());
    let l2 = effective_layers(m2.tangle());
    let h1 = l1.len();
    let mut lt = l1.clone();
    lt.extend_from_slice(&l2);
    let nmid = ring.matchings().len();

    let mut rep = TensorReport {
        generators: 0,
        relations: 0,
        tensor_graded_rank: LaurentPoly::zero(),
        torsion: Vec::new(),
        target_graded_rank: composite.graded_rank(),
        map_degree: None,
        well_defined: true,
        surjective: true,
        injective: true,
        degree_ok: true,
        isomorphism: false,
    };

    let mut offsets: BTreeSet<i32> = BTreeSet::new();
    let mut blocks = Vec::new();
    for (ai, a) in m2.top_matchings().iter().enumerate() {
        for (bi, b) in m1.bottom_matchings().iter().enumerate() {
            let target_block = composite.block(ai, bi);
            let target = close_in(frame, a, &lt, b)?;
            let g_t = target.grid();
            // generators u ⊗ v and their images
            let mut gens: Vec<(usize, usize)> = Vec::new();
            let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            let mut images: Vec<Sparse> = Vec::new();
            for (ci, c) in ring.matchings().iter().enumerate() {
                let (us, vs) = (m2.block(ai, ci), m1.block(ci, bi));
                if us.is_empty() || vs.is_empty() {
                    continue;
                }
                let upper = close_in(frame, a, &l2, c)?;
                let lower = close_in(frame, c, &l1, b)?;
                let program = if target_block.is_empty() {
                    None
                } else {
                    let middle = frame.embed(c).all_arcs();
                    let (gu, gl) = (upper.grid(), lower.grid());
                    Some(stack_program(&upper, &lower, &middle, &target, |u| {
                        let (r, p) = g_t.coords(u);
                        if r <= h1 {
                            (1, gl.node(r, p))
                        } else {
                            (0, gu.node(r - h1, p))
                        }
                    })?)
                };
                for u in us.clone() {
                    for v in vs.clone() {
                        index.insert((u, v), gens.len());
                        gens.push((u, v));
                        let img = match &program {
                            None => Vec::new(),
                            Some(p) => {
                                let input = upper.expand(m2.basis()[u].mask)
                                    | lower.expand(m1.basis()[v].mask) << upper.ncircles();
                                normalize(
                                    p.apply_mask(input)
                                        .into_iter()
                                        .filter_map(|(m, k)| {
                                            target.reduce(m).map(|r| (target_block.start + r as usize, k))
                                        })
                                        .collect(),
                                )
                            }
                        };
                        let d = m2.degree(u) + m1.degree(v);
                        for &(w, _) in &img {
                            offsets.insert(composite.degree(w) - d);
                        }
                        images.push(img);
                    }
                }
            }
            // relations (u·r) ⊗ v - u ⊗ (r·v)
            let mut rels: BTreeSet<Sparse> = BTreeSet::new();
            for ci in 0..nmid {
                for u in m2.block(ai, ci) {
                    for di in 0..nmid {
                        let vs = m1.block(di, bi);
                        if vs.is_empty() {
                            continue;
                        }
                        for r in ring.block(ci, di) {
                            let ur = m2.right_act(u, ring, r)?;
                            for v in vs.clone() {
                                let rv = m1.left_act(ring, r, v)?;
                                let mut rel: Sparse = Vec::new();
                                for &(w, k) in &ur {
                                    rel.push((index[&(w, v)], k));
                                }
                                for &(w, k) in &rv {
                                    rel.push((index[&(u, w)], -k));
                                }
                                let rel = normalize(rel);
                                if !rel.is_empty() {
                                    rels.insert(rel);
                                }
                            }
                        }
                    }
                }
            }
            rep.generators += gens.len();
            rep.relations += rels.len();
            blocks.push((target_block, gens, images, rels));
        }
    }
    if offsets.len() > 1 {
        rep.degree_ok = false;
    }
    let shift = offsets.first().copied().unwrap_or(0);
    rep.map_degree = (offsets.len() <= 1).then_some(shift);
    rep.degree_ok &= shift == 0;
    for (target_block, gens, images, rels) in blocks {
        // everything is homogeneous, so work one degree at a time
        let gdeg: Vec<i32> = gens.iter().map(|&(u, v)| m2.degree(u) + m1.degree(v)).collect();
        let mut degrees: BTreeSet<i32> = gdeg.iter().copied().collect();
        degrees.extend(target_block.clone().map(|w| composite.degree(w) - shift));
        for d in degrees {
            let gi: Vec<usize> = (0..gens.len()).filter(|&i| gdeg[i] == d).collect();
            let pos: BTreeMap<usize, usize> = gi.iter().enumerate().map(|(j, &i)| (i, j)).collect();
            let ti: Vec<usize> = target_block
                .clone()
                .filter(|&w| composite.degree(w) - shift == d)
                .collect();
            let tpos: BTreeMap<usize, usize> = ti.iter().enumerate().map(|(j, &w)| (w, j)).collect();
            let rd: Vec<&Sparse> = rels.iter().filter(|r| gdeg[r[0].0] == d).collect();
            if rd.iter().any(|r| r.iter().any(|&(i, _)| gdeg[i] != d)) {
                rep.degree_ok = false;
            }
            let mut rmat = IntegerMatrix::zeros(gi.len(), rd.len());
            for (j, r) in rd.iter().enumerate() {
                for &(i, k) in r.iter() {
                    if let Some(&p) = pos.get(&i) {
                        rmat.add_at(p, j, &k.into());
                    }
                }
            }
            let mut phi = IntegerMatrix::zeros(ti.len(), gi.len());
            for (j, &i) in gi.iter().enumerate() {
                for &(w, k) in &images[i] {
                    match tpos.get(&w) {
                        Some(&p) => phi.add_at(p, j, &k.into()),
                        None => rep.map_degree = None,
                    }
                }
            }
            if !phi.mul(&rmat).is_zero() {
                rep.well_defined = false;
            }
            let coker = cokernel_summary(&rmat);
            if coker.free_rank > 0 {
                rep.tensor_graded_rank.add_term(d, &BigInt::from(coker.free_rank));
            }
            rep.torsion.extend(coker.torsion.iter().copied());
            let pf = invariant_factors(&phi);
            if pf.len() != ti.len() || !all_ones(&pf) {
                rep.surjective = false;
            }
            let rf = invariant_factors(&rmat);
            if rf.len() + ti.len() != gi.len() || !all_ones(&rf) {
                rep.injective = false;
            }
        }
    }
    if rep.map_degree.is_none() {
        rep.degree_ok = false;
    }
    rep.isomorphism = rep.well_defined && rep.surjective && rep.injective && rep.map_degree.is_some();
    Ok((rep, composite))
}
