use serde::Serialize;

use super::ring::ArcRing;
use crate::error::{Error, Result};
use crate::planar::{ClosedDiagram, Matching};

/// Result of comparing structure constants along a basis map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingMapReport {
    pub source: String,
    pub target: String,
    pub injective: bool,
    pub surjective: bool,
    pub multiplicative: bool,
    pub degree_preserving: bool,
    pub checked_pairs: u64,
}

impl RingMapReport {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective && self.multiplicative && self.degree_preserving
    }

    pub fn is_embedding(&self) -> bool {
        self.injective && self.multiplicative && self.degree_preserving
    }
}

/// Carries a type-I labeling of `from` to `to`, given a node map between the two diagrams.
fn transport_mask(from: &ClosedDiagram, to: &ClosedDiagram, mask: u64, node: impl Fn(u32) -> u32) -> Result<u64> {
    if from.rank() != to.rank() {
        return Err(Error::Inconsistent("block ranks differ".into()));
    }
    let mut out = 0u64;
    for (j, &c) in from.type_one().iter().enumerate() {
        if mask >> j & 1 == 0 {
            continue;
        }
        let u = from.circles()[c as usize].min_node;
        let c2 = to.circle_of(node(u)) as u8;
        let j2 = to
            .type_one()
            .iter()
            .position(|&t| t == c2)
            .ok_or_else(|| Error::Inconsistent("type I circle maps to another type".into()))?;
        out |= 1 << j2;
    }
    Ok(out)
}

fn block_map(
    r1: &ArcRing,
    r2: &ArcRing,
    matching: impl Fn(&Matching) -> Matching,
    node: impl Fn(u32) -> u32 + Copy,
) -> Result<Vec<usize>> {
    let idx: Vec<usize> = r1
        .matchings()
        .iter()
        .map(|a| {
            r2.matching_index(&matching(a))
                .ok_or_else(|| Error::Inconsistent("matching has no image".into()))
        })
        .collect::<Result<_>>()?;
    let mut map = Vec::with_capacity(r1.dim());
    for e in r1.basis() {
        let (b, a) = (e.top as usize, e.bottom as usize);
        let (b2, a2) = (idx[b], idx[a]);
        let m2 = transport_mask(r1.diagram(b, a), r2.diagram(b2, a2), e.mask, node)?;
        map.push(r2.block(b2, a2).start + m2 as usize);
    }
    Ok(map)
}

/// Basis map `A_n^{k,l} -> A_n^{l,k}` induced by reflecting diagrams in a vertical axis.
pub fn reflection_map(r1: &ArcRing, r2: &ArcRing) -> Result<Vec<usize>> {
    if r2.triple() != r1.triple().reflected() {
        return Err(Error::Invalid(format!(
            "{} is not the reflection of {}",
            r2.triple(),
            r1.triple()
        )));
    }
    let np = r1.triple().points() as u32;
    block_map(r1, r2, Matching::reflect, move |u| np - 1 - u)
}

/// Basis map `A_n^{k,l} -> A_n^{k+1,l+1}` adding one outer platform arc.
pub fn stabilization_map(r1: &ArcRing, r2: &ArcRing) -> Result<Vec<usize>> {
    let t = r1.triple();
    if r2.triple()
        != (crate::planar::Triple {
            n: t.n,
            k: t.k + 1,
            l: t.l + 1,
        })
    {
        return Err(Error::Invalid(format!(
            "{} is not the stabilization of {t}",
            r2.triple()
        )));
    }
    block_map(r1, r2, |a| a.stabilize(1), |u| u + 1)
}

/// Compares `map(xy)` with `map(x) map(y)` on all composable basis pairs.
pub fn check_ring_map(r1: &ArcRing, r2: &ArcRing, map: &[usize]) -> RingMapReport {
    let mut seen = vec![false; r2.dim()];
    let mut injective = true;
    for &j in map {
        if seen[j] {
            injective = false;
        }
        seen[j] = true;
    }
    let surjective = injective && map.len() == r2.dim();
    let degree_preserving = (0..r1.dim()).all(|i| r1.degree(i) == r2.degree(map[i]));
    let mut multiplicative = true;
    let mut pairs = 0u64;
    for x in 0..r1.dim() {
        for y in r1.top_range(r1.basis()[x].bottom as usize) {
            pairs += 1;
            let mut lhs: Vec<(u32, i64)> = r1
                .product(x, y)
                .iter()
                .map(|&(k, c)| (map[k as usize] as u32, c))
                .collect();
            lhs.sort_unstable();
            let mut rhs = r2.product(map[x], map[y]).to_vec();
            rhs.sort_unstable();
            if lhs != rhs {
                multiplicative = false;
            }
        }
    }
    RingMapReport {
        source: r1.triple().to_string(),
        target: r2.triple().to_string(),
        injective,
        surjective,
        multiplicative,
        degree_preserving,
        checked_pairs: pairs,
    }
}
