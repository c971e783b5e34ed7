use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::cube::BimoduleComplex;
use crate::algebra::{invariant_factors, AbelianGroupSummary, IntegerMatrix};
use crate::error::{Error, Result};

/// One nonzero homology group of a `(top, bottom)` block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HomologyEntry {
    pub block: (usize, usize),
    pub hdeg: i32,
    pub qdeg: i32,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyEntry {
    pub fn group(&self) -> AbelianGroupSummary {
        AbelianGroupSummary {
            free_rank: self.rank,
            torsion: self.torsion.clone(),
        }
    }
}

/// Blockwise bigraded homology, nonzero entries only, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Homology {
    pub entries: Vec<HomologyEntry>,
}

impl Homology {
    /// Total free rank.
    pub fn total_rank(&self) -> usize {
        self.entries.iter().map(|e| e.rank).sum()
    }

    /// Euler characteristic `Σ (-1)^h rank q^qdeg` of one block, as (qdeg, coefficient).
    pub fn euler_characteristic(&self, block: (usize, usize)) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for e in self.entries.iter().filter(|e| e.block == block) {
            let sign = if e.hdeg.rem_euclid(2) == 0 { 1 } else { -1 };
            *out.entry(e.qdeg).or_insert(0) += sign * e.rank as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

type Strand = BTreeMap<i32, Vec<(usize, usize)>>;

/// Homology of every `(block, qdeg)` strand by Smith normal form.
pub fn homology(c: &BimoduleComplex) -> Result<Homology> {
    if !c.d_squared_is_zero() {
        return Err(Error::Inconsistent("differential does not square to zero".into()));
    }
    let m0 = &c.vertices[0].bimodule;
    let blocks: Vec<(usize, usize)> = (0..m0.top_matchings().len())
        .flat_map(|t| (0..m0.bottom_matchings().len()).map(move |b| (t, b)))
        .collect();
    let mut out: Vec<Vec<HomologyEntry>> = blocks.par_iter().map(|&(t, b)| block_homology(c, t, b)).collect();
    let mut entries: Vec<HomologyEntry> = out.drain(..).flatten().collect();
    entries.sort();
    Ok(Homology { entries })
}

fn block_homology(c: &BimoduleComplex, top: usize, bottom: usize) -> Vec<HomologyEntry> {
    // generators grouped by internal degree, then cohomological degree
    let mut strands: BTreeMap<i32, Strand> = BTreeMap::new();
    for (vi, v) in c.vertices.iter().enumerate() {
        for i in v.bimodule.block(top, bottom) {
            let q = v.bimodule.degree(i) + v.qshift;
            strands.entry(q).or_default().entry(v.hdeg).or_default().push((vi, i));
        }
    }
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); c.vertices.len()];
    for (i, e) in c.edges.iter().enumerate() {
        out_edges[e.from].push(i);
    }
    let mut entries = Vec::new();
    for (q, strand) in strands {
        let index: HashMap<(usize, usize), usize> = strand
            .values()
            .flat_map(|g| g.iter().enumerate().map(|(k, &x)| (x, k)))
            .collect();
        // invariant factors of d: C^h -> C^{h+1}
        let mut factors: BTreeMap<i32, Vec<BigInt>> = BTreeMap::new();
        for (&h, gens) in &strand {
            let Some(next) = strand.get(&(h + 1)) else {
                continue;
            };
            let mut m = IntegerMatrix::zeros(next.len(), gens.len());
            for (col, &(v, i)) in gens.iter().enumerate() {
                for &ei in &out_edges[v] {
                    let e = &c.edges[ei];
                    for &(j, x) in &e.map.columns[i] {
                        let row = index[&(e.to, j)];
                        m.add_at(row, col, &BigInt::from(e.sign * x));
                    }
                }
            }
            factors.insert(h, invariant_factors(&m));
        }
        for (&h, gens) in &strand {
            let out_rank = factors.get(&h).map_or(0, Vec::len);
            let incoming = factors.get(&(h - 1)).map_or(&[][..], Vec::as_slice);
            let rank = gens.len() - out_rank - incoming.len();
            let torsion: Vec<u64> = incoming
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_u64().expect("torsion fits in u64"))
                .collect();
            if rank > 0 || !torsion.is_empty() {
                entries.push(HomologyEntry {
                    block: (top, bottom),
                    hdeg: h,
                    qdeg: q,
                    rank,
                    torsion,
                });
            }
        }
    }
    entries
}
