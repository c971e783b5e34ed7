use std::collections::BTreeMap;

use rayon::prelude::*;

use super::diagram::TangleDiagram;
use crate::bimodules::{cobordism_map, BimoduleMap, Event, TangleBimodule};
use crate::error::{invalid, Error, Result};
use crate::planar::Triple;

pub const DEFAULT_CROSSING_BOUND: usize = 8;

/// One smoothing of the diagram, placed in cohomological degree `hdeg` with internal shift
/// `qshift` added to the bimodule grading.
pub struct CubeVertex {
    pub state: u32,
    pub hdeg: i32,
    pub qshift: i32,
    pub bimodule: TangleBimodule,
}

/// Signed saddle map between two smoothings differing at one crossing.
pub struct CubeEdge {
    pub from: usize,
    pub to: usize,
    pub crossing: usize,
    pub sign: i64,
    pub map: BimoduleMap,
}

/// Total complex of the cube of smoothings, shifted by `[x]{2x-y}`.
pub struct BimoduleComplex {
    pub diagram: TangleDiagram,
    pub left: Triple,
    pub right: Triple,
    /// Indexed by state.
    pub vertices: Vec<CubeVertex>,
    pub edges: Vec<CubeEdge>,
}

/// `cube_complex_ordered` with crossings ordered by slice position.
pub fn cube_complex(d: &TangleDiagram, left: Triple, right: Triple, bound: usize) -> Result<BimoduleComplex> {
    let order: Vec<usize> = (0..d.crossings()).collect();
    cube_complex_ordered(d, left, right, bound, &order)
}

/// Builds the complex; `order` lists crossings as they count for the sign rule, the edge
/// flipping crossing `j` carrying `(-1)^(number of 1-entries before j)`.
pub fn cube_complex_ordered(
    d: &TangleDiagram,
    left: Triple,
    right: Triple,
    bound: usize,
    order: &[usize],
) -> Result<BimoduleComplex> {
    let c = d.crossings();
    if c > bound {
        return Err(Error::TooLarge(format!("{c} crossings exceed the bound {bound}")));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..c).collect::<Vec<_>>() {
        return invalid(format!("{order:?} is not an ordering of {c} crossings"));
    }
    let rank: Vec<usize> = {
        let mut r = vec![0; c];
        for (i, &j) in order.iter().enumerate() {
            r[j] = i;
        }
        r
    };
    let (x, y) = (d.x() as i32, d.y() as i32);
    let vertices: Vec<CubeVertex> = (0..1u32 << c)
        .into_par_iter()
        .map(|state| {
            let r = state.count_ones() as i32;
            Ok(CubeVertex {
                state,
                hdeg: r - x,
                qshift: 2 * x - y - r,
                bimodule: TangleBimodule::build(&d.resolution(state), left, right)?,
            })
        })
        .collect::<Result<_>>()?;
    let pairs: Vec<(u32, usize)> = (0..1u32 << c)
        .flat_map(|s| (0..c).filter(move |&j| s >> j & 1 == 0).map(move |j| (s, j)))
        .collect();
    let edges = pairs
        .into_par_iter()
        .map(|(s, j)| {
            let t = s | 1 << j;
            let (at, pos) = d.crossing_site(s, j);
            let event = if d.crossing_kind(j).vertical(false) {
                Event::Pinch { at, pos }
            } else {
                Event::Unpinch { at }
            };
            let map = cobordism_map(&vertices[s as usize].bimodule, event, &vertices[t as usize].bimodule)?;
            let before = (0..c).filter(|&i| rank[i] < rank[j] && s >> i & 1 == 1).count();
            Ok(CubeEdge {
                from: s as usize,
                to: t as usize,
                crossing: j,
                sign: if before % 2 == 0 { 1 } else { -1 },
                map,
            })
        })
        .collect::<Result<_>>()?;
    Ok(BimoduleComplex {
        diagram: d.clone(),
        left,
        right,
        vertices,
        edges,
    })
}

impl BimoduleComplex {
    /// Total rank over all vertices.
    pub fn dim(&self) -> usize {
        self.vertices.iter().map(|v| v.bimodule.dim()).sum()
    }

    /// Lowest and highest cohomological degree.
    pub fn hdeg_range(&self) -> (i32, i32) {
        let lo = self.vertices.iter().map(|v| v.hdeg).min().unwrap();
        let hi = self.vertices.iter().map(|v| v.hdeg).max().unwrap();
        (lo, hi)
    }

    /// Every differential is homogeneous of degree zero after the internal shifts.
    pub fn degrees_ok(&self) -> bool {
        self.edges.iter().all(|e| {
            let (s, t) = (&self.vertices[e.from], &self.vertices[e.to]);
            s.qshift == e.map.degree + t.qshift
        })
    }

    /// Checks `d∘d = 0` on every basis element.
    pub fn d_squared_is_zero(&self) -> bool {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.from].push(i);
        }
        (0..self.vertices.len()).into_par_iter().all(|v| {
            for b in 0..self.vertices[v].bimodule.dim() {
                let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
                for &e1 in &out[v] {
                    let e1 = &self.edges[e1];
                    for &(w, a) in &e1.map.columns[b] {
                        for &e2 in &out[e1.to] {
                            let e2 = &self.edges[e2];
                            for &(u, c) in &e2.map.columns[w] {
                                *acc.entry((e2.to, u)).or_insert(0) += e1.sign * e2.sign * a * c;
                            }
                        }
                    }
                }
                if acc.values().any(|&x| x != 0) {
                    return false;
                }
            }
            true
        })
    }
}
