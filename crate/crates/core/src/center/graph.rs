use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::planar::{enumerate_matchings, Matching, Side, Triple};

/// Graph on the arcs of a one-platform matching: hollow vertices for type I arcs, solid ones
/// for arcs ending on the platform, edges between arcs that can be merged vertically.
#[derive(Clone, Debug, Serialize)]
pub struct ArcGraph {
    pub arcs: Vec<(usize, usize)>,
    pub solid: Vec<bool>,
    pub edges: Vec<(usize, usize)>,
    /// Component of every vertex after contracting solid-solid edges, numbered from 0.
    pub component: Vec<usize>,
    /// Minimal vertex of every component without solid vertices.
    pub marked: Vec<usize>,
}

impl ArcGraph {
    pub fn cells(&self) -> u64 {
        1 << self.marked.len()
    }
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while parent[r] != r {
        r = parent[r];
    }
    let mut v = v;
    while parent[v] != r {
        let next = parent[v];
        parent[v] = r;
        v = next;
    }
    r
}

/// Vertical merging turns a nested pair of arcs into a side-by-side pair.
fn vertical_merge(a: &Matching, outer: (usize, usize), inner: (usize, usize)) -> Option<Matching> {
    let (p, s) = outer;
    let (q, r) = inner;
    let mut partner = a.partners().to_vec();
    partner[p] = q as u8;
    partner[q] = p as u8;
    partner[r] = s as u8;
    partner[s] = r as u8;
    Matching::from_partner(a.triple(), partner).ok()
}

pub fn arc_graph(a: &Matching) -> Result<ArcGraph> {
    let t = a.triple();
    if t.k != 0 {
        return invalid(format!("arc graphs are defined for one platform, got {t}"));
    }
    let arcs = a.all_arcs();
    let solid: Vec<bool> = arcs
        .iter()
        .map(|&(p, q)| t.side(p) != Side::Free || t.side(q) != Side::Free)
        .collect();
    let mut edges = Vec::new();
    for (i, &x) in arcs.iter().enumerate() {
        for (j, &y) in arcs.iter().enumerate() {
            if x.0 < y.0 && y.1 < x.1 && vertical_merge(a, x, y).is_some() {
                edges.push((i.min(j), i.max(j)));
            }
        }
    }
    edges.sort_unstable();
    let nv = arcs.len();
    let mut parent: Vec<usize> = (0..nv).collect();
    // contracting solid-solid edges does not change connectivity, so one pass covers both
    for &(i, j) in &edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let roots: Vec<usize> = (0..nv).map(|v| find(&mut parent, v)).collect();
    let mut ids: Vec<usize> = roots.clone();
    ids.sort_unstable();
    ids.dedup();
    let component: Vec<usize> = roots.iter().map(|r| ids.binary_search(r).unwrap()).collect();
    let mut has_solid = vec![false; ids.len()];
    for v in 0..nv {
        has_solid[component[v]] |= solid[v];
    }
    let mut marked = Vec::new();
    for c in 0..ids.len() {
        if !has_solid[c] {
            marked.push((0..nv).find(|&v| component[v] == c).unwrap());
        }
    }
    Ok(ArcGraph {
        arcs,
        solid,
        edges,
        component,
        marked,
    })
}

/// Number of cells in the partition of the union of the `S_a`, `a ∈ B_n^{0,m}`.
pub fn cell_count(n: usize, m: usize) -> Result<BigInt> {
    let t = Triple::new(n, 0, m)?;
    if !t.is_coherent() {
        return invalid(format!("{t} is not coherent"));
    }
    let mut total = BigInt::from(0);
    for a in enumerate_matchings(t)? {
        total += arc_graph(&a)?.cells();
    }
    Ok(total)
}
