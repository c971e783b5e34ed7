use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::planar::{
    compatibility, enumerate_matchings, ClosedDiagram, Compatibility, FlatTangle, Frame, Layer, Matching, Triple,
};
use crate::rings::{ArcRing, RingElement};
use crate::tqft::{stack_program, Program};

/// Basis vector of the block `W(top) T bottom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BimoduleBasis {
    pub top: u32,
    pub bottom: u32,
    pub mask: u64,
}

/// Layers of `t`, padded with a straight layer so closures always have two rows.
pub(crate) fn effective_layers(t: &FlatTangle) -> Vec<Layer> {
    let mut layers = t.layers();
    if layers.is_empty() {
        layers.push(Layer::Straight);
    }
    layers
}

/// Closes `W(top) layers bottom` inside `frame`.
pub(crate) fn close_in(frame: Frame, top: &Matching, layers: &[Layer], bottom: &Matching) -> Result<ClosedDiagram> {
    let b = frame.embed(bottom);
    let c = frame.embed(top);
    ClosedDiagram::build(frame.left, frame.right, b.partners(), layers, c.partners())
}

/// Surgery from the disjoint union of a ring block and a bimodule block.
pub(crate) struct Action {
    pub ring: ClosedDiagram,
    pub program: Program,
}

type ActionCache = Mutex<HashMap<(u32, u32, u32), Option<Arc<Action>>>>;

/// `F(T)` as an `(A_m^{s,t}, A_n^{k,l})`-bimodule, `T` going from `n` bottom points to `m` top
/// points. Blocks `(c, b)` hold the quotient of `F(W(c) T b)`, shifted by `(n+K+L)/2` where
/// `(K, L)` are the platforms of the closure (`(k, l)` unless the bottom was stabilized).
pub struct TangleBimodule {
    tangle: FlatTangle,
    left: Triple,
    right: Triple,
    kind: Compatibility,
    frame: Frame,
    top_matchings: Vec<Matching>,
    bottom_matchings: Vec<Matching>,
    diagrams: Vec<ClosedDiagram>,
    block_start: Vec<usize>,
    basis: Vec<BimoduleBasis>,
    degrees: Vec<i32>,
    left_cache: ActionCache,
    right_cache: ActionCache,
}

impl TangleBimodule {
    /// `left` is the triple of the top endpoints, `right` that of the bottom endpoints.
    pub fn build(tangle: &FlatTangle, left: Triple, right: Triple) -> Result<TangleBimodule> {
        if tangle.bottom() != right.n || tangle.top() != left.n {
            return Err(Error::Incompatible(format!(
                "tangle {}->{} between triples {right} and {left}",
                tangle.bottom(),
                tangle.top()
            )));
        }
        let frame = Frame::covering(&[right, left])?;
        let top_matchings = enumerate_matchings(left)?;
        let bottom_matchings = enumerate_matchings(right)?;
        let layers = effective_layers(tangle);
        let nb = bottom_matchings.len();
        let mut diagrams = Vec::with_capacity(top_matchings.len() * nb);
        for c in &top_matchings {
            for b in &bottom_matchings {
                diagrams.push(close_in(frame, c, &layers, b)?);
            }
        }
        // the bottom triple is read in the closure frame: (n + K + L)/2
        let shift = right.shift() + frame.excess(right) as i32;
        let mut block_start = Vec::with_capacity(diagrams.len() + 1);
        let mut basis = Vec::new();
        let mut degrees = Vec::new();
        for (i, d) in diagrams.iter().enumerate() {
            block_start.push(basis.len());
            for mask in 0..d.rank() as u64 {
                basis.push(BimoduleBasis {
                    top: (i / nb) as u32,
                    bottom: (i % nb) as u32,
                    mask,
                });
                degrees.push(d.basis_degree(mask) + shift);
            }
        }
        block_start.push(basis.len());
        Ok(TangleBimodule {
            tangle: tangle.clone(),
            left,
            right,
            kind: compatibility(right, left),
            frame,
            top_matchings,
            bottom_matchings,
            diagrams,
            block_start,
            basis,
            degrees,
            left_cache: Mutex::new(HashMap::new()),
            right_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn tangle(&self) -> &FlatTangle {
        &self.tangle
    }

    pub fn left_triple(&self) -> Triple {
        self.left
    }

    pub fn right_triple(&self) -> Triple {
        self.right
    }

    pub fn compatibility(&self) -> Compatibility {
        self.kind
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn top_matchings(&self) -> &[Matching] {
        &self.top_matchings
    }

    pub fn bottom_matchings(&self) -> &[Matching] {
        &self.bottom_matchings
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BimoduleBasis] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn diagram(&self, top: usize, bottom: usize) -> &ClosedDiagram {
        &self.diagrams[top * self.bottom_matchings.len() + bottom]
    }

    pub fn block(&self, top: usize, bottom: usize) -> Range<usize> {
        let i = top * self.bottom_matchings.len() + bottom;
        self.block_start[i]..self.block_start[i + 1]
    }

    pub fn block_graded_rank(&self, top: usize, bottom: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for i in self.block(top, bottom) {
            p.add_term(self.degrees[i], &1.into());
        }
        p
    }

    pub fn graded_rank(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &d in &self.degrees {
            p.add_term(d, &1.into());
        }
        p
    }

    fn left_action(&self, a: usize, c: usize, b: usize) -> Result<Option<Arc<Action>>> {
        let key = (a as u32, c as u32, b as u32);
        if let Some(hit) = self.left_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let act = if self.block(c, b).is_empty() || self.block(a, b).is_empty() {
            None
        } else {
            let (ta, tc) = (&self.top_matchings[a], &self.top_matchings[c]);
            let ring = close_in(self.frame, ta, &[], tc)?;
            if ring.rank() == 0 {
                None
            } else {
                let middle = self.frame.embed(tc).all_arcs();
                let program = stack_program(&ring, self.diagram(c, b), &middle, self.diagram(a, b), |u| (1, u))?;
                Some(Arc::new(Action { ring, program }))
            }
        };
        self.left_cache.lock().unwrap().insert(key, act.clone());
        Ok(act)
    }

    fn right_action(&self, c: usize, b: usize, a: usize) -> Result<Option<Arc<Action>>> {
        let key = (c as u32, b as u32, a as u32);
        if let Some(hit) = self.right_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let act = if self.block(c, b).is_empty() || self.block(c, a).is_empty() {
            None
        } else {
            let (tb, ta) = (&self.bottom_matchings[b], &self.bottom_matchings[a]);
            let ring = close_in(self.frame, tb, &[], ta)?;
            if ring.rank() == 0 {
                None
            } else {
                let middle = self.frame.embed(tb).all_arcs();
                let program = stack_program(self.diagram(c, b), &ring, &middle, self.diagram(c, a), |u| (0, u))?;
                Some(Arc::new(Action { ring, program }))
            }
        };
        self.right_cache.lock().unwrap().insert(key, act.clone());
        Ok(act)
    }

    /// `x · v` for a basis element `x` of the left ring and `v` of the bimodule.
    pub fn left_act(&self, ring: &ArcRing, x: usize, v: usize) -> Result<Vec<(usize, i64)>> {
        if ring.triple() != self.left {
            return Err(Error::Incompatible(format!(
                "left ring {} acting on {}",
                ring.triple(),
                self.left
            )));
        }
        let e = ring.basis()[x];
        let f = self.basis[v];
        if e.bottom != f.top {
            return Ok(Vec::new());
        }
        let (a, c, b) = (e.top as usize, e.bottom as usize, f.bottom as usize);
        let Some(act) = self.left_action(a, c, b)? else {
            return Ok(Vec::new());
        };
        let lower = self.diagram(c, b);
        let input = act.ring.expand(e.mask) | lower.expand(f.mask) << act.ring.ncircles();
        Ok(self.collect(a, b, act.program.apply_mask(input)))
    }

    /// `v · y` for a basis element `v` of the bimodule and `y` of the right ring.
    pub fn right_act(&self, v: usize, ring: &ArcRing, y: usize) -> Result<Vec<(usize, i64)>> {
        if ring.triple() != self.right {
            return Err(Error::Incompatible(format!(
                "right ring {} acting on {}",
                ring.triple(),
                self.right
            )));
        }
        let f = self.basis[v];
        let e = ring.basis()[y];
        if f.bottom != e.top {
            return Ok(Vec::new());
        }
        let (c, b, a) = (f.top as usize, f.bottom as usize, e.bottom as usize);
        let Some(act) = self.right_action(c, b, a)? else {
            return Ok(Vec::new());
        };
        let upper = self.diagram(c, b);
        let input = upper.expand(f.mask) | act.ring.expand(e.mask) << upper.ncircles();
        Ok(self.collect(c, a, act.program.apply_mask(input)))
    }

    fn collect(&self, top: usize, bottom: usize, terms: Vec<(u64, i64)>) -> Vec<(usize, i64)> {
        let target = self.diagram(top, bottom);
        let base = self.block(top, bottom).start;
        let mut out: Vec<(usize, i64)> = terms
            .into_iter()
            .filter_map(|(m, k)| target.reduce(m).map(|r| (base + r as usize, k)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Linear extension of [`left_act`](Self::left_act).
    pub fn left_mul(&self, ring: &ArcRing, x: &RingElement, v: &RingElement) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in v.terms() {
                for (k, c) in self.left_act(ring, i, j)? {
                    out.add_term(k, a * b * c);
                }
            }
        }
        Ok(out)
    }

    /// Linear extension of [`right_act`](Self::right_act).
    pub fn right_mul(&self, v: &RingElement, ring: &ArcRing, y: &RingElement) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (i, a) in v.terms() {
            for (j, b) in y.terms() {
                for (k, c) in self.right_act(i, ring, j)? {
                    out.add_term(k, a * b * c);
                }
            }
        }
        Ok(out)
    }
}
