use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use super::element::RingElement;
use crate::algebra::LaurentPoly;
use crate::error::Result;
use crate::planar::{enumerate_matchings, glue_and_close, ClosedDiagram, Matching, Triple};
use crate::tqft::{checked_add, checked_mul, stack_program, Program};

/// Basis vector of the block `W(top) bottom`: a labeling of its type I circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisElement {
    pub top: u32,
    pub bottom: u32,
    pub mask: u64,
}

/// The ring `A_n^{k,l}` (`H^{n/2}` when `k = l = 0`) with its full multiplication table.
///
/// Blocks are indexed by `(top, bottom)` matching indices; `x` in block `(c, b)` times `y` in
/// block `(b, a)` lands in block `(c, a)`.
pub struct ArcRing {
    triple: Triple,
    matchings: Vec<Matching>,
    diagrams: Vec<ClosedDiagram>,
    block_start: Vec<usize>,
    basis: Vec<BasisElement>,
    degrees: Vec<i32>,
    top_start: Vec<usize>,
    pair_start: Vec<usize>,
    term_start: Vec<u32>,
    terms: Vec<(u32, i64)>,
}

impl ArcRing {
    pub fn build(triple: Triple) -> Result<ArcRing> {
        let matchings = enumerate_matchings(triple)?;
        let m = matchings.len();
        let diagrams: Vec<ClosedDiagram> = (0..m * m)
            .into_par_iter()
            .map(|i| glue_and_close(&matchings[i / m], None, &matchings[i % m]))
            .collect::<Result<_>>()?;
        let mut block_start = Vec::with_capacity(m * m + 1);
        let mut basis = Vec::new();
        let mut degrees = Vec::new();
        let shift = triple.shift();
        for (i, d) in diagrams.iter().enumerate() {
            block_start.push(basis.len());
            for mask in 0..d.rank() as u64 {
                basis.push(BasisElement {
                    top: (i / m) as u32,
                    bottom: (i % m) as u32,
                    mask,
                });
                degrees.push(d.basis_degree(mask) + shift);
            }
        }
        block_start.push(basis.len());
        let top_start: Vec<usize> = (0..=m).map(|b| block_start[b * m]).collect();
        let mut ring = ArcRing {
            triple,
            matchings,
            diagrams,
            block_start,
            basis,
            degrees,
            top_start,
            pair_start: Vec::new(),
            term_start: Vec::new(),
            terms: Vec::new(),
        };
        ring.fill_products()?;
        Ok(ring)
    }

    fn fill_products(&mut self) -> Result<()> {
        let m = self.matchings.len();
        let mut pair_start = Vec::with_capacity(self.basis.len() + 1);
        let mut acc = 0usize;
        for x in &self.basis {
            pair_start.push(acc);
            acc += self.top_range(x.bottom as usize).len();
        }
        pair_start.push(acc);
        let chunks: Vec<(Vec<u32>, Vec<(u32, i64)>)> = (0..m)
            .into_par_iter()
            .map(|c| self.products_from(c))
            .collect::<Result<_>>()?;
        let mut term_start = Vec::with_capacity(acc + 1);
        let mut terms = Vec::new();
        for (lens, t) in chunks {
            let base = terms.len();
            let mut off = base;
            for len in lens {
                term_start.push(off as u32);
                off += len as usize;
            }
            terms.extend(t);
        }
        assert!(terms.len() < u32::MAX as usize, "product table too large");
        term_start.push(terms.len() as u32);
        assert_eq!(term_start.len(), acc + 1);
        self.pair_start = pair_start;
        self.term_start = term_start;
        self.terms = terms;
        Ok(())
    }

    /// Products of every basis element with top `c` against everything composable.
    fn products_from(&self, c: usize) -> Result<(Vec<u32>, Vec<(u32, i64)>)> {
        let m = self.matchings.len();
        let mut lens = Vec::new();
        let mut terms = Vec::new();
        for b in 0..m {
            let xs = self.block(c, b);
            if xs.is_empty() {
                continue;
            }
            let programs: Vec<Option<Program>> = (0..m)
                .map(|a| self.product_program(c, b, a, None))
                .collect::<Result<_>>()?;
            let upper = self.diagram(c, b);
            for x in xs {
                let xm = upper.expand(self.basis[x].mask);
                for (a, prog) in programs.iter().enumerate() {
                    let ys = self.block(b, a);
                    let Some(prog) = prog else {
                        lens.extend(std::iter::repeat_n(0u32, ys.len()));
                        continue;
                    };
                    let lower = self.diagram(b, a);
                    let target = self.diagram(c, a);
                    let base = self.block_start[c * m + a];
                    for y in ys {
                        let input = xm | lower.expand(self.basis[y].mask) << upper.ncircles();
                        let before = terms.len();
                        for (o, k) in prog.apply_mask(input) {
                            if let Some(mask) = target.reduce(o) {
                                terms.push(((base + mask as usize) as u32, k));
                            }
                        }
                        lens.push((terms.len() - before) as u32);
                    }
                }
            }
        }
        Ok((lens, terms))
    }

    /// Surgery program for `W(c) b W(b) a -> W(c) a`; `None` when a block involved is zero.
    /// `order` permutes the contracted arcs of `b` (default: by left endpoint).
    pub fn product_program(&self, c: usize, b: usize, a: usize, order: Option<&[usize]>) -> Result<Option<Program>> {
        let (upper, lower, target) = (self.diagram(c, b), self.diagram(b, a), self.diagram(c, a));
        if upper.rank() == 0 || lower.rank() == 0 || target.rank() == 0 {
            return Ok(None);
        }
        let arcs = self.matchings[b].all_arcs();
        let middle: Vec<(usize, usize)> = match order {
            Some(o) => o.iter().map(|&i| arcs[i]).collect(),
            None => arcs,
        };
        stack_program(upper, lower, &middle, target, |u| (1, u)).map(Some)
    }

    pub fn triple(&self) -> Triple {
        self.triple
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn matching_index(&self, a: &Matching) -> Option<usize> {
        self.matchings.binary_search(a).ok()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// `W(top) bottom`
    pub fn diagram(&self, top: usize, bottom: usize) -> &ClosedDiagram {
        &self.diagrams[top * self.matchings.len() + bottom]
    }

    /// Basis indices of block `(top, bottom)`; the offset of a labeling `mask` is `mask`.
    pub fn block(&self, top: usize, bottom: usize) -> Range<usize> {
        let i = top * self.matchings.len() + bottom;
        self.block_start[i]..self.block_start[i + 1]
    }

    /// Basis indices with the given top matching.
    pub fn top_range(&self, top: usize) -> Range<usize> {
        self.top_start[top]..self.top_start[top + 1]
    }

    /// Product of basis elements `x * y`, reduced; empty when not composable.
    pub fn product(&self, x: usize, y: usize) -> &[(u32, i64)] {
        let mid = self.basis[x].bottom as usize;
        let r = self.top_range(mid);
        if !r.contains(&y) {
            return &[];
        }
        let p = self.pair_start[x] + (y - r.start);
        &self.terms[self.term_start[p] as usize..self.term_start[p + 1] as usize]
    }

    pub fn multiply(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (i, a) in x.terms() {
            let r = self.top_range(self.basis[i].bottom as usize);
            for (j, b) in y.terms() {
                if !r.contains(&j) {
                    continue;
                }
                let ab = checked_mul(a, b);
                for &(k, c) in self.product(i, j) {
                    out.add_term(k as usize, checked_mul(ab, c));
                }
            }
        }
        out
    }

    /// `1_a`: all circles of `W(a) a` labeled `ONE`.
    pub fn idempotent(&self, a: usize) -> usize {
        self.block(a, a).start
    }

    pub fn unit(&self) -> RingElement {
        RingElement::from_terms((0..self.matchings.len()).map(|a| (self.idempotent(a), 1)))
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

    /// Basis of `P(a) = ⊕_b _b A_a`.
    pub fn projective(&self, a: usize) -> Vec<usize> {
        (0..self.matchings.len()).flat_map(|b| self.block(b, a)).collect()
    }

    /// Graded rank of `P(a)` block by block (indexed by `b`).
    pub fn projective_ranks(&self, a: usize) -> Vec<LaurentPoly> {
        (0..self.matchings.len())
            .map(|b| self.block_graded_rank(b, a))
            .collect()
    }

    /// Number of stored composable pairs.
    pub fn pair_count(&self) -> usize {
        self.pair_start.last().copied().unwrap_or(0)
    }

    /// Unreduced product in the ring before the platform quotient: labelings on all circles.
    pub fn tilde_product(&self, c: usize, b: usize, a: usize, x_full: u64, y_full: u64) -> Result<Vec<(u64, i64)>> {
        let (upper, lower, target) = (self.diagram(c, b), self.diagram(b, a), self.diagram(c, a));
        let arcs = self.matchings[b].all_arcs();
        let prog = stack_program(upper, lower, &arcs, target, |u| (1, u))?;
        Ok(prog.apply_mask(x_full | y_full << upper.ncircles()))
    }

    pub(crate) fn add_product_into(&self, x: usize, y: usize, coeff: i64, acc: &mut [i64], base: usize) {
        for &(k, c) in self.product(x, y) {
            let slot = &mut acc[k as usize - base];
            *slot = checked_add(*slot, checked_mul(coeff, c));
        }
    }
}
