use serde::Serialize;

use super::matching::{Matching, Side, Triple};
use super::tangle::FlatTangle;
use crate::error::{invalid, Error, Result};

/// One horizontal layer of a diagram, acting on free positions (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layer {
    Straight,
    Cap(usize),
    Cup(usize),
    /// A cap and a cup at the same position in one layer.
    Turn(usize),
}

impl Layer {
    pub fn width_after(&self, w: usize) -> Result<usize> {
        match *self {
            Layer::Straight => Ok(w),
            Layer::Cap(i) if i + 1 < w => Ok(w - 2),
            Layer::Cup(i) if i <= w => Ok(w + 2),
            Layer::Turn(i) if i + 1 < w => Ok(w),
            _ => invalid(format!("{self:?} out of range on {w} points")),
        }
    }
}

/// Rows of nodes joined by layers; every row carries both platforms.
#[derive(Clone, Debug)]
pub struct Grid {
    pub left: usize,
    pub right: usize,
    pub widths: Vec<usize>,
    pub row_start: Vec<usize>,
    pub adj: Vec<[u32; 2]>,
    deg: Vec<u8>,
}

impl Grid {
    pub fn build(left: usize, right: usize, bottom: usize, layers: &[Layer]) -> Result<Grid> {
        let mut widths = vec![bottom];
        for l in layers {
            let w = l.width_after(*widths.last().unwrap())?;
            widths.push(w);
        }
        let mut row_start = Vec::with_capacity(widths.len() + 1);
        let mut acc = 0;
        for w in &widths {
            row_start.push(acc);
            acc += left + w + right;
        }
        row_start.push(acc);
        if acc >= u32::MAX as usize {
            return invalid("diagram too large");
        }
        let mut g = Grid {
            left,
            right,
            widths,
            row_start,
            adj: vec![[0; 2]; acc],
            deg: vec![0; acc],
        };
        for (h, layer) in layers.iter().enumerate() {
            g.add_layer(h, *layer);
        }
        Ok(g)
    }

    pub fn rows(&self) -> usize {
        self.widths.len()
    }

    pub fn top_row(&self) -> usize {
        self.widths.len() - 1
    }

    pub fn row_len(&self, r: usize) -> usize {
        self.left + self.widths[r] + self.right
    }

    pub fn node(&self, r: usize, p: usize) -> u32 {
        debug_assert!(p < self.row_len(r));
        (self.row_start[r] + p) as u32
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    /// Row and position of a node.
    pub fn coords(&self, u: u32) -> (usize, usize) {
        let u = u as usize;
        let r = self.row_start.partition_point(|&s| s <= u) - 1;
        (r, u - self.row_start[r])
    }

    pub fn side(&self, u: u32) -> Side {
        let (r, p) = self.coords(u);
        if p < self.left {
            Side::Left
        } else if p < self.left + self.widths[r] {
            Side::Free
        } else {
            Side::Right
        }
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        let (ui, vi) = (u as usize, v as usize);
        assert!(self.deg[ui] < 2 && self.deg[vi] < 2, "node degree exceeds two");
        self.adj[ui][self.deg[ui] as usize] = v;
        self.deg[ui] += 1;
        self.adj[vi][self.deg[vi] as usize] = u;
        self.deg[vi] += 1;
    }

    fn add_layer(&mut self, h: usize, layer: Layer) {
        let k = self.left;
        let wl = self.row_len(h);
        let straight = |g: &mut Grid, p: usize, q: usize| {
            let (a, b) = (g.node(h, p), g.node(h + 1, q));
            g.add_edge(a, b);
        };
        match layer {
            Layer::Straight => (0..wl).for_each(|p| straight(self, p, p)),
            Layer::Turn(i) => {
                let pp = k + i;
                for p in (0..wl).filter(|&p| p != pp && p != pp + 1) {
                    straight(self, p, p);
                }
                let (a, b) = (self.node(h, pp), self.node(h, pp + 1));
                self.add_edge(a, b);
                let (a, b) = (self.node(h + 1, pp), self.node(h + 1, pp + 1));
                self.add_edge(a, b);
            }
            Layer::Cap(i) => {
                let pp = k + i;
                for p in 0..wl {
                    if p < pp {
                        straight(self, p, p);
                    } else if p > pp + 1 {
                        straight(self, p, p - 2);
                    }
                }
                let (a, b) = (self.node(h, pp), self.node(h, pp + 1));
                self.add_edge(a, b);
            }
            Layer::Cup(i) => {
                let pp = k + i;
                for p in 0..wl {
                    straight(self, p, if p < pp { p } else { p + 2 });
                }
                let (a, b) = (self.node(h + 1, pp), self.node(h + 1, pp + 1));
                self.add_edge(a, b);
            }
        }
    }

    fn collect_cycle(&self, u: u32, seen: &mut [bool], members: &mut Vec<u32>) {
        let mut prev = u32::MAX;
        let mut cur = u;
        loop {
            seen[cur as usize] = true;
            members.push(cur);
            let nbrs = &self.adj[cur as usize];
            let next = if prev == u32::MAX || nbrs[0] != prev {
                nbrs[0]
            } else {
                nbrs[1]
            };
            if next == u {
                return;
            }
            prev = cur;
            cur = next;
        }
    }

    /// Adds arcs given by a partner array over the positions of row `r`.
    pub fn add_row_arcs(&mut self, r: usize, partner: &[u8]) {
        debug_assert_eq!(partner.len(), self.row_len(r));
        for (p, &q) in partner.iter().enumerate() {
            if p < q as usize {
                let (a, b) = (self.node(r, p), self.node(r, q as usize));
                self.add_edge(a, b);
            }
        }
    }

    /// Follows open paths between boundary nodes of degree one. Returns the pairing on
    /// bottom-row then top-row positions and the number of closed cycles.
    ///
    /// Needs at least one layer so that bottom and top rows are distinct.
    pub fn trace_open(&self) -> (Vec<usize>, usize) {
        assert!(self.rows() >= 2, "open trace needs distinct bottom and top rows");
        let top = self.top_row();
        let nb = self.row_len(0);
        let nt = self.row_len(top);
        let boundary: Vec<u32> = (0..nb)
            .map(|p| self.node(0, p))
            .chain((0..nt).map(|p| self.node(top, p)))
            .collect();
        let mut index = vec![usize::MAX; self.nodes()];
        for (i, &u) in boundary.iter().enumerate() {
            if self.deg[u as usize] < 2 {
                index[u as usize] = i;
            }
        }
        let mut seen = vec![false; self.nodes()];
        let mut pairing = vec![usize::MAX; boundary.len()];
        for (i, &u) in boundary.iter().enumerate() {
            if self.deg[u as usize] >= 2 || seen[u as usize] {
                continue;
            }
            let end = self.walk(u, &mut seen);
            let j = index[end as usize];
            pairing[i] = j;
            pairing[j] = i;
        }
        let mut cycles = 0;
        for u in 0..self.nodes() as u32 {
            if !seen[u as usize] {
                self.walk(u, &mut seen);
                cycles += 1;
            }
        }
        (pairing, cycles)
    }

    /// Walks from `u` until returning to it or reaching a degree-one node. Visits are
    /// recorded in `seen`; returns the last node.
    pub fn walk(&self, u: u32, seen: &mut [bool]) -> u32 {
        let mut prev = u32::MAX;
        let mut cur = u;
        loop {
            seen[cur as usize] = true;
            let d = self.deg[cur as usize] as usize;
            let nbrs = &self.adj[cur as usize];
            let next = if prev == u32::MAX {
                if d == 0 {
                    return cur;
                }
                nbrs[0]
            } else {
                if d < 2 {
                    return cur;
                }
                // leave through the slot we did not arrive by
                if nbrs[0] == prev {
                    nbrs[1]
                } else {
                    nbrs[0]
                }
            };
            if next == u {
                return cur;
            }
            prev = cur;
            cur = next;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CircleType {
    I,
    II,
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Circle {
    pub min_node: u32,
    pub left_marks: u32,
    pub right_marks: u32,
    pub kind: CircleType,
}

impl Circle {
    fn classify(left: u32, right: u32) -> CircleType {
        if left == 0 && right == 0 {
            CircleType::I
        } else if left <= 1 && right <= 1 {
            CircleType::II
        } else {
            CircleType::III
        }
    }
}

/// Closed 1-manifold made of rows, layers and arcs at the bottom and top rows, with circles
/// traced and classified. Circles are indexed by their smallest node.
#[derive(Clone, Debug)]
pub struct ClosedDiagram {
    grid: Grid,
    circle_of: Vec<u8>,
    circles: Vec<Circle>,
    type_one: Vec<u8>,
    type_three: bool,
}

impl ClosedDiagram {
    /// `top` is placed reflected on the top row; both partner arrays cover full rows.
    pub fn build(left: usize, right: usize, bottom: &[u8], layers: &[Layer], top: &[u8]) -> Result<Self> {
        let nb = bottom.len();
        if nb < left + right {
            return invalid("bottom row shorter than the platforms");
        }
        let mut grid = Grid::build(left, right, nb - left - right, layers)?;
        let tr = grid.top_row();
        if top.len() != grid.row_len(tr) {
            return Err(Error::Incompatible(format!(
                "top matching has {} points, diagram ends on {}",
                top.len(),
                grid.row_len(tr)
            )));
        }
        grid.add_row_arcs(0, bottom);
        grid.add_row_arcs(tr, top);
        Ok(Self::from_grid(grid))
    }

    fn from_grid(grid: Grid) -> Self {
        let n = grid.nodes();
        let mut circle_of = vec![u8::MAX; n];
        let mut circles = Vec::new();
        let mut seen = vec![false; n];
        for u in 0..n as u32 {
            if seen[u as usize] {
                continue;
            }
            let id = circles.len();
            assert!(id < u8::MAX as usize, "too many circles");
            let mut members = Vec::new();
            grid.collect_cycle(u, &mut seen, &mut members);
            let (mut lm, mut rm) = (0u32, 0u32);
            for &v in &members {
                circle_of[v as usize] = id as u8;
                if (v as usize) < grid.row_len(0) {
                    match grid.side(v) {
                        Side::Left => lm += 1,
                        Side::Right => rm += 1,
                        Side::Free => {}
                    }
                }
            }
            circles.push(Circle {
                min_node: u,
                left_marks: lm,
                right_marks: rm,
                kind: Circle::classify(lm, rm),
            });
        }
        let type_one = circles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind == CircleType::I)
            .map(|(i, _)| i as u8)
            .collect();
        let type_three = circles.iter().any(|c| c.kind == CircleType::III);
        ClosedDiagram {
            grid,
            circle_of,
            circles,
            type_one,
            type_three,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn ncircles(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of(&self, u: u32) -> usize {
        self.circle_of[u as usize] as usize
    }

    /// Indices of type I circles, ascending.
    pub fn type_one(&self) -> &[u8] {
        &self.type_one
    }

    pub fn has_type_three(&self) -> bool {
        self.type_three
    }

    /// Rank of the quotient space: 0 with a type III circle, else 2^(#type I).
    pub fn rank(&self) -> usize {
        if self.type_three {
            0
        } else {
            1 << self.type_one.len()
        }
    }

    /// Expands a labeling of the type I circles (bit j = X on the j-th one) to all circles.
    pub fn expand(&self, mask: u64) -> u64 {
        let mut full = 0u64;
        for (j, &c) in self.type_one.iter().enumerate() {
            if mask >> j & 1 == 1 {
                full |= 1 << c;
            }
        }
        full
    }

    /// Inverse of [`expand`](Self::expand); `None` when the labeling lies in the quotient ideal.
    pub fn reduce(&self, full: u64) -> Option<u64> {
        if self.type_three {
            return None;
        }
        let mut mask = 0u64;
        let mut rest = full;
        for (j, &c) in self.type_one.iter().enumerate() {
            if full >> c & 1 == 1 {
                mask |= 1 << j;
                rest &= !(1 << c);
            }
        }
        if rest != 0 {
            None
        } else {
            Some(mask)
        }
    }

    /// `#X - #ONE` over all circles for a full labeling.
    pub fn raw_degree(&self, full: u64) -> i32 {
        2 * full.count_ones() as i32 - self.circles.len() as i32
    }

    /// Raw degree of a type-I labeling, with forced ONE on the other circles.
    pub fn basis_degree(&self, mask: u64) -> i32 {
        2 * mask.count_ones() as i32 - self.circles.len() as i32
    }

    pub fn summary(&self) -> Vec<Circle> {
        self.circles.clone()
    }
}

/// Relationship between the platform data at the two ends of a tangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Compatibility {
    F,
    T,
    Incompatible,
}

/// Compatibility of a bottom triple `(n,k,l)` with a top triple `(m,s,t)`.
pub fn compatibility(bottom: Triple, top: Triple) -> Compatibility {
    let (n, k, l) = (bottom.n as i64, bottom.k as i64, bottom.l as i64);
    let (m, s, t) = (top.n as i64, top.k as i64, top.l as i64);
    if k == s && l == t {
        Compatibility::F
    } else if k + l == n && s + t == m && 2 * (t - l) == m - n {
        Compatibility::T
    } else {
        Compatibility::Incompatible
    }
}

/// Common platform sizes in which several matchings are drawn together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub left: usize,
    pub right: usize,
}

impl Frame {
    pub fn of(t: Triple) -> Frame {
        Frame { left: t.k, right: t.l }
    }

    /// Smallest frame containing every triple by adding platform-to-platform arcs.
    pub fn covering(triples: &[Triple]) -> Result<Frame> {
        let left = triples.iter().map(|t| t.k).max().unwrap_or(0);
        let right = triples.iter().map(|t| t.l).max().unwrap_or(0);
        for t in triples {
            if left - t.k != right - t.l {
                return Err(Error::Incompatible(format!(
                    "triple {t} does not stabilize into platforms ({left},{right})"
                )));
            }
        }
        Ok(Frame { left, right })
    }

    pub fn excess(&self, t: Triple) -> usize {
        self.left - t.k
    }

    pub fn embed(&self, m: &Matching) -> Matching {
        m.stabilize(self.excess(m.triple()))
    }
}

/// Closes `W(top) T bottom`. With a tangle the two triples need equal platform differences
/// `k - l`; the side with smaller platforms receives outer platform-to-platform arcs.
pub fn glue_and_close(top: &Matching, tangle: Option<&FlatTangle>, bottom: &Matching) -> Result<ClosedDiagram> {
    let (tb, tt) = (bottom.triple(), top.triple());
    let layers = match tangle {
        Some(t) => {
            if t.bottom() != tb.n || t.top() != tt.n {
                return Err(Error::Incompatible(format!(
                    "tangle {}->{} between triples {tb} and {tt}",
                    t.bottom(),
                    t.top()
                )));
            }
            t.layers()
        }
        None => {
            if tb != tt {
                return Err(Error::Incompatible(format!(
                    "cannot glue {tt} on top of {tb} without a tangle"
                )));
            }
            Vec::new()
        }
    };
    let frame = Frame::covering(&[tb, tt])?;
    let b = frame.embed(bottom);
    let c = frame.embed(top);
    ClosedDiagram::build(frame.left, frame.right, b.partners(), &layers, c.partners())
}

/// Outcome of pushing a matching through a flat tangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deformed {
    /// `Ta` with closed circles removed is isotopic to `matching`, after deleting `removed`
    /// outer platform-to-platform arcs.
    Matching {
        matching: Matching,
        circles: usize,
        removed: usize,
    },
    /// Two slots of one platform get joined, so every closure has a type III circle.
    Zero { circles: usize },
}

/// Traces `T a` and reads off the matching on the top row, landing in `target`.
pub fn deform_to_matching(t: &FlatTangle, a: &Matching, target: Triple) -> Result<Deformed> {
    let ta = a.triple();
    if t.bottom() != ta.n || t.top() != target.n {
        return Err(Error::Incompatible(format!(
            "tangle {}->{} does not fit {ta} -> {target}",
            t.bottom(),
            t.top()
        )));
    }
    if compatibility(ta, target) == Compatibility::Incompatible {
        return Err(Error::Incompatible(format!(
            "triples {ta} and {target} are not compatible"
        )));
    }
    let frame = Frame::covering(&[ta, target])?;
    let a = frame.embed(a);
    let mut layers = t.layers();
    if layers.is_empty() {
        layers.push(Layer::Straight);
    }
    let mut grid = Grid::build(frame.left, frame.right, ta.n, &layers)?;
    grid.add_row_arcs(0, a.partners());
    let nb = grid.row_len(0);
    let (pairing, circles) = grid.trace_open();
    let nt = grid.row_len(grid.top_row());
    let partner: Vec<u8> = (0..nt).map(|p| (pairing[nb + p] - nb) as u8).collect();
    let ft = Triple {
        n: target.n,
        k: frame.left,
        l: frame.right,
    };
    let within_platform = (0..nt).any(|p| ft.side(p) != Side::Free && ft.side(p) == ft.side(partner[p] as usize));
    if within_platform {
        return Ok(Deformed::Zero { circles });
    }
    let m = Matching::from_partner(ft, partner)?;
    let e = frame.excess(target);
    match m.destabilize(e) {
        Some(matching) => Ok(Deformed::Matching {
            matching,
            circles,
            removed: e,
        }),
        None => Err(Error::Inconsistent(format!(
            "deformed matching lacks the {e} outer platform arcs needed to land in {target}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::super::matching::enumerate_matchings;
    use super::super::tangle::Slice;
    use super::*;

    fn tr(n: usize, k: usize, l: usize) -> Triple {
        Triple::new(n, k, l).unwrap()
    }

    #[test]
    fn single_type_two_circle() {
        let a = &enumerate_matchings(tr(1, 0, 1)).unwrap()[0];
        let d = glue_and_close(a, None, a).unwrap();
        assert_eq!(d.ncircles(), 1);
        assert_eq!(d.circles()[0].right_marks, 1);
        assert_eq!(d.circles()[0].left_marks, 0);
        assert_eq!(d.circles()[0].kind, CircleType::II);
        assert_eq!(d.rank(), 1);
    }

    #[test]
    fn circles_in_b3() {
        // W(b)a on 6 points: a = (12)(34)(56), b = (14)(23)(56) -> two circles
        let t = tr(6, 0, 0);
        let a = Matching::from_parts(t, &[(1, 2), (3, 4), (5, 6)], &[], &[]).unwrap();
        let b = Matching::from_parts(t, &[(1, 4), (2, 3), (5, 6)], &[], &[]).unwrap();
        let d = glue_and_close(&b, None, &a).unwrap();
        assert_eq!(d.ncircles(), 2);
        assert_eq!(d.rank(), 4);
        let d = glue_and_close(&a, None, &a).unwrap();
        assert_eq!(d.ncircles(), 3);
    }

    #[test]
    fn platform_marks_counted() {
        // two free points both on the left platform, closed against themselves: one mark per circle
        let t = tr(2, 2, 0);
        let ms = enumerate_matchings(t).unwrap();
        assert_eq!(ms.len(), 1);
        let d = glue_and_close(&ms[0], None, &ms[0]).unwrap();
        assert!(d.circles().iter().all(|c| c.kind != CircleType::III));
        // B_2^{1,1}: (1 to left, 2 to right) and (arc 12 + platform arc)
        let t = tr(2, 1, 1);
        let ms = enumerate_matchings(t).unwrap();
        assert_eq!(ms.len(), 2);
        for a in &ms {
            for b in &ms {
                let d = glue_and_close(b, None, a).unwrap();
                let total_left: u32 = d.circles().iter().map(|c| c.left_marks).sum();
                assert_eq!(total_left, 1);
            }
        }
    }

    #[test]
    fn t_compatible_closure_adds_outer_arcs() {
        // bottom (2,1,1), top (4,2,2): T-compatible with d = 1
        let b = &enumerate_matchings(tr(2, 1, 1)).unwrap()[0];
        let c = &enumerate_matchings(tr(4, 2, 2)).unwrap()[0];
        let cup = FlatTangle::new(2, vec![Slice::Cup(1)]).unwrap();
        assert_eq!(compatibility(tr(2, 1, 1), tr(4, 2, 2)), Compatibility::T);
        let d = glue_and_close(c, Some(&cup), b).unwrap();
        let left: u32 = d.circles().iter().map(|c| c.left_marks).sum();
        assert_eq!(left, 2);
        assert!(glue_and_close(c, Some(&cup), &enumerate_matchings(tr(2, 0, 2)).unwrap()[0]).is_err());
    }

    #[test]
    fn deform_identity_and_cap() {
        let t = tr(4, 0, 0);
        for a in enumerate_matchings(t).unwrap() {
            let d = deform_to_matching(&FlatTangle::identity(4), &a, t).unwrap();
            assert_eq!(
                d,
                Deformed::Matching {
                    matching: a.clone(),
                    circles: 0,
                    removed: 0
                }
            );
        }
        let a = Matching::from_parts(t, &[(1, 2), (3, 4)], &[], &[]).unwrap();
        let cap = FlatTangle::new(4, vec![Slice::Cap(0)]).unwrap();
        let d = deform_to_matching(&cap, &a, tr(2, 0, 0)).unwrap();
        let want = Matching::from_parts(tr(2, 0, 0), &[(1, 2)], &[], &[]).unwrap();
        assert_eq!(
            d,
            Deformed::Matching {
                matching: want,
                circles: 1,
                removed: 0
            }
        );
    }

    #[test]
    fn deform_six_to_four_with_platforms() {
        // a in B_6^{3,1}, T caps two inner points, a' in B_4^{3,1}
        let t = tr(6, 3, 1);
        let a = Matching::from_parts(t, &[(4, 5)], &[3, 2, 1], &[6]).unwrap();
        let cap = FlatTangle::new(6, vec![Slice::Cap(2)]).unwrap();
        let d = deform_to_matching(&cap, &a, tr(4, 3, 1)).unwrap();
        match d {
            Deformed::Matching {
                matching,
                circles,
                removed,
            } => {
                assert_eq!(matching.triple(), tr(4, 3, 1));
                assert_eq!((circles, removed), (0, 0));
                assert_eq!(matching.left_assign(), vec![3, 2, 1]);
                assert_eq!(matching.right_assign(), vec![4]);
            }
            Deformed::Zero { .. } => panic!("unexpected zero"),
        }
    }

    #[test]
    fn grid_trace_zigzag() {
        let g = Grid::build(0, 0, 1, &[Layer::Cup(1), Layer::Cap(0)]).unwrap();
        let (p, c) = g.trace_open();
        assert_eq!(p, vec![1, 0]);
        assert_eq!(c, 0);
    }
}
