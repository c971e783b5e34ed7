use crate::error::{Error, Result};
use crate::planar::{ClosedDiagram, Side};

use super::vector::{checked_add, checked_mul};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Merge { keep: u8, gone: u8 },
    Split { keep: u8, fresh: u8 },
    Birth { fresh: u8 },
    Death { slot: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Out {
    Circle(u8),
    /// A leftover circle made only of platform strands; must carry `ONE`.
    Phantom,
    Unused,
}

/// A compiled composite of elementary cobordisms acting on circle labelings.
///
/// Input labelings index the circles of the source diagrams in order (first diagram in
/// the low bits); outputs index the circles of the target diagram.
#[derive(Clone, Debug)]
pub struct Program {
    steps: Vec<Step>,
    out: Vec<Out>,
    saddles: usize,
    births: usize,
    deaths: usize,
}

impl Program {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Change in `#X - #ONE`: +1 per saddle, -1 per birth or death.
    pub fn degree(&self) -> i32 {
        self.saddles as i32 - self.births as i32 - self.deaths as i32
    }

    /// Image of a single labeling, unreduced, terms sorted by mask.
    pub fn apply_mask(&self, mask: u64) -> Vec<(u64, i64)> {
        self.apply(&[(mask, 1)])
    }

    pub fn apply(&self, input: &[(u64, i64)]) -> Vec<(u64, i64)> {
        let mut cur: Vec<(u64, i64)> = input.to_vec();
        let mut next = Vec::with_capacity(cur.len() * 2);
        for step in &self.steps {
            next.clear();
            match *step {
                Step::Merge { keep, gone } => {
                    for &(m, c) in &cur {
                        let (a, b) = (m >> keep & 1, m >> gone & 1);
                        if a & b == 0 {
                            next.push(((m & !(1 << gone)) | (a | b) << keep, c));
                        }
                    }
                }
                Step::Split { keep, fresh } => {
                    for &(m, c) in &cur {
                        if m >> keep & 1 == 1 {
                            next.push((m | 1 << fresh, c));
                        } else {
                            next.push((m | 1 << fresh, c));
                            next.push((m | 1 << keep, c));
                        }
                    }
                }
                Step::Birth { .. } => next.extend_from_slice(&cur),
                Step::Death { slot } => {
                    for &(m, c) in &cur {
                        if m >> slot & 1 == 1 {
                            next.push((m & !(1 << slot), c));
                        }
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        let mut res: Vec<(u64, i64)> = Vec::with_capacity(cur.len());
        'terms: for &(m, c) in &cur {
            let mut o = 0u64;
            let mut rest = m;
            while rest != 0 {
                let s = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                match self.out[s] {
                    Out::Circle(t) => o |= 1 << t,
                    Out::Phantom => continue 'terms,
                    Out::Unused => unreachable!("label on a retired slot"),
                }
            }
            res.push((o, c));
        }
        combine(&mut res);
        res
    }

    /// Image of a basis vector `mask` scaled by `coeff`, added into `acc`.
    pub fn apply_into(&self, mask: u64, coeff: i64, acc: &mut Vec<(u64, i64)>) {
        for (m, c) in self.apply_mask(mask) {
            acc.push((m, checked_mul(c, coeff)));
        }
    }
}

/// Sorts by mask, sums equal masks and drops zeros.
pub(crate) fn combine(v: &mut Vec<(u64, i64)>) {
    v.sort_unstable_by_key(|t| t.0);
    let mut w = 0;
    for r in 0..v.len() {
        if w > 0 && v[w - 1].0 == v[r].0 {
            v[w - 1].1 = checked_add(v[w - 1].1, v[r].1);
        } else {
            v[w] = v[r];
            w += 1;
        }
    }
    v.truncate(w);
    v.retain(|t| t.1 != 0);
}

const DEAD: u8 = u8::MAX;

/// Builds a [`Program`] by performing surgeries on the disjoint union of several diagrams.
pub struct Assembler {
    adj: Vec<[u32; 2]>,
    slot_of: Vec<u8>,
    platform: Vec<bool>,
    offsets: Vec<u32>,
    steps: Vec<Step>,
    next_slot: u8,
    saddles: usize,
    births: usize,
    deaths: usize,
}

impl Assembler {
    /// Starts from the disjoint union of `parts`; their circles become input slots in order.
    pub fn new(parts: &[&ClosedDiagram]) -> Self {
        let mut adj = Vec::new();
        let mut slot_of = Vec::new();
        let mut platform = Vec::new();
        let mut offsets = Vec::new();
        let mut slot_base = 0usize;
        for d in parts {
            let off = adj.len() as u32;
            offsets.push(off);
            let g = d.grid();
            for u in 0..g.nodes() as u32 {
                let [a, b] = g.adj[u as usize];
                adj.push([a + off, b + off]);
                slot_of.push((slot_base + d.circle_of(u)) as u8);
                platform.push(g.side(u) != Side::Free);
            }
            slot_base += d.ncircles();
        }
        assert!(slot_base <= 64, "too many circles for a 64-bit labeling");
        Assembler {
            adj,
            slot_of,
            platform,
            offsets,
            steps: Vec::new(),
            next_slot: slot_base as u8,
            saddles: 0,
            births: 0,
            deaths: 0,
        }
    }

    /// Global id of node `u` of part `i`.
    pub fn node(&self, part: usize, u: u32) -> u32 {
        self.offsets[part] + u
    }

    fn fresh(&mut self) -> u8 {
        let s = self.next_slot;
        assert!(s < 64, "too many circles for a 64-bit labeling");
        self.next_slot += 1;
        s
    }

    fn replace(&mut self, u: u32, old: u32, new: u32) -> Result<()> {
        let a = &mut self.adj[u as usize];
        if a[0] == old {
            a[0] = new;
        } else if a[1] == old {
            a[1] = new;
        } else {
            return Err(Error::Inconsistent(format!("no edge between {u} and {old}")));
        }
        Ok(())
    }

    /// Saddle replacing edges `u1-v1`, `u2-v2` by `u1-u2`, `v1-v2`.
    pub fn saddle(&mut self, (u1, v1): (u32, u32), (u2, v2): (u32, u32)) -> Result<()> {
        let (s1, s2) = (self.slot_of[u1 as usize], self.slot_of[u2 as usize]);
        if s1 == DEAD || s2 == DEAD {
            return Err(Error::Inconsistent("saddle on a removed circle".into()));
        }
        self.replace(u1, v1, u2)?;
        self.replace(v1, u1, v2)?;
        self.replace(u2, v2, u1)?;
        self.replace(v2, u2, v1)?;
        self.saddles += 1;
        if s1 != s2 {
            let (keep, gone) = (s1.min(s2), s1.max(s2));
            for s in self.slot_of.iter_mut() {
                if *s == gone {
                    *s = keep;
                }
            }
            self.steps.push(Step::Merge { keep, gone });
        } else {
            let mut on_first = vec![false; self.adj.len()];
            self.mark_cycle(u1, &mut on_first);
            if on_first[v1 as usize] {
                return Err(Error::Inconsistent("saddle did not split its circle".into()));
            }
            let fresh = self.fresh();
            for (u, s) in self.slot_of.iter_mut().enumerate() {
                if *s == s1 && !on_first[u] {
                    *s = fresh;
                }
            }
            self.steps.push(Step::Split { keep: s1, fresh });
        }
        Ok(())
    }

    fn mark_cycle(&self, u: u32, mark: &mut [bool]) {
        let mut prev = u32::MAX;
        let mut cur = u;
        loop {
            mark[cur as usize] = true;
            let nb = self.adj[cur as usize];
            let next = if prev == u32::MAX || nb[0] != prev {
                nb[0]
            } else {
                nb[1]
            };
            if next == u {
                return;
            }
            prev = cur;
            cur = next;
        }
    }

    /// A new circle labeled `ONE`; returns its slot for [`finish`](Self::finish).
    pub fn birth(&mut self) -> u8 {
        let s = self.fresh();
        self.births += 1;
        self.steps.push(Step::Birth { fresh: s });
        s
    }

    /// Caps off the circle through node `u`.
    pub fn death(&mut self, u: u32) -> Result<()> {
        let s = self.slot_of[u as usize];
        if s == DEAD {
            return Err(Error::Inconsistent("circle already removed".into()));
        }
        for x in self.slot_of.iter_mut() {
            if *x == s {
                *x = DEAD;
            }
        }
        self.deaths += 1;
        self.steps.push(Step::Death { slot: s });
        Ok(())
    }

    /// Identifies the surviving circles with those of `target`. `map` sends a target node to
    /// an assembled node on the same circle (or `None` for nodes of born circles, which are
    /// given in `born`).
    pub fn finish(
        self,
        target: &ClosedDiagram,
        map: impl Fn(u32) -> Option<u32>,
        born: &[(u32, u8)],
    ) -> Result<Program> {
        let mut out = vec![Out::Unused; self.next_slot as usize];
        let mut hit = vec![false; target.ncircles()];
        let mut assign = |s: u8, t: usize, out: &mut Vec<Out>| -> Result<()> {
            match out[s as usize] {
                Out::Unused => {
                    if hit[t] {
                        return Err(Error::Inconsistent(format!("target circle {t} reached twice")));
                    }
                    hit[t] = true;
                    out[s as usize] = Out::Circle(t as u8);
                    Ok(())
                }
                Out::Circle(x) if x as usize == t => Ok(()),
                _ => Err(Error::Inconsistent(format!("slot {s} lands on two target circles"))),
            }
        };
        for u in 0..target.grid().nodes() as u32 {
            let t = target.circle_of(u);
            if let Some(v) = map(u) {
                let s = self.slot_of[v as usize];
                if s == DEAD {
                    return Err(Error::Inconsistent("target node maps to a removed circle".into()));
                }
                assign(s, t, &mut out)?;
            }
        }
        for &(u, s) in born {
            assign(s, target.circle_of(u), &mut out)?;
        }
        if let Some(t) = hit.iter().position(|h| !h) {
            return Err(Error::Inconsistent(format!("target circle {t} has no source")));
        }
        // live slots with no target must consist of platform strands only
        for (u, &s) in self.slot_of.iter().enumerate() {
            if s == DEAD {
                continue;
            }
            if out[s as usize] == Out::Unused || out[s as usize] == Out::Phantom {
                if !self.platform[u] {
                    return Err(Error::Inconsistent("unmatched circle through free points".into()));
                }
                out[s as usize] = Out::Phantom;
            }
        }
        Ok(Program {
            steps: self.steps,
            out,
            saddles: self.saddles,
            births: self.births,
            deaths: self.deaths,
        })
    }
}

/// Minimal cobordism contracting the bottom arcs of `upper` against the top arcs of `lower`.
///
/// `middle` lists the contracted arcs as position pairs, shared by the bottom row of `upper`
/// and the top row of `lower`; they are processed in the given order. `map` sends each node
/// of `target` to `(part, node)` on the same circle, part 0 being `upper`.
pub fn stack_program(
    upper: &ClosedDiagram,
    lower: &ClosedDiagram,
    middle: &[(usize, usize)],
    target: &ClosedDiagram,
    map: impl Fn(u32) -> (usize, u32),
) -> Result<Program> {
    let mut asm = Assembler::new(&[upper, lower]);
    let ug = upper.grid();
    let lg = lower.grid();
    let lt = lg.top_row();
    for &(p, q) in middle {
        let a1 = asm.node(0, ug.node(0, p));
        let a2 = asm.node(0, ug.node(0, q));
        let b1 = asm.node(1, lg.node(lt, p));
        let b2 = asm.node(1, lg.node(lt, q));
        asm.saddle((a1, a2), (b1, b2))?;
    }
    let off = [asm.node(0, 0), asm.node(1, 0)];
    asm.finish(
        target,
        |u| {
            let (part, v) = map(u);
            Some(off[part] + v)
        },
        &[],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{enumerate_matchings, glue_and_close, Matching, Triple};

    fn arcs(m: &Matching) -> Vec<(usize, usize)> {
        m.all_arcs()
    }

    fn product_program(c: &Matching, b: &Matching, a: &Matching, order: &[usize]) -> Program {
        let upper = glue_and_close(c, None, b).unwrap();
        let lower = glue_and_close(b, None, a).unwrap();
        let target = glue_and_close(c, None, a).unwrap();
        let all = arcs(b);
        let middle: Vec<(usize, usize)> = order.iter().map(|&i| all[i]).collect();
        stack_program(&upper, &lower, &middle, &target, |u| (1, u)).unwrap()
    }

    #[test]
    fn h1_multiplication() {
        let a = &enumerate_matchings(Triple::new(2, 0, 0).unwrap()).unwrap()[0];
        let p = product_program(a, a, a, &[0]);
        assert_eq!(p.apply_mask(0b00), vec![(0, 1)]);
        assert_eq!(p.apply_mask(0b01), vec![(1, 1)]);
        assert_eq!(p.apply_mask(0b10), vec![(1, 1)]);
        assert!(p.apply_mask(0b11).is_empty());
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn three_saddle_example() {
        // W(c) a W(a) a: one circle on top, three below, three merges down to W(c)a
        let t = Triple::new(6, 0, 0).unwrap();
        let a = Matching::from_parts(t, &[(1, 2), (3, 4), (5, 6)], &[], &[]).unwrap();
        let c = Matching::from_parts(t, &[(1, 6), (2, 3), (4, 5)], &[], &[]).unwrap();
        let upper = glue_and_close(&c, None, &a).unwrap();
        let lower = glue_and_close(&a, None, &a).unwrap();
        assert_eq!((upper.ncircles(), lower.ncircles()), (1, 3));
        let p = product_program(&c, &a, &a, &[0, 1, 2]);
        assert!(p.steps().iter().all(|s| matches!(s, Step::Merge { .. })));
        assert_eq!(p.steps().len(), 3);
        // ONE on everything maps to ONE; any X survives alone
        assert_eq!(p.apply_mask(0), vec![(0, 1)]);
        assert_eq!(p.apply_mask(0b0100), vec![(1, 1)]);
        assert!(p.apply_mask(0b0110).is_empty());
        // a different pair where merges are followed by a split
        let b = Matching::from_parts(t, &[(1, 6), (2, 5), (3, 4)], &[], &[]).unwrap();
        let p = product_program(&b, &a, &b, &[0, 1, 2]);
        let kinds: Vec<bool> = p.steps().iter().map(|s| matches!(s, Step::Merge { .. })).collect();
        assert_eq!(kinds, vec![true, true, false]);
    }

    #[test]
    fn surgery_order_independent() {
        let t = Triple::new(6, 0, 0).unwrap();
        let ms = enumerate_matchings(t).unwrap();
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for c in &ms {
            for b in &ms {
                for a in &ms {
                    let base = product_program(c, b, a, &perms[0]);
                    let up = glue_and_close(c, None, b).unwrap().ncircles();
                    let lo = glue_and_close(b, None, a).unwrap().ncircles();
                    let n_in = up + lo;
                    for p in &perms[1..] {
                        let other = product_program(c, b, a, p);
                        for m in 0..(1u64 << n_in) {
                            assert_eq!(base.apply_mask(m), other.apply_mask(m));
                        }
                    }
                }
            }
        }
    }
}
