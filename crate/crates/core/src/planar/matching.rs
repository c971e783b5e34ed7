use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// `(n, k, l)`: free points plus left and right platform sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub n: usize,
    pub k: usize,
    pub l: usize,
}

impl Triple {
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self> {
        let t = Triple { n, k, l };
        if !t.is_coherent() {
            return invalid(format!("triple ({n},{k},{l}) is not coherent"));
        }
        Ok(t)
    }

    pub fn is_coherent(&self) -> bool {
        self.k.abs_diff(self.l) <= self.n && (self.n + self.k + self.l).is_multiple_of(2)
    }

    /// Total number of points on the line, platforms included.
    pub fn points(&self) -> usize {
        self.n + self.k + self.l
    }

    /// Internal grading shift `(n+k+l)/2`.
    pub fn shift(&self) -> i32 {
        (self.points() / 2) as i32
    }

    pub fn reflected(&self) -> Triple {
        Triple {
            n: self.n,
            k: self.l,
            l: self.k,
        }
    }

    pub fn side(&self, p: usize) -> Side {
        if p < self.k {
            Side::Left
        } else if p < self.k + self.n {
            Side::Free
        } else {
            Side::Right
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Free,
    Right,
}

/// Crossingless matching of the `k + n + l` points of a line, left platform first.
///
/// Arcs may join free points to each other, free points to platform slots, and the two
/// platforms to each other; no arc stays inside a single platform.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    triple: Triple,
    partner: Vec<u8>,
}

impl Matching {
    /// Validates a partner array over all `k + n + l` points.
    pub fn from_partner(triple: Triple, partner: Vec<u8>) -> Result<Self> {
        if !triple.is_coherent() {
            return invalid(format!("triple {triple} is not coherent"));
        }
        let np = triple.points();
        if partner.len() != np {
            return invalid(format!("expected {np} points, got {}", partner.len()));
        }
        for (p, &q) in partner.iter().enumerate() {
            let q = q as usize;
            if q >= np || q == p || partner[q] as usize != p {
                return invalid(format!("point {p} is not matched consistently"));
            }
            let (sp, sq) = (triple.side(p), triple.side(q));
            if sp == sq && sp != Side::Free {
                return invalid("arc inside a platform");
            }
        }
        // planarity: every arc encloses an even, self-contained interval
        for (p, &q) in partner.iter().enumerate() {
            let q = q as usize;
            if p < q && (p + 1..q).any(|r| !(p..=q).contains(&(partner[r] as usize))) {
                return invalid("arcs cross");
            }
        }
        Ok(Matching { triple, partner })
    }

    /// Builds a matching from free-free arcs and platform assignments, free points 1-based.
    pub fn from_parts(triple: Triple, arcs: &[(usize, usize)], left: &[usize], right: &[usize]) -> Result<Self> {
        let Triple { n, k, l } = triple;
        let np = triple.points();
        if left.len() > k || right.len() > l {
            return invalid("more platform assignments than slots");
        }
        let pp = k - left.len();
        if l - right.len() != pp {
            return invalid("unassigned slots on the two platforms do not pair up");
        }
        let mut partner = vec![u8::MAX; np];
        let mut link = |a: usize, b: usize| -> Result<()> {
            if partner[a] != u8::MAX || partner[b] != u8::MAX {
                return invalid("point used twice");
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
            Ok(())
        };
        let free = |i: usize| -> Result<usize> {
            if i == 0 || i > n {
                return invalid(format!("free point {i} out of range 1..={n}"));
            }
            Ok(k + i - 1)
        };
        for &(i, j) in arcs {
            link(free(i)?, free(j)?)?;
        }
        for s in 0..pp {
            link(s, np - 1 - s)?;
        }
        for (j, &i) in left.iter().enumerate() {
            link(pp + j, free(i)?)?;
        }
        for (j, &i) in right.iter().enumerate() {
            link(np - 1 - pp - j, free(i)?)?;
        }
        if partner.contains(&u8::MAX) {
            return invalid("some point is unmatched");
        }
        Self::from_partner(triple, partner)
    }

    pub fn triple(&self) -> Triple {
        self.triple
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub fn partners(&self) -> &[u8] {
        &self.partner
    }

    /// All arcs `(p, q)` with `p < q`, ordered by left endpoint.
    pub fn all_arcs(&self) -> Vec<(usize, usize)> {
        (0..self.points())
            .filter(|&p| p < self.partner(p))
            .map(|p| (p, self.partner(p)))
            .collect()
    }

    /// Free-free arcs, 1-based free labels.
    pub fn free_arcs(&self) -> Vec<(usize, usize)> {
        let k = self.triple.k;
        self.all_arcs()
            .into_iter()
            .filter(|&(p, q)| self.triple.side(p) == Side::Free && self.triple.side(q) == Side::Free)
            .map(|(p, q)| (p - k + 1, q - k + 1))
            .collect()
    }

    /// Free points attached to the left platform, outermost slot first (1-based).
    pub fn left_assign(&self) -> Vec<usize> {
        let k = self.triple.k;
        (0..k)
            .map(|s| self.partner(s))
            .filter(|&q| self.triple.side(q) == Side::Free)
            .map(|q| q - k + 1)
            .collect()
    }

    /// Free points attached to the right platform, outermost slot first (1-based).
    pub fn right_assign(&self) -> Vec<usize> {
        let k = self.triple.k;
        let np = self.points();
        (0..self.triple.l)
            .map(|j| self.partner(np - 1 - j))
            .filter(|&q| self.triple.side(q) == Side::Free)
            .map(|q| q - k + 1)
            .collect()
    }

    /// Number of arcs joining the two platforms.
    pub fn platform_arcs(&self) -> usize {
        (0..self.triple.k)
            .filter(|&s| self.triple.side(self.partner(s)) == Side::Right)
            .count()
    }

    /// Mirror image in a vertical axis; lands in the reflected triple.
    pub fn reflect(&self) -> Matching {
        let np = self.points();
        let mut partner = vec![0u8; np];
        for p in 0..np {
            partner[np - 1 - p] = (np - 1 - self.partner(p)) as u8;
        }
        Matching {
            triple: self.triple.reflected(),
            partner,
        }
    }

    /// Adds `e` outermost arcs joining new outer slots of both platforms.
    pub fn stabilize(&self, e: usize) -> Matching {
        let np = self.points();
        let total = np + 2 * e;
        let mut partner = vec![0u8; total];
        for s in 0..e {
            partner[s] = (total - 1 - s) as u8;
            partner[total - 1 - s] = s as u8;
        }
        for p in 0..np {
            partner[p + e] = (self.partner(p) + e) as u8;
        }
        let t = self.triple;
        Matching {
            triple: Triple {
                n: t.n,
                k: t.k + e,
                l: t.l + e,
            },
            partner,
        }
    }

    /// Removes `e` outermost platform-to-platform arcs, if present.
    pub fn destabilize(&self, e: usize) -> Option<Matching> {
        let np = self.points();
        let t = self.triple;
        if e > t.k.min(t.l) || (0..e).any(|s| self.partner(s) != np - 1 - s) {
            return None;
        }
        let partner = (e..np - e).map(|p| (self.partner(p) - e) as u8).collect();
        Some(Matching {
            triple: Triple {
                n: t.n,
                k: t.k - e,
                l: t.l - e,
            },
            partner,
        })
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matching{} arcs={:?} left={:?} right={:?}",
            self.triple,
            self.free_arcs(),
            self.left_assign(),
            self.right_assign()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    n: usize,
    k: usize,
    l: usize,
    arcs: Vec<[usize; 2]>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let t = self.triple;
        MatchingJson {
            n: t.n,
            k: t.k,
            l: t.l,
            arcs: self.free_arcs().into_iter().map(|(a, b)| [a, b]).collect(),
            left: self.left_assign(),
            right: self.right_assign(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatchingJson::deserialize(d)?;
        let triple = Triple::new(j.n, j.k, j.l).map_err(serde::de::Error::custom)?;
        let arcs: Vec<(usize, usize)> = j.arcs.iter().map(|a| (a[0], a[1])).collect();
        Matching::from_parts(triple, &arcs, &j.left, &j.right).map_err(serde::de::Error::custom)
    }
}

/// Every element of `B_n^{k,l}`, in canonical (lexicographic partner array) order.
pub fn enumerate_matchings(triple: Triple) -> Result<Vec<Matching>> {
    if !triple.is_coherent() {
        return invalid(format!("triple {triple} is not coherent"));
    }
    let np = triple.points();
    if np > 255 {
        return invalid("too many points");
    }
    let mut out = Vec::new();
    let mut partner = vec![0u8; np];
    let mut stack = Vec::with_capacity(np);
    fill(triple, 0, &mut stack, &mut partner, &mut out);
    out.sort();
    Ok(out)
}

fn fill(t: Triple, p: usize, stack: &mut Vec<usize>, partner: &mut Vec<u8>, out: &mut Vec<Matching>) {
    let np = t.points();
    if p == np {
        if stack.is_empty() {
            out.push(Matching {
                triple: t,
                partner: partner.clone(),
            });
        }
        return;
    }
    if let Some(&o) = stack.last() {
        let (so, sp) = (t.side(o), t.side(p));
        if so != sp || so == Side::Free {
            stack.pop();
            partner[o] = p as u8;
            partner[p] = o as u8;
            fill(t, p + 1, stack, partner, out);
            stack.push(o);
        }
    }
    if stack.len() < np - p - 1 {
        stack.push(p);
        fill(t, p + 1, stack, partner, out);
        stack.pop();
    }
}
