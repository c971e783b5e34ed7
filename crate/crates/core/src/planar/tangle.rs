use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::closure::{Grid, Layer};
use crate::error::{invalid, Result};

/// One elementary slice of a flat tangle, positions 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slice {
    /// Joins points `i` and `i+1` of the current row.
    Cap(usize),
    /// Inserts a new adjacent pair at positions `i`, `i+1`.
    Cup(usize),
}

impl Slice {
    pub fn apply(&self, width: usize) -> Result<usize> {
        match *self {
            Slice::Cap(i) if i + 1 < width => Ok(width - 2),
            Slice::Cup(i) if i <= width => Ok(width + 2),
            _ => invalid(format!("{self:?} out of range on {width} points")),
        }
    }

    pub fn layer(&self) -> Layer {
        match *self {
            Slice::Cap(i) => Layer::Cap(i),
            Slice::Cup(i) => Layer::Cup(i),
        }
    }
}

/// Crossingless tangle from `bottom` points to `top` points given as a slice word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlatTangle {
    bottom: usize,
    top: usize,
    slices: Vec<Slice>,
}

impl FlatTangle {
    pub fn new(bottom: usize, slices: Vec<Slice>) -> Result<Self> {
        let mut w = bottom;
        for s in &slices {
            w = s.apply(w)?;
        }
        Ok(FlatTangle { bottom, top: w, slices })
    }

    pub fn identity(n: usize) -> Self {
        FlatTangle {
            bottom: n,
            top: n,
            slices: Vec::new(),
        }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn layers(&self) -> Vec<Layer> {
        self.slices.iter().map(Slice::layer).collect()
    }

    /// Replaces `remove` slices starting at index `at` by `insert`.
    pub fn splice(&self, at: usize, remove: usize, insert: &[Slice]) -> Result<FlatTangle> {
        if at + remove > self.slices.len() {
            return invalid(format!(
                "slice range {at}..{} outside a word of length {}",
                at + remove,
                self.slices.len()
            ));
        }
        let mut slices = self.slices[..at].to_vec();
        slices.extend_from_slice(insert);
        slices.extend_from_slice(&self.slices[at + remove..]);
        FlatTangle::new(self.bottom, slices)
    }

    /// Random word from `bottom` to `top` points using `extra` surplus cup/cap pairs.
    pub fn random<R: Rng>(bottom: usize, top: usize, extra: usize, rng: &mut R) -> Result<FlatTangle> {
        if (bottom + top) % 2 == 1 {
            return invalid(format!("no flat tangle joins {bottom} and {top} points"));
        }
        let mut cups = top.saturating_sub(bottom) / 2 + extra;
        let mut caps = bottom.saturating_sub(top) / 2 + extra;
        let mut w = bottom;
        let mut slices = Vec::with_capacity(cups + caps);
        while cups + caps > 0 {
            let can_cap = caps > 0 && w >= 2;
            let cap = can_cap && (cups == 0 || rng.gen_bool(caps as f64 / (cups + caps) as f64));
            if cap {
                slices.push(Slice::Cap(rng.gen_range(0..w - 1)));
                caps -= 1;
                w -= 2;
            } else {
                slices.push(Slice::Cup(rng.gen_range(0..=w)));
                cups -= 1;
                w += 2;
            }
        }
        FlatTangle::new(bottom, slices)
    }

    /// `self` followed by `above`, keeping every slice.
    pub fn then(&self, above: &FlatTangle) -> Result<FlatTangle> {
        if self.top != above.bottom {
            return invalid(format!(
                "cannot stack a tangle with bottom {} on one with top {}",
                above.bottom, self.top
            ));
        }
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&above.slices);
        Ok(FlatTangle {
            bottom: self.bottom,
            top: above.top,
            slices,
        })
    }

    /// Endpoint pairing on the `bottom + top` boundary points (bottom first) and the number
    /// of closed circles.
    pub fn boundary_pairing(&self) -> (Vec<usize>, usize) {
        let mut layers = self.layers();
        if layers.is_empty() {
            layers.push(Layer::Straight);
        }
        let grid = Grid::build(0, 0, self.bottom, &layers).expect("validated word");
        grid.trace_open()
    }

    /// Word with the same boundary pairing and no closed components: caps first, then cups.
    pub fn normal_form(&self) -> (FlatTangle, usize) {
        let (pairing, circles) = self.boundary_pairing();
        (Self::from_pairing(self.bottom, self.top, &pairing), circles)
    }

    fn from_pairing(bottom: usize, top: usize, pairing: &[usize]) -> FlatTangle {
        let mut slices = Vec::new();
        // bottom caps, innermost first
        let mut row: Vec<usize> = (0..bottom).collect();
        loop {
            let hit = row.windows(2).position(|w| pairing[w[0]] == w[1]);
            match hit {
                Some(i) => {
                    slices.push(Slice::Cap(i));
                    row.drain(i..i + 2);
                }
                None => break,
            }
        }
        // top cups: peel innermost pairs off the top row, then reverse
        let mut trow: Vec<usize> = (bottom..bottom + top).collect();
        let mut cups = Vec::new();
        loop {
            let hit = trow.windows(2).position(|w| pairing[w[0]] == w[1]);
            match hit {
                Some(i) => {
                    cups.push(Slice::Cup(i));
                    trow.drain(i..i + 2);
                }
                None => break,
            }
        }
        cups.reverse();
        slices.extend(cups);
        FlatTangle::new(bottom, slices).expect("normal form word is well formed")
    }
}

impl fmt::Debug for FlatTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlatTangle({}->{} {:?})", self.bottom, self.top, self.slices)
    }
}

/// `t2 ∘ t1` with closed circles removed from the word and counted.
pub fn compose_flat(t2: &FlatTangle, t1: &FlatTangle) -> Result<(FlatTangle, usize)> {
    let word = t1.then(t2)?;
    let (pairing, circles) = word.boundary_pairing();
    if circles == 0 {
        return Ok((word, 0));
    }
    Ok((FlatTangle::from_pairing(word.bottom, word.top, &pairing), circles))
}

#[derive(Serialize, Deserialize)]
struct SliceJson {
    op: String,
    pos: usize,
}

#[derive(Serialize, Deserialize)]
struct TangleJson {
    bottom: usize,
    top: usize,
    slices: Vec<SliceJson>,
}

impl Serialize for FlatTangle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TangleJson {
            bottom: self.bottom,
            top: self.top,
            slices: self
                .slices
                .iter()
                .map(|sl| match *sl {
                    Slice::Cap(i) => SliceJson {
                        op: "cap".into(),
                        pos: i + 1,
                    },
                    Slice::Cup(i) => SliceJson {
                        op: "cup".into(),
                        pos: i + 1,
                    },
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlatTangle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = TangleJson::deserialize(d)?;
        let mut slices = Vec::new();
        for s in j.slices {
            if s.pos == 0 {
                return Err(D::Error::custom("slice positions are 1-based"));
            }
            slices.push(match s.op.as_str() {
                "cap" => Slice::Cap(s.pos - 1),
                "cup" => Slice::Cup(s.pos - 1),
                other => return Err(D::Error::custom(format!("unknown flat slice op {other:?}"))),
            });
        }
        let t = FlatTangle::new(j.bottom, slices).map_err(D::Error::custom)?;
        if t.top != j.top {
            return Err(D::Error::custom(format!(
                "word ends on {} points, not {}",
                t.top, j.top
            )));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_from_cup_cap() {
        let cup = FlatTangle::new(0, vec![Slice::Cup(0)]).unwrap();
        let cap = FlatTangle::new(2, vec![Slice::Cap(0)]).unwrap();
        let (t, c) = compose_flat(&cap, &cup).unwrap();
        assert_eq!(c, 1);
        assert_eq!((t.bottom(), t.top()), (0, 0));
        assert!(t.slices().is_empty());
    }

    #[test]
    fn identity_composition() {
        let t = FlatTangle::new(4, vec![Slice::Cap(1), Slice::Cup(0)]).unwrap();
        let (u, c) = compose_flat(&FlatTangle::identity(4), &t).unwrap();
        assert_eq!((u, c), (t.clone(), 0));
        let (u, c) = compose_flat(&t, &FlatTangle::identity(4)).unwrap();
        assert_eq!((u, c), (t, 0));
    }

    #[test]
    fn mismatch_rejected() {
        let t = FlatTangle::identity(2);
        assert!(compose_flat(&t, &FlatTangle::identity(4)).is_err());
        assert!(FlatTangle::new(1, vec![Slice::Cap(0)]).is_err());
    }

    #[test]
    fn pairing_and_normal_form() {
        // zigzag: cup at 1 then cap at 0 on one strand is isotopic to the identity
        let z = FlatTangle::new(1, vec![Slice::Cup(1), Slice::Cap(0)]).unwrap();
        let (p, c) = z.boundary_pairing();
        assert_eq!((p, c), (vec![1, 0], 0));
        let (nf, _) = z.normal_form();
        assert_eq!(nf, FlatTangle::identity(1));
        // nested circles
        let t = FlatTangle::new(0, vec![Slice::Cup(0), Slice::Cup(1), Slice::Cap(1), Slice::Cap(0)]).unwrap();
        assert_eq!(t.boundary_pairing().1, 2);
    }

    #[test]
    fn random_words_reach_target() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (b, t) in [(0, 4), (4, 0), (3, 5), (6, 2), (2, 2)] {
            for extra in 0..3 {
                let w = FlatTangle::random(b, t, extra, &mut rng).unwrap();
                assert_eq!((w.bottom(), w.top()), (b, t));
            }
        }
        assert!(FlatTangle::random(1, 2, 0, &mut rng).is_err());
    }

    #[test]
    fn splice_inserts_and_removes() {
        let t = FlatTangle::new(2, vec![Slice::Cap(0)]).unwrap();
        let u = t.splice(0, 0, &[Slice::Cup(1), Slice::Cap(1)]).unwrap();
        assert_eq!(u.slices(), [Slice::Cup(1), Slice::Cap(1), Slice::Cap(0)]);
        assert_eq!(u.splice(0, 2, &[]).unwrap(), t);
        assert!(t.splice(1, 1, &[]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let t = FlatTangle::new(2, vec![Slice::Cup(2), Slice::Cap(1)]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"{"bottom":2,"top":2,"slices":[{"op":"cup","pos":3},{"op":"cap","pos":2}]}"#
        );
        let u: FlatTangle = serde_json::from_str(&s).unwrap();
        assert_eq!(t, u);
    }
}
