use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::planar::{FlatTangle, Slice};

/// Crossing type, named by its sign when both strands point up. A `Pos` crossing has the
/// strand from the lower left going over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Crossing {
    Pos,
    Neg,
}

impl Crossing {
    pub fn mirror(self) -> Crossing {
        match self {
            Crossing::Pos => Crossing::Neg,
            Crossing::Neg => Crossing::Pos,
        }
    }

    /// Whether the `one`-smoothing keeps the two strands vertical.
    pub fn vertical(self, one: bool) -> bool {
        (self == Crossing::Pos) != one
    }
}

/// One slice of a tangle diagram, positions 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramSlice {
    Cap(usize),
    Cup(usize),
    /// Crossing of the strands at `i` and `i+1`.
    Cross(usize, Crossing),
}

impl DiagramSlice {
    fn apply(&self, width: usize) -> Result<usize> {
        match *self {
            DiagramSlice::Cap(i) => Slice::Cap(i).apply(width),
            DiagramSlice::Cup(i) => Slice::Cup(i).apply(width),
            DiagramSlice::Cross(i, _) if i + 1 < width => Ok(width),
            DiagramSlice::Cross(..) => invalid(format!("{self:?} out of range on {width} points")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

/// Oriented tangle diagram from `bottom` points to `top` points. Orientation is given by the
/// direction of every bottom point and of the left leg of every cup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TangleDiagram {
    bottom: usize,
    top: usize,
    slices: Vec<DiagramSlice>,
    bottom_dirs: Vec<Dir>,
    cup_dirs: Vec<Dir>,
    signs: Vec<i8>,
}

impl TangleDiagram {
    pub fn new(bottom: usize, slices: Vec<DiagramSlice>, bottom_dirs: Vec<Dir>, cup_dirs: Vec<Dir>) -> Result<Self> {
        if bottom_dirs.len() != bottom {
            return invalid(format!("{} directions for {bottom} bottom points", bottom_dirs.len()));
        }
        let ncups = slices.iter().filter(|s| matches!(s, DiagramSlice::Cup(_))).count();
        if cup_dirs.len() != ncups {
            return invalid(format!("{} cup directions for {ncups} cups", cup_dirs.len()));
        }
        let mut row = bottom_dirs.clone();
        let mut cups = cup_dirs.iter();
        let mut signs = Vec::new();
        for s in &slices {
            s.apply(row.len())?;
            match *s {
                DiagramSlice::Cap(i) => {
                    if row[i] == row[i + 1] {
                        return invalid(format!("cap at {i} joins two strands of the same direction"));
                    }
                    row.drain(i..i + 2);
                }
                DiagramSlice::Cup(i) => {
                    let d = *cups.next().unwrap();
                    row.splice(i..i, [d, d.flip()]);
                }
                DiagramSlice::Cross(i, kind) => {
                    let same = row[i] == row[i + 1];
                    signs.push(if same == (kind == Crossing::Pos) { 1 } else { -1 });
                    row.swap(i, i + 1);
                }
            }
        }
        Ok(TangleDiagram {
            bottom,
            top: row.len(),
            slices,
            bottom_dirs,
            cup_dirs,
            signs,
        })
    }

    /// Some consistent orientation: every free choice is `Up`.
    pub fn oriented(bottom: usize, slices: Vec<DiagramSlice>) -> Result<Self> {
        // parity union-find over bottom points and cups; a position carries (variable, flipped)
        let mut parent: Vec<usize> = (0..bottom).collect();
        let mut parity = vec![false; bottom];
        fn find(parent: &mut [usize], parity: &mut [bool], v: usize) -> (usize, bool) {
            if parent[v] == v {
                return (v, false);
            }
            let (r, p) = find(parent, parity, parent[v]);
            parity[v] ^= p;
            parent[v] = r;
            (r, parity[v])
        }
        let mut row: Vec<(usize, bool)> = (0..bottom).map(|v| (v, false)).collect();
        let mut cup_vars = Vec::new();
        for s in &slices {
            s.apply(row.len())?;
            match *s {
                DiagramSlice::Cap(i) => {
                    let ((a, pa), (b, pb)) = (row[i], row[i + 1]);
                    let (ra, xa) = find(&mut parent, &mut parity, a);
                    let (rb, xb) = find(&mut parent, &mut parity, b);
                    // directions must differ
                    let want = !(pa ^ pb);
                    if ra == rb {
                        if xa ^ xb != want {
                            return invalid("diagram admits no orientation");
                        }
                    } else {
                        parent[rb] = ra;
                        parity[rb] = xa ^ xb ^ want;
                    }
                    row.drain(i..i + 2);
                }
                DiagramSlice::Cup(i) => {
                    let v = parent.len();
                    parent.push(v);
                    parity.push(false);
                    cup_vars.push(v);
                    row.splice(i..i, [(v, false), (v, true)]);
                }
                DiagramSlice::Cross(i, _) => row.swap(i, i + 1),
            }
        }
        let mut dir = |v: usize| {
            let (_, p) = find(&mut parent, &mut parity, v);
            if p {
                Dir::Down
            } else {
                Dir::Up
            }
        };
        let bottom_dirs = (0..bottom).map(&mut dir).collect();
        let cup_dirs = cup_vars.into_iter().map(dir).collect();
        TangleDiagram::new(bottom, slices, bottom_dirs, cup_dirs)
    }

    pub fn flat(t: &FlatTangle) -> Result<Self> {
        let slices = t
            .slices()
            .iter()
            .map(|s| match *s {
                Slice::Cap(i) => DiagramSlice::Cap(i),
                Slice::Cup(i) => DiagramSlice::Cup(i),
            })
            .collect();
        TangleDiagram::oriented(t.bottom(), slices)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn slices(&self) -> &[DiagramSlice] {
        &self.slices
    }

    pub fn bottom_dirs(&self) -> &[Dir] {
        &self.bottom_dirs
    }

    pub fn cup_dirs(&self) -> &[Dir] {
        &self.cup_dirs
    }

    pub fn crossings(&self) -> usize {
        self.signs.len()
    }

    /// Signs of the crossings in slice order.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Number of negative crossings.
    pub fn x(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    /// Number of positive crossings.
    pub fn y(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    /// Mirror image: every crossing switched, orientation kept.
    pub fn mirror(&self) -> TangleDiagram {
        let slices = self
            .slices
            .iter()
            .map(|s| match *s {
                DiagramSlice::Cross(i, c) => DiagramSlice::Cross(i, c.mirror()),
                other => other,
            })
            .collect();
        TangleDiagram::new(self.bottom, slices, self.bottom_dirs.clone(), self.cup_dirs.clone())
            .expect("mirror of a valid diagram")
    }

    /// `self` followed by `above`; orientations must agree on the shared row.
    pub fn then(&self, above: &TangleDiagram) -> Result<TangleDiagram> {
        if self.top_dirs() != above.bottom_dirs {
            return Err(Error::Incompatible("orientations disagree on the shared row".into()));
        }
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&above.slices);
        let mut cups = self.cup_dirs.clone();
        cups.extend_from_slice(&above.cup_dirs);
        TangleDiagram::new(self.bottom, slices, self.bottom_dirs.clone(), cups)
    }

    pub fn top_dirs(&self) -> Vec<Dir> {
        let mut row = self.bottom_dirs.clone();
        let mut cups = self.cup_dirs.iter();
        for s in &self.slices {
            match *s {
                DiagramSlice::Cap(i) => {
                    row.drain(i..i + 2);
                }
                DiagramSlice::Cup(i) => {
                    let d = *cups.next().unwrap();
                    row.splice(i..i, [d, d.flip()]);
                }
                DiagramSlice::Cross(i, _) => row.swap(i, i + 1),
            }
        }
        row
    }

    /// The flat tangle of a smoothing; bit `j` of `state` selects the smoothing of crossing `j`.
    pub fn resolution(&self, state: u32) -> FlatTangle {
        let mut out = Vec::with_capacity(self.slices.len() + self.crossings());
        let mut j = 0;
        for s in &self.slices {
            match *s {
                DiagramSlice::Cap(i) => out.push(Slice::Cap(i)),
                DiagramSlice::Cup(i) => out.push(Slice::Cup(i)),
                DiagramSlice::Cross(i, kind) => {
                    if !kind.vertical(state >> j & 1 == 1) {
                        out.push(Slice::Cap(i));
                        out.push(Slice::Cup(i));
                    }
                    j += 1;
                }
            }
        }
        FlatTangle::new(self.bottom, out).expect("smoothing of a valid diagram")
    }

    /// Index of crossing `j` within the slice word of `resolution(state)`, and its position.
    pub(crate) fn crossing_site(&self, state: u32, j: usize) -> (usize, usize) {
        let mut at = 0;
        let mut seen = 0;
        for s in &self.slices {
            match *s {
                DiagramSlice::Cross(i, kind) => {
                    if seen == j {
                        return (at, i);
                    }
                    if !kind.vertical(state >> seen & 1 == 1) {
                        at += 2;
                    }
                    seen += 1;
                }
                _ => at += 1,
            }
        }
        panic!("crossing {j} out of range");
    }

    /// Kind of crossing `j`.
    pub fn crossing_kind(&self, j: usize) -> Crossing {
        self.slices
            .iter()
            .filter_map(|s| match *s {
                DiagramSlice::Cross(_, c) => Some(c),
                _ => None,
            })
            .nth(j)
            .expect("crossing index in range")
    }
}

impl fmt::Debug for TangleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TangleDiagram({}->{} {:?})", self.bottom, self.top, self.slices)
    }
}

#[derive(Serialize, Deserialize)]
struct SliceJson {
    op: String,
    pos: usize,
}

#[derive(Serialize, Deserialize)]
struct OrientationJson {
    bottom: Vec<Dir>,
    cups: Vec<Dir>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    bottom: usize,
    top: usize,
    slices: Vec<SliceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orientation: Option<OrientationJson>,
}

impl Serialize for TangleDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let slices = self
            .slices
            .iter()
            .map(|sl| {
                let (op, pos) = match *sl {
                    DiagramSlice::Cap(i) => ("cap", i),
                    DiagramSlice::Cup(i) => ("cup", i),
                    DiagramSlice::Cross(i, Crossing::Pos) => ("pos_cross", i),
                    DiagramSlice::Cross(i, Crossing::Neg) => ("neg_cross", i),
                };
                SliceJson {
                    op: op.into(),
                    pos: pos + 1,
                }
            })
            .collect();
        DiagramJson {
            bottom: self.bottom,
            top: self.top,
            slices,
            orientation: Some(OrientationJson {
                bottom: self.bottom_dirs.clone(),
                cups: self.cup_dirs.clone(),
            }),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TangleDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = DiagramJson::deserialize(d)?;
        let mut slices = Vec::new();
        for s in j.slices {
            let Some(p) = s.pos.checked_sub(1) else {
                return Err(D::Error::custom("slice positions are 1-based"));
            };
            slices.push(match s.op.as_str() {
                "cap" => DiagramSlice::Cap(p),
                "cup" => DiagramSlice::Cup(p),
                "pos_cross" => DiagramSlice::Cross(p, Crossing::Pos),
                "neg_cross" => DiagramSlice::Cross(p, Crossing::Neg),
                other => return Err(D::Error::custom(format!("unknown slice op {other:?}"))),
            });
        }
        let t = match j.orientation {
            Some(o) => TangleDiagram::new(j.bottom, slices, o.bottom, o.cups),
            None => TangleDiagram::oriented(j.bottom, slices),
        }
        .map_err(D::Error::custom)?;
        if t.top != j.top {
            return Err(D::Error::custom(format!(
                "word ends on {} points, not {}",
                t.top, j.top
            )));
        }
        Ok(t)
    }
}
