use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bimodule::{close_in, TangleBimodule};
use super::checks::as_map;
use crate::error::{invalid, Error, Result};
use crate::planar::{ClosedDiagram, FlatTangle, Layer, Slice};
use crate::rings::ArcRing;
use crate::tqft::Assembler;

/// One elementary cobordism between flat tangles, located by slice index `at` (0-based) and
/// free position `pos` (0-based in code, 1-based in JSON).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    /// Saddle joining the strands at `pos`, `pos+1` below slice `at` into a cap over a cup.
    Pinch { at: usize, pos: usize },
    /// Saddle turning slices `at`, `at+1` (a cap then a cup at one position) into two strands.
    Unpinch { at: usize },
    /// A new circle (cup then cap at `pos`) inserted before slice `at`.
    Birth { at: usize, pos: usize },
    /// Removes the circle formed by slices `at`, `at+1` (a cup then a cap).
    Death { at: usize },
}

impl Event {
    pub fn apply(&self, t: &FlatTangle) -> Result<FlatTangle> {
        match *self {
            Event::Pinch { at, pos } => t.splice(at, 0, &[Slice::Cap(pos), Slice::Cup(pos)]),
            Event::Birth { at, pos } => t.splice(at, 0, &[Slice::Cup(pos), Slice::Cap(pos)]),
            Event::Unpinch { at } => match t.slices().get(at..at + 2) {
                Some([Slice::Cap(i), Slice::Cup(j)]) if i == j => t.splice(at, 2, &[]),
                _ => invalid(format!("slices {at}, {} are not a cap over a cup", at + 1)),
            },
            Event::Death { at } => match t.slices().get(at..at + 2) {
                Some([Slice::Cup(i), Slice::Cap(j)]) if i == j => t.splice(at, 2, &[]),
                _ => invalid(format!("slices {at}, {} do not bound a circle", at + 1)),
            },
        }
    }

    /// Change in Euler characteristic relative to the identity cobordism.
    pub fn euler_delta(&self) -> i32 {
        match self {
            Event::Pinch { .. } | Event::Unpinch { .. } => -1,
            Event::Birth { .. } | Event::Death { .. } => 1,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EventJson {
    event: String,
    at: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pos: Option<usize>,
}

impl Serialize for Event {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (event, at, pos) = match *self {
            Event::Pinch { at, pos } => ("pinch", at, Some(pos + 1)),
            Event::Unpinch { at } => ("unpinch", at, None),
            Event::Birth { at, pos } => ("birth", at, Some(pos + 1)),
            Event::Death { at } => ("death", at, None),
        };
        EventJson {
            event: event.into(),
            at,
            pos,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Event {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = EventJson::deserialize(d)?;
        let pos = || match j.pos {
            Some(p) if p > 0 => Ok(p - 1),
            _ => Err(D::Error::custom("event needs a 1-based pos")),
        };
        match j.event.as_str() {
            "pinch" => Ok(Event::Pinch { at: j.at, pos: pos()? }),
            "birth" => Ok(Event::Birth { at: j.at, pos: pos()? }),
            "unpinch" => Ok(Event::Unpinch { at: j.at }),
            "death" => Ok(Event::Death { at: j.at }),
            other => Err(D::Error::custom(format!("unknown event {other:?}"))),
        }
    }
}

/// A homogeneous map between bimodules, stored column by column in the source basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BimoduleMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub degree: i32,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BimoduleMap {
    pub fn identity(dim: usize) -> Self {
        BimoduleMap {
            source_dim: dim,
            target_dim: dim,
            degree: 0,
            columns: (0..dim).map(|i| vec![(i, 1)]).collect(),
        }
    }

    pub fn zero(source_dim: usize, target_dim: usize, degree: i32) -> Self {
        BimoduleMap {
            source_dim,
            target_dim,
            degree,
            columns: vec![Vec::new(); source_dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Image of a sparse vector.
    pub fn apply(&self, v: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc = BTreeMap::new();
        for &(i, a) in v {
            for &(j, b) in &self.columns[i] {
                *acc.entry(j).or_insert(0) += a * b;
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &BimoduleMap) -> Result<BimoduleMap> {
        if self.target_dim != next.source_dim {
            return invalid("maps are not composable");
        }
        Ok(BimoduleMap {
            source_dim: self.source_dim,
            target_dim: next.target_dim,
            degree: self.degree + next.degree,
            columns: self.columns.iter().map(|c| next.apply(c)).collect(),
        })
    }

    pub fn scale(&self, k: i64) -> BimoduleMap {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|&(j, x)| (j, x * k)).filter(|t| t.1 != 0).collect())
            .collect();
        BimoduleMap {
            columns,
            ..self.clone()
        }
    }
}

fn same_rings(a: &TangleBimodule, b: &TangleBimodule) -> Result<()> {
    if a.left_triple() != b.left_triple() || a.right_triple() != b.right_triple() {
        return Err(Error::Incompatible("bimodules over different rings".into()));
    }
    Ok(())
}

fn with_tail(mut layers: Vec<Layer>) -> Vec<Layer> {
    layers.push(Layer::Straight);
    layers
}

/// The map `F(S)` of one elementary cobordism from `source`'s tangle to `target`'s.
pub fn cobordism_map(source: &TangleBimodule, event: Event, target: &TangleBimodule) -> Result<BimoduleMap> {
    same_rings(source, target)?;
    let t1 = source.tangle();
    if event.apply(t1)? != *target.tangle() {
        return Err(Error::Inconsistent(format!(
            "{event:?} does not turn {t1:?} into {:?}",
            target.tangle()
        )));
    }
    let frame = source.frame();
    let k = frame.left;
    let l1 = t1.layers();
    let l2 = with_tail(target.tangle().layers());
    let src_layers = match event {
        Event::Pinch { at, .. } => {
            let mut l = l1.clone();
            l.insert(at, Layer::Straight);
            with_tail(l)
        }
        _ => with_tail(l1.clone()),
    };
    // (n+m)/2 - χ(S), with χ(S) = (n+m)/2 + euler_delta
    let degree = -event.euler_delta();
    let mut map = BimoduleMap::zero(source.dim(), target.dim(), degree);
    for (ci, c) in source.top_matchings().iter().enumerate() {
        for (bi, b) in source.bottom_matchings().iter().enumerate() {
            let block = source.block(ci, bi);
            if block.is_empty() {
                continue;
            }
            let d1 = close_in(frame, c, &src_layers, b)?;
            let d2 = close_in(frame, c, &l2, b)?;
            debug_assert_eq!(d1.type_one(), source.diagram(ci, bi).type_one());
            let tb = target.block(ci, bi);
            if tb.is_empty() {
                continue;
            }
            let g1 = d1.grid();
            let g2 = d2.grid();
            let mut asm = Assembler::new(&[&d1]);
            let mut born = Vec::new();
            let row_map: Box<dyn Fn(usize, usize) -> Option<(usize, usize)>> = match event {
                Event::Pinch { at, pos } => {
                    let (u1, v1) = (g1.node(at, k + pos), g1.node(at + 1, k + pos));
                    let (u2, v2) = (g1.node(at, k + pos + 1), g1.node(at + 1, k + pos + 1));
                    asm.saddle((u1, v1), (u2, v2))?;
                    Box::new(move |r, p| {
                        Some(if r <= at {
                            (r, p)
                        } else if r == at + 1 {
                            (at, if p < k + pos { p } else { p + 2 })
                        } else {
                            (r - 1, p)
                        })
                    })
                }
                Event::Unpinch { at } => {
                    let Slice::Cap(pos) = t1.slices()[at] else {
                        unreachable!()
                    };
                    let (a, b2) = (g1.node(at, k + pos), g1.node(at, k + pos + 1));
                    let (cc, d) = (g1.node(at + 2, k + pos), g1.node(at + 2, k + pos + 1));
                    asm.saddle((a, b2), (cc, d))?;
                    Box::new(move |r, p| Some(if r <= at { (r, p) } else { (r + 2, p) }))
                }
                Event::Birth { at, pos } => {
                    let s = asm.birth();
                    born.push((g2.node(at + 1, k + pos), s));
                    born.push((g2.node(at + 1, k + pos + 1), s));
                    Box::new(move |r, p| {
                        if r <= at {
                            Some((r, p))
                        } else if r == at + 1 {
                            if p < k + pos {
                                Some((at, p))
                            } else if p < k + pos + 2 {
                                None
                            } else {
                                Some((at, p - 2))
                            }
                        } else {
                            Some((r - 2, p))
                        }
                    })
                }
                Event::Death { at } => {
                    let Slice::Cup(pos) = t1.slices()[at] else {
                        unreachable!()
                    };
                    asm.death(g1.node(at + 1, k + pos))?;
                    Box::new(move |r, p| Some(if r <= at { (r, p) } else { (r + 2, p) }))
                }
            };
            let program = asm.finish(
                &d2,
                |u| {
                    let (r, p) = g2.coords(u);
                    row_map(r, p).map(|(r1, p1)| g1.node(r1, p1))
                },
                &born,
            )?;
            for v in block {
                let mask = source.basis()[v].mask;
                let col: Vec<(usize, i64)> = program
                    .apply_mask(d1.expand(mask))
                    .into_iter()
                    .filter_map(|(m, x)| d2.reduce(m).map(|r| (tb.start + r as usize, x)))
                    .collect();
                map.columns[v] = col;
            }
        }
    }
    Ok(map)
}

/// Circle correspondence between two closures of isotopic tangles without closed components,
/// matched through their boundary rows.
fn transport(d1: &ClosedDiagram, d2: &ClosedDiagram) -> Result<Vec<usize>> {
    let (g1, g2) = (d1.grid(), d2.grid());
    let mut to = vec![usize::MAX; d1.ncircles()];
    let rows = [(0, 0), (g1.top_row(), g2.top_row())];
    for (r1, r2) in rows {
        for p in 0..g1.row_len(r1) {
            let c1 = d1.circle_of(g1.node(r1, p));
            let c2 = d2.circle_of(g2.node(r2, p));
            if to[c1] != usize::MAX && to[c1] != c2 {
                return Err(Error::Inconsistent("boundary rows disagree on circles".into()));
            }
            to[c1] = c2;
        }
    }
    if to.contains(&usize::MAX) {
        return Err(Error::Invalid("closure has a circle away from the boundary".into()));
    }
    Ok(to)
}

/// The isomorphism `F(T1) -> F(T2)` for isotopic tangles without closed components.
pub fn isotopy_map(source: &TangleBimodule, target: &TangleBimodule) -> Result<BimoduleMap> {
    same_rings(source, target)?;
    let (p1, c1) = source.tangle().boundary_pairing();
    let (p2, c2) = target.tangle().boundary_pairing();
    if p1 != p2 || c1 != 0 || c2 != 0 {
        return Err(Error::Invalid(
            "tangles are not isotopic or contain closed circles".into(),
        ));
    }
    let mut map = BimoduleMap::zero(source.dim(), target.dim(), 0);
    for ci in 0..source.top_matchings().len() {
        for bi in 0..source.bottom_matchings().len() {
            let (d1, d2) = (source.diagram(ci, bi), target.diagram(ci, bi));
            let block = source.block(ci, bi);
            if block.is_empty() {
                continue;
            }
            let to = transport(d1, d2)?;
            let base = target.block(ci, bi).start;
            for v in block {
                let full = d1.expand(source.basis()[v].mask);
                let mut out = 0u64;
                for (c, &t) in to.iter().enumerate() {
                    out |= (full >> c & 1) << t;
                }
                let r = d2
                    .reduce(out)
                    .ok_or_else(|| Error::Inconsistent("isotopy changed circle types".into()))?;
                map.columns[v] = vec![(base + r as usize, 1)];
            }
        }
    }
    Ok(map)
}

/// `f(x·v) = x·f(v)`, `f(v·y) = f(v)·y` and homogeneity of degree `f.degree`.
pub fn check_bimodule_map(
    f: &BimoduleMap,
    source: &TangleBimodule,
    target: &TangleBimodule,
    left: &ArcRing,
    right: &ArcRing,
) -> Result<bool> {
    let sb = source.basis();
    for v in 0..source.dim() {
        let fv = &f.columns[v];
        if fv.iter().any(|&(w, _)| target.degree(w) != source.degree(v) + f.degree) {
            return Ok(false);
        }
        let c = sb[v].top as usize;
        for x in (0..left.matchings().len()).flat_map(|a| left.block(a, c)) {
            let lhs = as_map(f.apply(&source.left_act(left, x, v)?));
            let mut rhs = Vec::new();
            for &(w, k) in fv {
                rhs.extend(target.left_act(left, x, w)?.into_iter().map(|(z, y)| (z, y * k)));
            }
            if lhs != as_map(rhs) {
                return Ok(false);
            }
        }
        for y in right.top_range(sb[v].bottom as usize) {
            let lhs = as_map(f.apply(&source.right_act(v, right, y)?));
            let mut rhs = Vec::new();
            for &(w, k) in fv {
                rhs.extend(target.right_act(w, right, y)?.into_iter().map(|(z, x)| (z, x * k)));
            }
            if lhs != as_map(rhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
