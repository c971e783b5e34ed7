use serde::Serialize;

use super::cube::{cube_complex, cube_complex_ordered, DEFAULT_CROSSING_BOUND};
use super::diagram::{Crossing, DiagramSlice, Dir, TangleDiagram};
use super::homology::{homology, Homology};
use crate::error::Result;
use crate::planar::Triple;

use Crossing::{Neg, Pos};
use DiagramSlice::{Cap, Cross, Cup};

/// Two diagrams of the same tangle, compared over the rings of `left` (top) and `right` (bottom).
#[derive(Clone, Debug)]
pub struct InvariancePair {
    pub name: String,
    pub left: Triple,
    pub right: Triple,
    pub first: TangleDiagram,
    pub second: TangleDiagram,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceResult {
    pub name: String,
    pub left: Triple,
    pub right: Triple,
    pub crossings: (usize, usize),
    pub total_rank: usize,
    pub passed: bool,
}

/// Homology of `d` over the given triples with the default crossing bound.
pub fn diagram_homology(d: &TangleDiagram, left: Triple, right: Triple) -> Result<Homology> {
    homology(&cube_complex(d, left, right, DEFAULT_CROSSING_BOUND)?)
}

/// Homology with crossings ordered by `order` for the sign rule.
pub fn diagram_homology_ordered(d: &TangleDiagram, left: Triple, right: Triple, order: &[usize]) -> Result<Homology> {
    homology(&cube_complex_ordered(d, left, right, DEFAULT_CROSSING_BOUND, order)?)
}

pub fn check_pair(p: &InvariancePair) -> Result<InvarianceResult> {
    let h1 = diagram_homology(&p.first, p.left, p.right)?;
    let h2 = diagram_homology(&p.second, p.left, p.right)?;
    Ok(InvarianceResult {
        name: p.name.clone(),
        left: p.left,
        right: p.right,
        crossings: (p.first.crossings(), p.second.crossings()),
        total_rank: h1.total_rank(),
        passed: h1 == h2,
    })
}

fn diagram(bottom: usize, slices: Vec<DiagramSlice>) -> TangleDiagram {
    TangleDiagram::oriented(bottom, slices).expect("catalog diagram is well formed")
}

fn with_dirs(bottom: Vec<Dir>, slices: Vec<DiagramSlice>) -> TangleDiagram {
    let d = diagram(bottom.len(), slices.clone());
    let cups = d.cup_dirs().to_vec();
    TangleDiagram::new(bottom.len(), slices, bottom, cups).expect("catalog orientation is consistent")
}

/// A curl on one strand, on the right (`right = true`) or left of the strand.
pub fn kink(kind: Crossing, right: bool) -> TangleDiagram {
    if right {
        diagram(1, vec![Cup(1), Cross(0, kind), Cap(1)])
    } else {
        diagram(1, vec![Cup(0), Cross(1, kind), Cap(0)])
    }
}

/// Plat closure of three equal crossings on the middle two of four strands.
pub fn trefoil(kind: Crossing) -> TangleDiagram {
    diagram(
        0,
        vec![
            Cup(0),
            Cup(2),
            Cross(1, kind),
            Cross(1, kind),
            Cross(1, kind),
            Cap(2),
            Cap(0),
        ],
    )
}

/// The plat trefoil with a curl added on one of its arcs.
pub fn trefoil_with_kink(kind: Crossing, curl: Crossing) -> TangleDiagram {
    diagram(
        0,
        vec![
            Cup(0),
            Cup(2),
            Cross(1, kind),
            Cross(1, kind),
            Cross(1, kind),
            Cup(4),
            Cross(3, curl),
            Cap(4),
            Cap(2),
            Cap(0),
        ],
    )
}

pub fn unknot() -> TangleDiagram {
    diagram(0, vec![Cup(0), Cap(0)])
}

pub fn unknot_with_kink(curl: Crossing) -> TangleDiagram {
    diagram(0, vec![Cup(0), Cup(2), Cross(1, curl), Cap(2), Cap(0)])
}

fn triple(n: usize, k: usize, l: usize) -> Triple {
    Triple::new(n, k, l).expect("catalog triple")
}

/// Reidemeister pairs over rings with at most eight points, plus two trefoil comparisons.
pub fn catalog() -> Vec<InvariancePair> {
    let id1 = diagram(1, vec![]);
    let id2 = diagram(2, vec![]);
    let id3 = diagram(3, vec![]);
    let mut out = Vec::new();
    let mut push = |name: &str, left: Triple, right: Triple, first: TangleDiagram, second: TangleDiagram| {
        out.push(InvariancePair {
            name: name.into(),
            left,
            right,
            first,
            second,
        })
    };
    let t101 = triple(1, 0, 1);
    let t110 = triple(1, 1, 0);
    push("R1 positive curl, right", t101, t101, id1.clone(), kink(Pos, true));
    push("R1 negative curl, right", t101, t101, id1.clone(), kink(Neg, true));
    push("R1 positive curl, left", t110, t110, id1.clone(), kink(Pos, false));
    push("R1 negative curl, left", t101, t101, id1, kink(Neg, false));
    let t211 = triple(2, 1, 1);
    push(
        "R2 parallel strands",
        t211,
        t211,
        id2.clone(),
        diagram(2, vec![Cross(0, Pos), Cross(0, Neg)]),
    );
    let t202 = triple(2, 0, 2);
    push(
        "R2 opposite strands",
        t202,
        t202,
        with_dirs(vec![Dir::Up, Dir::Down], vec![]),
        with_dirs(vec![Dir::Up, Dir::Down], vec![Cross(0, Neg), Cross(0, Pos)]),
    );
    push(
        "R2 across a circle",
        t211,
        t211,
        diagram(2, vec![Cup(2), Cap(2)]),
        diagram(2, vec![Cup(2), Cross(1, Pos), Cross(1, Neg), Cap(2)]),
    );
    let t312 = triple(3, 1, 2);
    push(
        "R3 positive braid",
        t312,
        t312,
        diagram(3, vec![Cross(0, Pos), Cross(1, Pos), Cross(0, Pos)]),
        diagram(3, vec![Cross(1, Pos), Cross(0, Pos), Cross(1, Pos)]),
    );
    let t303 = triple(3, 0, 3);
    push(
        "R3 mixed braid",
        t303,
        t303,
        diagram(3, vec![Cross(0, Pos), Cross(1, Pos), Cross(0, Neg)]),
        diagram(3, vec![Cross(1, Neg), Cross(0, Pos), Cross(1, Pos)]),
    );
    let t413 = triple(4, 1, 3);
    push(
        "R2 then R3 on four strands",
        t413,
        t413,
        diagram(4, vec![Cross(1, Neg), Cross(2, Neg), Cross(1, Neg)]),
        diagram(
            4,
            vec![
                Cross(0, Pos),
                Cross(0, Neg),
                Cross(2, Neg),
                Cross(1, Neg),
                Cross(2, Neg),
            ],
        ),
    );
    push(
        "R1 on the middle of three strands",
        t312,
        t312,
        id3,
        diagram(3, vec![Cup(2), Cross(1, Pos), Cap(2)]),
    );
    let t0 = triple(0, 0, 0);
    push("unknot with a curl", t0, t0, unknot(), unknot_with_kink(Neg));
    push(
        "trefoil with a positive curl",
        t0,
        t0,
        trefoil(Pos),
        trefoil_with_kink(Pos, Pos),
    );
    push(
        "trefoil with a negative curl",
        t0,
        t0,
        trefoil(Pos),
        trefoil_with_kink(Pos, Neg),
    );
    out
}
