//! Cube-of-resolutions complexes of tangle diagrams and their blockwise homology.

mod catalog;
mod cube;
mod diagram;
mod homology;

pub use catalog::{
    catalog, check_pair, diagram_homology, diagram_homology_ordered, kink, trefoil, trefoil_with_kink, unknot,
    unknot_with_kink, InvariancePair, InvarianceResult,
};
pub use cube::{cube_complex, cube_complex_ordered, BimoduleComplex, CubeEdge, CubeVertex, DEFAULT_CROSSING_BOUND};
pub use diagram::{Crossing, DiagramSlice, Dir, TangleDiagram};
pub use homology::{homology, Homology, HomologyEntry};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::Triple;

    fn t(n: usize, k: usize, l: usize) -> Triple {
        Triple::new(n, k, l).unwrap()
    }

    #[test]
    fn unknot_homology() {
        let h = diagram_homology(&unknot(), t(0, 0, 0), t(0, 0, 0)).unwrap();
        let got: Vec<(i32, i32, usize)> = h.entries.iter().map(|e| (e.hdeg, e.qdeg, e.rank)).collect();
        assert_eq!(got, vec![(0, -1, 1), (0, 1, 1)]);
    }

    #[test]
    fn curls_do_not_change_unknot() {
        let base = diagram_homology(&unknot(), t(0, 0, 0), t(0, 0, 0)).unwrap();
        for c in [Crossing::Pos, Crossing::Neg] {
            let d = unknot_with_kink(c);
            let cx = cube_complex(&d, t(0, 0, 0), t(0, 0, 0), 8).unwrap();
            assert!(cx.degrees_ok());
            assert!(cx.d_squared_is_zero());
            assert_eq!(homology(&cx).unwrap(), base, "{c:?}");
        }
    }

    #[test]
    fn catalog_passes() {
        for p in catalog() {
            let r = check_pair(&p).unwrap();
            assert!(r.passed, "{}", r.name);
        }
    }

    #[test]
    fn three_negative_crossings_span_minus_three_to_zero() {
        let d = TangleDiagram::oriented(
            2,
            vec![
                DiagramSlice::Cross(0, Crossing::Neg),
                DiagramSlice::Cross(0, Crossing::Neg),
                DiagramSlice::Cross(0, Crossing::Neg),
            ],
        )
        .unwrap();
        assert_eq!((d.x(), d.y()), (3, 0));
        let cx = cube_complex(&d, t(2, 1, 1), t(2, 1, 1), 8).unwrap();
        assert_eq!(cx.vertices.len(), 8);
        assert_eq!(cx.edges.len(), 12);
        assert_eq!(cx.hdeg_range(), (-3, 0));
        let shifts: Vec<i32> = cx.vertices.iter().map(|v| v.qshift).collect();
        assert_eq!(shifts, vec![6, 5, 5, 4, 5, 4, 4, 3]);
        assert!(cx.degrees_ok() && cx.d_squared_is_zero());
    }

    #[test]
    fn one_positive_crossing_starts_in_degree_zero() {
        let d = TangleDiagram::oriented(2, vec![DiagramSlice::Cross(0, Crossing::Pos)]).unwrap();
        let cx = cube_complex(&d, t(2, 0, 2), t(2, 0, 2), 8).unwrap();
        assert_eq!(cx.vertices[0].hdeg, 0);
        assert_eq!(cx.vertices[0].bimodule.tangle().slices(), []);
        assert_eq!(cx.vertices[1].hdeg, 1);
    }

    #[test]
    fn crossing_bound_enforced() {
        let d = trefoil(Crossing::Pos);
        assert!(matches!(
            cube_complex(&d, t(0, 0, 0), t(0, 0, 0), 2),
            Err(crate::Error::TooLarge(_))
        ));
    }

    #[test]
    fn crossing_order_does_not_matter() {
        let d = trefoil_with_kink(Crossing::Pos, Crossing::Neg);
        let base = diagram_homology(&d, t(0, 0, 0), t(0, 0, 0)).unwrap();
        for order in [[3, 2, 1, 0], [1, 3, 0, 2]] {
            assert_eq!(
                diagram_homology_ordered(&d, t(0, 0, 0), t(0, 0, 0), &order).unwrap(),
                base
            );
        }
        assert!(diagram_homology_ordered(&d, t(0, 0, 0), t(0, 0, 0), &[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn mirror_negates_degrees() {
        let h = diagram_homology(&trefoil(Crossing::Pos), t(0, 0, 0), t(0, 0, 0)).unwrap();
        let m = diagram_homology(&trefoil(Crossing::Pos).mirror(), t(0, 0, 0), t(0, 0, 0)).unwrap();
        assert_ne!(h, m);
        let free = |h: &Homology, s: i32| {
            let mut v: Vec<(i32, i32, usize)> = h
                .entries
                .iter()
                .filter(|e| e.rank > 0)
                .map(|e| (s * e.hdeg, s * e.qdeg, e.rank))
                .collect();
            v.sort();
            v
        };
        assert_eq!(free(&h, 1), free(&m, -1));
        // torsion moves from degree h to 1-h under duality
        let tors = |h: &Homology, s: i32| -> Vec<(i32, i32, Vec<u64>)> {
            h.entries
                .iter()
                .filter(|e| !e.torsion.is_empty())
                .map(|e| (if s > 0 { e.hdeg } else { 1 - e.hdeg }, s * e.qdeg, e.torsion.clone()))
                .collect()
        };
        assert_eq!(tors(&h, 1), tors(&m, -1));
    }

    #[test]
    fn orientation_sets_crossing_signs() {
        use DiagramSlice::Cross;
        let up = TangleDiagram::new(2, vec![Cross(0, Crossing::Pos)], vec![Dir::Up, Dir::Up], vec![]).unwrap();
        let mixed = TangleDiagram::new(2, vec![Cross(0, Crossing::Pos)], vec![Dir::Up, Dir::Down], vec![]).unwrap();
        assert_eq!((up.x(), up.y()), (0, 1));
        assert_eq!((mixed.x(), mixed.y()), (1, 0));
        assert_eq!(up.resolution(0), mixed.resolution(0));
        let bad = TangleDiagram::new(2, vec![DiagramSlice::Cap(0)], vec![Dir::Up, Dir::Up], vec![]);
        assert!(bad.is_err());
    }

    #[test]
    fn diagram_json_roundtrip() {
        let d = trefoil_with_kink(Crossing::Pos, Crossing::Neg);
        let s = serde_json::to_string(&d).unwrap();
        let e: TangleDiagram = serde_json::from_str(&s).unwrap();
        assert_eq!(d, e);
        let bare: TangleDiagram = serde_json::from_str(
            r#"{"bottom":1,"top":1,"slices":[{"op":"cup","pos":2},{"op":"neg_cross","pos":1},{"op":"cap","pos":2}]}"#,
        )
        .unwrap();
        assert_eq!(bare, kink(Crossing::Neg, true));
    }
}
