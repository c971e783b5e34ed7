//! Centers of arc rings, the Springer cohomology presentation and the cell partition count.

mod equalizer;
mod generators;
mod graph;
mod springer;

pub use equalizer::{center, check_center, degree_zero_center, is_central, Center, CenterChecks, DegreeZeroReport};
pub use generators::{
    candidate_generators, center_vs_springer, check_generators, platform_reduction_check, CenterSpringerReport,
    GeneratorReport, PlatformReport,
};
pub use graph::{arc_graph, cell_count, ArcGraph};
pub use springer::{springer_presentation, SpringerPresentation, SPRINGER_MAX_N};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{binomial, LaurentPoly};
    use crate::planar::Triple;
    use crate::rings::ArcRing;

    fn ring(n: usize, k: usize, l: usize) -> ArcRing {
        ArcRing::build(Triple::new(n, k, l).unwrap()).unwrap()
    }

    #[test]
    fn one_point_center_is_everything() {
        let r = ring(1, 0, 1);
        let z = center(&r).unwrap();
        assert_eq!(z.rank(), 1);
        assert_eq!(z.elements[0], r.unit());
    }

    #[test]
    fn h1_center_is_the_ring() {
        let r = ring(2, 0, 0);
        let z = center(&r).unwrap();
        assert_eq!(z.graded_rank(), LaurentPoly::from_terms([(0, 1), (2, 1)]));
        assert!(check_center(&r, &z).passed());
    }

    #[test]
    fn b51_center_rank_ten() {
        let rep = center_vs_springer(5, 1).unwrap();
        assert_eq!(rep.center_rank, 10);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn springer_small_cases() {
        let p = springer_presentation(2, 0).unwrap();
        assert_eq!(p.ranks, vec![1, 1]);
        assert_eq!(p.basis.len(), 2);
        for n in 0..=6 {
            assert_eq!(springer_presentation(n, n).unwrap().rank(), 1);
        }
        assert!(springer_presentation(3, 0).is_err());
    }

    #[test]
    fn h1_generators() {
        let r = ring(2, 0, 0);
        let c = candidate_generators(&r, true);
        // c_1 = -X, c_2 = X
        assert_eq!(c[0].terms().collect::<Vec<_>>(), vec![(1, -1)]);
        assert_eq!(c[1].terms().collect::<Vec<_>>(), vec![(1, 1)]);
        assert!(c[0].add(&c[1]).is_zero());
        assert!(r.multiply(&c[0], &c[1]).is_zero());
    }

    #[test]
    fn type_two_circle_gives_zero_component() {
        // B_1^{0,1}: the only arc goes to the platform
        let r = ring(1, 0, 1);
        assert!(candidate_generators(&r, true)[0].is_zero());
    }

    #[test]
    fn cell_counts() {
        assert_eq!(cell_count(2, 0).unwrap(), 2.into());
        assert_eq!(cell_count(5, 1).unwrap(), 10.into());
        for n in 0..=8usize {
            for m in (n % 2..=n).step_by(2) {
                let want = binomial(n as i64, ((n - m) / 2) as i64);
                assert_eq!(cell_count(n, m).unwrap(), want, "({n},{m})");
            }
        }
    }

    #[test]
    fn platform_reduction_example() {
        let rep = platform_reduction_check(Triple::new(3, 2, 3).unwrap()).unwrap();
        assert_eq!(rep.reduced, Triple::new(3, 0, 1).unwrap());
        assert!(rep.ranks_equal && rep.rings_match, "{rep:?}");
    }

    #[test]
    fn degree_zero_is_unit() {
        let rep = degree_zero_center(&ring(3, 1, 2)).unwrap();
        assert_eq!(rep.rank, 1);
        assert!(rep.spanned_by_unit);
    }
}
