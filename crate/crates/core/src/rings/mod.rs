//! Arc rings `A_n^{k,l}`: bases, multiplication tables, structure maps and forms.

mod checks;
mod element;
mod frobenius;
mod iso;
mod ring;

pub use checks::{check_associativity, check_degrees, check_idempotents, check_ring, check_unit, RingReport};
pub use element::RingElement;
pub use frobenius::{frobenius_gram, frobenius_report, frobenius_trace, FrobeniusReport};
pub use iso::{check_ring_map, reflection_map, stabilization_map, RingMapReport};
pub use ring::{ArcRing, BasisElement};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentPoly;
    use crate::planar::{Matching, Triple};

    fn ring(n: usize, k: usize, l: usize) -> ArcRing {
        ArcRing::build(Triple::new(n, k, l).unwrap()).unwrap()
    }

    fn poly(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(d, c)| (d, c)))
    }

    #[test]
    fn one_point_one_platform_is_integers() {
        let r = ring(1, 0, 1);
        assert_eq!(r.dim(), 1);
        assert_eq!(r.degree(0), 0);
        assert_eq!(r.product(0, 0), [(0, 1)]);
    }

    #[test]
    fn h1_is_dual_numbers() {
        let r = ring(2, 0, 0);
        assert_eq!(r.graded_rank(), poly(&[(0, 1), (2, 1)]));
        assert_eq!(r.product(0, 0), [(0, 1)]);
        assert_eq!(r.product(0, 1), [(1, 1)]);
        assert_eq!(r.product(1, 0), [(1, 1)]);
        assert!(r.product(1, 1).is_empty());
    }

    #[test]
    fn h2_graded_rank() {
        let r = ring(4, 0, 0);
        assert_eq!(r.dim(), 12);
        assert_eq!(r.graded_rank(), poly(&[(0, 2), (1, 2), (2, 4), (3, 2), (4, 2)]));
    }

    #[test]
    fn h2_off_diagonal_products() {
        let r = ring(4, 0, 0);
        let nested = Matching::from_parts(Triple::new(4, 0, 0).unwrap(), &[(1, 4), (2, 3)], &[], &[]).unwrap();
        let b = r.matching_index(&nested).unwrap();
        let a = 1 - b;
        // 1 in W(a)b times 1 in W(b)a merges into one circle, then splits into two
        let x = r.block(a, b).start;
        let y = r.block(b, a).start;
        let p = r.product(x, y);
        let base = r.block(a, a).start as u32;
        let mut got: Vec<(u32, i64)> = p.to_vec();
        got.sort_unstable();
        assert_eq!(got, [(base + 1, 1), (base + 2, 1)]);
        // X times X merges to zero
        assert!(r.product(x + 1, y + 1).is_empty());
    }

    #[test]
    fn small_rings_pass_all_checks() {
        for (n, k, l) in [
            (2, 0, 0),
            (4, 0, 0),
            (6, 0, 0),
            (1, 0, 1),
            (2, 1, 1),
            (3, 1, 2),
            (2, 0, 2),
            (4, 1, 1),
            (3, 0, 3),
        ] {
            let r = ring(n, k, l);
            let report = check_ring(&r);
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn unit_acts_trivially_on_sums() {
        let r = ring(4, 1, 1);
        let one = r.unit();
        let x = RingElement::from_terms((0..r.dim()).map(|i| (i, i as i64 - 3)));
        assert_eq!(r.multiply(&one, &x), x);
        assert_eq!(r.multiply(&x, &one), x);
    }

    #[test]
    fn reflection_is_isomorphism() {
        for (n, k, l) in [(1, 0, 1), (3, 1, 2), (2, 0, 2), (4, 0, 2)] {
            let r1 = ring(n, k, l);
            let r2 = ring(n, l, k);
            let map = reflection_map(&r1, &r2).unwrap();
            assert!(check_ring_map(&r1, &r2, &map).is_isomorphism());
        }
    }

    #[test]
    fn stabilization_on_full_platforms() {
        for (n, k) in [(1, 0), (2, 0), (2, 1), (3, 1)] {
            let r1 = ring(n, k, n - k);
            let r2 = ring(n, k + 1, n - k + 1);
            let map = stabilization_map(&r1, &r2).unwrap();
            assert!(check_ring_map(&r1, &r2, &map).is_isomorphism());
        }
    }

    #[test]
    fn frobenius_h1_gram() {
        let r = ring(2, 0, 0);
        let g = frobenius_gram(&r).unwrap();
        assert_eq!(g, crate::algebra::IntegerMatrix::from_rows(&[[0, 1], [1, 0]]));
        let rep = frobenius_report(&r).unwrap();
        assert_eq!(rep.determinant, "-1");
    }

    #[test]
    fn frobenius_blockwise_matches_full_determinant() {
        for (n, l) in [(1, 1), (4, 0), (2, 2), (3, 1)] {
            let r = ring(n, 0, l);
            let full = frobenius_gram(&r).unwrap().determinant();
            let rep = frobenius_report(&r).unwrap();
            assert!(rep.symmetric);
            assert_eq!(rep.determinant, full.to_string());
        }
    }
}
