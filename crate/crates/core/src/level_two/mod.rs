//! Level-two representations of quantum `sl_N`: weights, tableaux, the matching bijection and the functor action.

mod functors;
mod kgroup;
mod props;
mod sl2;
mod tableaux;
mod weights;

pub use functors::{functor_tangle, LevelTwo, Step};
pub use kgroup::{verify_qrel, LaurentMatrix, MatrixCounterexample, QRelReport, RelationCheck};
pub use props::{verify_prop1_prop2, PropFailure, PropReport};
pub use sl2::{sl2_invariant_dimension, tensor_power_multiplicities, Sl2Dimension};
pub use tableaux::{enumerate_tableaux, phi, psi, weight_dim, weight_triple, Tableau};
pub use weights::{Direction, HighestWeight, Weight};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentPoly;
    use crate::planar::{enumerate_matchings, Slice};

    fn hw(n: usize, s: usize, k: usize) -> HighestWeight {
        HighestWeight::new(n, s, k).unwrap()
    }

    fn w(v: &[u8]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sl2_weights() {
        let ws = hw(2, 1, 0).admissible_weights();
        assert_eq!(ws, vec![w(&[2, 0]), w(&[1, 1]), w(&[0, 2])]);
    }

    #[test]
    fn lambda_first_and_admissible() {
        for (n, s, k) in [(3, 1, 1), (5, 2, 1), (4, 0, 2), (6, 1, 2)] {
            let h = hw(n, s, k);
            assert_eq!(h.admissible_weights()[0], h.lambda());
        }
        let ws = hw(5, 2, 1).admissible_weights();
        assert!(ws.contains(&w(&[1, 1, 1, 1, 1])));
        assert!(ws.contains(&w(&[2, 1, 1, 1, 0])));
    }

    #[test]
    fn partial_sums_alone_overcount() {
        let h = hw(3, 0, 2);
        let mu = w(&[0, 2, 0]);
        assert!(h.satisfies_partial_sums(&mu));
        assert!(!h.is_admissible(&mu));
    }

    #[test]
    fn worked_tableaux() {
        let h = hw(4, 2, 1);
        assert_eq!(h.lambda(), w(&[2, 2, 1, 0]));
        let ts = enumerate_tableaux(&h, &w(&[1, 1, 2, 1])).unwrap();
        assert!(ts.contains(&Tableau {
            left: vec![1, 2, 3],
            right: vec![3, 4]
        }));
        assert!(ts.contains(&Tableau {
            left: vec![1, 3, 4],
            right: vec![2, 3]
        }));
        assert_eq!(weight_dim(&hw(5, 2, 1), &w(&[2, 1, 1, 1, 0])).unwrap(), 2);
        assert_eq!(enumerate_tableaux(&h, &h.lambda()).unwrap().len(), 1);
    }

    #[test]
    fn worked_matching() {
        // s = 3, k = 2 on the ones {1..8}; twos elsewhere are irrelevant, so take N = 8 with no twos
        let h = hw(8, 3, 2);
        let t = Tableau {
            left: vec![1, 2, 3, 6, 7],
            right: vec![4, 5, 8],
        };
        let a = phi(&h, &t).unwrap();
        assert_eq!(a.free_arcs(), vec![(2, 5), (3, 4), (7, 8)]);
        assert_eq!(a.left_assign(), vec![6, 1]);
        let mu = w(&[1; 8]);
        assert_eq!(psi(&h, &mu, &a).unwrap(), t);
    }

    #[test]
    fn bijection_small() {
        for n in 2..=5 {
            for s in 0..=3 {
                for k in 0..=3 - s {
                    let Ok(h) = HighestWeight::new(n, s, k) else { continue };
                    for mu in h.admissible_weights() {
                        let ts = enumerate_tableaux(&h, &mu).unwrap();
                        let ms = enumerate_matchings(weight_triple(&h, &mu).unwrap()).unwrap();
                        assert_eq!(ts.len(), ms.len(), "{h} {mu}");
                        for t in &ts {
                            assert_eq!(&psi(&h, &mu, &phi(&h, t).unwrap()).unwrap(), t);
                        }
                        for a in &ms {
                            assert_eq!(&phi(&h, &psi(&h, &mu, a).unwrap()).unwrap(), a);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn functor_cases() {
        let h = hw(2, 1, 0);
        let (t, nu) = functor_tangle(&h, 1, &w(&[1, 1]), Direction::E).unwrap().unwrap();
        assert_eq!(t.slices(), &[Slice::Cap(0)]);
        assert_eq!(nu, w(&[2, 0]));
        let (t, _) = functor_tangle(&h, 1, &w(&[2, 0]), Direction::F).unwrap().unwrap();
        assert_eq!(t.slices(), &[Slice::Cup(0)]);
        assert!(functor_tangle(&h, 1, &w(&[2, 0]), Direction::E).unwrap().is_none());
        assert!(functor_tangle(&h, 2, &w(&[2, 0]), Direction::E).is_err());

        let h = hw(6, 2, 2);
        let (t, nu) = functor_tangle(&h, 3, &w(&[1, 1, 0, 1, 2, 1]), Direction::E)
            .unwrap()
            .unwrap();
        assert_eq!((t.bottom(), t.top()), (4, 4));
        assert!(t.slices().is_empty());
        assert_eq!(nu, w(&[1, 1, 1, 0, 2, 1]));
        let h = hw(6, 2, 3);
        let (t, _) = functor_tangle(&h, 3, &w(&[1, 2, 1, 1, 1, 1]), Direction::E)
            .unwrap()
            .unwrap();
        assert_eq!(t.slices(), &[Slice::Cap(1)]);
    }

    #[test]
    fn commutator_on_sl2() {
        let lt = LevelTwo::build(hw(2, 1, 0)).unwrap();
        let e = lt.kgroup_matrix(1, Direction::E).unwrap();
        let f = lt.kgroup_matrix(1, Direction::F).unwrap();
        let c = e.mul(&f).sub(&f.mul(&e));
        let top = lt.weight_index(&w(&[2, 0])).unwrap();
        let g = lt.offset(top);
        assert_eq!(c.get(g, g), LaurentPoly::from_terms([(1, 1), (-1, 1)]));
        let mid = lt.offset(lt.weight_index(&w(&[1, 1])).unwrap());
        assert!(c.get(mid, mid).is_zero());
    }

    #[test]
    fn qrel_small() {
        for (n, s, k) in [(2, 1, 0), (3, 1, 0), (3, 1, 1)] {
            let r = verify_qrel(hw(n, s, k)).unwrap();
            assert!(r.passed(), "{:?}", r.failures().next());
        }
    }

    #[test]
    fn props_small() {
        for (n, s, k) in [(2, 1, 0), (3, 1, 0), (3, 1, 1)] {
            let r = verify_prop1_prop2(hw(n, s, k)).unwrap();
            assert!(r.passed(), "{:?}", r.failures.first());
        }
    }

    #[test]
    fn sl2_oracle() {
        assert_eq!(sl2_invariant_dimension(1, 0, 5).dimension, 5);
        assert_eq!(tensor_power_multiplicities(5), vec![0, 5, 0, 4, 0, 1]);
        assert_eq!(sl2_invariant_dimension(0, 0, 8).dimension, 14);
        assert_eq!(sl2_invariant_dimension(3, 3, 0).dimension, 1);
    }
}
