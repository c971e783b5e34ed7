use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use arclab::algebra::{smith_normal_form, IntegerMatrix, LaurentPoly};
use arclab::level_two::{enumerate_tableaux, phi, psi, weight_triple, HighestWeight};
use arclab::planar::{enumerate_matchings, FlatTangle, Matching, Triple};
use arclab::rings::{ArcRing, RingElement};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..6, -5i64..5), 0..5).prop_map(LaurentPoly::from_terms)
}

fn coherent_triple(max: usize) -> impl Strategy<Value = Triple> {
    (0..=max, 0..=3usize, 0..=3usize).prop_filter_map("incoherent", move |(n, k, l)| {
        Triple::new(n, k, l).ok().filter(|t| t.points() <= max + 2)
    })
}

fn ring(t: Triple) -> std::sync::Arc<ArcRing> {
    static CACHE: OnceLock<Mutex<HashMap<Triple, std::sync::Arc<ArcRing>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&t) {
        return r.clone();
    }
    let r = std::sync::Arc::new(ArcRing::build(t).unwrap());
    cache.lock().unwrap().insert(t, r.clone());
    r
}

fn element(r: &ArcRing, picks: &[(usize, i64)]) -> RingElement {
    RingElement::from_terms(picks.iter().map(|&(i, c)| (i % r.dim(), c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()).bar(), a.bar() * b.bar());
        prop_assert_eq!(a.shift(3).shift(-3), a);
    }

    #[test]
    fn smith_form_factors(rows in prop::collection::vec(prop::collection::vec(-6i64..6, 4), 1..5)) {
        let m = IntegerMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left.mul(&s.diagonal).mul(&s.right), m.clone());
        prop_assert_eq!(s.left_inverse.mul(&m).mul(&s.right_inverse), s.diagonal.clone());
        prop_assert_eq!(s.left.mul(&s.left_inverse), IntegerMatrix::identity(m.rows()));
        prop_assert_eq!(s.right.mul(&s.right_inverse), IntegerMatrix::identity(m.cols()));
        let d: Vec<BigInt> = s.factors();
        for w in d.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
    }

    #[test]
    fn matching_roundtrips(t in coherent_triple(8), pick in any::<usize>(), e in 0..3usize) {
        let ms = enumerate_matchings(t).unwrap();
        let a = &ms[pick % ms.len()];
        let json = serde_json::to_string(a).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Matching>(&json).unwrap(), a);
        prop_assert_eq!(&a.reflect().reflect(), a);
        let back = a.stabilize(e).destabilize(e);
        prop_assert_eq!(back.as_ref(), Some(a));
        for p in 0..a.points() {
            prop_assert_eq!(a.partner(a.partner(p)), p);
        }
    }

    #[test]
    fn ring_is_associative_with_unit(
        t in coherent_triple(4),
        x in prop::collection::vec((any::<usize>(), -3i64..4), 1..4),
        y in prop::collection::vec((any::<usize>(), -3i64..4), 1..4),
        z in prop::collection::vec((any::<usize>(), -3i64..4), 1..4),
    ) {
        let r = ring(t);
        let (x, y, z) = (element(&r, &x), element(&r, &y), element(&r, &z));
        prop_assert_eq!(r.multiply(&r.multiply(&x, &y), &z), r.multiply(&x, &r.multiply(&y, &z)));
        prop_assert_eq!(r.multiply(&r.unit(), &x), x.clone());
        prop_assert_eq!(r.multiply(&x, &r.unit()), x);
    }

    #[test]
    fn tableau_bijection_roundtrips(n in 2..=6usize, s in 0..=2usize, k in 0..=2usize, pick in any::<usize>()) {
        let Ok(hw) = HighestWeight::new(n, s, k) else { return Ok(()) };
        let ws = hw.admissible_weights();
        let mu = &ws[pick % ws.len()];
        let ts = enumerate_tableaux(&hw, mu).unwrap();
        let ms = enumerate_matchings(weight_triple(&hw, mu).unwrap()).unwrap();
        prop_assert_eq!(ts.len(), ms.len());
        for t in &ts {
            let a = phi(&hw, t).unwrap();
            prop_assert!(ms.contains(&a));
            prop_assert_eq!(&psi(&hw, mu, &a).unwrap(), t);
        }
    }

    #[test]
    fn tangle_composition_is_associative(seed in any::<u64>(), a in 0..4usize, b in 0..4usize, c in 0..4usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (2 * a, 2 * b, 2 * c);
        let t1 = FlatTangle::random(a, b, 1, &mut rng).unwrap();
        let t2 = FlatTangle::random(b, c, 1, &mut rng).unwrap();
        let t3 = FlatTangle::random(c, a, 0, &mut rng).unwrap();
        let left = t1.then(&t2).unwrap().then(&t3).unwrap();
        let right = t1.then(&t2.then(&t3).unwrap()).unwrap();
        prop_assert_eq!(left.normal_form(), right.normal_form());
        prop_assert_eq!((left.bottom(), left.top()), (a, a));
    }
}
