use std::sync::{Arc, OnceLock};

use admface::{AffineSystem, Case, ExtAffineElt, RootDatum};
use proptest::prelude::*;

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        [
            ("A2", "2,0"),
            ("A2", "1,1"),
            ("C2", "1,0"),
            ("C2", "0,1"),
            ("G2", "1,0"),
        ]
        .iter()
        .map(|(l, m)| Case::parse(l, m).unwrap())
        .collect()
    })
}

fn words(label: &'static str) -> impl Strategy<Value = (Arc<AffineSystem>, ExtAffineElt)> {
    let sys = Arc::new(AffineSystem::full(Arc::new(
        RootDatum::from_label(label).unwrap(),
    )));
    let gens = sys.simple_affine_reflections().len();
    prop::collection::vec(0..gens, 0..12).prop_map(move |word| {
        let mut w = ExtAffineElt::identity(sys.datum().rank());
        for i in word {
            w = &sys.simple_affine_reflections()[i] * &w;
        }
        (sys.clone(), w)
    })
}

proptest! {
    #[test]
    fn length_is_inverse_invariant((sys, w) in words("C2")) {
        prop_assert_eq!(sys.length(&w), sys.length(&w.inverse()));
        prop_assert_eq!(sys.length(&w), sys.separating_hyperplanes(&w).len());
    }

    #[test]
    fn decomposition_reassembles((sys, w) in words("G2")) {
        let (word, tau) = sys.decompose(&w);
        prop_assert_eq!(word.len(), sys.length(&w));
        prop_assert_eq!(sys.length(&tau), 0);
        let mut v = tau;
        for &i in word.iter().rev() {
            v = &sys.simple_affine_reflections()[i] * &v;
        }
        prop_assert_eq!(v, w);
    }

    #[test]
    fn bruhat_matches_lower_ideal((sys, w) in words("A2"), (_, v) in words("A2")) {
        let ideal = sys.lower_ideal(&w);
        prop_assert_eq!(sys.bruhat_leq(&v, &w), ideal.contains(&v));
    }

    #[test]
    fn face_map_reverses_order(k in 0usize..5, i in 0usize..200, j in 0usize..200) {
        let c = &cases()[k];
        let adm = c.adm();
        let fd = c.decomposition().unwrap();
        let (i, j) = (i % adm.len(), j % adm.len());
        if adm.leq(i, j) {
            prop_assert!(fd.poset().face_leq(fd.face_map(j), fd.face_map(i)));
        }
        let f = fd.face_map(i);
        prop_assert!(fd.adm_face_for(f).interior.contains(&i));
        prop_assert!(!adm.lambda_indices(i).is_empty());
    }

    #[test]
    fn serialization_round_trips(k in 0usize..5, i in 0usize..200) {
        let c = &cases()[k];
        let adm = c.adm();
        let i = i % adm.len();
        let parsed = c.datum().parse_affine(adm.label(i)).unwrap();
        prop_assert_eq!(&parsed, adm.element(i));
    }
}
