use mackeykit::abgroup::FinPresAbGroup;
use mackeykit::burnside::{
    burnside_ring, compose, dual, orbits, random_element, table_of_marks, tensor, BurnsideElement,
};
use mackeykit::group::{FiniteGroup, GroupRef};
use mackeykit::gset::GSet;
use mackeykit::io;
use mackeykit::mackey::{burnside_functor, fixed_point_mackey, MackeyFunctor, Representation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GROUPS: &[&str] = &["trivial", "C2", "C3", "C4", "C2xC2", "S3", "C6"];

fn grp(i: usize) -> GroupRef {
    FiniteGroup::named(GROUPS[i % GROUPS.len()]).unwrap()
}

fn sets(g: &GroupRef) -> Vec<GSet> {
    let mut v = orbits(g);
    v.push(GSet::from_orbits(g, &[(0, 1), (g.top_class(), 1)]));
    v
}

fn span(x: &GSet, y: &GSet, rng: &mut ChaCha8Rng) -> BurnsideElement {
    random_element(x, y, rng, 3, 3).unwrap()
}

fn functor(g: &GroupRef, kind: usize) -> MackeyFunctor {
    match kind % 4 {
        0 => burnside_functor(g),
        1 => fixed_point_mackey(&Representation::trivial(g, FinPresAbGroup::free(1)).unwrap())
            .unwrap(),
        2 => fixed_point_mackey(&Representation::trivial(g, FinPresAbGroup::cyclic(6)).unwrap())
            .unwrap(),
        _ => fixed_point_mackey(&Representation::permutation(&GSet::orbit(g, 0), 0).unwrap())
            .unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative_and_unital(gi in 0usize..7, seed: u64, picks in prop::array::uniform4(0usize..8)) {
        let g = grp(gi);
        let s = sets(&g);
        let [w, x, y, z] = picks.map(|i| s[i % s.len()].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (span(&w, &x, &mut rng), span(&x, &y, &mut rng), span(&y, &z, &mut rng));
        let l = compose(&c, &compose(&b, &a).unwrap()).unwrap();
        let r = compose(&compose(&c, &b).unwrap(), &a).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(compose(&BurnsideElement::identity(&x), &a).unwrap(), a.clone());
        prop_assert_eq!(compose(&a, &BurnsideElement::identity(&w)).unwrap(), a);
    }

    #[test]
    fn composition_is_bilinear(gi in 0usize..7, seed: u64, picks in prop::array::uniform3(0usize..8)) {
        let g = grp(gi);
        let s = sets(&g);
        let [x, y, z] = picks.map(|i| s[i % s.len()].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a1, a2, b) = (span(&x, &y, &mut rng), span(&x, &y, &mut rng), span(&y, &z, &mut rng));
        let lhs = compose(&b, &a1.add(&a2).unwrap()).unwrap();
        let rhs = compose(&b, &a1).unwrap().add(&compose(&b, &a2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(compose(&b, &a1.sub(&a1).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn tensor_interchange(gi in 0usize..6, seed: u64, picks in prop::array::uniform6(0usize..5)) {
        let g = grp(gi);
        let s = orbits(&g);
        let [x, y, z, x2, y2, z2] = picks.map(|i| s[i % s.len()].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s1, s2) = (span(&x, &y, &mut rng), span(&y, &z, &mut rng));
        let (t1, t2) = (span(&x2, &y2, &mut rng), span(&y2, &z2, &mut rng));
        let l = compose(&tensor(&s2, &t2).unwrap(), &tensor(&s1, &t1).unwrap()).unwrap();
        let r = tensor(&compose(&s2, &s1).unwrap(), &compose(&t2, &t1).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn duality_is_an_anti_involution(gi in 0usize..7, seed: u64, picks in prop::array::uniform3(0usize..8)) {
        let g = grp(gi);
        let s = sets(&g);
        let [x, y, z] = picks.map(|i| s[i % s.len()].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (span(&x, &y, &mut rng), span(&y, &z, &mut rng));
        prop_assert_eq!(dual(&dual(&a)), a.clone());
        prop_assert_eq!(dual(&compose(&b, &a).unwrap()), compose(&dual(&a), &dual(&b)).unwrap());
    }

    #[test]
    fn evaluation_is_functorial(gi in 0usize..7, kind in 0usize..4, seed: u64, picks in prop::array::uniform3(0usize..8)) {
        let g = grp(gi);
        let m = functor(&g, kind);
        let s = sets(&g);
        let [x, y, z] = picks.map(|i| s[i % s.len()].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (span(&x, &y, &mut rng), span(&y, &z, &mut rng));
        let whole = m.eval_span(&compose(&b, &a).unwrap()).unwrap();
        let parts = &m.eval_span(&b).unwrap() * &m.eval_span(&a).unwrap();
        prop_assert_eq!(whole, m.value(&z).normalize_matrix(&parts));
    }

    #[test]
    fn marks_are_a_ring_homomorphism(gi in 0usize..7, a in prop::collection::vec(-3i64..4, 5), b in prop::collection::vec(-3i64..4, 5)) {
        let g = grp(gi);
        let k = g.class_count();
        let ring = burnside_ring(&g);
        let marks = table_of_marks(&g);
        let (a, b) = (&a[..k.min(5)], &b[..k.min(5)]);
        if a.len() < k { return Ok(()); }
        let ab = ring.multiply(a, b);
        let phi = |v: &[i64]| -> Vec<i64> {
            (0..k).map(|j| (0..k).map(|i| v[i] * marks[(i, j)].to_i64().unwrap()).sum()).collect()
        };
        let (pa, pb, pab) = (phi(a), phi(b), phi(&ab));
        for j in 0..k {
            prop_assert_eq!(pab[j], pa[j] * pb[j]);
        }
    }

    #[test]
    fn spans_survive_json(gi in 0usize..7, seed: u64, picks in prop::array::uniform2(0usize..8)) {
        let g = grp(gi);
        let s = sets(&g);
        let [x, y] = picks.map(|i| s[i % s.len()].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = span(&x, &y, &mut rng);
        prop_assert_eq!(io::span_from_json(&io::span_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn mackey_functors_survive_json(gi in 0usize..7, kind in 0usize..4) {
        let g = grp(gi);
        let m = functor(&g, kind);
        let text = io::mackey_to_json(&m);
        let back = io::mackey_from_json(&text).unwrap();
        back.validate().unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(io::mackey_to_json(&back), text);
    }

    #[test]
    fn parsers_never_panic(text in ".{0,200}") {
        let _ = io::group_from_json(&text);
        let _ = io::gset_from_json(&text);
        let _ = io::mackey_from_json(&text);
        let _ = io::green_from_json(&text);
        let _ = io::complex_from_json(&text);
        let _ = io::span_from_json(&text);
    }

    #[test]
    fn perturbed_documents_never_panic(gi in 0usize..4, kind in 0usize..4, pos in 0usize..4096, byte in 0u8..128) {
        let g = grp(gi);
        let mut text = io::mackey_to_json(&functor(&g, kind)).into_bytes();
        let i = pos % text.len();
        text[i] = byte;
        if let Ok(s) = String::from_utf8(text) {
            if let Ok(m) = io::mackey_from_json(&s) {
                prop_assert!(m.validate().is_ok());
            }
        }
    }
}
