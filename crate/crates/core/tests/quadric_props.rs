use mqk::motives::{Correspondence, Decomposition};
use mqk::quadric::{QuadricTheory, TheoryKind};
use mqk::random;
use mqk::scalar::Base;
use proptest::prelude::*;

fn theories() -> impl Strategy<Value = QuadricTheory> {
    let kinds = prop_oneof![
        Just(TheoryKind::Chow),
        Just(TheoryKind::K0),
        (2u32..=3).prop_map(|n| TheoryKind::Morava { n, connective: false }),
        (2u32..=3).prop_map(|n| TheoryKind::Morava { n, connective: true }),
    ];
    let bases = prop_oneof![Just(Base::F2), Just(Base::Zloc2), Just(Base::Q)];
    (kinds, bases, 1u32..=9).prop_map(|(k, b, dim)| QuadricTheory::standard(k, b, dim).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classes_form_a_commutative_ring(q in theories(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let (x, y, z) = (random::class(&mut rng, &q), random::class(&mut rng, &q), random::class(&mut rng, &q));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&q.one()).unwrap(), x.clone());
        let chi = x.add(&y).unwrap().pushforward_point();
        prop_assert_eq!(chi, x.pushforward_point().try_add(&y.pushforward_point()).unwrap());
    }

    #[test]
    fn h_lowers_l_index(q in theories()) {
        for i in 1..=q.d() as i64 {
            prop_assert_eq!(q.h(1).mul(&q.l(i).unwrap()).unwrap(), q.l(i - 1).unwrap());
        }
        prop_assert!(q.h(1).mul(&q.l(0).unwrap()).unwrap().is_zero());
        prop_assert_eq!(q.l(0).unwrap().pushforward_point(), q.pn_class(0));
    }

    #[test]
    fn correspondences_compose_associatively(q in theories(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let f = random::correspondence(&mut rng, &q);
        let g = random::correspondence(&mut rng, &q);
        let h = random::correspondence(&mut rng, &q);
        prop_assert_eq!(f.compose(&g).unwrap().compose(&h).unwrap(), f.compose(&g.compose(&h).unwrap()).unwrap());
        prop_assert_eq!(f.transpose().transpose(), f.clone());
        prop_assert_eq!(f.compose(&g).unwrap().transpose(), g.transpose().compose(&f.transpose()).unwrap());
        let x = random::class(&mut rng, &q);
        prop_assert_eq!(g.compose(&f).unwrap().apply(&x).unwrap(), f.apply(&g.apply(&x).unwrap()).unwrap());
    }

    #[test]
    fn diagonal_is_a_unit(q in theories(), seed in any::<u64>()) {
        let delta = Correspondence::diagonal_from_pairing(&q).unwrap();
        let f = random::correspondence(&mut random::rng(seed), &q);
        prop_assert_eq!(delta.compose(&f).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&delta).unwrap(), f);
        prop_assert!(delta.is_idempotent());
    }

    #[test]
    fn decomposition_pieces_sum_to_diagonal(n in 2u32..=3, dim in 1u32..=12) {
        let dec = Decomposition::new(n, dim).unwrap();
        let mut sum = Correspondence::zero(&dec.theory);
        for p in dec.projectors() {
            prop_assert!(p.corr.is_idempotent(), "{} not idempotent", p.name);
            sum = sum.add(&p.corr).unwrap();
        }
        prop_assert_eq!(sum, dec.diagonal.clone());
        prop_assert_eq!(dec.projectors().count() as i64, 2 * dec.shape.d + 2);
    }
}
