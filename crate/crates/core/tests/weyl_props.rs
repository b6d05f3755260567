use mqk::fgl::{FormalGroupLaw, MoravaSpec};
use mqk::random;
use mqk::scalar::Base;
use mqk::weyl::{BtContext, RootDatum, RootType, WeylGroup, SQUARE_RELATION_SIGN};
use proptest::prelude::*;

fn datum() -> impl Strategy<Value = RootDatum> {
    prop_oneof![
        Just(RootDatum::new(RootType::B, 2).unwrap()),
        Just(RootDatum::new(RootType::B, 3).unwrap()),
        Just(RootDatum::new(RootType::D, 3).unwrap()),
        Just(RootDatum::new(RootType::D, 4).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn additive_operators_are_nilpotent_and_braid(datum in datum(), seed in any::<u64>()) {
        let t = 6;
        let ctx = BtContext::new(datum.clone(), FormalGroupLaw::additive(t).unwrap(), t).unwrap();
        let u = random::polynomial(&mut random::rng(seed), ctx.fgl().ring(), datum.rank, t, 4, 5);
        let l = datum.rank;
        for i in 1..=l {
            prop_assert!(ctx.demazure_word(&[i, i], &u).unwrap().is_zero());
            for j in i + 1..=l {
                let m = datum.braid_order(i, j);
                if m > 4 {
                    continue;
                }
                let a: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
                let b: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
                let tt = t - m as u32;
                prop_assert_eq!(
                    ctx.demazure_word(&a, &u).unwrap().truncated(tt).unwrap(),
                    ctx.demazure_word(&b, &u).unwrap().truncated(tt).unwrap()
                );
            }
        }
    }

    #[test]
    fn reflections_square_to_one(datum in datum(), seed in any::<u64>()) {
        let f = FormalGroupLaw::morava(MoravaSpec::new(2, Base::Zloc2, true), 7).unwrap();
        let ctx = BtContext::new(datum.clone(), f, 7).unwrap();
        let u = random::polynomial(&mut random::rng(seed), ctx.fgl().ring(), datum.rank, 7, 5, 4);
        for i in 1..=datum.rank {
            let s = ctx.weyl_action(i, &u).unwrap();
            prop_assert_eq!(ctx.weyl_action(i, &s).unwrap(), u.clone());
        }
    }

    #[test]
    fn square_relation_holds_for_k2(seed in any::<u64>()) {
        let datum = RootDatum::new(RootType::B, 2).unwrap();
        let f = FormalGroupLaw::morava(MoravaSpec::new(2, Base::Zloc2, true), 8).unwrap();
        let ctx = BtContext::new(datum, f, 8).unwrap();
        let u = random::polynomial(&mut random::rng(seed), ctx.fgl().ring(), 2, 8, 5, 4);
        for i in 1..=2 {
            let s = ctx.square_relation_sign(i, &u).unwrap();
            prop_assert!(s == Some(SQUARE_RELATION_SIGN) || s == Some(0), "got {:?}", s);
        }
    }

    #[test]
    fn lengths_are_word_lengths(datum in datum(), seed in any::<u64>()) {
        let g = WeylGroup::new(datum);
        let w = &g.elements()[(seed as usize) % g.order()];
        let word = g.reduced_word(w);
        prop_assert_eq!(word.len(), g.length(w));
        prop_assert_eq!(&g.word_element(&word), w);
        prop_assert!(g.is_reduced(&word));
        prop_assert_eq!(g.length(&w.inverse()), g.length(w));
    }
}
