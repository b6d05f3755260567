use mqk::random;
use mqk::scalar::{Base, GradedScalar, RingSpec};
use mqk::TruncSeries;
use proptest::prelude::*;

const NVARS: usize = 3;
const TRUNC: u32 = 6;

fn rings() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        Just(RingSpec::laurent(Base::Zloc2, -3)),
        Just(RingSpec::polynomial(Base::Zloc2, -1)),
        Just(RingSpec::laurent(Base::F2, -7)),
        Just(RingSpec::plain(Base::Q)),
    ]
}

fn poly(ring: RingSpec, seed: u64, label: &str) -> TruncSeries {
    random::polynomial(&mut random::sub_rng(seed, label), ring, NVARS, TRUNC, TRUNC, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(ring in rings(), seed in any::<u64>()) {
        let (a, b, c) = (poly(ring, seed, "a"), poly(ring, seed, "b"), poly(ring, seed, "c"));
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(
            a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
            a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
            a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.try_mul(&TruncSeries::one(ring, NVARS, TRUNC)).unwrap(), a);
    }

    #[test]
    fn exact_division_undoes_multiplication(seed in any::<u64>(), e in prop::collection::vec(0u32..2, NVARS)) {
        let ring = RingSpec::laurent(Base::Q, -3);
        let a = poly(ring, seed, "a");
        // A divisor whose lowest-degree part is a single monomial with a unit coefficient.
        let unit = GradedScalar::from_int(ring, 3).try_mul(&GradedScalar::v_pow(ring, 1).unwrap()).unwrap();
        let tail = random::homogeneous(&mut random::sub_rng(seed, "tail"), ring, NVARS, TRUNC, e.iter().sum::<u32>() + 1, 3);
        let b = TruncSeries::monomial(&unit, e.clone(), TRUNC).try_add(&tail).unwrap();
        let r = b.order().unwrap();
        let q = a.try_mul(&b).unwrap().exact_div(&b).unwrap();
        prop_assert_eq!(q.trunc(), TRUNC - r);
        prop_assert_eq!(q, a.truncated(TRUNC - r).unwrap());
    }

    #[test]
    fn reduction_mod_2_is_a_ring_map(seed in any::<u64>()) {
        let src = RingSpec::laurent(Base::Zloc2, -3);
        let dst = RingSpec::laurent(Base::F2, -3);
        let (a, b) = (poly(src, seed, "a"), poly(src, seed, "b"));
        let red = |x: &TruncSeries| x.reduce_coefficients(dst).unwrap();
        prop_assert_eq!(red(&a.try_add(&b).unwrap()), red(&a).try_add(&red(&b)).unwrap());
        prop_assert_eq!(red(&a.try_mul(&b).unwrap()), red(&a).try_mul(&red(&b)).unwrap());
        prop_assert_eq!(red(&a.scale(&GradedScalar::from_int(src, 2)).unwrap()), TruncSeries::zero(dst, NVARS, TRUNC));
    }

    #[test]
    fn substitution_respects_products(seed in any::<u64>()) {
        let ring = RingSpec::laurent(Base::Zloc2, -3);
        let (a, b) = (poly(ring, seed, "a"), poly(ring, seed, "b"));
        let mut rng = random::sub_rng(seed, "args");
        let args: Vec<TruncSeries> = (0..NVARS)
            .map(|_| random::homogeneous(&mut rng, ring, NVARS, TRUNC, 1, 2)
                .try_add(&random::homogeneous(&mut rng, ring, NVARS, TRUNC, 2, 2)).unwrap())
            .collect();
        let sub = |x: &TruncSeries| x.substitute(&args).unwrap();
        prop_assert_eq!(sub(&a.try_mul(&b).unwrap()), sub(&a).try_mul(&sub(&b)).unwrap());
    }
}

#[test]
fn division_by_zero_is_an_error() {
    let ring = RingSpec::plain(Base::Q);
    let a = TruncSeries::var(ring, 2, 4, 0);
    assert!(a.exact_div(&TruncSeries::zero(ring, 2, 4)).is_err());
    assert!(TruncSeries::one(ring, 2, 4).exact_div(&a).is_err());
}

#[test]
fn mixed_rings_are_rejected() {
    let a = TruncSeries::one(RingSpec::plain(Base::Q), 1, 3);
    let b = TruncSeries::one(RingSpec::plain(Base::F2), 1, 3);
    assert!(a.try_add(&b).is_err());
    assert!(TruncSeries::one(RingSpec::plain(Base::F2), 1, 3).reduce_coefficients(RingSpec::plain(Base::Q)).is_err());
}
