//! Seeded random inputs for property sweeps.
//!
//! Every generator draws from a [`ChaCha8Rng`], so a seed fixes the whole
//! stream across platforms. `MQK_SEED` overrides the default seed.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::motives::Correspondence;
use crate::quadric::{QuadricClass, QuadricTheory};
use crate::scalar::{GradedScalar, RingSpec};
use crate::series::TruncSeries;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// The seed from `MQK_SEED` (decimal or `0x` hex), or [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("MQK_SEED").ok().and_then(|s| parse_seed(&s)).unwrap_or(DEFAULT_SEED)
}

pub fn parse_seed(s: &str) -> Option<u64> {
    let s = s.trim();
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => s.parse().ok(),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A stream derived from `seed` and a label, so independent sweeps do not
/// share random inputs.
pub fn sub_rng(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a of the label.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    rng(seed ^ h)
}

/// A small nonzero-or-zero integer coefficient times an admissible power of
/// `v` (exponent in `-1..=1` when `v` is invertible, `0..=1` otherwise).
pub fn scalar<R: Rng>(rng: &mut R, ring: RingSpec) -> GradedScalar {
    let c = rng.gen_range(-3i64..=3);
    let e = match (ring.has_v, ring.v_invertible) {
        (false, _) => 0,
        (true, false) => rng.gen_range(0..=1),
        (true, true) => rng.gen_range(-1..=1),
    };
    GradedScalar::monomial(ring, BigRational::from_integer(c.into()), e).expect("admissible exponent")
}

fn exponents<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> Vec<u32> {
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    e
}

/// A polynomial with up to `terms` monomials of degree at most `max_degree`.
pub fn polynomial<R: Rng>(
    rng: &mut R,
    ring: RingSpec,
    nvars: usize,
    trunc: u32,
    max_degree: u32,
    terms: usize,
) -> TruncSeries {
    let parts: Vec<_> = (0..terms)
        .map(|_| {
            let deg = rng.gen_range(0..=max_degree);
            (exponents(rng, nvars, deg), scalar(rng, ring))
        })
        .collect();
    TruncSeries::from_terms(ring, nvars, trunc, parts).expect("matching ring")
}

/// A homogeneous polynomial of the given degree with integer coefficients.
pub fn homogeneous<R: Rng>(rng: &mut R, ring: RingSpec, nvars: usize, trunc: u32, degree: u32, terms: usize) -> TruncSeries {
    let parts: Vec<_> = (0..terms)
        .map(|_| {
            let c = rng.gen_range(-3i64..=3);
            (exponents(rng, nvars, degree), GradedScalar::from_int(ring, c))
        })
        .collect();
    TruncSeries::from_terms(ring, nvars, trunc, parts).expect("matching ring")
}

pub fn class<R: Rng>(rng: &mut R, theory: &QuadricTheory) -> QuadricClass {
    let mut x = theory.zero();
    for e in theory.basis() {
        if rng.gen_bool(0.6) {
            let c = scalar(rng, theory.ring());
            x = x.add(&theory.element(e).scale(&c).expect("same ring")).expect("same theory");
        }
    }
    x
}

/// A correspondence with roughly a third of its matrix entries filled.
pub fn correspondence<R: Rng>(rng: &mut R, theory: &QuadricTheory) -> Correspondence {
    let mut f = Correspondence::zero(theory);
    for a in theory.basis() {
        for b in theory.basis() {
            if rng.gen_bool(0.35) {
                let c = scalar(rng, theory.ring());
                let t = Correspondence::basis_pair(theory, a, b).scale(&c).expect("same ring");
                f = f.add(&t).expect("same theory");
            }
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Base;

    #[test]
    fn seeds_parse() {
        assert_eq!(parse_seed("42"), Some(42));
        assert_eq!(parse_seed("0x2a"), Some(42));
        assert_eq!(parse_seed("nope"), None);
    }

    #[test]
    fn same_seed_same_stream() {
        let ring = RingSpec::laurent(Base::Zloc2, -3);
        let a = polynomial(&mut rng(7), ring, 3, 6, 4, 5);
        let b = polynomial(&mut rng(7), ring, 3, 6, 4, 5);
        assert_eq!(a, b);
        let c = polynomial(&mut sub_rng(7, "x"), ring, 3, 6, 4, 5);
        let d = polynomial(&mut sub_rng(7, "y"), ring, 3, 6, 4, 5);
        assert_ne!(c, d);
    }
}
