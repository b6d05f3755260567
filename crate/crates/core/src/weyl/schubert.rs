//! Schubert classes in the Chow ring of `G/B` and the characteristic map.
//!
//! On the Schubert basis `X_w` the operator `Δ_i` acts by
//! `Δ_i(X_w) = -X_{ws_i}` when `l(ws_i) = l(w) + 1`. In the descent case it
//! is zero: there `X_w = -Δ_i(X_{ws_i})`, and `Δ_i ∘ Δ_i = 0` for the
//! additive law.
//!
//! The characteristic map sends a homogeneous polynomial `u` of degree `s`
//! to
//!
//! ```text
//! c(u) = (-1)^(l(w0) - s) Σ_{l(w) = s} Δ_w(u) Z_w,     Z_w = X_{w0 w}.
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::TruncSeries;
use crate::weyl::bt::BtContext;
use crate::weyl::group::{SignedPerm, WeylGroup};

/// A finite integer combination of Schubert classes `X_w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchubertComb {
    terms: BTreeMap<SignedPerm, BigInt>,
}

impl SchubertComb {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `X_w`.
    pub fn basis(w: SignedPerm) -> Self {
        let mut c = Self::zero();
        c.terms.insert(w, BigInt::one());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &SignedPerm) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedPerm, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: SignedPerm, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), c * k);
        }
        r
    }
}

impl fmt::Display for SchubertComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "X{w}")?;
            } else {
                write!(f, "{a}·X{w}")?;
            }
        }
        Ok(())
    }
}

/// `Δ_i` on Schubert classes.
pub fn demazure_schubert(group: &WeylGroup, i: usize, c: &SchubertComb) -> SchubertComb {
    let mut r = SchubertComb::zero();
    for (w, k) in c.terms() {
        if group.is_right_ascent(w, i) {
            r.add_term(w.mul(group.simple_reflection(i)), -k.clone());
        }
    }
    r
}

/// `Δ_{i_1} ∘ ⋯ ∘ Δ_{i_k}` on Schubert classes, last letter first.
pub fn demazure_schubert_word(group: &WeylGroup, word: &[usize], c: &SchubertComb) -> SchubertComb {
    word.iter().rev().fold(c.clone(), |acc, &i| demazure_schubert(group, i, &acc))
}

/// The reversed reduced word of `w^-1 w0`: as an operator it carries `X_w`
/// to `±X_{w0}`.
pub fn duality_word(group: &WeylGroup, w: &SignedPerm) -> Vec<usize> {
    let u = w.inverse().mul(&group.longest_element());
    let mut word = group.reduced_word(&u);
    word.reverse();
    word
}

/// The characteristic map at the level of Chow groups. `ctx` must use the
/// additive law, and `u` must be homogeneous of degree `s` with
/// `s < ctx.trunc()`.
pub fn char_map_chow(group: &WeylGroup, ctx: &BtContext, u: &TruncSeries) -> Result<SchubertComb> {
    let s = match u.homogeneous_codim() {
        Some(s) if s >= 0 && u.terms().all(|(m, _)| m.degree() as i64 == s) => s as usize,
        _ => return Err(Error::NotHomogeneous),
    };
    if u.trunc() <= s as u32 {
        return Err(Error::PreconditionViolated(format!(
            "degree {s} needs truncation above {s}, got {}",
            u.trunc()
        )));
    }
    let w0 = group.longest_element();
    let lw0 = group.length(&w0);
    let mut r = SchubertComb::zero();
    if s > lw0 {
        return Ok(r);
    }
    for w in group.elements().iter().filter(|w| group.length(w) == s) {
        let word = group.reduced_word(w);
        let c = ctx.demazure_word(&word, u)?;
        let k = integer_constant(&c)?;
        r.add_term(w0.mul(w), k);
    }
    if (lw0 - s) % 2 == 1 {
        r = r.scale(&-BigInt::one());
    }
    Ok(r)
}

fn integer_constant(c: &TruncSeries) -> Result<BigInt> {
    if c.terms().any(|(m, _)| m.degree() > 0) {
        return Err(Error::NotHomogeneous);
    }
    let k = c.constant_term();
    if k.terms().any(|(e, _)| e != 0) {
        return Err(Error::NotHomogeneous);
    }
    let q = k.coefficient(0);
    if !q.is_integer() {
        return Err(Error::NotIntegral { value: q.to_string(), target: "Z".into() });
    }
    Ok(q.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::FormalGroupLaw;
    use crate::series::parse_polynomial;
    use crate::weyl::group::{RootDatum, RootType};

    fn setup(ty: RootType, l: usize, t: u32) -> (WeylGroup, BtContext) {
        let d = RootDatum::new(ty, l).unwrap();
        (WeylGroup::new(d.clone()), BtContext::new(d, FormalGroupLaw::additive(t).unwrap(), t).unwrap())
    }

    #[test]
    fn ascent_and_top_class() {
        let (g, _) = setup(RootType::B, 2, 4);
        let e = g.identity();
        let x = demazure_schubert(&g, 1, &SchubertComb::basis(e.clone()));
        assert_eq!(x, SchubertComb::basis(g.simple_reflection(1).clone()).scale(&-BigInt::one()));
        let w0 = g.longest_element();
        for i in 1..=2 {
            assert!(demazure_schubert(&g, i, &SchubertComb::basis(w0.clone())).is_zero());
        }
    }

    #[test]
    fn duality_in_b3() {
        let (g, _) = setup(RootType::B, 3, 4);
        let w0 = g.longest_element();
        for w in g.elements() {
            let word = duality_word(&g, w);
            let img = demazure_schubert_word(&g, &word, &SchubertComb::basis(w.clone()));
            let c = img.coefficient(&w0);
            assert!(c == BigInt::one() || c == -BigInt::one(), "{w}: {img}");
            assert_eq!(img.terms().count(), 1);
            for w2 in g.elements().iter().filter(|x| g.length(x) == g.length(w) && *x != w) {
                assert!(demazure_schubert_word(&g, &word, &SchubertComb::basis(w2.clone())).is_zero());
            }
        }
    }

    #[test]
    fn char_map_small_cases() {
        let (g, ctx) = setup(RootType::B, 2, 5);
        let r = ctx.fgl().ring();
        let lw0 = g.length(&g.longest_element());
        let one = TruncSeries::one(r, 2, 5);
        let c = char_map_chow(&g, &ctx, &one).unwrap();
        let sign = if lw0 % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        assert_eq!(c, SchubertComb::basis(g.longest_element()).scale(&sign));

        let x1 = parse_polynomial("x1", r, 2, 5).unwrap();
        let c = char_map_chow(&g, &ctx, &x1).unwrap();
        let z_s1 = g.longest_element().mul(g.simple_reflection(1));
        let sign = if (lw0 - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        assert_eq!(c, SchubertComb::basis(z_s1).scale(&sign));

        let bad = parse_polynomial("x1 + x2^2", r, 2, 5).unwrap();
        assert!(matches!(char_map_chow(&g, &ctx, &bad), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn char_map_intertwines() {
        let (g, ctx) = setup(RootType::B, 2, 5);
        let r = ctx.fgl().ring();
        for src in ["x1^2 - 3*x1*x2", "x1^3 + 2*x2^3 - x1*x2^2", "x2", "x1*x2"] {
            let u = parse_polynomial(src, r, 2, 5).unwrap();
            for i in 1..=2 {
                let lhs = demazure_schubert(&g, i, &char_map_chow(&g, &ctx, &u).unwrap());
                let du = ctx.demazure(i, &u).unwrap();
                let rhs = if du.is_zero() { SchubertComb::zero() } else { char_map_chow(&g, &ctx, &du).unwrap() };
                assert_eq!(lhs, rhs, "u = {src}, i = {i}");
            }
        }
    }
}
