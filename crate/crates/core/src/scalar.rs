//! Graded coefficient rings.
//!
//! Every coefficient ring used in this crate has the shape `R[v]` or
//! `R[v, v^-1]` over one of four base rings `R`: the field with two elements,
//! the integers localized at 2, the rationals, or the integers. The variable
//! `v` carries a (typically negative) cohomological degree, so a term
//! `c * v^a` has codimension `a * deg v`.
//!
//! Base scalars are stored as reduced [`BigRational`]s. The representation is
//! shared by all four bases; [`Base::normalize`] enforces the membership rule
//! of each one, so "lies in `Z_(2)`" is something that can be checked rather
//! than assumed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ring of constants underneath the `v`-variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    F2,
    Zloc2,
    Q,
    Z,
}

impl Base {
    /// Checks membership and brings `x` into normal form.
    pub fn normalize(self, x: BigRational) -> Result<BigRational> {
        match self {
            Base::Q => Ok(x),
            Base::Z => {
                if x.is_integer() {
                    Ok(x)
                } else {
                    Err(Error::NotIntegral { value: x.to_string(), target: "Z".into() })
                }
            }
            Base::Zloc2 => {
                if x.denom().is_odd() {
                    Ok(x)
                } else {
                    Err(Error::EvenDenominator(x.to_string()))
                }
            }
            Base::F2 => {
                if x.denom().is_even() {
                    return Err(Error::NotIntegral { value: x.to_string(), target: "F2".into() });
                }
                Ok(if x.numer().is_odd() { BigRational::one() } else { BigRational::zero() })
            }
        }
    }

    /// Normal form after a ring operation on normalized inputs. Only `F2`
    /// needs work here, the other bases are closed under `+`, `-` and `*`.
    #[inline]
    pub(crate) fn fix(self, x: BigRational) -> BigRational {
        match self {
            Base::F2 => {
                if x.numer().is_odd() {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
            _ => x,
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, Base::F2 | Base::Q)
    }

    pub fn contains_half(self) -> bool {
        self == Base::Q
    }

    /// Inverse of a nonzero base scalar, if it is a unit.
    pub fn inverse(self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        let inv = x.recip();
        match self {
            Base::Z if !inv.is_integer() => Err(Error::NotInvertible(x.to_string())),
            Base::Zloc2 if inv.denom().is_even() => Err(Error::EvenDenominator(inv.to_string())),
            _ => Ok(self.fix(inv)),
        }
    }

    /// The field used when ranks and inverses are taken over a fraction field.
    pub fn fraction_field(self) -> Base {
        match self {
            Base::F2 => Base::F2,
            _ => Base::Q,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Base::F2 => "F2",
            Base::Zloc2 => "Z_(2)",
            Base::Q => "Q",
            Base::Z => "Z",
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Describes a coefficient ring `base[v]` or `base[v^±1]`, or just `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub base: Base,
    pub has_v: bool,
    pub v_degree: i32,
    pub v_invertible: bool,
}

impl RingSpec {
    pub const fn plain(base: Base) -> Self {
        RingSpec { base, has_v: false, v_degree: 0, v_invertible: false }
    }

    pub const fn polynomial(base: Base, v_degree: i32) -> Self {
        RingSpec { base, has_v: true, v_degree, v_invertible: false }
    }

    pub const fn laurent(base: Base, v_degree: i32) -> Self {
        RingSpec { base, has_v: true, v_degree, v_invertible: true }
    }

    /// Coefficients of the `n`-th Morava theory: `deg v = 1 - 2^n`.
    pub fn morava(n: u32, base: Base, v_invertible: bool) -> Self {
        RingSpec { base, has_v: true, v_degree: 1 - (1i32 << n), v_invertible }
    }

    pub const fn with_base(self, base: Base) -> Self {
        RingSpec { base, ..self }
    }

    pub fn admits_exponent(&self, e: i32) -> bool {
        match (self.has_v, self.v_invertible) {
            (false, _) => e == 0,
            (true, false) => e >= 0,
            (true, true) => true,
        }
    }

    pub(crate) fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: *self, right: *other })
        }
    }

    /// Whether coefficientwise reduction `self -> target` is a ring map on
    /// the elements it accepts.
    pub fn maps_to(&self, target: &RingSpec) -> bool {
        let base_ok = matches!(
            (self.base, target.base),
            (a, b) if a == b
        ) || matches!(
            (self.base, target.base),
            (Base::Z, _) | (Base::Zloc2, Base::F2 | Base::Q | Base::Z) | (Base::Q, Base::Zloc2 | Base::F2 | Base::Z)
        );
        let v_ok = match (self.has_v, target.has_v) {
            (false, _) => true,
            (true, false) => false,
            (true, true) => self.v_degree == target.v_degree,
        };
        base_ok && v_ok
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.has_v, self.v_invertible) {
            (false, _) => write!(f, "{}", self.base),
            (true, false) => write!(f, "{}[v] (deg v = {})", self.base, self.v_degree),
            (true, true) => write!(f, "{}[v^±1] (deg v = {})", self.base, self.v_degree),
        }
    }
}

/// A Laurent polynomial in `v` with rational coefficients and no stored
/// zeros. The owning ring is tracked by the caller.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct Laurent(BTreeMap<i32, BigRational>);

impl Laurent {
    pub(crate) fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub(crate) fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    pub(crate) fn monomial(c: BigRational, e: i32) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        Laurent(m)
    }

    pub(crate) fn from_int(n: i64, base: Base) -> Self {
        Self::monomial(base.fix(BigRational::from_integer(BigInt::from(n))), 0)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.get(&0).is_some_and(|c| c.is_one())
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> + '_ {
        self.0.iter().map(|(e, c)| (*e, c))
    }

    pub(crate) fn coefficient(&self, e: i32) -> BigRational {
        self.0.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn as_monomial(&self) -> Option<(i32, &BigRational)> {
        if self.0.len() == 1 {
            self.0.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub(crate) fn min_exponent(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub(crate) fn add_term(&mut self, e: i32, c: &BigRational, base: Base) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&e) {
            Some(x) => {
                let s = base.fix(&*x + c);
                if s.is_zero() {
                    self.0.remove(&e);
                } else {
                    *x = s;
                }
            }
            None => {
                self.0.insert(e, c.clone());
            }
        }
    }

    pub(crate) fn add_assign(&mut self, other: &Laurent, base: Base) {
        for (e, c) in other.terms() {
            self.add_term(e, c, base);
        }
    }

    /// `self += a * b`, the inner step of every convolution in the crate.
    pub(crate) fn add_product(&mut self, a: &Laurent, b: &Laurent, base: Base) {
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                let p = base.fix(ca * cb);
                self.add_term(ea + eb, &p, base);
            }
        }
    }

    pub(crate) fn add(&self, other: &Laurent, base: Base) -> Laurent {
        let mut r = self.clone();
        r.add_assign(other, base);
        r
    }

    pub(crate) fn neg(&self, base: Base) -> Laurent {
        Laurent(
            self.0
                .iter()
                .map(|(e, c)| (*e, base.fix(-c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }

    pub(crate) fn sub(&self, other: &Laurent, base: Base) -> Laurent {
        self.add(&other.neg(base), base)
    }

    pub(crate) fn mul(&self, other: &Laurent, base: Base) -> Laurent {
        let mut r = Laurent::zero();
        r.add_product(self, other, base);
        r
    }

    pub(crate) fn scale(&self, c: &BigRational, base: Base) -> Laurent {
        Laurent(
            self.0
                .iter()
                .map(|(e, x)| (*e, base.fix(x * c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        )
    }

    pub(crate) fn shift(&self, k: i32) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (e + k, c.clone())).collect())
    }

    pub(crate) fn map_coefficients(
        &self,
        mut f: impl FnMut(&BigRational) -> Result<BigRational>,
    ) -> Result<Laurent> {
        let mut m = BTreeMap::new();
        for (e, c) in &self.0 {
            let x = f(c)?;
            if !x.is_zero() {
                m.insert(*e, x);
            }
        }
        Ok(Laurent(m))
    }

    /// Exact quotient `self / d` inside `ring`, or `None` when `d` does not
    /// divide `self` there.
    pub(crate) fn exact_div(&self, d: &Laurent, ring: &RingSpec) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let base = ring.base;
        if let Some((ed, cd)) = d.as_monomial() {
            let inv = base.inverse(cd).ok()?;
            let q = self.scale(&inv, base).shift(-ed);
            let ok = q.terms().all(|(e, _)| ring.admits_exponent(e));
            return ok.then_some(q);
        }
        // Long division in K[v] after clearing negative exponents, with K the
        // fraction field of the base; membership is re-checked afterwards.
        let field = base.fraction_field();
        let (dl, dc) = d.0.iter().next_back()?;
        let (dlow, _) = d.0.iter().next()?;
        let inv_lead = field.inverse(dc).ok()?;
        let mut rem = self.clone();
        let mut q = Laurent::zero();
        while let Some((&el, cl)) = rem.0.iter().next_back() {
            let low = rem.min_exponent().unwrap();
            if el - dl < low - dlow {
                return None;
            }
            let c = field.fix(cl * &inv_lead);
            let t = Laurent::monomial(c, el - dl);
            rem = rem.sub(&t.mul(d, field), field);
            q.add_assign(&t, field);
        }
        let q = q.map_coefficients(|c| base.normalize(c.clone())).ok()?;
        let ok = q.terms().all(|(e, _)| ring.admits_exponent(e));
        ok.then_some(q)
    }

    pub(crate) fn display_with(&self, symbol: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&term_string(&abs, e, symbol));
        }
        s
    }
}

/// `c*v^e` with the conventions shared by all compact printers: unit
/// coefficients are omitted in front of a power of `v`.
pub(crate) fn term_string(c: &BigRational, e: i32, symbol: &str) -> String {
    let vpart = match e {
        0 => String::new(),
        1 => symbol.to_string(),
        _ => format!("{symbol}^{e}"),
    };
    if vpart.is_empty() {
        c.to_string()
    } else if c.is_one() {
        vpart
    } else {
        format!("{c}*{vpart}")
    }
}

/// An element of a graded coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedScalar {
    ring: RingSpec,
    poly: Laurent,
}

impl GradedScalar {
    pub(crate) fn from_laurent(ring: RingSpec, poly: Laurent) -> Self {
        GradedScalar { ring, poly }
    }

    pub(crate) fn laurent(&self) -> &Laurent {
        &self.poly
    }

    pub(crate) fn into_laurent(self) -> Laurent {
        self.poly
    }

    pub fn zero(ring: RingSpec) -> Self {
        GradedScalar { ring, poly: Laurent::zero() }
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: RingSpec, n: i64) -> Self {
        GradedScalar { ring, poly: Laurent::from_int(n, ring.base) }
    }

    pub fn from_rational(ring: RingSpec, q: BigRational) -> Result<Self> {
        Ok(GradedScalar { ring, poly: Laurent::monomial(ring.base.normalize(q)?, 0) })
    }

    /// `c * v^e`, checked against the ring.
    pub fn monomial(ring: RingSpec, c: BigRational, e: i32) -> Result<Self> {
        if !ring.admits_exponent(e) {
            return Err(Error::VExponentOutOfRing { exponent: e, ring });
        }
        Ok(GradedScalar { ring, poly: Laurent::monomial(ring.base.normalize(c)?, e) })
    }

    pub fn v_pow(ring: RingSpec, e: i32) -> Result<Self> {
        Self::monomial(ring, BigRational::one(), e)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    /// `(v-exponent, base coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> + '_ {
        self.poly.terms()
    }

    pub fn coefficient(&self, e: i32) -> BigRational {
        self.poly.coefficient(e)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        Ok(GradedScalar { ring: self.ring, poly: self.poly.add(&other.poly, self.ring.base) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        Ok(GradedScalar { ring: self.ring, poly: self.poly.sub(&other.poly, self.ring.base) })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        Ok(GradedScalar { ring: self.ring, poly: self.poly.mul(&other.poly, self.ring.base) })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.ring);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Inverse of a unit: a single term `c*v^e` with `c` a unit of the base
    /// and `v^-e` in the ring.
    pub fn inverse(&self) -> Result<Self> {
        let (e, c) = self
            .poly
            .as_monomial()
            .ok_or_else(|| Error::NotInvertible(self.to_string()))?;
        if !self.ring.admits_exponent(-e) {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let inv = self.ring.base.inverse(c)?;
        Ok(GradedScalar { ring: self.ring, poly: Laurent::monomial(inv, -e) })
    }

    /// Codimension of each term, `exponent * deg v`.
    pub fn codimensions(&self) -> Vec<i64> {
        self.terms().map(|(e, _)| e as i64 * self.ring.v_degree as i64).collect()
    }

    /// The common codimension of all terms, or `None` if they differ. Zero
    /// is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_codim(&self) -> Option<i64> {
        let mut c = self.codimensions().into_iter();
        let first = c.next().unwrap_or(0);
        c.all(|x| x == first).then_some(first)
    }

    /// Coefficientwise image in `target`.
    pub fn reduce_to(&self, target: RingSpec) -> Result<Self> {
        if !self.ring.maps_to(&target) {
            return Err(Error::NoRingMap { from: self.ring, to: target });
        }
        let mut poly = Laurent::zero();
        for (e, c) in self.terms() {
            if !target.admits_exponent(e) {
                return Err(Error::VExponentOutOfRing { exponent: e, ring: target });
            }
            let x = convert_base(c, self.ring.base, target.base)?;
            poly.add_term(e, &x, target.base);
        }
        Ok(GradedScalar { ring: target, poly })
    }

    /// Sends `v` to zero, keeping only the `v^0` coefficient.
    pub fn specialize_v_zero(&self) -> Result<Self> {
        if self.terms().any(|(e, _)| e < 0) {
            return Err(Error::Unsupported("v -> 0 on a negative power of v".into()));
        }
        let ring = RingSpec::plain(self.ring.base);
        Ok(GradedScalar { ring, poly: Laurent::monomial(self.coefficient(0), 0) })
    }

    pub fn display_with(&self, symbol: &str) -> String {
        self.poly.display_with(symbol)
    }
}

pub(crate) fn convert_base(c: &BigRational, from: Base, to: Base) -> Result<BigRational> {
    if from == Base::F2 && to != Base::F2 {
        return Err(Error::NoRingMap { from: RingSpec::plain(from), to: RingSpec::plain(to) });
    }
    match to.normalize(c.clone()) {
        Ok(x) => Ok(x),
        Err(Error::EvenDenominator(v)) => Err(Error::NotIntegral { value: v, target: to.to_string() }),
        Err(e) => Err(e),
    }
}

impl fmt::Display for GradedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display_with("v"))
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &GradedScalar {
            type Output = GradedScalar;
            fn $method(self, rhs: &GradedScalar) -> GradedScalar {
                self.$try(rhs).expect("scalar arithmetic across different rings")
            }
        }
        impl $trait for GradedScalar {
            type Output = GradedScalar;
            fn $method(self, rhs: GradedScalar) -> GradedScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl Neg for &GradedScalar {
    type Output = GradedScalar;
    fn neg(self) -> GradedScalar {
        GradedScalar { ring: self.ring, poly: self.poly.neg(self.ring.base) }
    }
}

impl Neg for GradedScalar {
    type Output = GradedScalar;
    fn neg(self) -> GradedScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn polynomial_identity_over_q() {
        let r = RingSpec::polynomial(Base::Q, -3);
        let v = GradedScalar::v_pow(r, 1).unwrap();
        let one = GradedScalar::one(r);
        let p = (&v + &one) * (&v - &one);
        let expected = GradedScalar::v_pow(r, 2).unwrap() - one;
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "-1 + v^2");
    }

    #[test]
    fn laurent_square_over_f2() {
        let r = RingSpec::laurent(Base::F2, -3);
        let v = GradedScalar::v_pow(r, 1).unwrap();
        assert_eq!(&v * &v, GradedScalar::v_pow(r, 2).unwrap());
        let vinv = v.inverse().unwrap();
        assert!((&v * &vinv).is_one());
    }

    #[test]
    fn odd_denominators_in_zloc2() {
        let r = RingSpec::plain(Base::Zloc2);
        let a = GradedScalar::from_rational(r, q(1, 3)).unwrap();
        let b = GradedScalar::from_rational(r, q(1, 5)).unwrap();
        assert_eq!((a + b).coefficient(0), q(8, 15));
        assert!(matches!(
            GradedScalar::from_rational(r, q(1, 2)),
            Err(Error::EvenDenominator(_))
        ));
        let two = GradedScalar::from_int(r, 2);
        assert!(matches!(two.inverse(), Err(Error::EvenDenominator(_))));
        assert_eq!(GradedScalar::from_int(r, 3).inverse().unwrap().coefficient(0), q(1, 3));
    }

    #[test]
    fn f2_reduces() {
        let r = RingSpec::plain(Base::F2);
        let one = GradedScalar::one(r);
        assert!((&one + &one).is_zero());
        assert_eq!(GradedScalar::from_rational(r, q(3, 5)).unwrap(), one);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = GradedScalar::one(RingSpec::plain(Base::Q));
        let b = GradedScalar::one(RingSpec::plain(Base::Z));
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn negative_power_needs_laurent() {
        let r = RingSpec::polynomial(Base::Q, -1);
        assert!(GradedScalar::v_pow(r, -1).is_err());
        assert!(GradedScalar::v_pow(r, 1).unwrap().inverse().is_err());
    }

    #[test]
    fn homogeneity_and_codimension() {
        let r = RingSpec::morava(2, Base::Zloc2, true);
        let a = GradedScalar::monomial(r, q(2, 1), 1).unwrap();
        assert_eq!(a.homogeneous_codim(), Some(-3));
        let b = &a + &GradedScalar::one(r);
        assert_eq!(b.homogeneous_codim(), None);
        assert_eq!((&a * &a).homogeneous_codim(), Some(-6));
    }

    #[test]
    fn reduction_maps() {
        let z = RingSpec::polynomial(Base::Zloc2, -3);
        let f = RingSpec::polynomial(Base::F2, -3);
        let a = GradedScalar::monomial(z, q(3, 1), 2).unwrap();
        assert_eq!(a.reduce_to(f).unwrap(), GradedScalar::v_pow(f, 2).unwrap());
        let half = GradedScalar::from_rational(RingSpec::plain(Base::Q), q(1, 2)).unwrap();
        assert!(matches!(
            half.reduce_to(RingSpec::plain(Base::Zloc2)),
            Err(Error::NotIntegral { .. })
        ));
        let one_f2 = GradedScalar::one(RingSpec::plain(Base::F2));
        assert!(matches!(
            one_f2.reduce_to(RingSpec::plain(Base::Q)),
            Err(Error::NoRingMap { .. })
        ));
    }

    #[test]
    fn laurent_long_division() {
        let r = RingSpec::polynomial(Base::Q, -1);
        let v = GradedScalar::v_pow(r, 1).unwrap();
        let one = GradedScalar::one(r);
        let num = (&v * &v) - one.clone();
        let den = &v - &one;
        let q = num.laurent().exact_div(den.laurent(), &r).unwrap();
        assert_eq!(GradedScalar::from_laurent(r, q), &v + &one);
        assert!(v.laurent().exact_div(den.laurent(), &r).is_none());
    }
}
