//! One-dimensional commutative formal group laws.
//!
//! Three families are built in: the additive law `x + y`, the multiplicative
//! law `x + y - βxy`, and the n-th Morava law. The Morava law is defined by
//! its 2-typical logarithm
//!
//! ```text
//! l(t) = Σ_k 2^-k v^((2^nk - 1)/(2^n - 1)) t^(2^nk)
//! ```
//!
//! over `Q[v]`; the law itself is `exp(l(x) + l(y))`, whose coefficients are
//! checked to be 2-local integers before being reduced to the requested base.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{Base, GradedScalar, RingSpec};
use crate::series::TruncSeries;

/// Parameters of a Morava law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MoravaSpec {
    pub n: u32,
    pub base: Base,
    /// `false` gives the connective theory over `base[v]`.
    pub v_invertible: bool,
}

impl MoravaSpec {
    pub fn new(n: u32, base: Base, v_invertible: bool) -> Self {
        MoravaSpec { n, base, v_invertible }
    }

    pub fn ring(&self) -> RingSpec {
        RingSpec::morava(self.n, self.base, self.v_invertible)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LawKind {
    Additive,
    /// `x + y - βxy`, with `β` the ring generator `v` of degree -1.
    Multiplicative { beta_unit: bool },
    Morava { n: u32 },
    /// A law supplied directly as a series.
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalGroupLaw {
    kind: LawKind,
    ring: RingSpec,
    trunc: u32,
    f: TruncSeries,
    log: Option<TruncSeries>,
    exp: Option<TruncSeries>,
    additive_to_truncation: bool,
}

/// Default truncation for the Morava law: every check involving the
/// `[2]`-series needs degree at least `2^n`.
pub fn default_morava_trunc(n: u32, requested: u32) -> u32 {
    requested.max((1 << n) + 4)
}

impl FormalGroupLaw {
    /// `F = x + y` over `Z`.
    pub fn additive(trunc: u32) -> Result<Self> {
        check_trunc(trunc, 1)?;
        let ring = RingSpec::plain(Base::Z);
        let f = TruncSeries::var(ring, 2, trunc, 0) + TruncSeries::var(ring, 2, trunc, 1);
        let qring = ring.with_base(Base::Q);
        let t = TruncSeries::var(qring, 1, trunc, 0);
        Ok(FormalGroupLaw {
            kind: LawKind::Additive,
            ring,
            trunc,
            f,
            log: Some(t.clone()),
            exp: Some(t),
            additive_to_truncation: false,
        })
    }

    /// `F = x + y - βxy` over `Z[β]`, or `Z[β^±1]` when `beta_unit`.
    pub fn multiplicative(beta_unit: bool, trunc: u32) -> Result<Self> {
        check_trunc(trunc, 2)?;
        let ring = if beta_unit {
            RingSpec::laurent(Base::Z, -1)
        } else {
            RingSpec::polynomial(Base::Z, -1)
        };
        let x = TruncSeries::var(ring, 2, trunc, 0);
        let y = TruncSeries::var(ring, 2, trunc, 1);
        let beta = GradedScalar::v_pow(ring, 1)?;
        let f = &(&x + &y) - &(&x * &y).scale(&beta)?;

        // l(t) = Σ β^(k-1) t^k / k, the logarithm of 1 - (1 - βx)(1 - βy).
        let qring = ring.with_base(Base::Q);
        let log = TruncSeries::from_terms(
            qring,
            1,
            trunc,
            (1..=trunc).map(|k| {
                let c = BigRational::new(BigInt::from(1), BigInt::from(k));
                (vec![k], GradedScalar::monomial(qring, c, k as i32 - 1).expect("β power"))
            }),
        )?;
        let exp = compositional_inverse(&log)?;
        Ok(FormalGroupLaw {
            kind: LawKind::Multiplicative { beta_unit },
            ring,
            trunc,
            f,
            log: Some(log),
            exp: Some(exp),
            additive_to_truncation: false,
        })
    }

    /// The n-th Morava law at the given truncation. A truncation below
    /// `2^n` is accepted, but the result is then indistinguishable from the
    /// additive law and [`FormalGroupLaw::additive_to_truncation`] is set.
    pub fn morava(spec: MoravaSpec, trunc: u32) -> Result<Self> {
        check_trunc(trunc, 1)?;
        if spec.n == 0 {
            return Err(Error::PreconditionViolated("Morava law needs n >= 1".into()));
        }
        let qring = RingSpec::morava(spec.n, Base::Q, spec.v_invertible);
        let log = morava_log(spec.n, qring, trunc)?;
        let exp = compositional_inverse(&log)?;
        let lx = log.embed(2, &[0]);
        let ly = log.embed(2, &[1]);
        let fq = exp.substitute(&[&lx + &ly])?;

        let integral = RingSpec::morava(spec.n, Base::Zloc2, spec.v_invertible);
        let f = fq.reduce_coefficients(integral)?.reduce_coefficients(spec.ring())?;
        Ok(FormalGroupLaw {
            kind: LawKind::Morava { n: spec.n },
            ring: spec.ring(),
            trunc,
            f,
            log: Some(log),
            exp: Some(exp),
            additive_to_truncation: trunc < (1 << spec.n),
        })
    }

    /// A law given by its series. Only the shape is checked here; use
    /// [`FormalGroupLaw::check_axioms`] for the group law axioms.
    pub fn from_series(f: TruncSeries) -> Result<Self> {
        if f.nvars() != 2 {
            return Err(Error::NvarsMismatch { left: 2, right: f.nvars() });
        }
        Ok(FormalGroupLaw {
            kind: LawKind::Custom,
            ring: f.ring(),
            trunc: f.trunc(),
            f,
            log: None,
            exp: None,
            additive_to_truncation: false,
        })
    }

    /// The same law with coefficients mapped into `base`.
    pub fn with_base(&self, base: Base) -> Result<Self> {
        let ring = self.ring.with_base(base);
        Ok(FormalGroupLaw { ring, f: self.f.reduce_coefficients(ring)?, ..self.clone() })
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// `F(x, y)` as a series in two variables.
    pub fn series(&self) -> &TruncSeries {
        &self.f
    }

    /// Logarithm over the rational version of the coefficient ring.
    pub fn log(&self) -> Option<&TruncSeries> {
        self.log.as_ref()
    }

    pub fn exp(&self) -> Option<&TruncSeries> {
        self.exp.as_ref()
    }

    pub fn additive_to_truncation(&self) -> bool {
        self.additive_to_truncation
    }

    /// Name used for `v` when printing: `v_n`, `β` or `v`.
    pub fn v_symbol(&self) -> String {
        match self.kind {
            LawKind::Morava { n } => format!("v_{n}"),
            LawKind::Multiplicative { .. } => "β".to_string(),
            _ => "v".to_string(),
        }
    }

    /// `F(x, y)` evaluated on two series of the same shape.
    pub fn apply(&self, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
        let f = if a.trunc() < self.trunc { self.f.truncated(a.trunc())? } else { self.f.clone() };
        f.substitute(&[a.clone(), b.clone()])
    }

    /// `[2](t) = F(t, t)`.
    pub fn two_series(&self) -> TruncSeries {
        let t = TruncSeries::var(self.ring, 1, self.trunc, 0);
        self.f.substitute(&[t.clone(), t]).expect("t has no constant term")
    }

    /// Coefficients `b_1 .. b_k` of the `[2]`-series, `k <= trunc`.
    pub fn two_series_coefficients(&self, k: u32) -> Result<Vec<GradedScalar>> {
        if k > self.trunc {
            return Err(Error::TruncMismatch { left: self.trunc, right: k });
        }
        let s = self.two_series();
        Ok((1..=k).map(|i| s.coefficient(&[i])).collect())
    }

    /// The series `i(t) = -t + ...` with `F(t, i(t)) = 0`.
    pub fn formal_inverse(&self) -> TruncSeries {
        let t = TruncSeries::var(self.ring, 1, self.trunc, 0);
        let mut inv = -&t;
        for m in 2..=self.trunc {
            let f = self.f.truncated(m).expect("m <= trunc");
            let tm = t.truncated(m).expect("m <= trunc");
            let im = inv.truncated(m).expect("m <= trunc");
            let r = f.substitute(&[tm, im]).expect("zero constant terms");
            let c = r.coefficient(&[m]);
            if !c.is_zero() {
                inv = &inv - &TruncSeries::monomial(&c, vec![m], self.trunc);
            }
        }
        inv
    }

    /// `G(x, y)` with `F = x + y + xy·G`; truncated at `trunc - 2`.
    pub fn g_series(&self) -> Result<TruncSeries> {
        let x = TruncSeries::var(self.ring, 2, self.trunc, 0);
        let y = TruncSeries::var(self.ring, 2, self.trunc, 1);
        let rest = &(&self.f - &x) - &y;
        rest.exact_div(&(&x * &y))
    }

    /// `[P^i] = (i + 1) · coef_{i+1}(log)` for `0 <= i <= imax`, as elements
    /// of the law's coefficient ring.
    pub fn mishchenko_classes(&self, imax: u32) -> Result<Vec<GradedScalar>> {
        let log = self.log.as_ref().ok_or(Error::LogUnavailable)?;
        if imax >= self.trunc {
            return Err(Error::TruncMismatch { left: self.trunc, right: imax + 1 });
        }
        (0..=imax)
            .map(|i| {
                let c = log.coefficient(&[i + 1]);
                let q = &c * &GradedScalar::from_int(c.ring(), i as i64 + 1);
                rational_to_ring(&q, self.ring)
            })
            .collect()
    }

    /// Checks `F(x,0) = x`, `F(0,y) = y`, commutativity and associativity up
    /// to the truncation. The error describes the first failing axiom.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let r = self.ring;
        let t = self.trunc;
        let x1 = TruncSeries::var(r, 1, t, 0);
        let z1 = TruncSeries::zero(r, 1, t);
        let left_unit = self.f.substitute(&[x1.clone(), z1.clone()]).map_err(|e| e.to_string())?;
        if let Some(w) = left_unit.diff_witness(&x1) {
            return Err(format!("F(x,0) != x: {w}"));
        }
        let right_unit = self.f.substitute(&[z1, x1.clone()]).map_err(|e| e.to_string())?;
        if let Some(w) = right_unit.diff_witness(&x1) {
            return Err(format!("F(0,y) != y: {w}"));
        }
        let swapped = self.f.embed(2, &[1, 0]);
        if let Some(w) = swapped.diff_witness(&self.f) {
            return Err(format!("F(y,x) != F(x,y): {w}"));
        }
        let v = |i| TruncSeries::var(r, 3, t, i);
        let f3 = |a: TruncSeries, b: TruncSeries| self.f.substitute(&[a, b]);
        let lhs = f3(f3(v(0), v(1)).map_err(|e| e.to_string())?, v(2)).map_err(|e| e.to_string())?;
        let rhs = f3(v(0), f3(v(1), v(2)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if let Some(w) = lhs.diff_witness(&rhs) {
            return Err(format!("F(F(x,y),z) != F(x,F(y,z)): {w}"));
        }
        Ok(())
    }
}

impl fmt::Display for FormalGroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            LawKind::Additive => "additive".to_string(),
            LawKind::Multiplicative { .. } => "multiplicative".to_string(),
            LawKind::Morava { n } => format!("Morava K({n})"),
            LawKind::Custom => "custom".to_string(),
        };
        write!(f, "{name} law over {} (trunc {})", self.ring, self.trunc)
    }
}

fn check_trunc(trunc: u32, min: u32) -> Result<()> {
    if trunc < min {
        return Err(Error::PreconditionViolated(format!("truncation must be at least {min}")));
    }
    Ok(())
}

/// The Morava logarithm over `qring`, all terms up to degree `trunc`.
pub fn morava_log(n: u32, qring: RingSpec, trunc: u32) -> Result<TruncSeries> {
    let mut terms = Vec::new();
    let step = (1u64 << n) - 1;
    let mut k = 0u32;
    loop {
        let deg = 1u64 << (n as u64 * k as u64);
        if deg > trunc as u64 {
            break;
        }
        let c = BigRational::new(BigInt::from(1), BigInt::from(1) << k);
        let e = ((deg - 1) / step) as i32;
        terms.push((vec![deg as u32], GradedScalar::monomial(qring, c, e)?));
        k += 1;
    }
    TruncSeries::from_terms(qring, 1, trunc, terms)
}

/// `[P^i]` for the n-th Morava theory: `2^((n-1)k) v^((2^nk - 1)/(2^n - 1))`
/// when `i = 2^nk - 1`, else 0. Lives in `Z_(2)[v]`.
pub fn pn_class_morava(n: u32, i: u64) -> GradedScalar {
    let ring = RingSpec::morava(n, Base::Zloc2, false);
    let m = i + 1;
    if m.is_power_of_two() {
        let e = m.trailing_zeros();
        if e % n == 0 {
            let k = e / n;
            let c = BigRational::from_integer(BigInt::from(1) << ((n - 1) * k));
            let vexp = (i / ((1u64 << n) - 1)) as i32;
            return GradedScalar::monomial(ring, c, vexp).expect("nonnegative exponent");
        }
    }
    GradedScalar::zero(ring)
}

/// Compositional inverse of `f = t + (higher terms)` in one variable.
pub fn compositional_inverse(f: &TruncSeries) -> Result<TruncSeries> {
    if f.nvars() != 1 || !f.constant_term().is_zero() || !f.coefficient(&[1]).is_one() {
        return Err(Error::PreconditionViolated(
            "compositional inverse needs a series t + O(t^2)".into(),
        ));
    }
    let ring = f.ring();
    let trunc = f.trunc();
    let t = TruncSeries::var(ring, 1, trunc, 0);
    let mut g = t.clone();
    for m in 2..=trunc {
        let r = f.truncated(m)?.substitute(&[g.truncated(m)?])?;
        let c = r.coefficient(&[m]);
        if !c.is_zero() {
            g = &g - &TruncSeries::monomial(&c, vec![m], trunc);
        }
    }
    Ok(g)
}

/// Maps a scalar over the rational version of `ring` back into `ring`.
fn rational_to_ring(q: &GradedScalar, ring: RingSpec) -> Result<GradedScalar> {
    if ring.base == Base::F2 {
        q.reduce_to(ring.with_base(Base::Zloc2))?.reduce_to(ring)
    } else {
        q.reduce_to(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse_polynomial;

    fn k2(base: Base, t: u32) -> FormalGroupLaw {
        FormalGroupLaw::morava(MoravaSpec::new(2, base, true), t).unwrap()
    }

    #[test]
    fn additive_basics() {
        let f = FormalGroupLaw::additive(5).unwrap();
        let r = f.ring();
        assert_eq!(f.two_series(), parse_polynomial("2*t", r, 1, 5).unwrap());
        assert_eq!(f.formal_inverse(), parse_polynomial("-t", r, 1, 5).unwrap());
        assert!(f.g_series().unwrap().is_zero());
        assert!(f.check_axioms().is_ok());
        let p = f.mishchenko_classes(4).unwrap();
        assert!(p[0].is_one());
        assert!(p[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn multiplicative_basics() {
        let f = FormalGroupLaw::multiplicative(true, 6).unwrap();
        let r = f.ring();
        assert_eq!(f.two_series(), parse_polynomial("2*t - v*t^2", r, 1, 6).unwrap());
        let g = f.g_series().unwrap();
        assert_eq!(g, parse_polynomial("-v", r, 2, 4).unwrap());
        assert!(f.check_axioms().is_ok());
        // i(t) = -t/(1 - βt) = -t - βt^2 - β^2 t^3 - ...
        let inv = parse_polynomial("-t - v*t^2 - v^2*t^3 - v^3*t^4 - v^4*t^5 - v^5*t^6", r, 1, 6).unwrap();
        assert_eq!(f.formal_inverse(), inv);
        let p = f.mishchenko_classes(5).unwrap();
        for (i, x) in p.iter().enumerate() {
            assert_eq!(*x, GradedScalar::v_pow(r, i as i32).unwrap());
        }
    }

    #[test]
    fn morava_log_terms() {
        let qr = RingSpec::morava(2, Base::Q, false);
        let l = morava_log(2, qr, 16).unwrap();
        assert_eq!(l, parse_polynomial("t + 1/2*v*t^4 + 1/4*v^5*t^16", qr, 1, 16).unwrap());
    }

    #[test]
    fn morava_two_series_mod_two() {
        for n in [2u32, 3] {
            let t = (1 << n) + 4;
            let f = FormalGroupLaw::morava(MoravaSpec::new(n, Base::F2, true), t).unwrap();
            let expected = TruncSeries::monomial(
                &GradedScalar::v_pow(f.ring(), 1).unwrap(),
                vec![1 << n],
                t,
            );
            assert_eq!(f.two_series(), expected, "n = {n}");
            assert!(f.check_axioms().is_ok());
            assert!(!f.additive_to_truncation());
        }
    }

    #[test]
    fn morava_two_series_integral() {
        let f = k2(Base::Zloc2, 8);
        let s = f.two_series();
        assert_eq!(s.coefficient(&[1]), GradedScalar::from_int(f.ring(), 2));
        assert_eq!(s.homogeneous_codim(), Some(1));
        assert_eq!(f.series().homogeneous_codim(), Some(1));
    }

    #[test]
    fn formal_inverse_is_inverse() {
        for f in [k2(Base::F2, 10), k2(Base::Zloc2, 9), FormalGroupLaw::multiplicative(false, 7).unwrap()] {
            let t = TruncSeries::var(f.ring(), 1, f.trunc(), 0);
            let z = f.apply(&t, &f.formal_inverse()).unwrap();
            assert!(z.is_zero(), "{f}");
        }
    }

    #[test]
    fn morava_g_series_starts_in_degree_two() {
        let f = k2(Base::F2, 8);
        let g = f.g_series().unwrap();
        assert_eq!(g.order(), Some(2));
    }

    #[test]
    fn pn_class_closed_form() {
        let r = RingSpec::morava(2, Base::Zloc2, false);
        assert!(pn_class_morava(2, 0).is_one());
        assert_eq!(pn_class_morava(2, 3), GradedScalar::monomial(r, BigRational::from_integer(2.into()), 1).unwrap());
        assert!(pn_class_morava(2, 2).is_zero());
        assert!(pn_class_morava(2, 1).is_zero());
        assert_eq!(pn_class_morava(2, 15), GradedScalar::monomial(r, BigRational::from_integer(4.into()), 5).unwrap());
        assert_eq!(pn_class_morava(3, 7), GradedScalar::monomial(RingSpec::morava(3, Base::Zloc2, false), BigRational::from_integer(4.into()), 1).unwrap());
    }

    #[test]
    fn short_truncation_is_flagged() {
        let f = FormalGroupLaw::morava(MoravaSpec::new(3, Base::F2, true), 5).unwrap();
        assert!(f.additive_to_truncation());
        assert!(f.check_axioms().is_ok());
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = k2(Base::Zloc2, 12);
        let l = f.log().unwrap();
        let e = f.exp().unwrap();
        let t = TruncSeries::var(l.ring(), 1, 12, 0);
        assert_eq!(e.substitute(std::slice::from_ref(l)).unwrap(), t);
        assert_eq!(l.substitute(std::slice::from_ref(e)).unwrap(), t);
    }
}
