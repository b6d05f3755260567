//! Truncated multivariate power series over a graded coefficient ring.
//!
//! A [`TruncSeries`] stores every term of total degree `<= trunc` in the
//! series variables `x1 .. xk`; terms of higher degree are unknown, not zero.
//! The powers of `v` live inside the coefficients and are never truncated.
//!
//! The canonical text form, used by golden tests and the command line, has
//! one term per line in graded-lexicographic order:
//!
//! ```text
//! 1 * x1^2
//! 2 * x1^1 * x2^1
//! 1 * v^1 * x2^4
//! ```
//!
//! The coefficient comes first, followed by `v^a` when `a != 0` and by
//! `xi^ei` for each nonzero exponent. Within one monomial the `v`-exponents
//! appear in ascending order. The zero series prints as `0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::scalar::{convert_base, GradedScalar, Laurent, RingSpec};
#[cfg(test)]
use crate::scalar::Base;

/// Exponent vector of a monomial `x1^e1 ... xk^ek`.
///
/// Ordered by total degree first; within a degree, lexicographically larger
/// vectors come first (`x1^2 < x1*x2 < x2^2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { degree: exps.iter().sum(), exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { degree: 1, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { degree: self.degree - other.degree, exps })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Terms = BTreeMap<Monomial, Laurent>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    ring: RingSpec,
    nvars: usize,
    trunc: u32,
    terms: Terms,
}

impl TruncSeries {
    pub fn zero(ring: RingSpec, nvars: usize, trunc: u32) -> Self {
        assert!(nvars > 0, "a series needs at least one variable");
        TruncSeries { ring, nvars, trunc, terms: Terms::new() }
    }

    pub fn one(ring: RingSpec, nvars: usize, trunc: u32) -> Self {
        Self::constant(&GradedScalar::one(ring), nvars, trunc)
    }

    pub fn constant(c: &GradedScalar, nvars: usize, trunc: u32) -> Self {
        let mut s = Self::zero(c.ring(), nvars, trunc);
        s.insert(Monomial::one(nvars), c.laurent().clone());
        s
    }

    /// The variable `x_{i+1}` (zero-based index).
    pub fn var(ring: RingSpec, nvars: usize, trunc: u32, i: usize) -> Self {
        assert!(i < nvars);
        let mut s = Self::zero(ring, nvars, trunc);
        s.insert(Monomial::var(nvars, i), Laurent::one());
        s
    }

    pub fn monomial(c: &GradedScalar, exps: Vec<u32>, trunc: u32) -> Self {
        let nvars = exps.len();
        let mut s = Self::zero(c.ring(), nvars, trunc);
        s.insert(Monomial::new(exps), c.laurent().clone());
        s
    }

    /// Builds a series from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(ring: RingSpec, nvars: usize, trunc: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, GradedScalar)>,
    {
        let mut s = Self::zero(ring, nvars, trunc);
        for (exps, c) in terms {
            ring.check_same(&c.ring())?;
            if exps.len() != nvars {
                return Err(Error::NvarsMismatch { left: nvars, right: exps.len() });
            }
            s.add_to(Monomial::new(exps), c.laurent());
        }
        Ok(s)
    }

    pub(crate) fn from_raw(ring: RingSpec, nvars: usize, trunc: u32, terms: Terms) -> Self {
        let mut s = Self::zero(ring, nvars, trunc);
        for (m, c) in terms {
            s.insert(m, c);
        }
        s
    }

    fn insert(&mut self, m: Monomial, c: Laurent) {
        if m.degree <= self.trunc && !c.is_zero() {
            self.terms.insert(m, c);
        }
    }

    fn add_to(&mut self, m: Monomial, c: &Laurent) {
        if m.degree > self.trunc || c.is_zero() {
            return;
        }
        let base = self.ring.base;
        match self.terms.get_mut(&m) {
            Some(x) => {
                x.add_assign(c, base);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, GradedScalar)> + '_ {
        self.terms
            .iter()
            .map(|(m, c)| (m, GradedScalar::from_laurent(self.ring, c.clone())))
    }

    pub fn coefficient(&self, exps: &[u32]) -> GradedScalar {
        let m = Monomial::new(exps.to_vec());
        match self.terms.get(&m) {
            Some(c) => GradedScalar::from_laurent(self.ring, c.clone()),
            None => GradedScalar::zero(self.ring),
        }
    }

    pub fn constant_term(&self) -> GradedScalar {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Lowest total degree carrying a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree)
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> TruncSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree == k)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncSeries { ring: self.ring, nvars: self.nvars, trunc: self.trunc, terms }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncMismatch { left: self.trunc, right: other.trunc });
        }
        Ok(())
    }

    /// Drops every term above `trunc`. Raising the bound is refused because
    /// the missing terms are unknown.
    pub fn truncated(&self, trunc: u32) -> Result<Self> {
        if trunc > self.trunc {
            return Err(Error::TruncMismatch { left: self.trunc, right: trunc });
        }
        Ok(Self::from_raw(self.ring, self.nvars, trunc, self.terms.clone()))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_to(m.clone(), c);
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let base = self.ring.base;
        let mut acc: Terms = Terms::new();
        for (ma, ca) in &self.terms {
            if ma.degree > self.trunc {
                break;
            }
            for (mb, cb) in &other.terms {
                if ma.degree + mb.degree > self.trunc {
                    break;
                }
                let m = ma.mul(mb);
                acc.entry(m).or_default().add_product(ca, cb, base);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncSeries { ring: self.ring, nvars: self.nvars, trunc: self.trunc, terms: acc })
    }

    pub fn scale(&self, c: &GradedScalar) -> Result<Self> {
        self.ring.check_same(&c.ring())?;
        let base = self.ring.base;
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x.mul(c.laurent(), base)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Ok(TruncSeries { ring: self.ring, nvars: self.nvars, trunc: self.trunc, terms })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.ring, self.nvars, self.trunc);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Composition `f(args[0], .., args[k-1])` for `f = self` in `k`
    /// variables. The arguments must share ring, variable count and
    /// truncation, and have zero constant term. The result is exact up to
    /// `min(self.trunc, args.trunc)`.
    pub fn substitute(&self, args: &[TruncSeries]) -> Result<TruncSeries> {
        if args.len() != self.nvars {
            return Err(Error::NvarsMismatch { left: self.nvars, right: args.len() });
        }
        let first = &args[0];
        for (i, a) in args.iter().enumerate() {
            first.check_compatible(a)?;
            self.ring.check_same(&a.ring)?;
            if !a.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm { index: i });
            }
        }
        let trunc = self.trunc.min(first.trunc);
        let args: Vec<TruncSeries> = args
            .iter()
            .map(|a| a.truncated(trunc))
            .collect::<Result<_>>()?;
        let mut powers: Vec<Vec<TruncSeries>> = Vec::with_capacity(args.len());
        for a in &args {
            let maxe = self.terms.keys().map(|m| m.exps[powers.len()]).max().unwrap_or(0);
            let mut p = vec![TruncSeries::one(self.ring, a.nvars, trunc)];
            for e in 1..=maxe {
                // Powers beyond the truncation vanish, since a has order >= 1.
                if e > trunc {
                    p.push(TruncSeries::zero(self.ring, a.nvars, trunc));
                } else {
                    let next = &p[(e - 1) as usize] * a;
                    p.push(next);
                }
            }
            powers.push(p);
        }
        let entries: Vec<(&Monomial, &Laurent)> = self.terms.iter().collect();
        Ok(horner(&entries, 0, &powers, self.ring, args[0].nvars, trunc))
    }

    /// Exact quotient `self / den`.
    ///
    /// With `r` the order of `den`, the quotient is determined up to total
    /// degree `trunc - r`, which becomes its truncation. Fails with
    /// [`Error::NonDivisible`] as soon as some homogeneous step leaves a
    /// remainder.
    pub fn exact_div(&self, den: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(den)?;
        let r = den
            .order()
            .ok_or_else(|| Error::NonDivisible("division by the zero series".into()))?;
        if r > self.trunc {
            return Err(Error::NonDivisible("divisor vanishes up to the truncation".into()));
        }
        let qtrunc = self.trunc - r;
        let lead_part: Vec<(Monomial, Laurent)> = den
            .terms
            .iter()
            .filter(|(m, _)| m.degree == r)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        let (lead_m, lead_c) = lead_part[0].clone();
        let base = self.ring.base;
        let mut residual = self.terms.clone();
        let mut quotient = Terms::new();
        for k in 0..=self.trunc {
            let part: Terms = residual
                .iter()
                .filter(|(m, _)| m.degree == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            if part.is_empty() {
                continue;
            }
            if k < r {
                return Err(Error::NonDivisible(format!(
                    "numerator has a term of degree {k} below the divisor order {r}"
                )));
            }
            // Divide the homogeneous part by the lowest part of den; for a
            // single divisor the leading-term algorithm decides divisibility.
            let mut p = part;
            let mut q_k = Terms::new();
            while let Some((m, c)) = p.iter().next().map(|(m, c)| (m.clone(), c.clone())) {
                let qm = m.divide(&lead_m).ok_or_else(|| {
                    Error::NonDivisible(format!("leading monomial {:?} not divisible", m.exps))
                })?;
                let qc = c.exact_div(&lead_c, &self.ring).ok_or_else(|| {
                    Error::NonDivisible("coefficient not divisible".to_string())
                })?;
                for (dm, dc) in &lead_part {
                    let t = qm.mul(dm);
                    let e = p.entry(t.clone()).or_default();
                    *e = e.sub(&qc.mul(dc, base), base);
                    if e.is_zero() {
                        p.remove(&t);
                    }
                }
                q_k.insert(qm, qc);
            }
            for (qm, qc) in q_k {
                for (dm, dc) in &den.terms {
                    let t = qm.mul(dm);
                    if t.degree > self.trunc {
                        continue;
                    }
                    let e = residual.entry(t.clone()).or_default();
                    *e = e.sub(&qc.mul(dc, base), base);
                    if e.is_zero() {
                        residual.remove(&t);
                    }
                }
                if qm.degree <= qtrunc {
                    quotient.insert(qm, qc);
                }
            }
        }
        debug_assert!(residual.is_empty());
        Ok(TruncSeries::from_raw(self.ring, self.nvars, qtrunc, quotient))
    }

    /// Coefficientwise image in `target`.
    pub fn reduce_coefficients(&self, target: RingSpec) -> Result<TruncSeries> {
        if !self.ring.maps_to(&target) {
            return Err(Error::NoRingMap { from: self.ring, to: target });
        }
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            let mut x = Laurent::zero();
            for (e, a) in c.terms() {
                if !target.admits_exponent(e) {
                    return Err(Error::VExponentOutOfRing { exponent: e, ring: target });
                }
                x.add_term(e, &convert_base(a, self.ring.base, target.base)?, target.base);
            }
            if !x.is_zero() {
                terms.insert(m.clone(), x);
            }
        }
        Ok(TruncSeries { ring: target, nvars: self.nvars, trunc: self.trunc, terms })
    }

    /// Sends `v` to zero coefficientwise.
    pub fn specialize_v_zero(&self) -> Result<TruncSeries> {
        let ring = RingSpec::plain(self.ring.base);
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            let x = GradedScalar::from_laurent(self.ring, c.clone()).specialize_v_zero()?;
            if !x.is_zero() {
                terms.insert(m.clone(), x.into_laurent());
            }
        }
        Ok(TruncSeries { ring, nvars: self.nvars, trunc: self.trunc, terms })
    }

    /// Re-embeds a series in more variables: variable `i` of `self` becomes
    /// variable `positions[i]` of the result.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> TruncSeries {
        assert_eq!(positions.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0; nvars];
                for (i, e) in m.exps.iter().enumerate() {
                    exps[positions[i]] += e;
                }
                (Monomial::new(exps), c.clone())
            })
            .collect();
        TruncSeries { ring: self.ring, nvars, trunc: self.trunc, terms }
    }

    /// Codimension of every term: total degree plus `exponent * deg v`.
    /// Returns the common value, or `None` when the series is not
    /// homogeneous. The zero series reports `Some(0)`.
    pub fn homogeneous_codim(&self) -> Option<i64> {
        let vd = self.ring.v_degree as i64;
        let mut it = self
            .terms
            .iter()
            .flat_map(|(m, c)| c.terms().map(move |(e, _)| m.degree as i64 + e as i64 * vd));
        let first = match it.next() {
            Some(x) => x,
            None => return Some(0),
        };
        it.all(|x| x == first).then_some(first)
    }

    /// Lines of the canonical text form.
    pub fn canonical_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            for (e, a) in c.terms() {
                let mut line = a.to_string();
                if e != 0 {
                    line.push_str(&format!(" * v^{e}"));
                }
                for (i, x) in m.exps.iter().enumerate() {
                    if *x > 0 {
                        line.push_str(&format!(" * x{}^{}", i + 1, x));
                    }
                }
                out.push(line);
            }
        }
        if out.is_empty() {
            out.push("0".to_string());
        }
        out
    }

    pub fn to_canonical_string(&self) -> String {
        let mut s = self.canonical_lines().join("\n");
        s.push('\n');
        s
    }

    /// Single-line human form such as `2*x1 + v*x1^4`, with the given names
    /// for the variables and for `v`.
    pub fn display_compact(&self, vars: &[&str], v_symbol: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        let mut first = true;
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { vars[i].to_string() } else { format!("{}^{}", vars[i], e) })
                .collect();
            let mono = mono.join("*");
            for (e, a) in c.terms() {
                let neg = a.is_negative();
                if first {
                    if neg {
                        s.push('-');
                    }
                    first = false;
                } else {
                    s.push_str(if neg { " - " } else { " + " });
                }
                let abs = a.abs();
                let coeff = crate::scalar::term_string(&abs, e, v_symbol);
                if mono.is_empty() {
                    s.push_str(&coeff);
                } else if coeff == "1" {
                    s.push_str(&mono);
                } else {
                    s.push_str(&format!("{coeff}*{mono}"));
                }
            }
        }
        s
    }

    /// Describes the lowest-degree terms where `self` and `other` differ,
    /// or `None` when they agree.
    pub fn diff_witness(&self, other: &TruncSeries) -> Option<String> {
        if self == other {
            return None;
        }
        if self.check_compatible(other).is_err() {
            return Some(format!(
                "incompatible series: {} vars / trunc {} / {} vs {} vars / trunc {} / {}",
                self.nvars, self.trunc, self.ring, other.nvars, other.trunc, other.ring
            ));
        }
        let d = self - other;
        let k = d.order().unwrap_or(0);
        Some(format!("first difference in degree {k}: {}", d.homogeneous_part(k).canonical_lines().join("; ")))
    }
}

fn horner(
    entries: &[(&Monomial, &Laurent)],
    var: usize,
    powers: &[Vec<TruncSeries>],
    ring: RingSpec,
    nvars: usize,
    trunc: u32,
) -> TruncSeries {
    let mut result = TruncSeries::zero(ring, nvars, trunc);
    if entries.is_empty() {
        return result;
    }
    if var == powers.len() {
        let mut c = Laurent::zero();
        for (_, x) in entries {
            c.add_assign(x, ring.base);
        }
        result.add_to(Monomial::one(nvars), &c);
        return result;
    }
    let mut groups: BTreeMap<u32, Vec<(&Monomial, &Laurent)>> = BTreeMap::new();
    for (m, c) in entries {
        groups.entry(m.exps[var]).or_default().push((m, c));
    }
    for (e, group) in groups {
        let inner = horner(&group, var + 1, powers, ring, nvars, trunc);
        if inner.is_zero() {
            continue;
        }
        let p = &powers[var][e as usize];
        let term = if e == 0 { inner } else { p * &inner };
        for (m, c) in &term.terms {
            result.add_to(m.clone(), c);
        }
    }
    result
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_lines().join("\n"))
    }
}

macro_rules! series_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &TruncSeries {
            type Output = TruncSeries;
            fn $method(self, rhs: &TruncSeries) -> TruncSeries {
                self.$try(rhs).expect("incompatible series")
            }
        }
        impl $trait for TruncSeries {
            type Output = TruncSeries;
            fn $method(self, rhs: TruncSeries) -> TruncSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, try_add);
series_binop!(Sub, sub, try_sub);
series_binop!(Mul, mul, try_mul);

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        let base = self.ring.base;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg(base))).collect();
        TruncSeries { ring: self.ring, nvars: self.nvars, trunc: self.trunc, terms }
    }
}

impl Neg for TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        -&self
    }
}

/// Parses a polynomial such as `x1^2 - 3*x1*x2 + 1/2*v*x2` into a series.
/// `t` is accepted as a synonym of `x1`.
pub fn parse_polynomial(src: &str, ring: RingSpec, nvars: usize, trunc: u32) -> Result<TruncSeries> {
    let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut result = TruncSeries::zero(ring, nvars, trunc);
    let mut rest = cleaned.as_str();
    let mut sign = 1i64;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        let end = rest.find(['+', '-']).map(|i| {
            // A '-' right after '^' belongs to an exponent.
            let mut j = i;
            while j > 0 && rest.as_bytes()[j - 1] == b'^' {
                match rest[j + 1..].find(['+', '-']) {
                    Some(k) => j = j + 1 + k,
                    None => return rest.len(),
                }
            }
            j
        });
        let end = end.unwrap_or(rest.len());
        let term = &rest[..end];
        let (exps, c) = parse_term(term, ring, nvars)?;
        let c = if sign < 0 { -c } else { c };
        result = &result + &TruncSeries::monomial(&c, exps, trunc);
        if end == rest.len() {
            break;
        }
        sign = if rest.as_bytes()[end] == b'-' { -1 } else { 1 };
        rest = &rest[end + 1..];
    }
    Ok(result)
}

fn parse_term(term: &str, ring: RingSpec, nvars: usize) -> Result<(Vec<u32>, GradedScalar)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut exps = vec![0u32; nvars];
    let mut coeff = BigRational::one();
    let mut vexp = 0i32;
    for factor in term.split('*') {
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (n, Some(p)),
            None => (factor, None),
        };
        if name.starts_with(|c: char| c.is_ascii_digit()) {
            if power.is_some() {
                return Err(Error::Parse(format!("power of a number in `{factor}`")));
            }
            let q = match name.split_once('/') {
                Some((n, d)) => BigRational::new(
                    n.parse().map_err(|_| Error::Parse(format!("bad number `{name}`")))?,
                    d.parse().map_err(|_| Error::Parse(format!("bad number `{name}`")))?,
                ),
                None => BigRational::from_integer(
                    name.parse().map_err(|_| Error::Parse(format!("bad number `{name}`")))?,
                ),
            };
            coeff *= q;
            continue;
        }
        let p: i32 = match power {
            Some(p) => p.parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
            None => 1,
        };
        if name == "v" {
            vexp += p;
            continue;
        }
        let idx = if name == "t" {
            0
        } else {
            name.strip_prefix('x')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|i| *i >= 1 && *i <= nvars)
                .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?
                - 1
        };
        if p < 0 {
            return Err(Error::Parse(format!("negative power of `{name}`")));
        }
        exps[idx] += p as u32;
    }
    let c = GradedScalar::monomial(ring, coeff, vexp)?;
    Ok((exps, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> RingSpec {
        RingSpec::plain(Base::Z)
    }

    fn p(src: &str, nvars: usize, t: u32) -> TruncSeries {
        parse_polynomial(src, zz(), nvars, t).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x1 + x2", 2, 4);
        let b = p("x1 - x2", 2, 4);
        assert_eq!(&a * &b, p("x1^2 - x2^2", 2, 4));
    }

    #[test]
    fn product_above_truncation_vanishes() {
        let a = p("x1^4", 1, 4);
        let b = p("x1", 1, 4);
        assert!((&a * &b).is_zero());
    }

    #[test]
    fn geometric_series() {
        let a = p("1 + x1", 1, 3);
        let b = p("1 - x1 + x1^2 - x1^3", 1, 3);
        assert_eq!(&a * &b, TruncSeries::one(zz(), 1, 3));
    }

    #[test]
    fn trunc_mismatch_is_rejected() {
        let a = p("x1", 1, 3);
        let b = p("x1", 1, 4);
        assert!(matches!(a.try_mul(&b), Err(Error::TruncMismatch { .. })));
        assert!(matches!(a.try_add(&b), Err(Error::TruncMismatch { .. })));
    }

    #[test]
    fn substitution_examples() {
        let sq = p("t^2", 1, 2);
        let xy = p("x1 + x2", 2, 2);
        assert_eq!(sq.substitute(std::slice::from_ref(&xy)).unwrap(), p("x1^2 + 2*x1*x2 + x2^2", 2, 2));
        let id = p("t", 1, 5);
        let g = p("x1 + 3*x1*x2^2", 2, 5);
        assert_eq!(id.substitute(std::slice::from_ref(&g)).unwrap(), g);
        let f = p("t + t^2", 1, 5);
        let x = p("x1", 1, 1);
        assert_eq!(f.substitute(&[x]).unwrap(), p("x1", 1, 1));
        let bad = p("1 + x1", 2, 2);
        assert!(matches!(sq.substitute(&[bad]), Err(Error::NonzeroConstantTerm { index: 0 })));
    }

    #[test]
    fn exact_division_examples() {
        let q = p("x1^2 - x2^2", 2, 4).exact_div(&p("x1 - x2", 2, 4)).unwrap();
        assert_eq!(q, p("x1 + x2", 2, 3));
        let q = p("x1^2 + x1*x2", 2, 4).exact_div(&p("x1", 2, 4)).unwrap();
        assert_eq!(q, p("x1 + x2", 2, 3));
        assert!(matches!(
            p("x1", 2, 4).exact_div(&p("x2", 2, 4)),
            Err(Error::NonDivisible(_))
        ));
    }

    #[test]
    fn division_by_a_unit_series() {
        let q = p("1", 1, 4).exact_div(&p("1 - x1", 1, 4)).unwrap();
        assert_eq!(q, p("1 + x1 + x1^2 + x1^3 + x1^4", 1, 4));
    }

    #[test]
    fn reduction_examples() {
        let z = RingSpec::plain(Base::Zloc2);
        let f2 = RingSpec::plain(Base::F2);
        let s = parse_polynomial("2*t + t^2", z, 1, 4).unwrap();
        assert_eq!(s.reduce_coefficients(f2).unwrap(), parse_polynomial("t^2", f2, 1, 4).unwrap());

        let qq = RingSpec::plain(Base::Q);
        let h = parse_polynomial("1/2*t", qq, 1, 4).unwrap();
        assert!(matches!(h.reduce_coefficients(z), Err(Error::NotIntegral { .. })));

        let zl = RingSpec::laurent(Base::Zloc2, -3);
        let fl = RingSpec::laurent(Base::F2, -3);
        let s = parse_polynomial("v^3*t", zl, 1, 4).unwrap();
        assert_eq!(s.reduce_coefficients(fl).unwrap(), parse_polynomial("v^3*t", fl, 1, 4).unwrap());
    }

    #[test]
    fn canonical_text() {
        let r = RingSpec::polynomial(Base::Z, -3);
        let s = parse_polynomial("x2^4*v + 2*x1*x2 + x1^2 - 3", r, 2, 4).unwrap();
        assert_eq!(
            s.to_canonical_string(),
            "-3\n1 * x1^2\n2 * x1^1 * x2^1\n1 * v^1 * x2^4\n"
        );
        assert_eq!(TruncSeries::zero(r, 2, 3).to_canonical_string(), "0\n");
    }

    #[test]
    fn graded_lex_order() {
        let mut v = [
            Monomial::new(vec![0, 2]),
            Monomial::new(vec![1, 1]),
            Monomial::new(vec![0, 0]),
            Monomial::new(vec![2, 0]),
            Monomial::new(vec![3, 0]),
        ];
        v.sort();
        let exps: Vec<_> = v.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![0, 0], vec![2, 0], vec![1, 1], vec![0, 2], vec![3, 0]]);
    }

    #[test]
    fn homogeneity_with_negative_v_degree() {
        let r = RingSpec::morava(2, Base::F2, true);
        let s = parse_polynomial("x1 + v*x1^4", r, 1, 6).unwrap();
        assert_eq!(s.homogeneous_codim(), Some(1));
        let t = parse_polynomial("x1 + x1^4", r, 1, 6).unwrap();
        assert_eq!(t.homogeneous_codim(), None);
    }

    #[test]
    fn negative_exponent_parse() {
        let r = RingSpec::laurent(Base::F2, -3);
        let s = parse_polynomial("v^-1*x1 + x1^2", r, 1, 4).unwrap();
        assert_eq!(s.coefficient(&[1]), GradedScalar::v_pow(r, -1).unwrap());
    }
}
