//! The cohomology ring of a split projective quadric.
//!
//! For a quadric `Q` of dimension `D` and `d = floor(D/2)`, the classes
//! `h^0 .. h^d` (powers of the hyperplane class) and `l_0 .. l_d` (linear
//! subspaces, `codim l_i = D - i`) form a free basis for any theory obtained
//! from a formal group law. Multiplication is determined by
//!
//! ```text
//! h · l_i   = l_{i-1}  (i > 0),   h · l_0 = 0
//! l_i · l_j = l_0  if i = j = d and D ≡ 0 mod 4,  else 0
//! h^(d+1)   = Σ_{i=1}^{D-d} b_i l_{D-d-i}
//! ```
//!
//! with `b_i` the coefficients of the `[2]`-series. The pushforward to a
//! point is `χ(l_i) = [P^i]` and `χ(h^k) = Σ_j b_j [P^(D+1-k-j)]`.
//!
//! The product `l_d · l_d` is taken to be exactly `l_0` for every theory,
//! without lower-order corrections.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fgl::{default_morava_trunc, FormalGroupLaw, LawKind, MoravaSpec};
use crate::scalar::{Base, GradedScalar, Laurent, RingSpec};

/// A basis element: `H(k)` is `h^k` with `k <= d`, `L(i)` is `l_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    H(u32),
    L(u32),
}

impl Basis {
    /// Name used in compact output: `1`, `h`, `h^k`, `l_i`.
    pub fn name(&self) -> String {
        match *self {
            Basis::H(0) => "1".to_string(),
            Basis::H(1) => "h".to_string(),
            Basis::H(k) => format!("h^{k}"),
            Basis::L(i) => format!("l_{i}"),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The built-in theories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoryKind {
    /// Chow groups: the additive law.
    Chow,
    /// `K^0` with `β` inverted: the multiplicative law.
    K0,
    /// Morava K(n); `connective` keeps `v` non-invertible.
    Morava { n: u32, connective: bool },
}

#[derive(Debug)]
struct Inner {
    dim: u32,
    d: u32,
    fgl: FormalGroupLaw,
    ring: RingSpec,
    kind: Option<TheoryKind>,
    /// `b[i]` for `1 <= i <= D + 1`; `b[0]` is zero.
    b: Vec<Laurent>,
    /// `[P^i]` for `0 <= i <= D`.
    p: Vec<Laurent>,
    /// `table[a][b]` lists the nonzero coordinates of `e_a · e_b`.
    table: Vec<Vec<Vec<(usize, Laurent)>>>,
    /// `χ(e_a)`.
    chi: Vec<Laurent>,
    /// `χ(e_a · e_b)`.
    pairing: Vec<Vec<Laurent>>,
}

/// A split quadric together with a theory; cheap to clone.
#[derive(Clone, Debug)]
pub struct QuadricTheory(Arc<Inner>);

impl PartialEq for QuadricTheory {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dim == other.0.dim
                && self.0.ring == other.0.ring
                && self.0.fgl.kind() == other.0.fgl.kind()
                && self.0.b == other.0.b
                && self.0.p == other.0.p)
    }
}

impl Eq for QuadricTheory {}

impl QuadricTheory {
    /// The quadric of dimension `dim` for the theory of `fgl`. The law must
    /// have a logarithm and be known up to degree `dim + 2`.
    pub fn new(fgl: FormalGroupLaw, dim: u32) -> Result<Self> {
        Self::build(fgl, dim, None)
    }

    /// One of the built-in theories over `base`, with the default truncation
    /// `max(D + 2, 2^n + 4)`.
    pub fn standard(kind: TheoryKind, base: Base, dim: u32) -> Result<Self> {
        Self::standard_with_trunc(kind, base, dim, dim + 2)
    }

    pub fn standard_with_trunc(kind: TheoryKind, base: Base, dim: u32, trunc: u32) -> Result<Self> {
        let trunc = trunc.max(dim + 2);
        let fgl = match kind {
            TheoryKind::Chow => FormalGroupLaw::additive(trunc)?.with_base(base)?,
            TheoryKind::K0 => FormalGroupLaw::multiplicative(true, trunc)?.with_base(base)?,
            TheoryKind::Morava { n, connective } => {
                let spec = MoravaSpec::new(n, integral_base(base), !connective);
                let f = FormalGroupLaw::morava(spec, default_morava_trunc(n, trunc))?;
                if base == Base::Q {
                    f.with_base(Base::Q)?
                } else {
                    f
                }
            }
        };
        Self::build(fgl, dim, Some(kind))
    }

    fn build(fgl: FormalGroupLaw, dim: u32, kind: Option<TheoryKind>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::PreconditionViolated("quadric dimension must be at least 1".into()));
        }
        if fgl.trunc() < dim + 2 {
            return Err(Error::PreconditionViolated(format!(
                "law truncation {} is below D + 2 = {}",
                fgl.trunc(),
                dim + 2
            )));
        }
        let ring = fgl.ring();
        let d = dim / 2;
        let mut b = vec![Laurent::zero()];
        b.extend(fgl.two_series_coefficients(dim + 1)?.into_iter().map(GradedScalar::into_laurent));
        let p: Vec<Laurent> =
            fgl.mishchenko_classes(dim)?.into_iter().map(GradedScalar::into_laurent).collect();

        let mut inner = Inner { dim, d, fgl, ring, kind, b, p, table: Vec::new(), chi: Vec::new(), pairing: Vec::new() };
        let n = inner.size();
        let basis: Vec<Basis> = (0..n).map(|i| inner.basis_at(i)).collect();
        inner.table = basis
            .iter()
            .map(|x| basis.iter().map(|y| inner.basis_product(*x, *y)).collect())
            .collect();
        inner.chi = basis.iter().map(|x| inner.basis_chi(*x)).collect();
        let base = inner.ring.base;
        inner.pairing = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut s = Laurent::zero();
                        for (k, c) in &inner.table[a][b] {
                            s.add_product(c, &inner.chi[*k], base);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Ok(QuadricTheory(Arc::new(inner)))
    }

    pub fn dim(&self) -> u32 {
        self.0.dim
    }

    /// `floor(D / 2)`.
    pub fn d(&self) -> u32 {
        self.0.d
    }

    pub fn ring(&self) -> RingSpec {
        self.0.ring
    }

    pub fn fgl(&self) -> &FormalGroupLaw {
        &self.0.fgl
    }

    pub fn kind(&self) -> Option<TheoryKind> {
        self.0.kind
    }

    /// `n` when the law is a Morava law.
    pub fn morava_n(&self) -> Option<u32> {
        match self.0.fgl.kind() {
            LawKind::Morava { n } => Some(n),
            _ => None,
        }
    }

    pub fn v_symbol(&self) -> String {
        self.0.fgl.v_symbol()
    }

    /// Basis size `2d + 2`.
    pub fn size(&self) -> usize {
        self.0.size()
    }

    /// Basis in storage order: `h^0 .. h^d, l_0 .. l_d`.
    pub fn basis(&self) -> Vec<Basis> {
        (0..self.size()).map(|i| self.0.basis_at(i)).collect()
    }

    pub fn basis_at(&self, i: usize) -> Basis {
        self.0.basis_at(i)
    }

    pub fn index_of(&self, e: Basis) -> usize {
        self.0.index_of(e)
    }

    pub fn codim(&self, e: Basis) -> u32 {
        match e {
            Basis::H(k) => k,
            Basis::L(i) => self.0.dim - i,
        }
    }

    /// `b_i`, the coefficient of `t^i` in the `[2]`-series, `1 <= i <= D+1`.
    pub fn b(&self, i: usize) -> GradedScalar {
        GradedScalar::from_laurent(self.0.ring, self.0.b[i].clone())
    }

    /// `[P^i]` for `0 <= i <= D`.
    pub fn pn_class(&self, i: usize) -> GradedScalar {
        GradedScalar::from_laurent(self.0.ring, self.0.p[i].clone())
    }

    pub(crate) fn table_entry(&self, a: usize, b: usize) -> &[(usize, Laurent)] {
        &self.0.table[a][b]
    }

    pub(crate) fn chi_raw(&self, a: usize) -> &Laurent {
        &self.0.chi[a]
    }

    pub(crate) fn pairing_raw(&self) -> &[Vec<Laurent>] {
        &self.0.pairing
    }

    /// `χ(e_a · e_b)` for basis indices `a`, `b`.
    pub fn pairing(&self, a: usize, b: usize) -> GradedScalar {
        GradedScalar::from_laurent(self.0.ring, self.0.pairing[a][b].clone())
    }

    pub fn zero(&self) -> QuadricClass {
        QuadricClass { theory: self.clone(), coeffs: vec![Laurent::zero(); self.size()] }
    }

    pub fn one(&self) -> QuadricClass {
        self.element(Basis::H(0))
    }

    pub fn element(&self, e: Basis) -> QuadricClass {
        let mut c = self.zero();
        c.coeffs[self.index_of(e)] = Laurent::one();
        c
    }

    /// `h^k` for any `k >= 0`, rewritten in the basis; zero for `k < 0`.
    pub fn h(&self, k: i64) -> QuadricClass {
        if k < 0 {
            return self.zero();
        }
        let k = k as u32;
        if k <= self.d() {
            return self.element(Basis::H(k));
        }
        let mut c = self.zero();
        for (i, x) in self.0.h_power_terms(k) {
            c.coeffs[i] = x;
        }
        c
    }

    /// `l_i`; zero for `i < 0`.
    pub fn l(&self, i: i64) -> Result<QuadricClass> {
        if i < 0 {
            return Ok(self.zero());
        }
        if i as u32 > self.d() {
            return Err(Error::PreconditionViolated(format!("l_{i} with d = {}", self.d())));
        }
        Ok(self.element(Basis::L(i as u32)))
    }

    pub fn scalar(&self, c: &GradedScalar) -> Result<QuadricClass> {
        self.one().scale(c)
    }

    /// Every product of two basis elements, in basis order.
    pub fn multiplication_table(&self) -> Vec<(Basis, Basis, QuadricClass)> {
        let basis = self.basis();
        let mut out = Vec::new();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate().skip(i) {
                let mut c = self.zero();
                for (k, a) in self.table_entry(i, j) {
                    c.coeffs[*k] = a.clone();
                }
                out.push((*x, *y, c));
            }
        }
        out
    }

    /// `χ` of each basis element, in basis order.
    pub fn pushforward_column(&self) -> Vec<(Basis, GradedScalar)> {
        self.basis()
            .into_iter()
            .enumerate()
            .map(|(i, e)| (e, GradedScalar::from_laurent(self.ring(), self.0.chi[i].clone())))
            .collect()
    }

    /// Checks `h^(d+1) = v · h^N · l_d` for a Morava theory mod 2, where
    /// `N = 2^n` for even `D` and `2^n - 1` for odd `D`. Needs
    /// `D >= 2^(n+1) - 2`.
    pub fn verify_height_identity(&self) -> Result<HeightIdentity> {
        let n = self.morava_n().ok_or_else(|| {
            Error::PreconditionViolated("height identity needs a Morava theory".into())
        })?;
        if self.ring().base != Base::F2 {
            return Err(Error::PreconditionViolated("height identity is stated mod 2".into()));
        }
        let dim = self.dim();
        if dim + 2 < (2 << n) {
            return Err(Error::PreconditionViolated(format!(
                "D = {dim} is below 2^(n+1) - 2 = {}",
                (2 << n) - 2
            )));
        }
        let big_n = if dim % 2 == 0 { 1u32 << n } else { (1u32 << n) - 1 };
        let d = self.d();
        let lhs = self.h(d as i64 + 1);
        let v = self.scalar(&GradedScalar::v_pow(self.ring(), 1)?)?;
        let rhs = v.mul(&self.h(big_n as i64))?.mul(&self.element(Basis::L(d)))?;
        Ok(HeightIdentity { n, dim, d, big_n, holds: lhs == rhs, lhs, rhs })
    }
}

/// Both sides of the height identity.
#[derive(Clone, Debug)]
pub struct HeightIdentity {
    pub n: u32,
    pub dim: u32,
    pub d: u32,
    pub big_n: u32,
    pub lhs: QuadricClass,
    pub rhs: QuadricClass,
    pub holds: bool,
}

fn integral_base(base: Base) -> Base {
    match base {
        Base::F2 => Base::F2,
        _ => Base::Zloc2,
    }
}

impl Inner {
    fn size(&self) -> usize {
        2 * self.d as usize + 2
    }

    fn basis_at(&self, i: usize) -> Basis {
        let d = self.d as usize;
        if i <= d {
            Basis::H(i as u32)
        } else {
            Basis::L((i - d - 1) as u32)
        }
    }

    fn index_of(&self, e: Basis) -> usize {
        match e {
            Basis::H(k) => k as usize,
            Basis::L(i) => self.d as usize + 1 + i as usize,
        }
    }

    /// `h^k = Σ b_i l_{D-d-i-r}` for `k = d + 1 + r`.
    fn h_power_terms(&self, k: u32) -> Vec<(usize, Laurent)> {
        if k <= self.d {
            return vec![(k as usize, Laurent::one())];
        }
        let r = (k - self.d - 1) as i64;
        let top = (self.dim - self.d) as i64;
        let mut out: BTreeMap<usize, Laurent> = BTreeMap::new();
        for i in 1..=top {
            let j = top - i - r;
            if j < 0 || self.b[i as usize].is_zero() {
                continue;
            }
            let idx = self.index_of(Basis::L(j as u32));
            out.entry(idx).or_default().add_assign(&self.b[i as usize], self.ring.base);
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn basis_product(&self, x: Basis, y: Basis) -> Vec<(usize, Laurent)> {
        match (x, y) {
            (Basis::H(a), Basis::H(b)) => self.h_power_terms(a + b),
            (Basis::H(a), Basis::L(i)) | (Basis::L(i), Basis::H(a)) => {
                if i >= a {
                    vec![(self.index_of(Basis::L(i - a)), Laurent::one())]
                } else {
                    Vec::new()
                }
            }
            (Basis::L(i), Basis::L(j)) => {
                if i == self.d && j == self.d && self.dim % 4 == 0 {
                    vec![(self.index_of(Basis::L(0)), Laurent::one())]
                } else {
                    Vec::new()
                }
            }
        }
    }

    fn basis_chi(&self, x: Basis) -> Laurent {
        match x {
            Basis::L(i) => self.p[i as usize].clone(),
            Basis::H(k) => {
                let mut s = Laurent::zero();
                let top = self.dim + 1 - k;
                for j in 1..=top {
                    s.add_product(&self.b[j as usize], &self.p[(top - j) as usize], self.ring.base);
                }
                s
            }
        }
    }
}

/// An element of the cohomology ring of a quadric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricClass {
    theory: QuadricTheory,
    coeffs: Vec<Laurent>,
}

impl QuadricClass {
    pub fn theory(&self) -> &QuadricTheory {
        &self.theory
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Laurent::is_zero)
    }

    pub fn coefficient(&self, e: Basis) -> GradedScalar {
        GradedScalar::from_laurent(self.theory.ring(), self.coeffs[self.theory.index_of(e)].clone())
    }

    pub(crate) fn raw(&self) -> &[Laurent] {
        &self.coeffs
    }

    pub(crate) fn from_raw(theory: &QuadricTheory, coeffs: Vec<Laurent>) -> Self {
        QuadricClass { theory: theory.clone(), coeffs }
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> Vec<(Basis, GradedScalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.theory.basis_at(i), GradedScalar::from_laurent(self.theory.ring(), c.clone())))
            .collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.theory != other.theory {
            return Err(Error::TheoryMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let base = self.theory.ring().base;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b, base)).collect();
        Ok(QuadricClass { theory: self.theory.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let base = self.theory.ring().base;
        QuadricClass { theory: self.theory.clone(), coeffs: self.coeffs.iter().map(|a| a.neg(base)).collect() }
    }

    pub fn scale(&self, c: &GradedScalar) -> Result<Self> {
        self.theory.ring().check_same(&c.ring())?;
        let base = self.theory.ring().base;
        let coeffs = self.coeffs.iter().map(|a| a.mul(c.laurent(), base)).collect();
        Ok(QuadricClass { theory: self.theory.clone(), coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let base = self.theory.ring().base;
        let mut coeffs = vec![Laurent::zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b, base);
                for (k, c) in self.theory.table_entry(i, j) {
                    coeffs[*k].add_product(&ab, c, base);
                }
            }
        }
        Ok(QuadricClass { theory: self.theory.clone(), coeffs })
    }

    /// `χ`, the pushforward to the point.
    pub fn pushforward_point(&self) -> GradedScalar {
        let base = self.theory.ring().base;
        let mut s = Laurent::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                s.add_product(a, self.theory.chi_raw(i), base);
            }
        }
        GradedScalar::from_laurent(self.theory.ring(), s)
    }

    /// The common codimension of all terms, counting `codim v = deg v`.
    pub fn homogeneous_codim(&self) -> Option<i64> {
        let vd = self.theory.ring().v_degree as i64;
        let mut it = self.coeffs.iter().enumerate().flat_map(|(i, c)| {
            let e = self.theory.codim(self.theory.basis_at(i)) as i64;
            c.terms().map(move |(k, _)| e + k as i64 * vd)
        });
        match it.next() {
            None => Some(0),
            Some(x) => it.all(|y| y == x).then_some(x),
        }
    }

    /// Coefficientwise image in another theory on the same quadric.
    pub fn reduce_to(&self, target: &QuadricTheory) -> Result<Self> {
        if target.dim() != self.theory.dim() {
            return Err(Error::TheoryMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                GradedScalar::from_laurent(self.theory.ring(), c.clone())
                    .reduce_to(target.ring())
                    .map(GradedScalar::into_laurent)
            })
            .collect::<Result<_>>()?;
        Ok(QuadricClass { theory: target.clone(), coeffs })
    }

    /// Sends `v` to zero, landing in `target` (which has no `v`).
    pub fn specialize_v_zero(&self, target: &QuadricTheory) -> Result<Self> {
        if target.dim() != self.theory.dim() {
            return Err(Error::TheoryMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                GradedScalar::from_laurent(self.theory.ring(), c.clone())
                    .specialize_v_zero()?
                    .reduce_to(target.ring())
                    .map(GradedScalar::into_laurent)
            })
            .collect::<Result<_>>()?;
        Ok(QuadricClass { theory: target.clone(), coeffs })
    }
}

/// `c·name`, with unit coefficients dropped and sums parenthesized.
pub(crate) fn coefficient_prefix(c: &Laurent, symbol: &str) -> (bool, String) {
    if let Some((e, a)) = c.as_monomial() {
        use num_traits::{One, Signed};
        let neg = a.is_negative();
        let abs = a.abs();
        if e == 0 && abs.is_one() {
            return (neg, String::new());
        }
        return (neg, format!("{}·", crate::scalar::term_string(&abs, e, symbol)));
    }
    (false, format!("({})·", c.display_with(symbol)))
}

pub(crate) fn join_signed(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    s
}

impl fmt::Display for QuadricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbol = self.theory.v_symbol();
        let parts = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let (neg, pre) = coefficient_prefix(c, &symbol);
                (neg, format!("{pre}{}", self.theory.basis_at(i)))
            })
            .collect();
        f.write_str(&join_signed(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2f2(dim: u32) -> QuadricTheory {
        QuadricTheory::standard(TheoryKind::Morava { n: 2, connective: false }, Base::F2, dim).unwrap()
    }

    fn v(t: &QuadricTheory) -> QuadricClass {
        t.scalar(&GradedScalar::v_pow(t.ring(), 1).unwrap()).unwrap()
    }

    #[test]
    fn ladder_and_top_square() {
        let t = QuadricTheory::standard(TheoryKind::Chow, Base::Q, 7).unwrap();
        let h = t.h(1);
        assert_eq!(h.mul(&t.l(3).unwrap()).unwrap(), t.l(2).unwrap());
        assert!(h.mul(&t.l(0).unwrap()).unwrap().is_zero());

        let t = QuadricTheory::standard(TheoryKind::Chow, Base::Zloc2, 4).unwrap();
        let l2 = t.l(2).unwrap();
        assert_eq!(l2.mul(&l2).unwrap(), t.l(0).unwrap());
        let t = QuadricTheory::standard(TheoryKind::Chow, Base::Zloc2, 6).unwrap();
        let l3 = t.l(3).unwrap();
        assert!(l3.mul(&l3).unwrap().is_zero());
    }

    #[test]
    fn morava_h_powers() {
        let t = k2f2(7);
        assert_eq!(t.h(4), v(&t).mul(&t.l(0).unwrap()).unwrap());
        assert_eq!(t.h(4).to_string(), "v_2·l_0");
        let t = k2f2(5);
        assert!(t.h(3).is_zero());
    }

    #[test]
    fn chow_top_power() {
        for dim in [2u32, 4, 6, 8] {
            let t = QuadricTheory::standard(TheoryKind::Chow, Base::Z, dim).unwrap();
            let d = t.d() as i64;
            let two = t.scalar(&GradedScalar::from_int(t.ring(), 2)).unwrap();
            assert_eq!(t.h(d + 1), two.mul(&t.l(d - 1).unwrap()).unwrap(), "D = {dim}");
        }
    }

    #[test]
    fn morava_pushforward() {
        let t = k2f2(4);
        assert!(t.l(0).unwrap().pushforward_point().is_one());
        assert_eq!(t.h(1).pushforward_point(), GradedScalar::v_pow(t.ring(), 1).unwrap());
        assert!(t.h(2).pushforward_point().is_zero());
        let t = QuadricTheory::standard(TheoryKind::Morava { n: 2, connective: false }, Base::Zloc2, 4).unwrap();
        assert!(t.l(2).unwrap().pushforward_point().is_zero());
    }

    #[test]
    fn chow_degree() {
        for dim in 1..=9 {
            let t = QuadricTheory::standard(TheoryKind::Chow, Base::Z, dim).unwrap();
            assert_eq!(t.h(dim as i64).pushforward_point(), GradedScalar::from_int(t.ring(), 2));
            assert!(t.h(0).pushforward_point().is_zero());
        }
    }

    #[test]
    fn height_identity() {
        for dim in 6..=10 {
            let r = k2f2(dim).verify_height_identity().unwrap();
            assert!(r.holds, "D = {dim}: {} vs {}", r.lhs, r.rhs);
        }
        let r = k2f2(8).verify_height_identity().unwrap();
        assert_eq!(r.lhs.to_string(), "v_2·l_0");
        assert!(matches!(k2f2(4).verify_height_identity(), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn short_truncation_is_refused() {
        let f = FormalGroupLaw::additive(4).unwrap();
        assert!(matches!(QuadricTheory::new(f, 3), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn theories_do_not_mix() {
        let a = QuadricTheory::standard(TheoryKind::Chow, Base::Q, 3).unwrap();
        let b = QuadricTheory::standard(TheoryKind::Chow, Base::Q, 4).unwrap();
        assert!(matches!(a.one().mul(&b.one()), Err(Error::TheoryMismatch)));
    }
}
