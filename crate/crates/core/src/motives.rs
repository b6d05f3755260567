//! Correspondences on a split quadric and the decomposition of its diagonal.
//!
//! By the Künneth formula a correspondence is a matrix `M` over the
//! coefficient ring: `Σ M[a][b] · e_a × e_b`. For `f = Σ a×b` and
//! `g = Σ c×e` the composite is
//!
//! ```text
//! g ∘ f = Σ χ(b·c) · a × e
//! ```
//!
//! which in matrix form reads `M_f · P · M_g` with `P[b][c] = χ(e_b e_c)`.
//! The diagonal is therefore `P^-1`; for Morava K(n) mod 2 it has a closed
//! form built from `D' = D - 2^n + 1` and `d' = D' - d`, and splits into the
//! projectors `π_i` and `ϖ_j` computed here. Classes with a negative index
//! are zero, and the terms dropped for that reason are recorded.

#![allow(clippy::needless_range_loop)]

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg;
use crate::quadric::{coefficient_prefix, join_signed, Basis, QuadricClass, QuadricTheory};
use crate::scalar::{Base, GradedScalar, Laurent};

/// An element of the cohomology of `Q × Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    theory: QuadricTheory,
    /// Row-major `size × size` coefficient matrix.
    m: Vec<Laurent>,
}

impl Correspondence {
    pub fn zero(theory: &QuadricTheory) -> Self {
        let n = theory.size();
        Correspondence { theory: theory.clone(), m: vec![Laurent::zero(); n * n] }
    }

    /// `x × y`.
    pub fn kunneth(x: &QuadricClass, y: &QuadricClass) -> Result<Self> {
        if x.theory() != y.theory() {
            return Err(Error::TheoryMismatch);
        }
        let theory = x.theory();
        let n = theory.size();
        let base = theory.ring().base;
        let mut c = Self::zero(theory);
        for (a, xa) in x.raw().iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.raw().iter().enumerate() {
                if !yb.is_zero() {
                    c.m[a * n + b] = xa.mul(yb, base);
                }
            }
        }
        Ok(c)
    }

    /// `e_a × e_b` for two basis elements.
    pub fn basis_pair(theory: &QuadricTheory, a: Basis, b: Basis) -> Self {
        let n = theory.size();
        let mut c = Self::zero(theory);
        c.m[theory.index_of(a) * n + theory.index_of(b)] = Laurent::one();
        c
    }

    /// The identity correspondence computed as the inverse of the pairing
    /// matrix; works for any theory whose pairing is invertible.
    pub fn diagonal_from_pairing(theory: &QuadricTheory) -> Result<Self> {
        let ring = theory.ring();
        let k = ring.base.fraction_field();
        let p = linalg::matrix_from_laurent(theory.pairing_raw(), k);
        let inv = linalg::inverse(&p, k)
            .ok_or_else(|| Error::NotInvertible("pairing matrix".into()))?;
        let mut c = Self::zero(theory);
        for (i, row) in inv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                c.m[i * row.len() + j] = x.to_laurent(&ring).ok_or_else(|| {
                    Error::NotInvertible("pairing matrix over the coefficient ring".into())
                })?;
            }
        }
        Ok(c)
    }

    pub fn theory(&self) -> &QuadricTheory {
        &self.theory
    }

    fn size(&self) -> usize {
        self.theory.size()
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(Laurent::is_zero)
    }

    pub fn coefficient(&self, a: Basis, b: Basis) -> GradedScalar {
        let n = self.size();
        let x = &self.m[self.theory.index_of(a) * n + self.theory.index_of(b)];
        GradedScalar::from_laurent(self.theory.ring(), x.clone())
    }

    /// Nonzero terms `(first factor, second factor, coefficient)` in the
    /// canonical display order.
    pub fn terms(&self) -> Vec<(Basis, Basis, GradedScalar)> {
        let n = self.size();
        let mut out: Vec<(Basis, Basis, GradedScalar)> = (0..n * n)
            .filter(|i| !self.m[*i].is_zero())
            .map(|i| {
                (
                    self.theory.basis_at(i / n),
                    self.theory.basis_at(i % n),
                    GradedScalar::from_laurent(self.theory.ring(), self.m[i].clone()),
                )
            })
            .collect();
        out.sort_by_key(|x| display_key(x.0, x.1));
        out
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
        let m = self.m.iter().zip(&other.m).map(|(a, b)| a.add(b, base)).collect();
        Ok(Correspondence { theory: self.theory.clone(), m })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let base = self.theory.ring().base;
        Correspondence { theory: self.theory.clone(), m: self.m.iter().map(|a| a.neg(base)).collect() }
    }

    pub fn scale(&self, c: &GradedScalar) -> Result<Self> {
        self.theory.ring().check_same(&c.ring())?;
        let base = self.theory.ring().base;
        let m = self.m.iter().map(|a| a.mul(c.laurent(), base)).collect();
        Ok(Correspondence { theory: self.theory.clone(), m })
    }

    /// `self ∘ f`: apply `f` first, then `self`.
    pub fn compose(&self, f: &Correspondence) -> Result<Self> {
        self.check(f)?;
        let n = self.size();
        let base = self.theory.ring().base;
        let p = self.theory.pairing_raw();
        // f·P, then (f·P)·self.
        let mut fp = vec![Laurent::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                let x = &f.m[a * n + b];
                if x.is_zero() {
                    continue;
                }
                for (c, pbc) in p[b].iter().enumerate() {
                    if !pbc.is_zero() {
                        fp[a * n + c].add_product(x, pbc, base);
                    }
                }
            }
        }
        let mut out = vec![Laurent::zero(); n * n];
        for a in 0..n {
            for c in 0..n {
                let x = &fp[a * n + c];
                if x.is_zero() {
                    continue;
                }
                for e in 0..n {
                    let y = &self.m[c * n + e];
                    if !y.is_zero() {
                        out[a * n + e].add_product(x, y, base);
                    }
                }
            }
        }
        Ok(Correspondence { theory: self.theory.clone(), m: out })
    }

    /// Swaps the two factors.
    pub fn transpose(&self) -> Self {
        let n = self.size();
        let m = (0..n * n).map(|i| self.m[(i % n) * n + i / n].clone()).collect();
        Correspondence { theory: self.theory.clone(), m }
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self).is_ok_and(|sq| sq == *self)
    }

    /// Codimension of every term, or `None` if they disagree. A projector
    /// lives in codimension `D`.
    pub fn homogeneous_codim(&self) -> Option<i64> {
        let n = self.size();
        let vd = self.theory.ring().v_degree as i64;
        let codim = |i: usize| self.theory.codim(self.theory.basis_at(i)) as i64;
        let mut it = (0..n * n).flat_map(|i| {
            let base = codim(i / n) + codim(i % n);
            self.m[i].terms().map(move |(e, _)| base + e as i64 * vd)
        });
        match it.next() {
            None => Some(0),
            Some(x) => it.all(|y| y == x).then_some(x),
        }
    }

    /// Matrix of the action on the cohomology of `Q`:
    /// `x ↦ Σ M[a][b] χ(e_b · x) e_a`. Entry `[a][c]` is the coefficient of
    /// `e_a` in the image of `e_c`.
    pub(crate) fn realization(&self) -> Vec<Vec<Laurent>> {
        let n = self.size();
        let base = self.theory.ring().base;
        let p = self.theory.pairing_raw();
        let mut r = vec![vec![Laurent::zero(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let x = &self.m[a * n + b];
                if x.is_zero() {
                    continue;
                }
                for c in 0..n {
                    if !p[b][c].is_zero() {
                        r[a][c].add_product(x, &p[b][c], base);
                    }
                }
            }
        }
        r
    }

    /// Pullback action `x ↦ pr_1*(α · pr_2^* x)`, so `a×b` sends `x` to
    /// `χ(b·x)·a`. It reverses composition: `(g∘f)(x) = f(g(x))`.
    pub fn apply(&self, x: &QuadricClass) -> Result<QuadricClass> {
        if x.theory() != &self.theory {
            return Err(Error::TheoryMismatch);
        }
        let r = self.realization();
        let base = self.theory.ring().base;
        let coeffs = r
            .iter()
            .map(|row| {
                let mut s = Laurent::zero();
                for (c, xc) in x.raw().iter().enumerate() {
                    s.add_product(&row[c], xc, base);
                }
                s
            })
            .collect();
        Ok(QuadricClass::from_raw(&self.theory, coeffs))
    }

    /// Rank of an idempotent: the rank of its realization over the fraction
    /// field of the coefficient ring.
    pub fn summand_rank(&self) -> Result<usize> {
        if !self.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        Ok(self.realization_rank())
    }

    fn realization_rank(&self) -> usize {
        let k = self.theory.ring().base.fraction_field();
        linalg::rank(&linalg::matrix_from_laurent(&self.realization(), k), k)
    }

    /// Decides whether an idempotent is a Tate motive and finds its twist.
    ///
    /// The image of a rank-one idempotent is a line. Its generator is scaled
    /// so that its first nonzero coordinate (in basis order) carries `v^0`;
    /// the twist is the codimension of that generator.
    pub fn classify_tate(&self) -> Result<TateClass> {
        if !self.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        if self.realization_rank() != 1 {
            return Ok(TateClass::NotTate);
        }
        let r = self.realization();
        let n = self.size();
        let col = (0..n)
            .find(|c| (0..n).any(|a| !r[a][*c].is_zero()))
            .expect("rank one has a nonzero column");
        let coeffs: Vec<Laurent> = (0..n).map(|a| r[a][col].clone()).collect();
        let lead = coeffs.iter().find(|c| !c.is_zero()).expect("nonzero column");
        let shift = match lead.as_monomial() {
            Some((e, _)) => -e,
            None => return Ok(TateClass::NotTate),
        };
        let coeffs = coeffs.into_iter().map(|c| c.shift(shift)).collect();
        let gen = QuadricClass::from_raw(&self.theory, coeffs);
        Ok(match gen.homogeneous_codim() {
            Some(j) => TateClass::Tate(j),
            None => TateClass::NotTate,
        })
    }

    /// Single-line form such as `1×l_0 + v_2·l_0×l_0`.
    pub fn to_compact_string(&self) -> String {
        let symbol = self.theory.v_symbol();
        let parts = self
            .terms()
            .into_iter()
            .map(|(a, b, c)| {
                let (neg, pre) = coefficient_prefix(c.laurent(), &symbol);
                (neg, format!("{pre}{a}×{b}"))
            })
            .collect();
        join_signed(parts)
    }
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

/// Display order: mixed pairs `h^i×l_j`, `l_j×h^i` first (by `i`, then
/// `j`), then `l×l`, then `h×h`.
fn display_key(a: Basis, b: Basis) -> (u8, u32, u32, u8) {
    match (a, b) {
        (Basis::H(i), Basis::L(j)) => (0, i, j, 0),
        (Basis::L(j), Basis::H(i)) => (0, i, j, 1),
        (Basis::L(i), Basis::L(j)) => (1, i, j, 0),
        (Basis::H(i), Basis::H(j)) => (2, i, j, 0),
    }
}

/// Result of [`Correspondence::classify_tate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TateClass {
    Tate(i64),
    NotTate,
}

impl TateClass {
    /// Whether this is a Tate motive of twist `j`. When `v` is invertible,
    /// multiplication by `v` identifies twists that differ by `deg v`, so
    /// twists are compared modulo `|deg v|`.
    pub fn has_twist(&self, j: i64, theory: &QuadricTheory) -> bool {
        match *self {
            TateClass::NotTate => false,
            TateClass::Tate(t) => {
                let ring = theory.ring();
                let period = if ring.has_v && ring.v_invertible { (ring.v_degree as i64).abs() } else { 0 };
                if period == 0 {
                    t == j
                } else {
                    (t - j).rem_euclid(period) == 0
                }
            }
        }
    }
}

/// A named projector with the twist it is expected to have.
#[derive(Clone, Debug)]
pub struct Projector {
    pub name: String,
    pub index: i64,
    pub expected_twist: i64,
    pub corr: Correspondence,
}

/// Numerical data of a Morava theory on a quadric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoravaShape {
    pub n: u32,
    pub dim: i64,
    pub d: i64,
    /// `D' = D - 2^n + 1`.
    pub dprime: i64,
    /// `d' = D' - d`.
    pub dprime_small: i64,
    /// `D ≡ 0 mod 4`.
    pub delta: bool,
}

impl MoravaShape {
    pub fn new(n: u32, dim: u32) -> Self {
        let dim = dim as i64;
        let d = dim / 2;
        let dprime = dim - (1i64 << n) + 1;
        MoravaShape { n, dim, d, dprime, dprime_small: dprime - d, delta: dim % 4 == 0 }
    }
}

fn morava_mod2_shape(theory: &QuadricTheory) -> Result<MoravaShape> {
    let n = theory
        .morava_n()
        .ok_or_else(|| Error::PreconditionViolated("needs a Morava theory".into()))?;
    if n < 2 {
        return Err(Error::PreconditionViolated("needs n >= 2".into()));
    }
    if theory.ring().base != Base::F2 || !theory.ring().v_invertible {
        return Err(Error::PreconditionViolated("needs K(n) with F2 coefficients".into()));
    }
    Ok(MoravaShape::new(n, theory.dim()))
}

struct Builder<'a> {
    t: &'a QuadricTheory,
    dropped: Vec<String>,
}

impl<'a> Builder<'a> {
    fn h(&self, k: i64) -> QuadricClass {
        self.t.h(k)
    }

    fn l(&mut self, i: i64, context: &str) -> QuadricClass {
        if i < 0 {
            self.dropped.push(format!("{context}: l_{i} = 0"));
        }
        self.t.l(i).expect("index at most d")
    }

    fn v(&self, e: i32) -> GradedScalar {
        GradedScalar::v_pow(self.t.ring(), e).expect("Laurent ring")
    }

    fn sum(&self, a: &QuadricClass, b: &QuadricClass) -> QuadricClass {
        a.add(b).expect("same theory")
    }

    fn times(&self, c: &GradedScalar, x: &QuadricClass) -> QuadricClass {
        x.scale(c).expect("same ring")
    }

    fn cross(&self, a: &QuadricClass, b: &QuadricClass) -> Correspondence {
        Correspondence::kunneth(a, b).expect("same theory")
    }
}

/// The diagonal of K(n) mod 2 from its closed form
///
/// ```text
/// Δ = Σ_{i=0}^{d} (h^i×l_i + l_i×h^i) + v Σ_{i=d'}^{d} l_i×l_{D'-i}
///     + δ·(h^d + v l_{d'})×(h^d + v l_{d'})
/// ```
///
/// with `δ = 1` iff `D ≡ 0 mod 4`. Returns the correspondence and the terms
/// dropped by the negative-index convention.
pub fn diagonal(theory: &QuadricTheory) -> Result<(Correspondence, Vec<String>)> {
    let s = morava_mod2_shape(theory)?;
    let mut b = Builder { t: theory, dropped: Vec::new() };
    let mut delta = Correspondence::zero(theory);
    for i in 0..=s.d {
        let (h, l) = (b.h(i), b.l(i, ""));
        delta = delta.add(&b.cross(&h, &l))?.add(&b.cross(&l, &h))?;
    }
    let v = b.v(1);
    for i in s.dprime_small..=s.d {
        let ctx = format!("v·l_{i}×l_{}", s.dprime - i);
        let li = b.l(i, &ctx);
        let lj = b.l(s.dprime - i, &ctx);
        delta = delta.add(&b.cross(&li, &lj).scale(&v)?)?;
    }
    if s.delta {
        let ctx = "δ-term";
        let l = b.l(s.dprime_small, ctx);
        let x = b.sum(&b.h(s.d), &b.times(&v, &l));
        delta = delta.add(&b.cross(&x, &x))?;
    }
    Ok((delta, b.dropped))
}

/// `π_i = v^-1 · h^i × h^(D'-i)` for `0 <= i <= D'`; empty when
/// `D < 2^n - 1`.
pub fn tate_projectors(theory: &QuadricTheory) -> Result<Vec<Projector>> {
    let s = morava_mod2_shape(theory)?;
    let b = Builder { t: theory, dropped: Vec::new() };
    let vinv = b.v(-1);
    (0..=s.dprime)
        .map(|i| {
            let corr = b.cross(&b.h(i), &b.h(s.dprime - i)).scale(&vinv)?;
            Ok(Projector { name: format!("π_{i}"), index: i, expected_twist: i, corr })
        })
        .collect()
}

/// The simplified forms `π_i = h^i×l_i` and `π_{D'-i} = l_i×h^i` for
/// `0 <= i < d'`, as `(index, correspondence)` pairs.
pub fn tate_projectors_simplified(theory: &QuadricTheory) -> Result<Vec<(i64, Correspondence)>> {
    let s = morava_mod2_shape(theory)?;
    let mut b = Builder { t: theory, dropped: Vec::new() };
    let mut out = Vec::new();
    for i in 0..s.dprime_small {
        let (h, l) = (b.h(i), b.l(i, ""));
        out.push((i, b.cross(&h, &l)));
        out.push((s.dprime - i, b.cross(&l, &h)));
    }
    out.sort_by_key(|(i, _)| *i);
    Ok(out)
}

/// The projectors `ϖ_j` for `d' <= j <= d`:
///
/// ```text
/// ϖ_j = (h^j + v l_{D'-j}) × (l_j + v^-1 h^{D'-j})            j < d
/// ϖ_d = (h^d + v l_{d'}) × (l_d + v^-1 h^{d'} + δ(h^d + v l_{d'}))
/// ```
///
/// Projectors that vanish under the negative-index convention are left out;
/// their indices are reported together with the other dropped terms.
pub fn varpi_projectors(theory: &QuadricTheory) -> Result<(Vec<Projector>, Vec<String>)> {
    let s = morava_mod2_shape(theory)?;
    let mut b = Builder { t: theory, dropped: Vec::new() };
    let v = b.v(1);
    let vinv = b.v(-1);
    let tate_shift = (1i64 << s.n) - 1;
    let mut out = Vec::new();
    for j in s.dprime_small..=s.d {
        let ctx = format!("ϖ_{j}");
        let hj = if j < 0 {
            b.dropped.push(format!("{ctx}: h^{j} = 0"));
            theory.zero()
        } else {
            b.h(j)
        };
        let lk = b.l(s.dprime - j, &ctx);
        let first = b.sum(&hj, &b.times(&v, &lk));
        let lj = b.l(j, &ctx);
        let hk = if s.dprime - j < 0 {
            b.dropped.push(format!("{ctx}: h^{} = 0", s.dprime - j));
            theory.zero()
        } else {
            b.h(s.dprime - j)
        };
        let mut second = b.sum(&lj, &b.times(&vinv, &hk));
        if j == s.d && s.delta {
            second = b.sum(&second, &first);
        }
        let corr = b.cross(&first, &second);
        if corr.is_zero() {
            b.dropped.push(format!("{ctx} vanishes"));
            continue;
        }
        let expected_twist = if j < 0 { j + tate_shift } else { j };
        out.push(Projector { name: ctx, index: j, expected_twist, corr });
    }
    Ok((out, b.dropped))
}

/// Rational projectors for a theory with `1/2` in its coefficients.
#[derive(Clone, Debug)]
pub struct RationalProjectors {
    /// `½ h^i × h^(D-i)` literally, `0 <= i <= D`.
    pub literal: Vec<Correspondence>,
    /// The orthogonal system `h^i × b_i`, with `b_i` dual to `h^0 .. h^D`
    /// under `χ(x·y)`; agrees with `literal` for Chow groups and reduces to
    /// it modulo `v` in general.
    pub lifted: Vec<Correspondence>,
    /// `Δ - Σ lifted`.
    pub residual: Correspondence,
}

pub fn rational_half_projectors(theory: &QuadricTheory) -> Result<RationalProjectors> {
    let ring = theory.ring();
    if !ring.base.contains_half() {
        return Err(Error::HalfUnavailable(ring));
    }
    let dim = theory.dim() as i64;
    let half = GradedScalar::from_rational(ring, num_rational::BigRational::new(1.into(), 2.into()))?;
    let literal = (0..=dim)
        .map(|i| Correspondence::kunneth(&theory.h(i), &theory.h(dim - i))?.scale(&half))
        .collect::<Result<Vec<_>>>()?;

    let k = ring.base.fraction_field();
    let size = dim as usize + 1;
    let gram: Vec<Vec<Laurent>> = (0..size)
        .map(|i| (0..size).map(|j| theory.h((i + j) as i64).pushforward_point().into_laurent()).collect())
        .collect();
    let inv = linalg::inverse(&linalg::matrix_from_laurent(&gram, k), k)
        .ok_or_else(|| Error::NotInvertible("Gram matrix of h^0 .. h^D".into()))?;
    let mut lifted = Vec::with_capacity(size);
    for (i, row) in inv.iter().enumerate() {
        let mut dual = theory.zero();
        for (j, x) in row.iter().enumerate() {
            let c = x
                .to_laurent(&ring)
                .ok_or_else(|| Error::NotInvertible("Gram matrix over the coefficient ring".into()))?;
            dual = dual.add(&theory.h(j as i64).scale(&GradedScalar::from_laurent(ring, c))?)?;
        }
        lifted.push(Correspondence::kunneth(&theory.h(i as i64), &dual)?);
    }
    let mut residual = Correspondence::diagonal_from_pairing(theory)?;
    for p in &lifted {
        residual = residual.sub(p)?;
    }
    Ok(RationalProjectors { literal, lifted, residual })
}

/// Everything needed to check the decomposition of the diagonal of K(n) mod 2
/// on a quadric of dimension `D`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub shape: MoravaShape,
    pub theory: QuadricTheory,
    pub diagonal: Correspondence,
    pub tate: Vec<Projector>,
    pub varpi: Vec<Projector>,
    pub dropped: Vec<String>,
}

impl Decomposition {
    pub fn new(n: u32, dim: u32) -> Result<Self> {
        Self::with_trunc(n, dim, dim + 2)
    }

    /// As [`Decomposition::new`], with the law known at least up to `trunc`.
    pub fn with_trunc(n: u32, dim: u32, trunc: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::PreconditionViolated("decomposition needs n >= 2".into()));
        }
        let theory = QuadricTheory::standard_with_trunc(
            crate::quadric::TheoryKind::Morava { n, connective: false },
            Base::F2,
            dim,
            trunc,
        )?;
        let (diagonal, mut dropped) = diagonal(&theory)?;
        let tate = tate_projectors(&theory)?;
        let (varpi, d2) = varpi_projectors(&theory)?;
        dropped.extend(d2);
        Ok(Decomposition { shape: MoravaShape::new(n, dim), theory, diagonal, tate, varpi, dropped })
    }

    /// `π_0, .., π_D'` followed by the `ϖ_j` in increasing `j`.
    pub fn projectors(&self) -> impl Iterator<Item = &Projector> {
        self.tate.iter().chain(self.varpi.iter())
    }

    /// `Δ - Σ π_i`.
    pub fn residual(&self) -> Result<Correspondence> {
        let mut r = self.diagonal.clone();
        for p in &self.tate {
            r = r.sub(&p.corr)?;
        }
        Ok(r)
    }
}

/// Compares terms for sorting projector names `π_*` before `ϖ_*`.
pub fn projector_order(a: &Projector, b: &Projector) -> Ordering {
    let rank = |p: &Projector| if p.name.starts_with('π') { 0 } else { 1 };
    rank(a).cmp(&rank(b)).then(a.index.cmp(&b.index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::TheoryKind;

    fn k2(dim: u32) -> QuadricTheory {
        QuadricTheory::standard(TheoryKind::Morava { n: 2, connective: false }, Base::F2, dim).unwrap()
    }

    #[test]
    fn example_diagonal_text() {
        let (d, dropped) = diagonal(&k2(3)).unwrap();
        assert_eq!(d.to_string(), "1×l_0 + l_0×1 + h×l_1 + l_1×h + v_2·l_0×l_0");
        assert_eq!(dropped.len(), 2);
    }

    #[test]
    fn closed_form_matches_pairing_inverse() {
        for n in [2u32, 3] {
            for dim in 1..=(1 << n) + 6 {
                let t = QuadricTheory::standard(TheoryKind::Morava { n, connective: false }, Base::F2, dim).unwrap();
                let (d, _) = diagonal(&t).unwrap();
                assert_eq!(d, Correspondence::diagonal_from_pairing(&t).unwrap(), "n={n} D={dim}");
            }
        }
    }

    #[test]
    fn tate_projector_small_cases() {
        let t = k2(3);
        let p = tate_projectors(&t).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].corr.to_string(), "v_2^-1·1×1");
        assert!(tate_projectors(&k2(2)).unwrap().is_empty());
        assert_eq!(tate_projectors(&k2(7)).unwrap().len(), 5);
    }

    #[test]
    fn d7_projector_algebra() {
        let t = k2(7);
        let p = tate_projectors(&t).unwrap();
        assert!(p[0].corr.is_idempotent());
        assert!(p[1].corr.compose(&p[0].corr).unwrap().is_zero());
        assert!(p[0].corr.compose(&p[1].corr).unwrap().is_zero());
        assert_eq!(p[0].corr.classify_tate().unwrap(), TateClass::Tate(0));
        let dec = Decomposition::new(2, 7).unwrap();
        assert_eq!(dec.residual().unwrap().summand_rank().unwrap(), 3);
    }

    #[test]
    fn diagonal_is_not_tate() {
        let (d, _) = diagonal(&k2(5)).unwrap();
        assert_eq!(d.classify_tate().unwrap(), TateClass::NotTate);
        assert_eq!(d.summand_rank().unwrap(), 6);
    }

    #[test]
    fn transpose_examples() {
        let t = k2(6);
        let x = Correspondence::basis_pair(&t, Basis::H(2), Basis::L(2));
        assert_eq!(x.transpose(), Correspondence::basis_pair(&t, Basis::L(2), Basis::H(2)));
        let (d, _) = diagonal(&t).unwrap();
        assert_eq!(d.transpose(), d);
    }

    #[test]
    fn not_idempotent_is_reported() {
        let t = k2(4);
        let x = Correspondence::basis_pair(&t, Basis::H(0), Basis::H(0));
        assert!(matches!(x.summand_rank(), Err(Error::NotIdempotent)));
    }

    #[test]
    fn full_system_for_k2() {
        for dim in 1..=10u32 {
            let dec = Decomposition::new(2, dim).unwrap();
            let ps: Vec<&Projector> = dec.projectors().collect();
            assert_eq!(ps.len() as i64, 2 * dec.shape.d + 2, "D = {dim}");
            let mut sum = Correspondence::zero(&dec.theory);
            for (i, p) in ps.iter().enumerate() {
                sum = sum.add(&p.corr).unwrap();
                for (j, q) in ps.iter().enumerate() {
                    let pq = p.corr.compose(&q.corr).unwrap();
                    if i == j {
                        assert_eq!(pq, p.corr, "D = {dim}, {} not idempotent", p.name);
                    } else {
                        assert!(pq.is_zero(), "D = {dim}: {} ∘ {}", p.name, q.name);
                    }
                }
                let class = p.corr.classify_tate().unwrap();
                assert!(class.has_twist(p.expected_twist, &dec.theory), "D = {dim}, {}: {class:?}", p.name);
            }
            assert_eq!(sum, dec.diagonal, "D = {dim}");
        }
    }

    #[test]
    fn half_needs_rationals() {
        assert!(matches!(rational_half_projectors(&k2(3)), Err(Error::HalfUnavailable(_))));
    }
}
