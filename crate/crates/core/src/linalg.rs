//! Linear algebra over the fraction field `K(v)` of a Laurent ring, with
//! `K = Q` or `F2`. Matrices here are tiny (at most a few dozen rows), so
//! plain Gaussian elimination on reduced rational functions is enough.

#![allow(clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{Base, Laurent, RingSpec};

/// Dense polynomial in `v` over `K`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn constant(c: BigRational) -> Self {
        Poly(vec![c]).trim()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn add(&self, o: &Poly, k: Base) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        Poly((0..n)
            .map(|i| k.fix(self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)))
            .collect())
        .trim()
    }

    fn neg(&self, k: Base) -> Poly {
        Poly(self.0.iter().map(|c| k.fix(-c)).collect()).trim()
    }

    fn mul(&self, o: &Poly, k: Base) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] = k.fix(&r[i + j] + a * b);
            }
        }
        Poly(r).trim()
    }

    fn scale(&self, c: &BigRational, k: Base) -> Poly {
        Poly(self.0.iter().map(|x| k.fix(x * c)).collect()).trim()
    }

    fn divrem(&self, d: &Poly, k: Base) -> (Poly, Poly) {
        let inv = k.inverse(d.lead()).expect("field");
        let mut rem = self.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(d.degree()).max(1)];
        while !rem.is_zero() && rem.degree() >= d.degree() {
            let shift = rem.degree() - d.degree();
            let c = k.fix(rem.lead() * &inv);
            let mut t = vec![BigRational::zero(); shift];
            t.push(c.clone());
            q[shift] = c;
            rem = rem.add(&Poly(t).mul(d, k).neg(k), k);
        }
        (Poly(q).trim(), rem)
    }

    fn monic(&self, k: Base) -> Poly {
        let inv = k.inverse(self.lead()).expect("field");
        self.scale(&inv, k)
    }

    fn gcd(&self, o: &Poly, k: Base) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, k);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(k)
        }
    }
}

/// Reduced fraction `num / den` with monic `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    fn new(num: Poly, den: Poly, k: Base) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den, k);
        let (num, _) = num.divrem(&g, k);
        let (den, _) = den.divrem(&g, k);
        let inv = k.inverse(den.lead()).expect("field");
        RatFunc { num: num.scale(&inv, k), den: den.scale(&inv, k) }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::constant(BigRational::one()) }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::constant(BigRational::one()), den: Poly::constant(BigRational::one()) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn from_laurent(x: &Laurent, k: Base) -> Self {
        let low = match x.min_exponent() {
            Some(e) => e,
            None => return Self::zero(),
        };
        let shift = low.min(0);
        let mut num = Vec::new();
        for (e, c) in x.terms() {
            let i = (e - shift) as usize;
            if num.len() <= i {
                num.resize(i + 1, BigRational::zero());
            }
            num[i] = k.fix(c.clone());
        }
        let mut den = vec![BigRational::zero(); (-shift) as usize];
        den.push(BigRational::one());
        RatFunc::new(Poly(num).trim(), Poly(den), k)
    }

    /// Back to a Laurent polynomial when the denominator is a power of `v`.
    pub(crate) fn to_laurent(&self, ring: &RingSpec) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let k = self.den.degree();
        if self.den.0[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Laurent::zero();
        for (i, c) in self.num.0.iter().enumerate() {
            let c = ring.base.normalize(c.clone()).ok()?;
            out.add_term(i as i32 - k as i32, &c, ring.base);
        }
        let ok = out.terms().all(|(e, _)| ring.admits_exponent(e));
        ok.then_some(out)
    }

    fn add(&self, o: &Self, k: Base) -> Self {
        RatFunc::new(
            self.num.mul(&o.den, k).add(&o.num.mul(&self.den, k), k),
            self.den.mul(&o.den, k),
            k,
        )
    }

    fn neg(&self, k: Base) -> Self {
        RatFunc { num: self.num.neg(k), den: self.den.clone() }
    }

    fn mul(&self, o: &Self, k: Base) -> Self {
        RatFunc::new(self.num.mul(&o.num, k), self.den.mul(&o.den, k), k)
    }

    fn inv(&self, k: Base) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone(), k)
    }
}

/// Matrix over `K(v)`, row-major.
pub(crate) type Matrix = Vec<Vec<RatFunc>>;

pub(crate) fn matrix_from_laurent(m: &[Vec<Laurent>], k: Base) -> Matrix {
    m.iter().map(|row| row.iter().map(|x| RatFunc::from_laurent(x, k)).collect()).collect()
}

/// Rank over the fraction field.
pub(crate) fn rank(m: &Matrix, k: Base) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv(k);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv, k).neg(k);
            for j in c..cols {
                let t = a[r][j].mul(&f, k);
                a[i][j] = a[i][j].add(&t, k);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Inverse of a square matrix, or `None` when it is singular.
pub(crate) fn inverse(m: &Matrix, k: Base) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].inv(k);
        for j in 0..2 * n {
            a[c][j] = a[c][j].mul(&inv, k);
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].neg(k);
            for j in 0..2 * n {
                let t = a[c][j].mul(&f, k);
                a[i][j] = a[i][j].add(&t, k);
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> Laurent {
        let mut l = Laurent::zero();
        for (e, c) in terms {
            l.add_term(*e, &BigRational::from_integer((*c).into()), Base::Q);
        }
        l
    }

    #[test]
    fn rank_drops_only_generically() {
        // [[v, 1], [1, v^-1]] is singular over Q(v).
        let m = vec![vec![lp(&[(1, 1)]), lp(&[(0, 1)])], vec![lp(&[(0, 1)]), lp(&[(-1, 1)])]];
        assert_eq!(rank(&matrix_from_laurent(&m, Base::Q), Base::Q), 1);
        // [[v, 1], [1, v]] has rank 2 although it is singular at v = 1.
        let m = vec![vec![lp(&[(1, 1)]), lp(&[(0, 1)])], vec![lp(&[(0, 1)]), lp(&[(1, 1)])]];
        assert_eq!(rank(&matrix_from_laurent(&m, Base::Q), Base::Q), 2);
    }

    #[test]
    fn rank_over_f2() {
        let one = || {
            let mut l = Laurent::zero();
            l.add_term(0, &BigRational::one(), Base::F2);
            l
        };
        let m = vec![vec![one(), one()], vec![one(), one()]];
        assert_eq!(rank(&matrix_from_laurent(&m, Base::F2), Base::F2), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let r = RingSpec::laurent(Base::Q, -3);
        let m = vec![vec![lp(&[(0, 2), (1, 1)]), lp(&[(0, 2)])], vec![lp(&[(0, 2)]), lp(&[])]];
        let mm = matrix_from_laurent(&m, Base::Q);
        let inv = inverse(&mm, Base::Q).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = RatFunc::zero();
                for k in 0..2 {
                    s = s.add(&mm[i][k].mul(&inv[k][j], Base::Q), Base::Q);
                }
                let expect = if i == j { RatFunc::one() } else { RatFunc::zero() };
                assert_eq!(s, expect);
            }
        }
        assert!(inv[1][1].to_laurent(&r).is_some());
        let sing = vec![vec![lp(&[(0, 1)]), lp(&[(0, 2)])], vec![lp(&[(0, 2)]), lp(&[(0, 4)])]];
        assert!(inverse(&matrix_from_laurent(&sing, Base::Q), Base::Q).is_none());
    }
}
