//! Divided-difference operators on power series in `x_1 .. x_l`.
//!
//! For a formal group law `F`, the class of a weight `λ` is
//! `x_λ = F(.., [λ_j](x_j), ..)` with `x_{e_j} = x_j`. A simple reflection
//! acts by `s_i(x_λ) = x_{s_i λ}`, and
//!
//! ```text
//! Δ_i(u) = (u - s_i(u)) / x_{α_i}
//! ```
//!
//! is an exact division. Each application lowers the truncation by one.

use crate::error::Result;
use crate::fgl::FormalGroupLaw;
use crate::series::TruncSeries;
use crate::weyl::group::RootDatum;

/// The sign `s` in `Δ_i ∘ Δ_i = s·κ_i·Δ_i` for the operators defined here.
/// Found by direct computation for the multiplicative and Morava laws.
pub const SQUARE_RELATION_SIGN: i64 = -1;

/// Formal group law, root datum and truncation for series in `l` variables.
#[derive(Clone, Debug)]
pub struct BtContext {
    datum: RootDatum,
    fgl: FormalGroupLaw,
    trunc: u32,
    inverse: TruncSeries,
    /// `x_{s_i e_j}` for each `i` (index `i - 1`) and `j`.
    reflected_vars: Vec<Vec<TruncSeries>>,
    /// `x_{α_i}`.
    root_classes: Vec<TruncSeries>,
}

impl BtContext {
    pub fn new(datum: RootDatum, fgl: FormalGroupLaw, trunc: u32) -> Result<Self> {
        let trunc = trunc.min(fgl.trunc());
        let fgl = if fgl.trunc() > trunc {
            FormalGroupLaw::from_series(fgl.series().truncated(trunc)?)?
        } else {
            fgl
        };
        let inverse = fgl.formal_inverse();
        let mut ctx = BtContext {
            datum,
            fgl,
            trunc,
            inverse,
            reflected_vars: Vec::new(),
            root_classes: Vec::new(),
        };
        let l = ctx.datum.rank;
        for i in 1..=l {
            let images = (0..l)
                .map(|j| {
                    let mut e = vec![0; l];
                    e[j] = 1;
                    ctx.x_lambda(&ctx.datum.reflect(i, &e))
                })
                .collect::<Result<Vec<_>>>()?;
            ctx.reflected_vars.push(images);
            let root = ctx.x_lambda(&ctx.datum.simple_root(i))?;
            ctx.root_classes.push(root);
        }
        Ok(ctx)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn fgl(&self) -> &FormalGroupLaw {
        &self.fgl
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn nvars(&self) -> usize {
        self.datum.rank
    }

    pub fn var(&self, j: usize) -> TruncSeries {
        TruncSeries::var(self.fgl.ring(), self.nvars(), self.trunc, j)
    }

    /// `F`-sum of the given series, folded from the left.
    pub fn f_sum(&self, parts: &[TruncSeries]) -> Result<TruncSeries> {
        let mut acc = TruncSeries::zero(self.fgl.ring(), self.nvars(), self.trunc);
        for p in parts {
            acc = self.fgl.apply(&acc, p)?;
        }
        Ok(acc)
    }

    /// `x_λ`, built coordinate by coordinate from `x_j` and its formal
    /// inverse.
    pub fn x_lambda(&self, lambda: &[i64]) -> Result<TruncSeries> {
        let mut parts = Vec::new();
        for (j, &m) in lambda.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let x = self.var(j);
            let x = if m < 0 { self.inverse.substitute(&[x])? } else { x };
            for _ in 0..m.unsigned_abs() {
                parts.push(x.clone());
            }
        }
        self.f_sum(&parts)
    }

    /// `x_{α_i}`.
    pub fn root_class(&self, i: usize) -> &TruncSeries {
        &self.root_classes[i - 1]
    }

    /// `s_i(u)`: substitutes `x_j ↦ x_{s_i e_j}`.
    pub fn weyl_action(&self, i: usize, u: &TruncSeries) -> Result<TruncSeries> {
        let args: Vec<TruncSeries> = self.reflected_vars[i - 1]
            .iter()
            .map(|x| if x.trunc() > u.trunc() { x.truncated(u.trunc()) } else { Ok(x.clone()) })
            .collect::<Result<_>>()?;
        u.substitute(&args)
    }

    /// `Δ_i(u) = (u - s_i u) / x_{α_i}`; the result has truncation one less
    /// than `u`.
    pub fn demazure(&self, i: usize, u: &TruncSeries) -> Result<TruncSeries> {
        let su = self.weyl_action(i, u)?;
        let x = self.root_class(i).truncated(u.trunc().min(self.trunc))?;
        u.try_sub(&su)?.exact_div(&x)
    }

    /// `Δ_{i_1} ∘ ⋯ ∘ Δ_{i_k}(u)`: the last letter is applied first.
    pub fn demazure_word(&self, word: &[usize], u: &TruncSeries) -> Result<TruncSeries> {
        let mut r = u.clone();
        for &i in word.iter().rev() {
            r = self.demazure(i, &r)?;
        }
        Ok(r)
    }

    /// `κ_i = G(x_{α_i}, x_{-α_i})`.
    pub fn kappa(&self, i: usize) -> Result<TruncSeries> {
        let g = self.fgl.g_series()?;
        let neg: Vec<i64> = self.datum.simple_root(i).iter().map(|x| -x).collect();
        let a = self.root_class(i).truncated(g.trunc())?;
        let b = self.x_lambda(&neg)?.truncated(g.trunc())?;
        g.substitute(&[a, b])
    }
}

impl BtContext {
    /// Compares `Δ_i(Δ_i u)` with `κ_i · Δ_i(u)`: returns `Some(1)` or
    /// `Some(-1)` when they agree up to that sign (`Some(0)` when both
    /// sides vanish), `None` otherwise.
    pub fn square_relation_sign(&self, i: usize, u: &TruncSeries) -> Result<Option<i64>> {
        let d1 = self.demazure(i, u)?;
        let d2 = self.demazure(i, &d1)?;
        let k = self.kappa(i)?;
        let t = d2.trunc().min(k.trunc());
        let d2 = d2.truncated(t)?;
        let kd = k.truncated(t)?.try_mul(&d1.truncated(t)?)?;
        Ok(if d2.is_zero() && kd.is_zero() {
            Some(0)
        } else if d2 == kd {
            Some(1)
        } else if d2 == -&kd {
            Some(-1)
        } else {
            None
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::MoravaSpec;
    use crate::scalar::Base;
    use crate::series::parse_polynomial;
    use crate::weyl::group::RootType;

    fn b2_additive(t: u32) -> BtContext {
        BtContext::new(
            RootDatum::new(RootType::B, 2).unwrap(),
            FormalGroupLaw::additive(t).unwrap(),
            t,
        )
        .unwrap()
    }

    #[test]
    fn additive_basics() {
        let c = b2_additive(5);
        let r = c.fgl().ring();
        assert_eq!(c.x_lambda(&[1, 0]).unwrap(), parse_polynomial("x1", r, 2, 5).unwrap());
        assert_eq!(c.x_lambda(&[1, -1]).unwrap(), parse_polynomial("x1 - x2", r, 2, 5).unwrap());
        let x1 = c.var(0);
        assert_eq!(c.weyl_action(1, &x1).unwrap(), c.var(1));
        assert_eq!(c.weyl_action(2, &c.var(1)).unwrap(), -c.var(1));
        assert_eq!(c.demazure(1, &x1).unwrap(), TruncSeries::one(r, 2, 4));
        let one = TruncSeries::one(r, 2, 5);
        assert!(c.demazure(1, &one).unwrap().is_zero());
        assert!(c.kappa(1).unwrap().is_zero());
        assert_eq!(c.demazure_word(&[], &x1).unwrap(), x1);
    }

    #[test]
    fn weight_classes_cancel() {
        let f = FormalGroupLaw::morava(MoravaSpec::new(2, Base::F2, true), 8).unwrap();
        let c = BtContext::new(RootDatum::new(RootType::B, 3).unwrap(), f, 8).unwrap();
        let a = c.x_lambda(&[1, -1, 2]).unwrap();
        let b = c.x_lambda(&[-1, 1, -2]).unwrap();
        assert!(c.fgl().apply(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn multiplicative_kappa_is_constant() {
        let f = FormalGroupLaw::multiplicative(true, 6).unwrap();
        let c = BtContext::new(RootDatum::new(RootType::B, 2).unwrap(), f, 6).unwrap();
        let r = c.fgl().ring();
        for i in 1..=2 {
            assert_eq!(c.kappa(i).unwrap(), parse_polynomial("-v", r, 2, 4).unwrap());
        }
    }

    #[test]
    fn square_relation_sign() {
        let laws = [
            FormalGroupLaw::multiplicative(true, 7).unwrap(),
            FormalGroupLaw::morava(MoravaSpec::new(2, Base::Zloc2, true), 9).unwrap(),
        ];
        for f in laws {
            let c = BtContext::new(RootDatum::new(RootType::B, 2).unwrap(), f.clone(), f.trunc()).unwrap();
            let u = parse_polynomial("x1^2*x2 + 3*x1 + x2^4", c.fgl().ring(), 2, c.trunc()).unwrap();
            for i in 1..=2 {
                assert_eq!(c.square_relation_sign(i, &u).unwrap(), Some(SQUARE_RELATION_SIGN), "{f}, i = {i}");
            }
        }
    }

    #[test]
    fn reflections_are_involutions() {
        let f = FormalGroupLaw::morava(MoravaSpec::new(2, Base::F2, true), 7).unwrap();
        let c = BtContext::new(RootDatum::new(RootType::D, 4).unwrap(), f, 7).unwrap();
        let u = parse_polynomial("x1^2*x3 + v*x4^5 + x2", c.fgl().ring(), 4, 7).unwrap();
        for i in 1..=4 {
            let s = c.weyl_action(i, &u).unwrap();
            assert_eq!(c.weyl_action(i, &s).unwrap(), u, "s_{i}");
        }
    }
}
