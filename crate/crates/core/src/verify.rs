//! Verification sweeps over formal group laws, quadrics, correspondences and
//! Weyl groups.
//!
//! A sweep is split into independent cells (one per theory, dimension or
//! group), which run in parallel; the resulting checks keep the order in
//! which the cells were listed, so reports do not depend on scheduling.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgl::{default_morava_trunc, pn_class_morava, FormalGroupLaw, MoravaSpec};
use crate::motives::{rational_half_projectors, Correspondence, Decomposition};
use crate::quadric::{Basis, QuadricClass, QuadricTheory};
use crate::random;
use crate::scalar::{Base, GradedScalar, RingSpec};
use crate::select::{Coeff, Theory};
use crate::series::TruncSeries;
use crate::weyl::{
    char_map_chow, demazure_schubert, demazure_schubert_word, duality_word, BtContext, RootDatum, RootType,
    SchubertComb, SignedPerm, WeylGroup, SQUARE_RELATION_SIGN,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// One named verdict; failures carry a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, witness: Some(witness.into()) }
    }

    /// Runs `f`, turning an error or a panic into a failure.
    pub fn run(name: impl Into<String>, f: impl FnOnce() -> std::result::Result<(), String>) -> Self {
        let name = name.into();
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(Ok(())) => Check::pass(name),
            Ok(Err(w)) => Check::fail(name, w),
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "unknown panic".into());
                Check::fail(name, format!("panic: {msg}"))
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Axioms, integrality and the `[2]`-series of the Morava laws.
    Fgl,
    /// `[P^i]` from the logarithm against the closed form.
    Mishchenko,
    /// Multiplication tables of quadrics.
    Quadric,
    /// Pushforward to the point.
    Pushforward,
    /// The K(n) mod 2 decomposition of the diagonal.
    Diagonal,
    /// Number of Tate summands and the rank of the rest.
    TateCount,
    /// `h^(d+1) = v h^N l_d`.
    Height,
    /// Projectors with `1/2` in the coefficients.
    Rational,
    /// Weyl groups, divided differences and Schubert classes.
    Weyl,
    /// Composition of random correspondences.
    Algebra,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Fgl,
        Suite::Mishchenko,
        Suite::Quadric,
        Suite::Pushforward,
        Suite::Diagonal,
        Suite::TateCount,
        Suite::Height,
        Suite::Rational,
        Suite::Weyl,
        Suite::Algebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fgl => "fgl",
            Suite::Mishchenko => "mishchenko",
            Suite::Quadric => "quadric",
            Suite::Pushforward => "pushforward",
            Suite::Diagonal => "diagonal",
            Suite::TateCount => "tate-count",
            Suite::Height => "height",
            Suite::Rational => "rational",
            Suite::Weyl => "weyl",
            Suite::Algebra => "algebra",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Parameters shared by all suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    /// Morava heights to sweep.
    pub ns: Vec<u32>,
    /// Largest quadric dimension.
    pub dmax: u32,
    pub seed: u64,
}

type Cell = Box<dyn FnOnce() -> Vec<Check> + Send>;

/// Runs the suites in order. Cells run in parallel.
pub fn run(suites: &[Suite], params: &SuiteParams) -> Vec<Check> {
    let cells: Vec<Cell> = suites.iter().flat_map(|s| cells(*s, params)).collect();
    let out: Vec<Vec<Check>> = cells.into_par_iter().map(|c| c()).collect();
    out.into_iter().flatten().collect()
}

fn cells(suite: Suite, p: &SuiteParams) -> Vec<Cell> {
    let mut out: Vec<Cell> = Vec::new();
    let seed = p.seed;
    match suite {
        Suite::Fgl => {
            out.push(Box::new(fgl_classical));
            for &n in &p.ns {
                out.push(Box::new(move || fgl_morava(n)));
            }
        }
        Suite::Mishchenko => {
            for &n in &p.ns {
                out.push(Box::new(move || mishchenko(n)));
            }
        }
        Suite::Quadric | Suite::Pushforward => {
            for t in grid_theories(&p.ns) {
                for c in Coeff::ALL {
                    for dim in 1..=p.dmax {
                        out.push(Box::new(move || match suite {
                            Suite::Quadric => quadric_cell(t, c, dim),
                            _ => pushforward_cell(t, c, dim),
                        }));
                    }
                }
            }
            if suite == Suite::Quadric {
                for &n in &p.ns {
                    for dim in 1..=p.dmax {
                        out.push(Box::new(move || vec![chow_specialization(n, dim)]));
                    }
                }
            }
        }
        Suite::Diagonal => {
            for &n in &p.ns {
                for dim in 1..=p.dmax {
                    out.push(Box::new(move || diagonal_cell(n, dim, seed)));
                }
            }
        }
        Suite::TateCount => {
            for &n in &p.ns {
                for dim in 1..=p.dmax {
                    out.push(Box::new(move || tate_count_cell(n, dim)));
                }
            }
        }
        Suite::Height => {
            for &n in &p.ns {
                for dim in (2u32 << n) - 2..=p.dmax {
                    out.push(Box::new(move || vec![height_cell(n, dim)]));
                }
            }
        }
        Suite::Rational => {
            for dim in 1..=p.dmax.min(8) {
                out.push(Box::new(move || rational_cell(Theory::Chow, dim)));
                for n in [2, 3] {
                    out.push(Box::new(move || rational_cell(Theory::Morava(n), dim)));
                }
            }
        }
        Suite::Weyl => {
            for (ty, l) in [(RootType::B, 2), (RootType::B, 3), (RootType::D, 4)] {
                out.push(Box::new(move || weyl_group_cell(ty, l, seed)));
                if ty == RootType::B {
                    out.push(Box::new(move || weyl_general_law_cell(ty, l, seed)));
                }
            }
        }
        Suite::Algebra => {
            let mut cases: Vec<(Theory, Coeff)> = p.ns.iter().map(|&n| (Theory::Morava(n), Coeff::F2)).collect();
            cases.push((Theory::Chow, Coeff::Q));
            cases.push((Theory::K0, Coeff::Z2loc));
            for (t, c) in cases {
                for dim in 1..=p.dmax.min(8) {
                    out.push(Box::new(move || algebra_cell(t, c, dim, seed)));
                }
            }
        }
    }
    out
}

fn grid_theories(ns: &[u32]) -> Vec<Theory> {
    let mut t = vec![Theory::Chow, Theory::K0];
    t.extend(ns.iter().map(|&n| Theory::Morava(n)));
    t
}

type Verdict = std::result::Result<(), String>;

trait Witness<T> {
    fn w(self) -> std::result::Result<T, String>;
}

impl<T> Witness<T> for Result<T> {
    fn w(self) -> std::result::Result<T, String> {
        self.map_err(|e| format!("error: {e}"))
    }
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn same<T: PartialEq + fmt::Display>(what: &str, got: &T, want: &T) -> Verdict {
    ensure(got == want, || format!("{what}: got {got}, expected {want}"))
}

// ---------------------------------------------------------------------------
// Formal group laws

fn fgl_classical() -> Vec<Check> {
    vec![
        Check::run("fgl/chow/axioms", || FormalGroupLaw::additive(8).w()?.check_axioms()),
        Check::run("fgl/k0/axioms", || FormalGroupLaw::multiplicative(true, 8).w()?.check_axioms()),
    ]
}

fn fgl_morava(n: u32) -> Vec<Check> {
    let trunc = default_morava_trunc(n, 0);
    let name = |s: &str| format!("fgl/k{n}/{s}");
    let law = FormalGroupLaw::morava(MoravaSpec::new(n, Base::Zloc2, false), trunc);
    let mut out = vec![Check::run(name("axioms"), || law.as_ref().map_err(|e| e.to_string())?.check_axioms())];
    out.push(Check::run(name("integral"), || {
        let f = law.as_ref().map_err(|e| e.to_string())?;
        for (m, c) in f.series().terms() {
            for (e, q) in c.terms() {
                ensure(e >= 0 && q.denom().is_odd(), || {
                    format!("coefficient of x^{:?} is {c}, not in Z_(2)[v]", m.exponents())
                })?;
            }
        }
        Ok(())
    }));
    out.push(Check::run(name("two-series-mod-2"), || {
        let f = FormalGroupLaw::morava(MoravaSpec::new(n, Base::F2, false), trunc).w()?;
        let ring = f.ring();
        let want = TruncSeries::monomial(&GradedScalar::v_pow(ring, 1).w()?, vec![1 << n], trunc);
        match f.two_series().diff_witness(&want) {
            None => Ok(()),
            Some(w) => Err(format!("[2](t) != v t^{}: {w}", 1 << n)),
        }
    }));
    out.push(Check::run(name("exp-log"), || {
        let f = law.as_ref().map_err(|e| e.to_string())?;
        let (log, exp) = (f.log().ok_or("no logarithm")?, f.exp().ok_or("no exponential")?);
        let t = TruncSeries::var(log.ring(), 1, trunc, 0);
        match exp.substitute(std::slice::from_ref(log)).w()?.diff_witness(&t) {
            None => Ok(()),
            Some(w) => Err(format!("exp(log t) != t: {w}")),
        }
    }));
    out
}

fn mishchenko(n: u32) -> Vec<Check> {
    let trunc = default_morava_trunc(n, 0);
    let mut out = vec![Check::run(format!("mishchenko/k{n}/closed-form"), || {
        let f = FormalGroupLaw::morava(MoravaSpec::new(n, Base::Zloc2, false), trunc).w()?;
        let classes = f.mishchenko_classes(trunc - 1).w()?;
        for (i, c) in classes.iter().enumerate() {
            same(&format!("[P^{i}]"), c, &pn_class_morava(n, i as u64))?;
        }
        Ok(())
    })];
    if n == 2 {
        out.push(Check::run("mishchenko/k2/P3", || {
            let f = FormalGroupLaw::morava(MoravaSpec::new(2, Base::Zloc2, false), trunc).w()?;
            let two_v = GradedScalar::monomial(f.ring(), BigRational::from_integer(2.into()), 1).w()?;
            same("[P^3]", &f.mishchenko_classes(3).w()?[3], &two_v)
        }));
    }
    out
}

// ---------------------------------------------------------------------------
// Quadrics

fn cell_name(suite: &str, t: Theory, c: Coeff, dim: u32, what: &str) -> String {
    format!("{suite}/{t}/{c}/D={dim}/{what}")
}

/// `[P^i]` in the theory's coefficient ring, from closed forms only.
pub(crate) fn pn_oracle(t: Theory, ring: RingSpec, i: u32) -> Result<GradedScalar> {
    match t {
        Theory::Chow => Ok(if i == 0 { GradedScalar::one(ring) } else { GradedScalar::zero(ring) }),
        Theory::K0 => GradedScalar::v_pow(ring, i as i32),
        Theory::Morava(n) | Theory::Connective(n) => pn_class_morava(n, i as u64).reduce_to(ring),
    }
}

/// `b_i` read off `F(t, t)` directly.
fn two_series_coefficient(q: &QuadricTheory, i: u32) -> GradedScalar {
    q.fgl().two_series().coefficient(&[i])
}

fn quadric_cell(t: Theory, c: Coeff, dim: u32) -> Vec<Check> {
    match t.quadric(c, dim, None) {
        Ok(q) => quadric_checks(&q, t, c),
        Err(e) => vec![Check::fail(cell_name("quadric", t, c, dim, "build"), e.to_string())],
    }
}

/// Multiplication table checks for the quadric `q` of theory `t` over `c`.
pub fn quadric_checks(q: &QuadricTheory, t: Theory, c: Coeff) -> Vec<Check> {
    let dim = q.dim();
    let name = |w: &str| cell_name("quadric", t, c, dim, w);
    let basis = q.basis();
    let e = |b: Basis| q.element(b);
    let mut out = vec![Check::run(name("comm-assoc"), || {
        for &x in &basis {
            for &y in &basis {
                let xy = e(x).mul(&e(y)).w()?;
                same(&format!("{x}·{y} vs {y}·{x}"), &xy, &e(y).mul(&e(x)).w()?)?;
                for &z in &basis {
                    let l = xy.mul(&e(z)).w()?;
                    let r = e(x).mul(&e(y).mul(&e(z)).w()?).w()?;
                    same(&format!("({x}·{y})·{z} vs {x}·({y}·{z})"), &l, &r)?;
                }
            }
        }
        Ok(())
    })];
    out.push(Check::run(name("grading"), || {
        for &x in &basis {
            for &y in &basis {
                let xy = e(x).mul(&e(y)).w()?;
                if xy.is_zero() {
                    continue;
                }
                let want = (q.codim(x) + q.codim(y)) as i64;
                ensure(xy.homogeneous_codim() == Some(want), || {
                    format!("{x}·{y} = {xy} is not homogeneous of codimension {want}")
                })?;
            }
        }
        Ok(())
    }));
    out.push(Check::run(name("relations"), || {
        let d = q.d() as i64;
        let h = q.h(1);
        for i in 0..=d {
            let li = q.l(i).w()?;
            same(&format!("h·l_{i}"), &h.mul(&li).w()?, &q.l(i - 1).w()?)?;
            for j in 0..=d {
                let want = if i == d && j == d && dim % 4 == 0 { q.l(0).w()? } else { q.zero() };
                same(&format!("l_{i}·l_{j}"), &li.mul(&q.l(j).w()?).w()?, &want)?;
            }
        }
        // h^(d+1) by repeated multiplication against Σ b_i l_{D-d-i}.
        let mut hp = q.one();
        for _ in 0..=d {
            hp = hp.mul(&h).w()?;
        }
        let top = dim as i64 - d;
        let mut want = q.zero();
        for i in 1..=top {
            let b = two_series_coefficient(q, i as u32);
            want = want.add(&q.l(top - i).w()?.scale(&b).w()?).w()?;
        }
        same(&format!("h^{}", d + 1), &hp, &want)?;
        match t {
            Theory::Chow => {
                let two = GradedScalar::from_int(q.ring(), 2);
                same(&format!("h^{} (Chow)", d + 1), &hp, &q.l(top - 1).w()?.scale(&two).w()?)?;
            }
            Theory::Morava(n) if c == Coeff::F2 => {
                let want = if dim + 1 >= 2 << n {
                    q.l(top - (1 << n)).w()?.scale(&GradedScalar::v_pow(q.ring(), 1).w()?).w()?
                } else {
                    q.zero()
                };
                same(&format!("h^{} (K({n}) mod 2)", d + 1), &hp, &want)?;
            }
            _ => {}
        }
        Ok(())
    }));
    if c == Coeff::Z2loc {
        out.push(Check::run(name("mod-2-product"), || {
            let f2 = t.quadric(Coeff::F2, dim, None).w()?;
            for &x in &basis {
                for &y in &basis {
                    let lhs = e(x).mul(&e(y)).w()?.reduce_to(&f2).w()?;
                    let rhs = f2.element(x).mul(&f2.element(y)).w()?;
                    same(&format!("reduction of {x}·{y}"), &lhs, &rhs)?;
                }
            }
            Ok(())
        }));
    }
    out
}

/// The connective Morava table at `v = 0` is the Chow table.
fn chow_specialization(n: u32, dim: u32) -> Check {
    let name = cell_name("quadric", Theory::Connective(n), Coeff::Z2loc, dim, "chow-specialization");
    Check::run(name, || {
        let ck = Theory::Connective(n).quadric(Coeff::Z2loc, dim, None).w()?;
        let ch = Theory::Chow.quadric(Coeff::Z2loc, dim, None).w()?;
        for (x, y, p) in ck.multiplication_table() {
            let want = ch.element(x).mul(&ch.element(y)).w()?;
            same(&format!("{x}·{y} at v = 0"), &p.specialize_v_zero(&ch).w()?, &want)?;
        }
        for (x, chi) in ck.pushforward_column() {
            same(&format!("χ({x}) at v = 0"), &chi.specialize_v_zero().w()?.reduce_to(ch.ring()).w()?, &ch.element(x).pushforward_point())?;
        }
        Ok(())
    })
}

fn pushforward_cell(t: Theory, c: Coeff, dim: u32) -> Vec<Check> {
    match t.quadric(c, dim, None) {
        Ok(q) => pushforward_checks(&q, t, c),
        Err(e) => vec![Check::fail(cell_name("pushforward", t, c, dim, "build"), e.to_string())],
    }
}

/// Pushforward checks for the quadric `q` of theory `t` over `c`.
pub fn pushforward_checks(q: &QuadricTheory, t: Theory, c: Coeff) -> Vec<Check> {
    let dim = q.dim();
    let name = |w: &str| cell_name("pushforward", t, c, dim, w);
    let ring = q.ring();
    let d = q.d() as i64;
    let mut out = vec![Check::run(name("chi-l"), || {
        for i in 0..=d {
            same(&format!("χ(l_{i})"), &q.l(i).w()?.pushforward_point(), &pn_oracle(t, ring, i as u32).w()?)?;
        }
        Ok(())
    })];
    out.push(Check::run(name("chi-h"), || {
        for k in 0..=dim {
            let mut want = GradedScalar::zero(ring);
            for j in 1..=dim + 1 - k {
                let term = two_series_coefficient(q, j).try_mul(&pn_oracle(t, ring, dim + 1 - k - j).w()?).w()?;
                want = want.try_add(&term).w()?;
            }
            same(&format!("χ(h^{k})"), &q.h(k as i64).pushforward_point(), &want)?;
        }
        Ok(())
    }));
    if let (Theory::Morava(n), Coeff::F2) = (t, c) {
        out.push(Check::run(name("closed-form"), || {
            let one = GradedScalar::one(ring);
            let zero = GradedScalar::zero(ring);
            let v = GradedScalar::v_pow(ring, 1).w()?;
            same("χ(l_0)", &q.l(0).w()?.pushforward_point(), &one)?;
            for i in 1..=d {
                same(&format!("χ(l_{i})"), &q.l(i).w()?.pushforward_point(), &zero)?;
            }
            let special = dim as i64 + 1 - (1i64 << n);
            for k in 0..=dim as i64 {
                let want = if k == special { &v } else { &zero };
                same(&format!("χ(h^{k})"), &q.h(k).pushforward_point(), want)?;
            }
            Ok(())
        }));
    }
    if c == Coeff::Z2loc {
        out.push(Check::run(name("mod-2-chi"), || {
            let f2 = t.quadric(Coeff::F2, dim, None).w()?;
            let mut classes: Vec<(String, QuadricClass)> =
                q.basis().into_iter().map(|b| (b.to_string(), q.element(b))).collect();
            classes.extend((0..=dim as i64).map(|k| (format!("h^{k}"), q.h(k))));
            for (label, x) in classes {
                let lhs = x.pushforward_point().reduce_to(f2.ring()).w()?;
                let rhs = x.reduce_to(&f2).w()?.pushforward_point();
                same(&format!("χ({label}) mod 2"), &lhs, &rhs)?;
            }
            Ok(())
        }));
    }
    out
}

fn height_cell(n: u32, dim: u32) -> Check {
    Check::run(format!("height/k{n}/f2/D={dim}"), || {
        let q = Theory::Morava(n).quadric(Coeff::F2, dim, None).w()?;
        let r = q.verify_height_identity().w()?;
        ensure(r.holds, || format!("h^{} = {} but v·h^{}·l_{} = {}", r.d + 1, r.lhs, r.big_n, r.d, r.rhs))
    })
}

// ---------------------------------------------------------------------------
// Correspondences

fn diagonal_cell(n: u32, dim: u32, seed: u64) -> Vec<Check> {
    match Decomposition::new(n, dim) {
        Ok(dec) => diagonal_checks(&dec, seed),
        Err(e) => vec![Check::fail(format!("diagonal/k{n}/f2/D={dim}/build"), e.to_string())],
    }
}

/// The diagonal is a two-sided unit, the projectors are orthogonal
/// idempotents summing to it, and each is Tate of the expected twist.
pub fn diagonal_checks(dec: &Decomposition, seed: u64) -> Vec<Check> {
    let (n, dim) = (dec.shape.n, dec.shape.dim);
    let name = |w: &str| format!("diagonal/k{n}/f2/D={dim}/{w}");
    let projectors: Vec<_> = dec.projectors().collect();
    let mut out = vec![Check::run(name("unit"), || {
        let inv = Correspondence::diagonal_from_pairing(&dec.theory).w()?;
        ensure(dec.diagonal == inv, || format!("Δ = {} but the inverse pairing is {inv}", dec.diagonal))?;
        let mut rng = random::sub_rng(seed, &name("unit"));
        for _ in 0..3 {
            let f = random::correspondence(&mut rng, &dec.theory);
            same("Δ∘f", &dec.diagonal.compose(&f).w()?, &f)?;
            same("f∘Δ", &f.compose(&dec.diagonal).w()?, &f)?;
        }
        Ok(())
    })];
    out.push(Check::run(name("orthogonal-idempotents"), || {
        for p in &projectors {
            for r in &projectors {
                let pr = p.corr.compose(&r.corr).w()?;
                if p.name == r.name {
                    ensure(pr == p.corr, || format!("{} is not idempotent", p.name))?;
                } else {
                    ensure(pr.is_zero(), || format!("{}∘{} = {pr}", p.name, r.name))?;
                }
            }
        }
        Ok(())
    }));
    out.push(Check::run(name("sum"), || {
        let mut s = Correspondence::zero(&dec.theory);
        for p in &projectors {
            s = s.add(&p.corr).w()?;
        }
        ensure(s == dec.diagonal, || format!("Σ = {s}, Δ = {}", dec.diagonal))
    }));
    out.push(Check::run(name("count"), || {
        same("number of projectors", &projectors.len(), &(2 * dec.shape.d as usize + 2))
    }));
    out.push(Check::run(name("twists"), || {
        for p in &projectors {
            let c = p.corr.classify_tate().w()?;
            ensure(c.has_twist(p.expected_twist, &dec.theory), || {
                format!("{} classifies as {c:?}, expected twist {}", p.name, p.expected_twist)
            })?;
        }
        Ok(())
    }));
    if n == 2 && dim == 3 {
        out.push(Check::run(name("example-text"), || {
            let want = "1×l_0 + l_0×1 + h×l_1 + l_1×h + v_2·l_0×l_0";
            ensure(dec.diagonal.to_string() == want, || format!("got {}, expected {want}", dec.diagonal))
        }));
    }
    out
}

fn tate_count_cell(n: u32, dim: u32) -> Vec<Check> {
    match Decomposition::new(n, dim) {
        Ok(dec) => tate_count_checks(&dec),
        Err(e) => vec![Check::fail(format!("tate-count/k{n}/f2/D={dim}/build"), e.to_string())],
    }
}

/// `#π = D - 2^n + 2` and `rank(Δ - Σπ) = 2^n` or `2^n - 1` once
/// `D >= 2^n - 1`; no `π` below that.
pub fn tate_count_checks(dec: &Decomposition) -> Vec<Check> {
    let (n, dim) = (dec.shape.n, dec.shape.dim);
    let name = |w: &str| format!("tate-count/k{n}/f2/D={dim}/{w}");
    let big = 1i64 << n;
    let mut out = vec![Check::run(name("count"), || {
        let want = if dim >= big - 1 { (dim - big + 2) as usize } else { 0 };
        same("#π", &dec.tate.len(), &want)
    })];
    if dim >= big - 1 {
        out.push(Check::run(name("residual-rank"), || {
            let want = if dim % 2 == 0 { big as usize } else { big as usize - 1 };
            same("rank(Δ - Σπ)", &dec.residual().w()?.summand_rank().w()?, &want)
        }));
    }
    out
}

fn rational_cell(t: Theory, dim: u32) -> Vec<Check> {
    let name = |w: &str| cell_name("rational", t, Coeff::Q, dim, w);
    let q = match t.quadric(Coeff::Q, dim, None) {
        Ok(q) => q,
        Err(e) => return vec![Check::fail(name("build"), e.to_string())],
    };
    let rp = match rational_half_projectors(&q) {
        Ok(x) => x,
        Err(e) => return vec![Check::fail(name("build"), e.to_string())],
    };
    let mut out = Vec::new();
    let orthogonal = |ps: &[Correspondence]| -> Verdict {
        for (i, p) in ps.iter().enumerate() {
            for (j, r) in ps.iter().enumerate() {
                let pr = p.compose(r).w()?;
                if i == j {
                    ensure(pr == *p, || format!("projector {i} is not idempotent"))?;
                } else {
                    ensure(pr.is_zero(), || format!("projectors {i}∘{j} = {pr}"))?;
                }
            }
        }
        Ok(())
    };
    let residual_ok = |res: &Correspondence| -> Verdict {
        ensure(res.transpose() == *res, || format!("ϖ = {res} is not symmetric"))?;
        ensure(res.is_idempotent(), || format!("ϖ = {res} is not idempotent"))?;
        ensure(res.is_zero() == (dim % 2 == 1), || format!("ϖ = {res} for D = {dim}"))?;
        if dim % 2 == 0 {
            same("rank ϖ", &res.summand_rank().w()?, &1)?;
        }
        Ok(())
    };
    if t == Theory::Chow {
        out.push(Check::run(name("literal"), || {
            same("number of projectors", &rp.literal.len(), &(dim as usize + 1))?;
            orthogonal(&rp.literal)?;
            let mut res = Correspondence::diagonal_from_pairing(&q).w()?;
            for p in &rp.literal {
                res = res.sub(p).w()?;
            }
            residual_ok(&res)
        }));
        out.push(Check::run(name("lifted-equals-literal"), || {
            ensure(rp.lifted == rp.literal, || "lifted system differs from ½h^i×h^(D-i)".into())
        }));
    }
    out.push(Check::run(name("lifted"), || {
        same("number of projectors", &rp.lifted.len(), &(dim as usize + 1))?;
        orthogonal(&rp.lifted)?;
        residual_ok(&rp.residual)
    }));
    out
}

fn algebra_cell(t: Theory, c: Coeff, dim: u32, seed: u64) -> Vec<Check> {
    let name = |w: &str| cell_name("algebra", t, c, dim, w);
    let q = match t.quadric(c, dim, None) {
        Ok(q) => q,
        Err(e) => return vec![Check::fail(name("build"), e.to_string())],
    };
    let mut rng = random::sub_rng(seed, &name(""));
    let triples: Vec<[Correspondence; 3]> = (0..3)
        .map(|_| std::array::from_fn(|_| random::correspondence(&mut rng, &q)))
        .collect();
    let xs: Vec<QuadricClass> = (0..3).map(|_| random::class(&mut rng, &q)).collect();
    let delta = Correspondence::diagonal_from_pairing(&q);
    vec![
        Check::run(name("compose-assoc"), || {
            for [f, g, h] in &triples {
                let l = h.compose(g).w()?.compose(f).w()?;
                let r = h.compose(&g.compose(f).w()?).w()?;
                ensure(l == r, || format!("(h∘g)∘f != h∘(g∘f) for f = {f}, g = {g}, h = {h}"))?;
            }
            Ok(())
        }),
        Check::run(name("diagonal-unit"), || {
            let delta = delta.as_ref().map_err(|e| e.to_string())?;
            for [f, ..] in &triples {
                same("Δ∘f", &delta.compose(f).w()?, f)?;
                same("f∘Δ", &f.compose(delta).w()?, f)?;
            }
            for x in &xs {
                same("Δ(x)", &delta.apply(x).w()?, x)?;
            }
            Ok(())
        }),
        Check::run(name("transpose"), || {
            for [f, g, _] in &triples {
                let l = g.compose(f).w()?.transpose();
                let r = f.transpose().compose(&g.transpose()).w()?;
                ensure(l == r, || format!("(g∘f)ᵀ != fᵀ∘gᵀ for f = {f}, g = {g}"))?;
            }
            Ok(())
        }),
        Check::run(name("realization"), || {
            for ([f, g, _], x) in triples.iter().zip(&xs) {
                let l = g.compose(f).w()?.apply(x).w()?;
                let r = f.apply(&g.apply(x).w()?).w()?;
                same("(g∘f)(x) vs f(g(x))", &l, &r)?;
            }
            Ok(())
        }),
    ]
}

// ---------------------------------------------------------------------------
// Weyl groups

fn group_label(ty: RootType, l: usize) -> String {
    format!("{ty}{l}")
}

fn expected_order(ty: RootType, l: usize) -> usize {
    let fact: usize = (1..=l).product();
    match ty {
        RootType::B => (1 << l) * fact,
        RootType::D => (1 << (l - 1)) * fact,
    }
}

/// The reduced word built from the largest left descent at each step.
fn other_reduced_word(g: &WeylGroup, w: &SignedPerm) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = w.clone();
    let mut len = g.length(&cur);
    while len > 0 {
        let (i, next) = (1..=g.rank())
            .rev()
            .map(|i| (i, g.simple_reflection(i).mul(&cur)))
            .find(|(_, u)| g.length(u) < len)
            .expect("left descent");
        word.push(i);
        cur = next;
        len -= 1;
    }
    word
}

/// A Weyl group with the additive law in `l` variables and a few seeded
/// random polynomials of degree at most 4.
pub struct WeylFixture {
    pub label: String,
    pub datum: RootDatum,
    pub group: WeylGroup,
    pub ctx: BtContext,
    pub polys: Vec<TruncSeries>,
    seed: u64,
}

impl WeylFixture {
    pub const TRUNC: u32 = 6;

    pub fn new(ty: RootType, l: usize, seed: u64) -> Result<Self> {
        let datum = RootDatum::new(ty, l)?;
        let group = WeylGroup::new(datum.clone());
        let ctx = BtContext::new(datum.clone(), FormalGroupLaw::additive(Self::TRUNC)?, Self::TRUNC)?;
        let label = group_label(ty, l);
        let ring = ctx.fgl().ring();
        let mut rng = random::sub_rng(seed, &label);
        let polys = (0..4).map(|_| random::polynomial(&mut rng, ring, l, Self::TRUNC, 4, 6)).collect();
        Ok(WeylFixture { label, datum, group, ctx, polys, seed })
    }

    fn name(&self, what: &str) -> String {
        format!("weyl/{}/{what}", self.label)
    }

    fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn order(&self) -> Check {
        let want = expected_order(self.datum.ty, self.rank());
        Check::run(self.name("order"), || same("|W|", &self.group.order(), &want))
    }

    /// `W^P × W_P → W` for every subset `Θ` of the simple roots.
    pub fn cosets(&self) -> Check {
        Check::run(self.name("cosets"), || {
            let l = self.rank();
            for mask in 0u32..(1 << l) {
                let theta: Vec<usize> = (1..=l).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                self.group.check_coset_factorization(&theta).map_err(|e| format!("Θ = {theta:?}: {e}"))?;
            }
            Ok(())
        })
    }

    pub fn nilpotent(&self) -> Check {
        Check::run(self.name("additive-nilpotent"), || {
            for u in &self.polys {
                for i in 1..=self.rank() {
                    let r = self.ctx.demazure_word(&[i, i], u).w()?;
                    ensure(r.is_zero(), || format!("Δ_{i}Δ_{i}({u}) = {r}"))?;
                }
            }
            Ok(())
        })
    }

    /// The two alternating words of length `m_ij` for each pair `i < j`.
    pub fn braid_words(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let l = self.rank();
        let mut out = Vec::new();
        for i in 1..=l {
            for j in i + 1..=l {
                let m = self.datum.braid_order(i, j);
                let a = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
                let b = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
                out.push((a, b));
            }
        }
        out
    }

    pub fn braid(&self) -> Check {
        Check::run(self.name("braid"), || {
            for (a, b) in self.braid_words() {
                for u in &self.polys {
                    let x = self.ctx.demazure_word(&a, u).w()?;
                    let y = self.ctx.demazure_word(&b, u).w()?;
                    ensure(x == y, || format!("Δ_{a:?}({u}) = {x} but Δ_{b:?}({u}) = {y}"))?;
                }
            }
            Ok(())
        })
    }

    /// Words `reduced(w) + [i]` with `i` a right descent of `w` act by zero.
    pub fn non_reduced(&self) -> Check {
        let name = self.name("non-reduced");
        let mut rng = random::sub_rng(self.seed, &name);
        Check::run(name, || {
            let g = &self.group;
            for _ in 0..8 {
                let w = g.elements().choose(&mut rng).expect("nonempty").clone();
                let descents: Vec<usize> = (1..=self.rank()).filter(|&i| !g.is_right_ascent(&w, i)).collect();
                let Some(&i) = descents.choose(&mut rng) else { continue };
                let mut word = g.reduced_word(&w);
                word.push(i);
                if word.len() >= Self::TRUNC as usize {
                    continue;
                }
                ensure(!g.is_reduced(&word), || format!("{word:?} should not be reduced"))?;
                for u in &self.polys {
                    let r = self.ctx.demazure_word(&word, u).w()?;
                    ensure(r.is_zero(), || format!("Δ_{word:?}({u}) = {r}"))?;
                }
            }
            Ok(())
        })
    }

    /// `Δ_w` from the lex-smallest reduced word agrees with the word built
    /// from largest descents.
    pub fn word_independence(&self) -> Check {
        Check::run(self.name("word-independence"), || {
            let g = &self.group;
            for w in g.elements().iter().filter(|w| g.length(w) < Self::TRUNC as usize) {
                let (a, b) = (g.reduced_word(w), other_reduced_word(g, w));
                for u in &self.polys {
                    let x = self.ctx.demazure_word(&a, u).w()?;
                    let y = self.ctx.demazure_word(&b, u).w()?;
                    ensure(x == y, || format!("Δ_{a:?} != Δ_{b:?} on {u}"))?;
                }
            }
            Ok(())
        })
    }

    /// For each `w`: the duality word, and the coefficient of `X_{w0}` in the
    /// image of `X_w`.
    pub fn duality_certificates(&self) -> Vec<(SignedPerm, Vec<usize>, SchubertComb)> {
        self.group
            .elements()
            .iter()
            .map(|w| {
                let word = duality_word(&self.group, w);
                let img = demazure_schubert_word(&self.group, &word, &SchubertComb::basis(w.clone()));
                (w.clone(), word, img)
            })
            .collect()
    }

    pub fn duality(&self) -> Check {
        Check::run(self.name("duality"), || {
            let g = &self.group;
            let w0 = g.longest_element();
            for (w, word, img) in self.duality_certificates() {
                let c = img.coefficient(&w0);
                ensure(img.terms().count() == 1 && (c.is_one() || (-c).is_one()), || {
                    format!("word {word:?} sends X{w} to {img}")
                })?;
                for w2 in g.elements().iter().filter(|x| g.length(x) == g.length(&w) && **x != w) {
                    let r = demazure_schubert_word(g, &word, &SchubertComb::basis(w2.clone()));
                    ensure(r.is_zero(), || format!("word {word:?} sends X{w2} to {r}"))?;
                }
            }
            Ok(())
        })
    }

    /// Seeded homogeneous polynomials of degree `0..=3`.
    pub fn charmap_inputs(&self) -> Vec<TruncSeries> {
        let mut rng = random::sub_rng(self.seed, &self.name("charmap"));
        let ring = self.ctx.fgl().ring();
        let mut out = Vec::new();
        for s in 0..=3u32 {
            for _ in 0..3 {
                let u = random::homogeneous(&mut rng, ring, self.rank(), Self::TRUNC, s, 4);
                if !u.is_zero() {
                    out.push(u);
                }
            }
        }
        out
    }

    /// `Δ̃_i(c(u)) = c(Δ_i u)`.
    pub fn charmap(&self) -> Check {
        Check::run(self.name("charmap"), || {
            let g = &self.group;
            for u in self.charmap_inputs() {
                let cu = char_map_chow(g, &self.ctx, &u).w()?;
                for i in 1..=self.rank() {
                    let lhs = demazure_schubert(g, i, &cu);
                    let du = self.ctx.demazure(i, &u).w()?;
                    let rhs = if du.is_zero() { SchubertComb::zero() } else { char_map_chow(g, &self.ctx, &du).w()? };
                    ensure(lhs == rhs, || format!("i = {i}, u = {u}: Δ̃(c(u)) = {lhs}, c(Δu) = {rhs}"))?;
                }
            }
            Ok(())
        })
    }

    pub fn all(&self) -> Vec<Check> {
        let mut out = vec![
            self.order(),
            self.cosets(),
            self.nilpotent(),
            self.braid(),
            self.non_reduced(),
            self.word_independence(),
            self.duality(),
        ];
        if self.datum.ty == RootType::B && self.rank() <= 3 {
            out.push(self.charmap());
        }
        out
    }
}

fn weyl_group_cell(ty: RootType, l: usize, seed: u64) -> Vec<Check> {
    match WeylFixture::new(ty, l, seed) {
        Ok(f) => f.all(),
        Err(e) => vec![Check::fail(format!("weyl/{}/build", group_label(ty, l)), e.to_string())],
    }
}

/// Leibniz rule and the square relation for non-additive laws.
fn weyl_general_law_cell(ty: RootType, l: usize, seed: u64) -> Vec<Check> {
    let label = group_label(ty, l);
    let name = |w: &str| format!("weyl/{label}/{w}");
    let datum = match RootDatum::new(ty, l) {
        Ok(d) => d,
        Err(e) => return vec![Check::fail(name("build"), e.to_string())],
    };
    let trunc = 7;
    let k2 = FormalGroupLaw::morava(MoravaSpec::new(2, Base::Zloc2, true), trunc)
        .and_then(|f| BtContext::new(datum.clone(), f, trunc));
    let k2 = match k2 {
        Ok(c) => c,
        Err(e) => return vec![Check::fail(name("build"), e.to_string())],
    };
    let ring = k2.fgl().ring();
    let mut out = vec![Check::run(name("leibniz-k2"), || {
        let mut rng = random::sub_rng(seed, &name("leibniz-k2"));
        for _ in 0..LEIBNIZ_PAIRS_PER_GROUP {
            let u = random::polynomial(&mut rng, ring, l, trunc, 3, 4);
            let v = random::polynomial(&mut rng, ring, l, trunc, 3, 4);
            let i = rng.gen_range(1..=l);
            let lhs = k2.demazure(i, &u.try_mul(&v).w()?).w()?;
            let t = lhs.trunc();
            let du = k2.demazure(i, &u).w()?;
            let dv = k2.demazure(i, &v).w()?;
            let su = k2.weyl_action(i, &u).w()?;
            let rhs = du.try_mul(&v.truncated(t).w()?).w()?.try_add(&su.truncated(t).w()?.try_mul(&dv).w()?).w()?;
            if let Some(w) = lhs.diff_witness(&rhs) {
                return Err(format!("i = {i}, u = {u}, v = {v}: {w}"));
            }
        }
        Ok(())
    })];
    out.push(Check::run(name("square-relation"), || {
        let mult = FormalGroupLaw::multiplicative(true, trunc).and_then(|f| BtContext::new(datum.clone(), f, trunc)).w()?;
        let mut rng = random::sub_rng(seed, &name("square-relation"));
        for ctx in [&k2, &mult] {
            for _ in 0..3 {
                let u = random::polynomial(&mut rng, ctx.fgl().ring(), l, trunc, 4, 5);
                for i in 1..=l {
                    let s = ctx.square_relation_sign(i, &u).w()?;
                    ensure(matches!(s, Some(0)) || s == Some(SQUARE_RELATION_SIGN), || {
                        format!("{}: Δ_{i}² = s·κ·Δ_{i} fails on {u} (found {s:?})", ctx.fgl())
                    })?;
                }
            }
        }
        Ok(())
    }));
    out
}

/// Random pairs checked against the Leibniz rule in each group.
pub const LEIBNIZ_PAIRS_PER_GROUP: usize = 100;
