//! Batch driver: a [`RunConfig`] goes in, a [`Report`] comes out.
//!
//! The text and JSON forms of a report are both rendered from the same
//! [`Report`] value. A JSON report carries its configuration, so it can be
//! read back and re-run with [`rerun`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgl::{default_morava_trunc, FormalGroupLaw};
use crate::motives::{Decomposition, TateClass};
use crate::quadric::QuadricTheory;
use crate::select::{Coeff, Theory};
use crate::series::parse_polynomial;
use crate::verify::{self, Check, Status, Suite, SuiteParams, WeylFixture};
use crate::weyl::{char_map_chow, BtContext, RootDatum, RootType};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DemazureOp {
    Duality,
    Braid,
    Charmap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    Fgl {
        theory: Theory,
        coeff: Coeff,
        trunc: Option<u32>,
    },
    QuadricTable {
        theory: Theory,
        coeff: Coeff,
        dim: u32,
        trunc: Option<u32>,
    },
    Decompose {
        n: u32,
        dim: u32,
        coeff: Coeff,
        trunc: Option<u32>,
    },
    Demazure {
        root_type: RootType,
        rank: usize,
        op: Option<DemazureOp>,
        word: Option<Vec<usize>>,
        poly: Option<String>,
        theory: Theory,
        trunc: Option<u32>,
    },
    Verify {
        suites: Vec<Suite>,
        ns: Vec<u32>,
        dmax: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fgl { .. } => "fgl",
            Command::QuadricTable { .. } => "quadric-table",
            Command::Decompose { .. } => "decompose",
            Command::Demazure { .. } => "demazure",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub verbosity: u8,
    pub seed: u64,
}

impl RunConfig {
    /// Rejects configurations that cannot run.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::PreconditionViolated(m));
        match &self.command {
            Command::Fgl { trunc: Some(0), .. } => bad("truncation must be positive".into()),
            Command::QuadricTable { dim, trunc, .. } => {
                if *dim == 0 {
                    return bad("D must be at least 1".into());
                }
                match trunc {
                    Some(t) if *t < dim + 2 => bad(format!("truncation {t} is below D + 2 = {}", dim + 2)),
                    _ => Ok(()),
                }
            }
            Command::Decompose { n, dim, coeff, trunc } => {
                if *n < 2 {
                    return bad("decompose needs n >= 2".into());
                }
                if *dim == 0 {
                    return bad("D must be at least 1".into());
                }
                if *coeff != Coeff::F2 {
                    return Err(Error::Unsupported(format!("decompose works mod 2 only, got --coeff {coeff}")));
                }
                match trunc {
                    Some(t) if *t < dim + 2 => bad(format!("truncation {t} is below D + 2 = {}", dim + 2)),
                    _ => Ok(()),
                }
            }
            Command::Demazure { op, word, poly, rank, .. } => {
                if op.is_none() && word.is_none() {
                    return bad("demazure needs --op or --word".into());
                }
                if word.is_some() != poly.is_some() {
                    return bad("--word and --poly go together".into());
                }
                if let Some(w) = word {
                    if let Some(i) = w.iter().find(|i| **i == 0 || **i > *rank) {
                        return bad(format!("letter {i} is not in 1..={rank}"));
                    }
                }
                Ok(())
            }
            Command::Verify { ns, dmax, suites } => {
                if suites.is_empty() {
                    return bad("no suites selected".into());
                }
                if *dmax == 0 {
                    return bad("--dmax must be at least 1".into());
                }
                if let Some(n) = ns.iter().find(|n| !(2..=6).contains(*n)) {
                    return bad(format!("n = {n} is outside 2..=6"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FglData {
    pub law: String,
    pub trunc: u32,
    pub series: String,
    pub two_series: String,
    pub inverse: String,
    pub mishchenko: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Product {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableData {
    pub law: String,
    #[serde(rename = "D")]
    pub dim: u32,
    pub d: u32,
    pub basis: Vec<String>,
    pub products: Vec<Product>,
    /// `h^k` rewritten in the basis for `d < k <= D`.
    pub powers: Vec<String>,
    pub pushforward: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorData {
    pub name: String,
    pub correspondence: String,
    pub expected_twist: i64,
    pub twist: Option<i64>,
    pub rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeData {
    pub n: u32,
    #[serde(rename = "D")]
    pub dim: i64,
    pub d: i64,
    #[serde(rename = "Dprime")]
    pub big_dprime: i64,
    pub dprime: i64,
    pub diagonal: String,
    pub dropped: Vec<String>,
    pub projectors: Vec<ProjectorData>,
    pub ranks: Vec<Option<usize>>,
    pub residual_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemazureData {
    pub group: String,
    pub order: usize,
    pub longest_length: usize,
    pub certificates: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub checks: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Output {
    Fgl(FglData),
    QuadricTable(TableData),
    Decompose(DecomposeData),
    Demazure(DemazureData),
    Verify(Vec<SuiteSummary>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Output>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn verdicts(&self) -> Vec<(String, Status)> {
        self.checks.iter().map(|c| (c.name.clone(), c.status)).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("report: {e}")))
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }

    /// Human-readable form. Verbosity 0 lists failing checks only.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mqk {} {}", self.version, self.config.command.name());
        if let Some(out) = &self.output {
            text_output(&mut s, out);
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        if !self.checks.is_empty() {
            s.push('\n');
        }
        for c in &self.checks {
            if self.config.verbosity > 0 || !c.passed() {
                let _ = write!(s, "{} {}", c.status, c.name);
                if let Some(w) = &c.witness {
                    let _ = write!(s, ": {w}");
                }
                s.push('\n');
            }
        }
        let verdict = if failed == 0 { Status::Pass } else { Status::Fail };
        let _ = writeln!(s, "{verdict} ({} checks, {failed} failed)", self.checks.len());
        s
    }
}

fn text_output(s: &mut String, out: &Output) {
    match out {
        Output::Fgl(f) => {
            let _ = writeln!(s, "{}", f.law);
            let _ = writeln!(s, "F(x, y) = {}", f.series);
            let _ = writeln!(s, "[2](t) = {}", f.two_series);
            let _ = writeln!(s, "i(t) = {}", f.inverse);
            for m in &f.mishchenko {
                let _ = writeln!(s, "{m}");
            }
        }
        Output::QuadricTable(t) => {
            let _ = writeln!(s, "{}, D = {}, d = {}", t.law, t.dim, t.d);
            let _ = writeln!(s, "basis: {}", t.basis.join(", "));
            for p in &t.products {
                let _ = writeln!(s, "{} · {} = {}", p.left, p.right, p.value);
            }
            for p in &t.powers {
                let _ = writeln!(s, "{p}");
            }
            for p in &t.pushforward {
                let _ = writeln!(s, "{p}");
            }
        }
        Output::Decompose(d) => {
            let _ = writeln!(
                s,
                "K({}) mod 2, D = {}, d = {}, D' = {}, d' = {}",
                d.n, d.dim, d.d, d.big_dprime, d.dprime
            );
            let _ = writeln!(s, "Δ = {}", d.diagonal);
            for x in &d.dropped {
                let _ = writeln!(s, "  dropped {x}");
            }
            for p in &d.projectors {
                let twist = p.twist.map_or("-".to_string(), |t| t.to_string());
                let rank = p.rank.map_or("-".to_string(), |r| r.to_string());
                let _ = writeln!(
                    s,
                    "{} = {}  (twist {twist}, expected {}, rank {rank})",
                    p.name, p.correspondence, p.expected_twist
                );
            }
            if let Some(r) = d.residual_rank {
                let _ = writeln!(s, "rank(Δ - Σπ) = {r}");
            }
        }
        Output::Demazure(d) => {
            let _ = writeln!(s, "W({}): order {}, l(w0) = {}", d.group, d.order, d.longest_length);
            for c in &d.certificates {
                let _ = writeln!(s, "{c}");
            }
            if let Some(r) = &d.result {
                let _ = writeln!(s, "{r}");
            }
        }
        Output::Verify(sums) => {
            for x in sums {
                let _ = writeln!(s, "{}: {} checks, {} failed", x.suite, x.checks, x.failed);
            }
        }
    }
}

/// Runs a configuration. Errors are configuration errors; check failures
/// are reported inside the [`Report`].
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let (checks, output) = match &config.command {
        Command::Fgl { theory, coeff, trunc } => run_fgl(*theory, *coeff, *trunc)?,
        Command::QuadricTable { theory, coeff, dim, trunc } => run_table(*theory, *coeff, *dim, *trunc)?,
        Command::Decompose { n, dim, trunc, .. } => run_decompose(*n, *dim, *trunc, config.seed)?,
        Command::Demazure { root_type, rank, op, word, poly, theory, trunc } => {
            run_demazure(*root_type, *rank, *op, word.as_deref(), poly.as_deref(), *theory, *trunc, config.seed)?
        }
        Command::Verify { suites, ns, dmax } => {
            let params = SuiteParams { ns: ns.clone(), dmax: *dmax, seed: config.seed };
            let checks = verify::run(suites, &params);
            let sums = suites
                .iter()
                .map(|s| {
                    let prefix = format!("{}/", s.name());
                    let mine: Vec<&Check> = checks.iter().filter(|c| c.name.starts_with(&prefix)).collect();
                    SuiteSummary { suite: *s, checks: mine.len(), failed: mine.iter().filter(|c| !c.passed()).count() }
                })
                .collect();
            (checks, Output::Verify(sums))
        }
    };
    Ok(Report { version: VERSION.to_string(), config: config.clone(), checks, output: Some(output) })
}

/// Re-runs the configuration stored in a report.
pub fn rerun(report: &Report) -> Result<Report> {
    run(&report.config)
}

fn run_fgl(theory: Theory, coeff: Coeff, trunc: Option<u32>) -> Result<(Vec<Check>, Output)> {
    let trunc = trunc.unwrap_or(match theory.morava_n() {
        Some(n) => default_morava_trunc(n, 0),
        None => 8,
    });
    let f = theory.law(coeff, trunc)?;
    let v = f.v_symbol();
    let prefix = format!("fgl/{theory}/{coeff}");
    let mut checks = vec![Check::run(format!("{prefix}/axioms"), || f.check_axioms())];
    let classes = f.mishchenko_classes(trunc - 1)?;
    checks.push(Check::run(format!("{prefix}/mishchenko"), || {
        for (i, c) in classes.iter().enumerate() {
            let want = verify::pn_oracle(theory, f.ring(), i as u32).map_err(|e| e.to_string())?;
            if *c != want {
                return Err(format!("[P^{i}] = {c}, closed form gives {want}"));
            }
        }
        Ok(())
    }));
    if let (Some(n), Coeff::F2) = (theory.morava_n(), coeff) {
        checks.push(Check::run(format!("{prefix}/two-series-mod-2"), || {
            let two = f.two_series();
            let bad: Vec<String> = two
                .terms()
                .filter(|(m, _)| m.exponents() != [1 << n])
                .map(|(m, c)| format!("{c}·t^{}", m.degree()))
                .collect();
            let lead = two.coefficient(&[1 << n]);
            if bad.is_empty() && lead.homogeneous_codim() == Some(f.ring().v_degree as i64) && lead.terms().count() == 1 {
                Ok(())
            } else {
                Err(format!("[2](t) = {}", two.display_compact(&["t"], &v)))
            }
        }));
    }
    let data = FglData {
        law: f.to_string(),
        trunc,
        series: f.series().display_compact(&["x", "y"], &v),
        two_series: f.two_series().display_compact(&["t"], &v),
        inverse: f.formal_inverse().display_compact(&["t"], &v),
        mishchenko: classes.iter().enumerate().map(|(i, c)| format!("[P^{i}] = {}", c.display_with(&v))).collect(),
    };
    Ok((checks, Output::Fgl(data)))
}

fn run_table(theory: Theory, coeff: Coeff, dim: u32, trunc: Option<u32>) -> Result<(Vec<Check>, Output)> {
    let q = theory.quadric(coeff, dim, trunc)?;
    let mut checks = verify::quadric_checks(&q, theory, coeff);
    checks.extend(verify::pushforward_checks(&q, theory, coeff));
    Ok((checks, Output::QuadricTable(table_data(&q))))
}

fn table_data(q: &QuadricTheory) -> TableData {
    let v = q.v_symbol();
    let products = q
        .multiplication_table()
        .into_iter()
        .map(|(a, b, c)| Product { left: a.name(), right: b.name(), value: c.to_string() })
        .collect();
    let powers = (q.d() + 1..=q.dim()).map(|k| format!("h^{k} = {}", q.h(k as i64))).collect();
    let pushforward = q
        .pushforward_column()
        .into_iter()
        .map(|(e, c)| format!("χ({e}) = {}", c.display_with(&v)))
        .chain((q.d() + 1..=q.dim()).map(|k| format!("χ(h^{k}) = {}", q.h(k as i64).pushforward_point().display_with(&v))))
        .collect();
    TableData {
        law: q.fgl().to_string(),
        dim: q.dim(),
        d: q.d(),
        basis: q.basis().into_iter().map(|b| b.name()).collect(),
        products,
        powers,
        pushforward,
    }
}

fn run_decompose(n: u32, dim: u32, trunc: Option<u32>, seed: u64) -> Result<(Vec<Check>, Output)> {
    let dec = Decomposition::with_trunc(n, dim, trunc.unwrap_or(dim + 2))?;
    let mut checks = verify::diagonal_checks(&dec, seed);
    checks.extend(verify::tate_count_checks(&dec));
    let projectors: Vec<ProjectorData> = dec
        .projectors()
        .map(|p| {
            let twist = match p.corr.classify_tate() {
                Ok(TateClass::Tate(t)) => Some(t),
                _ => None,
            };
            ProjectorData {
                name: p.name.clone(),
                correspondence: p.corr.to_string(),
                expected_twist: p.expected_twist,
                twist,
                rank: p.corr.summand_rank().ok(),
            }
        })
        .collect();
    let residual_rank = if dec.tate.is_empty() { None } else { dec.residual()?.summand_rank().ok() };
    let data = DecomposeData {
        n,
        dim: dec.shape.dim,
        d: dec.shape.d,
        big_dprime: dec.shape.dprime,
        dprime: dec.shape.dprime_small,
        diagonal: dec.diagonal.to_string(),
        dropped: dec.dropped.clone(),
        ranks: projectors.iter().map(|p| p.rank).collect(),
        projectors,
        residual_rank,
    };
    Ok((checks, Output::Decompose(data)))
}

#[allow(clippy::too_many_arguments)]
fn run_demazure(
    ty: RootType,
    rank: usize,
    op: Option<DemazureOp>,
    word: Option<&[usize]>,
    poly: Option<&str>,
    theory: Theory,
    trunc: Option<u32>,
    seed: u64,
) -> Result<(Vec<Check>, Output)> {
    let fx = WeylFixture::new(ty, rank, seed)?;
    let g = &fx.group;
    let mut checks = Vec::new();
    let mut certificates = Vec::new();
    match op {
        Some(DemazureOp::Duality) => {
            let w0 = g.longest_element();
            for (w, word, img) in fx.duality_certificates() {
                certificates.push(format!("Δ_{word:?}(X{w}) = {}", img.coefficient(&w0)));
            }
            checks.push(fx.duality());
        }
        Some(DemazureOp::Braid) => {
            for (a, b) in fx.braid_words() {
                certificates.push(format!("Δ_{a:?} = Δ_{b:?} on {} random polynomials", fx.polys.len()));
            }
            checks.push(fx.nilpotent());
            checks.push(fx.braid());
            checks.push(fx.non_reduced());
            checks.push(fx.word_independence());
        }
        Some(DemazureOp::Charmap) => {
            let names = vars(rank);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            for u in fx.charmap_inputs() {
                let c = char_map_chow(g, &fx.ctx, &u)?;
                certificates.push(format!("c({}) = {c}", u.display_compact(&refs, "v")));
            }
            checks.push(fx.charmap());
        }
        None => {}
    }
    let mut result = None;
    if let (Some(word), Some(src)) = (word, poly) {
        let vars = vars(rank);
        let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        let t = trunc.unwrap_or(8);
        let f: FormalGroupLaw = theory.law(Coeff::Z2loc, t)?;
        let ctx = BtContext::new(RootDatum::new(ty, rank)?, f, t)?;
        let u = parse_polynomial(src, ctx.fgl().ring(), rank, t)?;
        let name = format!("demazure/{}/word{word:?}", fx.label);
        let r = ctx.demazure_word(word, &u);
        match &r {
            Ok(x) => {
                result = Some(format!(
                    "Δ_{word:?}({}) = {}",
                    u.display_compact(&var_refs, &ctx.fgl().v_symbol()),
                    x.display_compact(&var_refs, &ctx.fgl().v_symbol())
                ));
                checks.push(Check::pass(name));
            }
            Err(e) => checks.push(Check::fail(name, e.to_string())),
        }
    }
    let data = DemazureData {
        group: fx.label.clone(),
        order: g.order(),
        longest_length: g.length(&g.longest_element()),
        certificates,
        result,
    };
    Ok((checks, Output::Demazure(data)))
}

fn vars(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decompose(dim: u32) -> RunConfig {
        RunConfig {
            command: Command::Decompose { n: 2, dim, coeff: Coeff::F2, trunc: None },
            format: Format::Json,
            verbosity: 0,
            seed: 1,
        }
    }

    #[test]
    fn decompose_example() {
        let r = run(&decompose(3)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let Some(Output::Decompose(d)) = &r.output else { panic!() };
        assert_eq!(d.diagonal, "1×l_0 + l_0×1 + h×l_1 + l_1×h + v_2·l_0×l_0");
        assert_eq!(d.projectors.iter().filter(|p| p.name.starts_with('π')).count(), 1);
    }

    #[test]
    fn json_roundtrip_reproduces_verdicts() {
        let r = run(&decompose(7)).unwrap();
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(rerun(&back).unwrap().verdicts(), r.verdicts());
    }

    #[test]
    fn config_errors() {
        let mut c = decompose(3);
        c.command = Command::Decompose { n: 1, dim: 3, coeff: Coeff::F2, trunc: None };
        assert!(run(&c).is_err());
        c.command = Command::Decompose { n: 2, dim: 3, coeff: Coeff::Q, trunc: None };
        assert!(matches!(run(&c), Err(Error::Unsupported(_))));
        c.command = Command::QuadricTable { theory: Theory::Chow, coeff: Coeff::Q, dim: 5, trunc: Some(3) };
        assert!(run(&c).is_err());
    }

    #[test]
    fn table_contains_height_relation() {
        let c = RunConfig {
            command: Command::QuadricTable { theory: Theory::Morava(2), coeff: Coeff::F2, dim: 7, trunc: None },
            format: Format::Text,
            verbosity: 0,
            seed: 0,
        };
        let r = run(&c).unwrap();
        assert!(r.passed());
        assert!(r.to_text().contains("h^4 = v_2·l_0"), "{}", r.to_text());
    }
}
