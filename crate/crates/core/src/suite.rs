//! Verification suites and tables behind the command-line front end.
//!
//! Every suite returns a [`SuiteReport`]: a summary line, suite-specific
//! details and zero or more tables. Reports are deterministic for a given
//! [`RunConfig`]; random evaluation points come from a seeded ChaCha8 stream.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bosonalg::{build_generator, verify_relations, BosonPoly, Coeff, Generator};
use crate::coords::CoordSystem;
use crate::diffops::{
    build_operator, completeness, component_operator, run_oracle, target_wave, Component,
    DiffOperator, MatrixElementRow, OperatorName, OracleOutcome, OracleSpec, Picture, Route,
};
use crate::error::{Error, Result};
use crate::half::Half;
use crate::oscillator::{
    degeneracy, enumerate_level, osc_wavefunction, separation_by_recursion, separation_closed_form,
    OscLabel,
};
use crate::quadrature::{Grid, QuadOrders};
use crate::swreduce::{
    jm_from_np, reduction_factor, sw_energy, sw_reduced_wavefunction, sw_wavefunction, JmLabel,
    SwParams,
};
use crate::wave::WaveEval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Spectrum,
    Enumerate,
    VerifyAlgebra,
    VerifyBasis,
    VerifyReduction,
    VerifyMatrixElements,
    Export,
}

impl SuiteName {
    /// Order used by `all`: cheap structural checks first, the oracle grid last.
    pub const ALL: [SuiteName; 6] = [
        SuiteName::Spectrum,
        SuiteName::Enumerate,
        SuiteName::VerifyAlgebra,
        SuiteName::VerifyBasis,
        SuiteName::VerifyReduction,
        SuiteName::VerifyMatrixElements,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Spectrum => "spectrum",
            SuiteName::Enumerate => "enumerate",
            SuiteName::VerifyAlgebra => "verify-algebra",
            SuiteName::VerifyBasis => "verify-basis",
            SuiteName::VerifyReduction => "verify-reduction",
            SuiteName::VerifyMatrixElements => "verify-matrix-elements",
            SuiteName::Export => "export",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .iter()
            .chain(std::iter::once(&SuiteName::Export))
            .find(|n| n.as_str() == s)
            .copied()
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::Usage(format!(
                "unknown format {s:?}, expected json, csv or text"
            ))),
        }
    }
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "txt",
        }
    }
}

/// Settings shared by all suites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(rename = "D")]
    pub d: usize,
    pub omega: f64,
    pub n_max: u32,
    pub orders: QuadOrders,
    /// Overrides every suite's default tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
    /// Oscillator-picture `j` cutoff of the matrix-element grid.
    pub max_j: Half,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            d: 2,
            omega: 1.0,
            n_max: 4,
            orders: QuadOrders::default(),
            tol: None,
            seed: 0,
            max_j: Half(3),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::Usage(format!(
                "D must be at least 2, got {}",
                self.d
            )));
        }
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::Usage(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        let o = self.orders;
        if o.radial < 4 || o.angular < 4 || o.lambda < 4 {
            return Err(Error::Usage(format!(
                "quadrature orders must be at least 4, got radial {} angular {} lambda {}",
                o.radial, o.angular, o.lambda
            )));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Error::Usage(format!("tolerance must be positive, got {t}")));
            }
        }
        if self.max_j < Half(0) {
            return Err(Error::Usage(format!(
                "max-j must be nonnegative, got {}",
                self.max_j
            )));
        }
        Ok(())
    }

    fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// The machine-readable line written for every suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Summary {
    pub suite: String,
    pub checks: usize,
    pub failures: usize,
    pub max_error: f64,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A named table of JSON scalars.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Rows as objects keyed by column name.
    pub fn records(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let map = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(r.iter().cloned())
                        .collect();
                    Value::Object(map)
                })
                .collect(),
        )
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Usage(format!("csv: {e}"));
        w.write_record(&self.columns).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(cell)).map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Usage(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Usage(format!("csv: {e}")))
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(cell).collect())
            .collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &cells {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let line = |r: &[String]| -> String {
            let s: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            s.join("  ")
        };
        let mut out = format!("# {}\n{}\n", self.name, line(&self.columns));
        for r in &cells {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub summary: Summary,
    pub details: Value,
    pub tables: Vec<Table>,
}

impl SuiteReport {
    /// Deterministic JSON with floats rounded to 12 significant digits.
    pub fn to_json(&self) -> Value {
        let tables: serde_json::Map<String, Value> = self
            .tables
            .iter()
            .map(|t| (t.name.clone(), t.records()))
            .collect();
        let v = json!({
            "summary": summary_json(&self.summary),
            "details": self.details,
            "tables": tables,
        });
        round_floats(v)
    }
}

pub fn summary_json(s: &Summary) -> Value {
    round_floats(serde_json::to_value(s).expect("summary serializes"))
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round12(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => {
            Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

/// Running tally of checks for one suite.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    max_error: f64,
}

impl Tally {
    /// Records one check with error `err` against tolerance `tol`.
    fn check(&mut self, err: f64, tol: f64) -> bool {
        self.checks += 1;
        let ok = err <= tol && err.is_finite();
        if !ok {
            self.failures += 1;
        }
        if err.is_nan() || err > self.max_error {
            self.max_error = err;
        }
        ok
    }

    fn exact(&mut self, ok: bool) -> bool {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
        ok
    }

    fn absorb(&mut self, other: &Tally) {
        self.checks += other.checks;
        self.failures += other.failures;
        self.max_error = self.max_error.max(other.max_error);
    }

    fn json(&self) -> Value {
        json!({"checks": self.checks, "failures": self.failures, "max-error": self.max_error})
    }

    fn summary(&self, suite: SuiteName) -> Summary {
        Summary {
            suite: suite.to_string(),
            checks: self.checks,
            failures: self.failures,
            max_error: self.max_error,
        }
    }
}

/// Runs one suite.
pub fn run_suite(suite: SuiteName, cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    match suite {
        SuiteName::Spectrum => spectrum(cfg),
        SuiteName::Enumerate => enumerate(cfg),
        SuiteName::VerifyAlgebra => verify_algebra(cfg),
        SuiteName::VerifyBasis => verify_basis(cfg),
        SuiteName::VerifyReduction => verify_reduction(cfg),
        SuiteName::VerifyMatrixElements => verify_matrix_elements(cfg),
        SuiteName::Export => export(cfg),
    }
}

/// `C(n, k)` in exact integer arithmetic.
pub fn binomial_exact(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

fn spectrum_table(cfg: &RunConfig, tally: &mut Tally) -> Table {
    let mut t = Table::new("spectrum", &["N", "degeneracy", "energy", "sw-energy"]);
    let d = cfg.d;
    for big_n in 0..=cfg.n_max {
        let labels = enumerate_level(big_n, d);
        let expected = binomial_exact(u64::from(big_n) + 2 * d as u64 - 1, 2 * d as u64 - 1);
        tally.exact(labels.len() as u128 == expected);
        tally.exact(u128::from(degeneracy(big_n, d)) == expected);
        let e = 2.0 * (f64::from(big_n) + d as f64);
        tally.exact(labels.iter().all(|l| l.energy() == e));
        t.rows.push(vec![
            json!(big_n),
            json!(labels.len()),
            json!(e),
            json!(cfg.omega * e),
        ]);
    }
    t
}

fn spectrum(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut tally = Tally::default();
    let t = spectrum_table(cfg, &mut tally);
    Ok(SuiteReport {
        summary: tally.summary(SuiteName::Spectrum),
        details: json!({"D": cfg.d, "omega": cfg.omega, "n-max": cfg.n_max}),
        tables: vec![t],
    })
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn enumerate(cfg: &RunConfig) -> Result<SuiteReport> {
    let d = cfg.d;
    let mut cols = vec!["N", "n_r", "n", "p", "j", "energy", "a", "b"];
    if d == 2 {
        cols.push("jm-label");
    }
    let mut t = Table::new("labels", &cols);
    let mut tally = Tally::default();
    for big_n in 0..=cfg.n_max {
        let labels = enumerate_level(big_n, d);
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        tally.exact(sorted.len() == labels.len());
        for l in &labels {
            tally.exact(l.big_n() == big_n);
            tally.exact(separation_by_recursion(l) == separation_closed_form(l));
            let a: Vec<Half> = (1..d).map(|nu| l.a(nu)).collect();
            let b: Vec<Half> = (1..d).map(|nu| l.b(nu)).collect();
            let mut row = vec![
                json!(big_n),
                json!(l.n_r),
                json!(join(&l.n)),
                json!(join(&l.p)),
                json!(l.j().to_string()),
                json!(l.energy()),
                json!(join(&a)),
                json!(join(&b)),
            ];
            if d == 2 {
                row.push(json!(jm_from_np(l)?.0.to_string()));
            }
            t.rows.push(row);
        }
    }
    Ok(SuiteReport {
        summary: tally.summary(SuiteName::Enumerate),
        details: json!({"D": d, "n-max": cfg.n_max, "labels": t.rows.len()}),
        tables: vec![t],
    })
}

/// `H^osc - 2 Σ_μ E_μμ` as a boson polynomial.
pub fn casimir_defect(d: usize) -> Result<BosonPoly> {
    let h = build_generator(&Generator::HOsc, d)?;
    let mut sum = BosonPoly::zero(2 * d);
    for mu in 1..=2 * d {
        sum = sum.add(&build_generator(&Generator::E(mu, mu), d)?);
    }
    Ok(h.sub(&sum.scale(&Coeff::int(2))))
}

fn verify_algebra(cfg: &RunConfig) -> Result<SuiteReport> {
    let report = verify_relations(cfg.d)?;
    let mut tally = Tally {
        checks: report.checks,
        failures: report.failures,
        max_error: 0.0,
    };
    let defect = casimir_defect(cfg.d)?;
    tally.exact(defect.is_zero());
    let failed: Vec<Value> = report
        .failed()
        .map(|r| json!({"relation-id": r.id, "lhs": r.lhs, "rhs": r.rhs}))
        .collect();
    Ok(SuiteReport {
        summary: tally.summary(SuiteName::VerifyAlgebra),
        details: json!({
            "D": cfg.d,
            "relations": report.checks,
            "casimir-defect": defect.canonical(),
            "failed": failed,
        }),
        tables: Vec::new(),
    })
}

/// A random point of `sys` away from the coordinate singularities. Radii are
/// drawn where the ground-state Gaussian is still appreciable.
pub fn random_point(rng: &mut impl Rng, sys: CoordSystem) -> Vec<f64> {
    let d = sys.d();
    let scale = sys.omega().map_or(1.0, |w| w.sqrt().recip());
    let mut x = Vec::with_capacity(2 * d);
    x.push(rng.gen_range(0.1..3.0) * scale);
    for _ in 1..d {
        x.push(rng.gen_range(0.05..FRAC_PI_2 - 0.05));
    }
    for _ in 0..d {
        x.push(rng.gen_range(0.0..2.0 * PI));
    }
    x
}

/// `max |(op - e)ψ| / max |ψ|` over `points`.
pub fn eigen_residual(
    op: &DiffOperator,
    psi: &WaveEval,
    e: f64,
    points: &[Vec<f64>],
) -> Result<f64> {
    let mut max_psi: f64 = 0.0;
    let mut max_res: f64 = 0.0;
    for x in points {
        let v = psi.value(x);
        max_psi = max_psi.max(v.norm());
        max_res = max_res.max((op.apply(psi, x)? - e * v).norm());
    }
    Ok(if max_psi > 0.0 {
        max_res / max_psi
    } else {
        max_res
    })
}

fn labels_up_to(n_max: u32, d: usize) -> Vec<OscLabel> {
    (0..=n_max).flat_map(|n| enumerate_level(n, d)).collect()
}

const RESIDUAL_POINTS: usize = 100;
const RECURSION_SAMPLES: usize = 1000;

fn random_label(rng: &mut impl Rng) -> OscLabel {
    let d = rng.gen_range(2..=6);
    let n_r = rng.gen_range(0..6);
    let n = (1..d).map(|_| rng.gen_range(0..6)).collect();
    let p = (0..d).map(|_| rng.gen_range(-6..=6)).collect();
    OscLabel { d, n_r, n, p }
}

fn verify_basis(cfg: &RunConfig) -> Result<SuiteReport> {
    let tol = cfg.tol_or(1e-8);
    let d = cfg.d;
    let labels = labels_up_to(cfg.n_max, d);
    let sys = CoordSystem::osc(d);
    let grid = Grid::new(sys, cfg.orders)?;
    let fields: Vec<_> = labels
        .iter()
        .map(|l| grid.sample(&osc_wavefunction(l)))
        .collect();

    let mut gram = Tally::default();
    for (i, a) in fields.iter().enumerate() {
        for (k, b) in fields.iter().enumerate() {
            let want = if i == k { 1.0 } else { 0.0 };
            gram.check((grid.inner(a, b) - want).norm(), tol);
        }
    }

    let mut rng = cfg.rng();
    let h = build_operator(OperatorName::HOsc, sys, None)?;
    let mut resid = Tally::default();
    let mut worst = Vec::new();
    for l in &labels {
        let pts: Vec<Vec<f64>> = (0..RESIDUAL_POINTS)
            .map(|_| random_point(&mut rng, sys))
            .collect();
        let r = eigen_residual(&h, &osc_wavefunction(l), l.energy(), &pts)?;
        if !resid.check(r, tol) {
            worst.push(json!({"label": l.to_string(), "residual": r}));
        }
    }

    let mut rec = Tally::default();
    for _ in 0..RECURSION_SAMPLES {
        let l = random_label(&mut rng);
        let a = separation_by_recursion(&l);
        rec.exact(a == separation_closed_form(&l));
        let tj = i64::from(l.j().twice());
        rec.exact(a.c[0] == tj * (tj + 2 * l.d as i64 - 2));
    }

    let mut total = Tally::default();
    for t in [&gram, &resid, &rec] {
        total.absorb(t);
    }
    Ok(SuiteReport {
        summary: total.summary(SuiteName::VerifyBasis),
        details: json!({
            "D": d,
            "n-max": cfg.n_max,
            "states": labels.len(),
            "tolerance": tol,
            "gram": gram.json(),
            "eigen-residual": resid.json(),
            "separation-recursion": rec.json(),
            "failed-residuals": worst,
        }),
        tables: Vec::new(),
    })
}

fn omegas(cfg: &RunConfig) -> Vec<f64> {
    let mut w = vec![1.0, 2.0];
    if !w.contains(&cfg.omega) {
        w.push(cfg.omega);
    }
    w
}

const REDUCTION_POINTS: usize = 25;

fn verify_reduction(cfg: &RunConfig) -> Result<SuiteReport> {
    let tol = cfg.tol_or(1e-8);
    let pointwise_tol = cfg.tol_or(1e-10);
    let d = cfg.d;
    let labels: Vec<OscLabel> = labels_up_to(cfg.n_max, d)
        .into_iter()
        .filter(|l| !l.p.contains(&0))
        .collect();
    let mut rng = cfg.rng();
    let (mut pointwise, mut norm, mut resid, mut resid_k, mut energy) = (
        Tally::default(),
        Tally::default(),
        Tally::default(),
        Tally::default(),
        Tally::default(),
    );
    let mut failed = Vec::new();
    for omega in omegas(cfg) {
        let sys = CoordSystem::sw(d, omega);
        let grid = Grid::new(sys, cfg.orders)?;
        let h = build_operator(OperatorName::HSw, sys, None)?;
        for l in &labels {
            let osc = osc_wavefunction(l);
            let sw = sw_wavefunction(l, omega)?;
            let e = sw_energy(l.n_r, l.j(), omega, d);
            energy.check((e - omega * l.energy()).abs(), 1e-12 * e);

            let pts: Vec<Vec<f64>> = (0..REDUCTION_POINTS)
                .map(|_| random_point(&mut rng, sys))
                .collect();
            for x in &pts {
                let mut y = x.clone();
                y[0] *= omega.sqrt();
                let o = reduction_factor(x[0], &x[1..d], omega, d);
                let want = osc.value(&y) * o.sqrt();
                pointwise.check(
                    (sw.value(x) - want).norm() / want.norm().max(1.0),
                    pointwise_tol,
                );
            }

            let f = grid.sample(&sw);
            let nerr = (grid.inner(&f, &f).re - 1.0).abs();
            let r = eigen_residual(&h, &sw, e, &pts)?;
            let params = SwParams::from_label(l, omega)?;
            let hk = build_operator(OperatorName::HK, sys, Some(&params))?;
            let rk = eigen_residual(&hk, &sw_reduced_wavefunction(l, omega)?, e, &pts)?;
            let ok = [
                norm.check(nerr, tol),
                resid.check(r, tol),
                resid_k.check(rk, tol),
            ];
            if ok.contains(&false) {
                failed.push(json!({"label": l.to_string(), "omega": omega, "norm-error": nerr, "residual": r, "residual-k": rk}));
            }
        }
    }
    let mut total = Tally::default();
    for t in [&pointwise, &norm, &resid, &resid_k, &energy] {
        total.absorb(t);
    }
    Ok(SuiteReport {
        summary: total.summary(SuiteName::VerifyReduction),
        details: json!({
            "D": d,
            "n-max": cfg.n_max,
            "omegas": omegas(cfg),
            "states": labels.len(),
            "pointwise-factor": pointwise.json(),
            "norm": norm.json(),
            "eigen-residual": resid.json(),
            "eigen-residual-k": resid_k.json(),
            "energy": energy.json(),
            "failed": failed,
        }),
        tables: Vec::new(),
    })
}

fn oracle_spec(cfg: &RunConfig) -> OracleSpec {
    let mut spec = OracleSpec {
        osc_max_j: cfg.max_j,
        omega: cfg.omega,
        orders: cfg.orders,
        ..OracleSpec::default()
    };
    if let Some(t) = cfg.tol {
        spec.tol = t;
    }
    spec
}

fn require_d2(cfg: &RunConfig, what: &str) -> Result<()> {
    if cfg.d != 2 {
        return Err(Error::UnsupportedDimension(
            cfg.d,
            format!("{what} exists for D = 2 only"),
        ));
    }
    Ok(())
}

fn outcome_json(o: &OracleOutcome) -> Value {
    json!({
        "checks": o.checks,
        "failures": o.failures,
        "max-error": o.max_error,
        "pattern-checks": o.pattern_checks,
        "pattern-failures": o.pattern_failures,
        "pattern-max": o.pattern_max,
        "failed": o.failed_rows.iter().take(50).collect::<Vec<_>>(),
    })
}

/// Kets for the completeness and function-level commutator checks.
fn sample_kets() -> Vec<JmLabel> {
    let h = Half;
    vec![
        JmLabel {
            n_r: 0,
            j: h(0),
            m: h(0),
            mp: h(0),
        },
        JmLabel {
            n_r: 0,
            j: h(1),
            m: h(1),
            mp: h(-1),
        },
        JmLabel {
            n_r: 1,
            j: h(2),
            m: h(0),
            mp: h(2),
        },
        JmLabel {
            n_r: 0,
            j: h(3),
            m: h(-1),
            mp: h(1),
        },
        JmLabel {
            n_r: 1,
            j: h(1),
            m: h(-1),
            mp: h(-1),
        },
    ]
}

fn pictures(omega: f64) -> [Picture; 2] {
    [Picture::Osc, Picture::Sw { omega }]
}

/// `Σ|⟨t|op|ket⟩|²` over the predicted shell against `‖op ket‖²`.
fn completeness_checks(cfg: &RunConfig, tally: &mut Tally) -> Result<()> {
    let tol = cfg.tol_or(1e-6);
    for picture in pictures(cfg.omega) {
        for c in Component::all() {
            for ket in sample_kets().iter().take(3) {
                let (sum, norm2) = completeness(c, picture, Route::Cartesian, ket, cfg.orders)?;
                tally.check((sum - norm2).abs() / norm2.max(1.0), tol);
            }
        }
    }
    Ok(())
}

/// `[J+, J-] = 2J0`, `[K+, K-] = 2K0` and `[J_i, K_k] = 0` applied to states.
fn commutator_checks(cfg: &RunConfig, tally: &mut Tally) -> Result<()> {
    use Component::*;
    let tol = cfg.tol_or(1e-8);
    let mut rng = cfg.rng();
    for picture in pictures(cfg.omega) {
        let op = |c| component_operator(c, picture, Route::Display);
        let mut identities = vec![
            op(Jp)?.commutator(&op(Jm)?)?.sub(&op(J0)?.scale(2.0)),
            op(Kp)?.commutator(&op(Km)?)?.sub(&op(K0)?.scale(2.0)),
        ];
        for a in [J0, Jp, Jm] {
            for b in [K0, Kp, Km] {
                identities.push(op(a)?.commutator(&op(b)?)?);
            }
        }
        let sys = picture.system();
        for ket in JmLabel::grid(2, Half(4)) {
            let psi = target_wave(picture, &ket)?;
            let pts: Vec<Vec<f64>> = (0..10).map(|_| random_point(&mut rng, sys)).collect();
            for id in &identities {
                tally.check(eigen_residual(id, &psi, 0.0, &pts)?, tol);
            }
        }
    }
    Ok(())
}

fn matrix_element_table(osc: &OracleOutcome, sw: &OracleOutcome) -> Table {
    let cols: Vec<&str> = MatrixElementRow::CSV_HEADER.split(',').collect();
    let mut t = Table::new("matrix-elements", &cols);
    for (pic, o) in [("osc", osc), ("sw", sw)] {
        for r in &o.rows {
            t.rows.push(vec![
                json!(format!("{pic}:{}", r.operator)),
                json!(r.bra_label),
                json!(r.ket_label),
                json!(r.numeric_re),
                json!(r.numeric_im),
                json!(r.predicted_re),
                json!(r.predicted_im),
                json!(r.abs_diff),
            ]);
        }
    }
    t
}

fn oracle_tally(osc: &OracleOutcome, sw: &OracleOutcome) -> Tally {
    let mut t = Tally::default();
    for o in [osc, sw] {
        t.checks += o.checks + o.pattern_checks;
        t.failures += o.failures + o.pattern_failures;
        t.max_error = t.max_error.max(o.max_error);
    }
    t
}

fn verify_matrix_elements(cfg: &RunConfig) -> Result<SuiteReport> {
    require_d2(cfg, "the matrix-element oracle")?;
    let spec = oracle_spec(cfg);
    let (osc, sw) = run_oracle(&spec, &Component::all())?;
    let mut total = oracle_tally(&osc, &sw);
    let mut comp = Tally::default();
    completeness_checks(cfg, &mut comp)?;
    let mut crs = Tally::default();
    commutator_checks(cfg, &mut crs)?;
    // Completeness and commutator residuals count as checks; the reported
    // maximum stays the oracle's scaled error.
    total.checks += comp.checks + crs.checks;
    total.failures += comp.failures + crs.failures;
    Ok(SuiteReport {
        summary: total.summary(SuiteName::VerifyMatrixElements),
        details: json!({
            "grid": spec,
            "osc": outcome_json(&osc),
            "sw": outcome_json(&sw),
            "completeness": comp.json(),
            "function-commutators": crs.json(),
        }),
        tables: vec![matrix_element_table(&osc, &sw)],
    })
}

fn export(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut tally = Tally::default();
    let mut tables = vec![spectrum_table(cfg, &mut tally)];
    if cfg.d == 2 {
        let (osc, sw) = run_oracle(&oracle_spec(cfg), &Component::all())?;
        tally.absorb(&oracle_tally(&osc, &sw));
        tables.push(matrix_element_table(&osc, &sw));
    }
    Ok(SuiteReport {
        summary: tally.summary(SuiteName::Export),
        details: json!({"D": cfg.d, "tables": tables.iter().map(|t| t.name.clone()).collect::<Vec<_>>()}),
        tables,
    })
}

/// Text rendering of a report.
pub fn render_text(r: &SuiteReport) -> String {
    let s = &r.summary;
    let mut out = format!(
        "{}: {} ({} checks, {} failures, max error {:.3e})\n",
        s.suite,
        if s.passed() { "PASS" } else { "FAIL" },
        s.checks,
        s.failures,
        s.max_error
    );
    for t in &r.tables {
        out.push('\n');
        out.push_str(&t.to_text());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round12(0.1 + 0.2), 0.3);
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(0.0), 0.0);
    }

    #[test]
    fn exact_binomials() {
        assert_eq!(binomial_exact(5, 3), 10);
        assert_eq!(binomial_exact(11, 5), 462);
        assert_eq!(binomial_exact(4, 0), 1);
    }

    #[test]
    fn spectrum_rows() {
        let cfg = RunConfig {
            n_max: 2,
            ..RunConfig::default()
        };
        let r = run_suite(SuiteName::Spectrum, &cfg).unwrap();
        let degs: Vec<_> = r.tables[0]
            .rows
            .iter()
            .map(|row| row[1].as_u64().unwrap())
            .collect();
        assert_eq!(degs, [1, 4, 10]);
        assert!(r.summary.passed());
    }

    #[test]
    fn casimir_identity_is_exact() {
        assert!(casimir_defect(2).unwrap().is_zero());
        assert!(casimir_defect(3).unwrap().is_zero());
    }
}
