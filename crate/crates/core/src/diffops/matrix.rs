//! Numeric matrix elements by quadrature and the predicted-versus-numeric
//! oracle grids.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cartesian::boson_to_operator;
use super::catalogue::build_operator;
use super::operator::DiffOperator;
use super::predict::{predict_osc, predict_sw, prediction_map, Component};
use crate::bosonalg::build_generator;
use crate::coords::{CoordKind, CoordSystem};
use crate::error::{Error, Result};
use crate::half::Half;
use crate::oscillator::osc_psibar;
use crate::quadrature::{Grid, QuadOrders, SepField};
use crate::swreduce::{sw_psibar, sw_psibar_jm, JmLabel, SwLabel};
use crate::wave::WaveEval;

/// Which of the two D = 2 pictures, with the SW frequency.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Picture {
    Osc,
    Sw { omega: f64 },
}

impl Picture {
    pub fn system(&self) -> CoordSystem {
        match *self {
            Picture::Osc => CoordSystem::osc(2),
            Picture::Sw { omega } => CoordSystem::sw(2, omega),
        }
    }

    pub fn is_osc(&self) -> bool {
        matches!(self, Picture::Osc)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Picture::Osc => "osc",
            Picture::Sw { .. } => "sw",
        }
    }
}

/// How the coordinate form of a component is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Transcribed display from the catalogue.
    Display,
    /// Boson-algebra definition through `X_μ`, `∂_{X_μ}` (and the SW map).
    Cartesian,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Display => "display",
            Route::Cartesian => "cartesian",
        }
    }
}

/// Coordinate form of a component in a picture along the chosen route.
pub fn component_operator(c: Component, picture: Picture, route: Route) -> Result<DiffOperator> {
    let sys = picture.system();
    match route {
        Route::Display => {
            let name = c
                .displayed(picture.is_osc())
                .ok_or_else(|| Error::Catalogue(c.to_string(), sys.to_string()))?;
            build_operator(name, sys, None)
        }
        Route::Cartesian => {
            let poly = build_generator(&c.generator(), 2)?;
            let op = boson_to_operator(&poly, CoordSystem::osc(2))?;
            match picture {
                Picture::Osc => Ok(op),
                Picture::Sw { omega } => op.to_sw(omega),
            }
        }
    }
}

/// Routes available for a component in a picture.
pub fn routes(c: Component, picture: Picture) -> Vec<Route> {
    let mut v = vec![Route::Cartesian];
    if c.displayed(picture.is_osc()).is_some() {
        v.insert(0, Route::Display);
    }
    v
}

/// `⟨bra | op | ket⟩` under the picture's volume element.
pub fn matrix_element_numeric(
    grid: &Grid,
    bra: &WaveEval,
    op: &DiffOperator,
    ket: &WaveEval,
) -> Result<Complex64> {
    bra.system.check_same(&grid.system)?;
    let field = op.apply_on_grid(grid, ket)?;
    Ok(grid.inner(&grid.sample(bra), &field))
}

/// A labelled basis of `Ψ̄` functions.
#[derive(Clone, Debug)]
pub struct Basis {
    pub picture: Picture,
    pub labels: Vec<String>,
    pub jm: Vec<JmLabel>,
    /// `(a, b)` in doubled units for SW labels.
    pub ab: Vec<Option<(i32, i32)>>,
    pub waves: Vec<WaveEval>,
}

impl Basis {
    /// Oscillator `Ψ̄` with `n_r ≤ max_nr`, `j ≤ max_j`.
    pub fn osc(max_nr: u32, max_j: Half) -> Result<Basis> {
        let jm = JmLabel::grid(max_nr, max_j);
        let waves = jm.iter().map(osc_psibar).collect::<Result<Vec<_>>>()?;
        Ok(Basis {
            picture: Picture::Osc,
            labels: jm.iter().map(|l| l.to_string()).collect(),
            ab: vec![None; jm.len()],
            jm,
            waves,
        })
    }

    /// SW `Ψ̄` with `n_r, n ≤ max` and `a, b ∈ {1/2, …, max_ab}`.
    pub fn sw(max_nr: u32, max_n: u32, max_ab: Half, omega: f64) -> Result<Basis> {
        let sw = SwLabel::grid(max_nr, max_n, max_ab);
        let mut b = Basis {
            picture: Picture::Sw { omega },
            labels: Vec::with_capacity(sw.len()),
            jm: Vec::with_capacity(sw.len()),
            ab: Vec::with_capacity(sw.len()),
            waves: Vec::with_capacity(sw.len()),
        };
        for l in &sw {
            let (a, bb) = l.ab_half().expect("grid labels are half-integers");
            b.labels.push(l.to_string());
            b.jm.push(l.to_jm()?);
            b.ab.push(Some((a.twice(), bb.twice())));
            b.waves.push(sw_psibar(l, omega)?);
        }
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.waves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waves.is_empty()
    }
}

/// Wavefunction of an arbitrary `(j, m, m')` target in a picture.
pub fn target_wave(picture: Picture, jm: &JmLabel) -> Result<WaveEval> {
    match picture {
        Picture::Osc => osc_psibar(jm),
        Picture::Sw { omega } => sw_psibar_jm(jm, omega),
    }
}

struct Member {
    index: usize,
    scale: Complex64,
    factors: Vec<Arc<Vec<Complex64>>>,
}

struct PhaseGroup {
    phase: Vec<Arc<Vec<Complex64>>>,
    members: Vec<Member>,
}

/// Projects sampled fields onto every basis function. Basis functions sharing
/// their phase factors are grouped so that the phase integrals, which fix the
/// selection rules, are done once per group.
pub struct Projector {
    pub grid: Grid,
    phase_coords: Vec<usize>,
    other_coords: Vec<usize>,
    groups: Vec<PhaseGroup>,
    size: usize,
}

/// Phase integrals below this are trapezoid-rule roundoff of exact zeros.
const PHASE_ZERO: f64 = 1e-10;

impl Projector {
    pub fn new(grid: Grid, basis: &Basis) -> Result<Projector> {
        let sys = grid.system;
        let phase_coords: Vec<usize> = (0..sys.n_coords())
            .filter(|&k| matches!(sys.kind(k), CoordKind::Phase(_)))
            .collect();
        let other_coords: Vec<usize> = (0..sys.n_coords())
            .filter(|k| !phase_coords.contains(k))
            .collect();
        let mut groups: Vec<PhaseGroup> = Vec::new();
        for (index, w) in basis.waves.iter().enumerate() {
            grid.system.check_same(&w.system)?;
            let field = grid.sample(w);
            let term = &field.terms[0];
            let phase: Vec<Arc<Vec<Complex64>>> = phase_coords
                .iter()
                .map(|&k| term.factors[k].clone())
                .collect();
            let member = Member {
                index,
                scale: term.scale,
                factors: term.factors.clone(),
            };
            match groups
                .iter_mut()
                .find(|g| g.phase.iter().zip(&phase).all(|(x, y)| x == y))
            {
                Some(g) => g.members.push(member),
                None => groups.push(PhaseGroup {
                    phase,
                    members: vec![member],
                }),
            }
        }
        Ok(Projector {
            grid,
            phase_coords,
            other_coords,
            groups,
            size: basis.len(),
        })
    }

    /// `⟨basis_i | field⟩` for every basis function.
    pub fn project(&self, field: &SepField) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.size];
        for g in &self.groups {
            let live: Vec<(usize, Complex64)> = field
                .terms
                .iter()
                .enumerate()
                .filter_map(|(ti, t)| {
                    let mut ph = Complex64::new(1.0, 0.0);
                    for (gi, &k) in self.phase_coords.iter().enumerate() {
                        ph *= self.grid.dot(k, &g.phase[gi], &t.factors[k]);
                    }
                    (ph.norm() > PHASE_ZERO).then_some((ti, ph * t.scale))
                })
                .collect();
            if live.is_empty() {
                continue;
            }
            for m in &g.members {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(ti, ph) in &live {
                    let t = &field.terms[ti];
                    let mut v = ph;
                    for &k in &self.other_coords {
                        v *= self.grid.dot(k, &m.factors[k], &t.factors[k]);
                    }
                    acc += v;
                }
                out[m.index] = m.scale.conj() * acc;
            }
        }
        out
    }
}

/// One line of a matrix-element table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct MatrixElementRow {
    pub operator: String,
    pub bra_label: String,
    pub ket_label: String,
    pub numeric_re: f64,
    pub numeric_im: f64,
    pub predicted_re: f64,
    pub predicted_im: f64,
    pub abs_diff: f64,
}

impl MatrixElementRow {
    pub const CSV_HEADER: &'static str =
        "operator,bra-label,ket-label,numeric-re,numeric-im,predicted-re,predicted-im,abs-diff";

    pub fn numeric(&self) -> Complex64 {
        Complex64::new(self.numeric_re, self.numeric_im)
    }

    pub fn predicted(&self) -> Complex64 {
        Complex64::new(self.predicted_re, self.predicted_im)
    }
}

/// Settings for the oracle grids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSpec {
    /// Oscillator grid: `n_r ≤ osc_max_nr`, `j ≤ osc_max_j`.
    pub osc_max_nr: u32,
    pub osc_max_j: Half,
    /// SW grid: `n_r, n ≤ sw_max_n`, `a, b ≤ sw_max_ab`.
    pub sw_max_n: u32,
    pub sw_max_ab: Half,
    pub omega: f64,
    pub orders: QuadOrders,
    /// Pass if `|numeric - predicted| ≤ tol · (1 + |predicted|)`.
    pub tol: f64,
    /// Threshold for "nonzero" in the transition-pattern check.
    pub zero_tol: f64,
}

impl Default for OracleSpec {
    fn default() -> Self {
        OracleSpec {
            osc_max_nr: 2,
            osc_max_j: Half(3),
            sw_max_n: 2,
            sw_max_ab: Half(7),
            omega: 1.0,
            orders: QuadOrders::default(),
            tol: 1e-7,
            zero_tol: 1e-9,
        }
    }
}

/// Result of running one or more components over a grid.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleOutcome {
    /// Rows where the numeric or predicted value is nonzero.
    pub rows: Vec<MatrixElementRow>,
    pub checks: usize,
    pub failures: usize,
    /// Largest `|numeric - predicted| / (1 + |predicted|)`.
    pub max_error: f64,
    pub pattern_checks: usize,
    pub pattern_failures: usize,
    /// Largest `|numeric|` at a shift outside the allowed set.
    pub pattern_max: f64,
    pub failed_rows: Vec<MatrixElementRow>,
}

impl OracleOutcome {
    fn merge(&mut self, o: OracleOutcome) {
        self.rows.extend(o.rows);
        self.failed_rows.extend(o.failed_rows);
        self.checks += o.checks;
        self.failures += o.failures;
        self.max_error = self.max_error.max(o.max_error);
        self.pattern_checks += o.pattern_checks;
        self.pattern_failures += o.pattern_failures;
        self.pattern_max = self.pattern_max.max(o.pattern_max);
    }
}

/// Predicted action in a picture for a basis element.
fn predicted(c: Component, basis: &Basis, i: usize) -> Result<Vec<super::predict::Prediction>> {
    match basis.picture {
        Picture::Osc => predict_osc(c, &basis.jm[i]),
        Picture::Sw { .. } => {
            let (a2, b2) = basis.ab[i].expect("SW basis carries (a, b)");
            let jm = basis.jm[i];
            let l = SwLabel::new(
                jm.n_r,
                (jm.j + jm.mp).as_int().unwrap() as u32,
                f64::from(a2) / 2.0,
                f64::from(b2) / 2.0,
            )?;
            predict_sw(c, &l)
        }
    }
}

/// Runs one operator (a component along one route) over every `(bra, ket)`
/// pair of the basis.
pub fn run_component(
    c: Component,
    route: Route,
    projector: &Projector,
    basis: &Basis,
    spec: &OracleSpec,
) -> Result<OracleOutcome> {
    let op = component_operator(c, basis.picture, route)?;
    let name = format!("{c}/{}", route.name());
    let per_ket: Vec<Result<OracleOutcome>> = (0..basis.len())
        .into_par_iter()
        .map(|ki| {
            let field = op.apply_on_grid(&projector.grid, &basis.waves[ki])?;
            let numeric = projector.project(&field);
            let preds = prediction_map(&predicted(c, basis, ki)?);
            let mut out = OracleOutcome::default();
            for (bi, &num) in numeric.iter().enumerate() {
                let pred = preds.get(&basis.jm[bi]).copied().unwrap_or_default();
                let diff = (num - pred).norm();
                let scaled = diff / (1.0 + pred.norm());
                out.checks += 1;
                out.max_error = out.max_error.max(scaled);
                let row = MatrixElementRow {
                    operator: name.clone(),
                    bra_label: basis.labels[bi].clone(),
                    ket_label: basis.labels[ki].clone(),
                    numeric_re: num.re,
                    numeric_im: num.im,
                    predicted_re: pred.re,
                    predicted_im: pred.im,
                    abs_diff: diff,
                };
                let failed = !(diff <= spec.tol * (1.0 + pred.norm()));
                if failed {
                    out.failures += 1;
                    out.failed_rows.push(row.clone());
                }
                if let (Some((ka, kb)), Some((ba, bb))) = (basis.ab[ki], basis.ab[bi]) {
                    out.pattern_checks += 1;
                    if !c.allowed_shifts().contains(&(ba - ka, bb - kb)) {
                        out.pattern_max = out.pattern_max.max(num.norm());
                        if num.norm() >= spec.zero_tol {
                            out.pattern_failures += 1;
                        }
                    }
                }
                if num.norm() > 1e-12 || pred.norm() > 0.0 {
                    out.rows.push(row);
                }
            }
            Ok(out)
        })
        .collect();
    let mut total = OracleOutcome::default();
    for o in per_ket {
        total.merge(o?);
    }
    Ok(total)
}

/// Runs every component along every available route in both pictures.
pub fn run_oracle(
    spec: &OracleSpec,
    components: &[Component],
) -> Result<(OracleOutcome, OracleOutcome)> {
    let osc_basis = Basis::osc(spec.osc_max_nr, spec.osc_max_j)?;
    let sw_basis = Basis::sw(spec.sw_max_n, spec.sw_max_n, spec.sw_max_ab, spec.omega)?;
    let mut results = Vec::with_capacity(2);
    for basis in [&osc_basis, &sw_basis] {
        let grid = Grid::new(basis.picture.system(), spec.orders)?;
        let projector = Projector::new(grid, basis)?;
        let mut total = OracleOutcome::default();
        for &c in components {
            for route in routes(c, basis.picture) {
                total.merge(run_component(c, route, &projector, basis, spec)?);
            }
        }
        results.push(total);
    }
    let sw = results.pop().expect("two pictures");
    let osc = results.pop().expect("two pictures");
    Ok((osc, sw))
}

/// `Σ |⟨target|op|ket⟩|²` over the predicted targets, and `‖op ket‖²`.
pub fn completeness(
    c: Component,
    picture: Picture,
    route: Route,
    ket: &JmLabel,
    orders: QuadOrders,
) -> Result<(f64, f64)> {
    let op = component_operator(c, picture, route)?;
    let grid = Grid::new(picture.system(), orders)?;
    let psi = target_wave(picture, ket)?;
    let field = op.apply_on_grid(&grid, &psi)?;
    let norm2 = grid.inner(&field, &field).re;
    // Both pictures share the (j, m, m') targets.
    let preds = predict_osc(c, ket)?;
    let mut sum = 0.0;
    for t in prediction_map(&preds).keys() {
        let bra = grid.sample(&target_wave(picture, t)?);
        sum += grid.inner(&bra, &field).norm_sqr();
    }
    Ok((sum, norm2))
}
