//! Linear differential operators `Σ c · M(x) · ∂^α` whose coefficient
//! functions are monomials in `r`, `sin`/`cos` of the polar angles and
//! `e^{ikλ}` of the phase angles.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use num_complex::Complex64;

use crate::coords::{CoordKind, CoordSystem};
use crate::error::{Error, Result};
use crate::quadrature::{Grid, SepField, SepTerm};
use crate::wave::WaveEval;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Exponents of a coefficient monomial, one pair per coordinate:
/// radial `[a, _]` means `r^a`; angle `[a, b]` means `sin^a · cos^b`;
/// phase `[k, _]` means `e^{ikλ}`.
pub type Exps = Vec<[i32; 2]>;

/// One term `coef · M(x) · ∂^orders`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coef: Complex64,
    pub exps: Exps,
    pub orders: Vec<u8>,
}

impl Term {
    pub fn order(&self) -> usize {
        self.orders.iter().map(|&o| o as usize).sum()
    }
}

/// A differential operator on one of the coordinate systems.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator {
    pub system: CoordSystem,
    pub terms: Vec<Term>,
}

fn eval_mono(kind: CoordKind, e: [i32; 2], x: f64) -> Complex64 {
    match kind {
        CoordKind::Radial => x.powi(e[0]).into(),
        CoordKind::Angle(_) => {
            let (s, c) = x.sin_cos();
            (s.powi(e[0]) * c.powi(e[1])).into()
        }
        CoordKind::Phase(_) => Complex64::from_polar(1.0, f64::from(e[0]) * x),
    }
}

/// First derivative of a one-coordinate monomial, as a list of monomials.
fn mono_d1(kind: CoordKind, e: [i32; 2]) -> Vec<(Complex64, [i32; 2])> {
    let mut out = Vec::with_capacity(2);
    match kind {
        CoordKind::Radial => {
            if e[0] != 0 {
                out.push((f64::from(e[0]).into(), [e[0] - 1, 0]));
            }
        }
        CoordKind::Angle(_) => {
            if e[0] != 0 {
                out.push((f64::from(e[0]).into(), [e[0] - 1, e[1] + 1]));
            }
            if e[1] != 0 {
                out.push((f64::from(-e[1]).into(), [e[0] + 1, e[1] - 1]));
            }
        }
        CoordKind::Phase(_) => {
            if e[0] != 0 {
                out.push((I * f64::from(e[0]), e));
            }
        }
    }
    out
}

/// `∂^k` of a one-coordinate monomial for `k ≤ 2`.
fn mono_dk(kind: CoordKind, e: [i32; 2], k: u8) -> Vec<(Complex64, [i32; 2])> {
    let mut cur = vec![(Complex64::new(1.0, 0.0), e)];
    for _ in 0..k {
        cur = cur
            .into_iter()
            .flat_map(|(c, e)| {
                mono_d1(kind, e)
                    .into_iter()
                    .map(move |(c2, e2)| (c * c2, e2))
            })
            .collect();
    }
    cur
}

fn binom(n: u8, k: u8) -> f64 {
    match (n, k) {
        (_, 0) => 1.0,
        (n, k) if k == n => 1.0,
        (2, 1) => 2.0,
        _ => 0.0,
    }
}

impl DiffOperator {
    pub fn zero(system: CoordSystem) -> Self {
        DiffOperator {
            system,
            terms: Vec::new(),
        }
    }

    fn blank(&self) -> (Exps, Vec<u8>) {
        let n = self.system.n_coords();
        (vec![[0, 0]; n], vec![0; n])
    }

    /// Multiplication by a constant.
    pub fn constant(system: CoordSystem, c: impl Into<Complex64>) -> Self {
        let n = system.n_coords();
        DiffOperator {
            system,
            terms: vec![Term {
                coef: c.into(),
                exps: vec![[0, 0]; n],
                orders: vec![0; n],
            }],
        }
    }

    pub fn identity(system: CoordSystem) -> Self {
        DiffOperator::constant(system, 1.0)
    }

    /// Multiplication by `c · Π_k M_k`, monomials given as `(coordinate, exponents)`.
    pub fn mono(system: CoordSystem, c: impl Into<Complex64>, exps: &[(usize, [i32; 2])]) -> Self {
        let mut op = DiffOperator::constant(system, c);
        for &(k, e) in exps {
            op.terms[0].exps[k] = e;
        }
        op
    }

    /// `c · Π_k M_k · ∂^orders` as a single term.
    pub fn term(
        system: CoordSystem,
        c: impl Into<Complex64>,
        exps: &[(usize, [i32; 2])],
        orders: &[(usize, u8)],
    ) -> Self {
        let mut op = DiffOperator::mono(system, c, exps);
        for &(k, o) in orders {
            op.terms[0].orders[k] += o;
        }
        op
    }

    /// `∂_k`.
    pub fn partial(system: CoordSystem, k: usize) -> Self {
        DiffOperator::term(system, 1.0, &[], &[(k, 1)])
    }

    pub fn max_order(&self) -> usize {
        self.terms.iter().map(Term::order).max().unwrap_or(0)
    }

    /// Merges equal `(monomial, derivative)` pairs and drops exact zeros.
    pub fn simplified(&self) -> Self {
        let mut map: BTreeMap<(Exps, Vec<u8>), Complex64> = BTreeMap::new();
        for t in &self.terms {
            *map.entry((t.exps.clone(), t.orders.clone())).or_default() += t.coef;
        }
        DiffOperator {
            system: self.system,
            terms: map
                .into_iter()
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                .map(|((exps, orders), coef)| Term { coef, exps, orders })
                .collect(),
        }
    }

    pub fn add(&self, other: &DiffOperator) -> Self {
        assert_eq!(self.system, other.system, "operators on different systems");
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.simplified()
    }

    pub fn sub(&self, other: &DiffOperator) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coef *= c;
        }
        out.simplified()
    }

    /// `self ∘ other`. Fails if a term would exceed total order 2.
    pub fn compose(&self, other: &DiffOperator) -> Result<Self> {
        assert_eq!(self.system, other.system, "operators on different systems");
        let n = self.system.n_coords();
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                // ∂^α (M_b ∂^β f) = Σ_γ C(α,γ) (∂^γ M_b) ∂^{α-γ+β} f, coordinate by coordinate.
                let mut partial: Vec<(Complex64, Exps, Vec<u8>)> =
                    vec![(a.coef * b.coef, a.exps.clone(), b.orders.clone())];
                for k in 0..n {
                    let kind = self.system.kind(k);
                    let mut next = Vec::new();
                    for (c, exps, ords) in &partial {
                        for g in 0..=a.orders[k] {
                            let w = binom(a.orders[k], g);
                            for (cd, ed) in mono_dk(kind, b.exps[k], g) {
                                let mut e2 = exps.clone();
                                e2[k] = [e2[k][0] + ed[0], e2[k][1] + ed[1]];
                                let mut o2 = ords.clone();
                                o2[k] += a.orders[k] - g;
                                next.push((c * cd * w, e2, o2));
                            }
                        }
                    }
                    partial = next;
                }
                for (coef, exps, orders) in partial {
                    let t = Term { coef, exps, orders };
                    if t.order() > 2 && t.coef != Complex64::new(0.0, 0.0) {
                        return Err(Error::DerivativeOrder(t.order()));
                    }
                    terms.push(t);
                }
            }
        }
        Ok(DiffOperator {
            system: self.system,
            terms,
        }
        .simplified())
    }

    pub fn commutator(&self, other: &DiffOperator) -> Result<Self> {
        Ok(self.compose(other)?.sub(&other.compose(self)?))
    }

    /// Monomial form of the volume density of the system.
    pub fn density_exps(system: CoordSystem) -> Exps {
        let d = system.d() as i32;
        (0..system.n_coords())
            .map(|k| match system.kind(k) {
                CoordKind::Radial => {
                    if system.is_osc() {
                        [2 * d - 1, 0]
                    } else {
                        [d - 1, 0]
                    }
                }
                CoordKind::Angle(nu) => {
                    let nu = nu as i32;
                    if system.is_osc() {
                        [2 * d - 2 * nu - 1, 1]
                    } else {
                        [d - nu - 1, 0]
                    }
                }
                CoordKind::Phase(_) => [0, 0],
            })
            .collect()
    }

    /// Formal adjoint with respect to the system's volume element:
    /// `(c M ∂^α)† f = (-1)^{|α|} ρ^{-1} ∂^α (ρ c̄ M̄ f)`.
    pub fn formal_adjoint(&self) -> Result<Self> {
        let sys = self.system;
        let rho = DiffOperator::density_exps(sys);
        let mut out = DiffOperator::zero(sys);
        for t in &self.terms {
            let (mut inv, _) = self.blank();
            let (mut fwd, _) = self.blank();
            for k in 0..sys.n_coords() {
                inv[k] = [-rho[k][0], -rho[k][1]];
                let conj = match sys.kind(k) {
                    CoordKind::Phase(_) => [-t.exps[k][0], 0],
                    _ => t.exps[k],
                };
                fwd[k] = [rho[k][0] + conj[0], rho[k][1] + conj[1]];
            }
            let sign = if t.order() % 2 == 0 { 1.0 } else { -1.0 };
            let left = DiffOperator {
                system: sys,
                terms: vec![Term {
                    coef: sign.into(),
                    exps: inv,
                    orders: t.orders.clone(),
                }],
            };
            let right = DiffOperator {
                system: sys,
                terms: vec![Term {
                    coef: t.coef.conj(),
                    exps: fwd,
                    orders: vec![0; sys.n_coords()],
                }],
            };
            out = out.add(&left.compose(&right)?);
        }
        Ok(out)
    }

    /// Image `𝒪^{1/2} · O · 𝒪^{-1/2}` of an oscillator operator in the SW
    /// coordinates, with `R = √ω r`, `θ = φ`.
    pub fn to_sw(&self, omega: f64) -> Result<Self> {
        let d = match self.system {
            CoordSystem::Osc { d } => d,
            CoordSystem::Sw { .. } => {
                return Err(Error::Usage("operator is already in the SW picture".into()))
            }
        };
        let sys = CoordSystem::sw(d, omega);
        let sq = omega.sqrt();
        // ∂_k - ∂_k ln 𝒪^{1/2}, with ∂_R = ω^{-1/2} ∂_r.
        let shifted = |k: usize| -> DiffOperator {
            let p = DiffOperator::partial(sys, k);
            match sys.kind(k) {
                CoordKind::Radial => p
                    .sub(&DiffOperator::mono(sys, d as f64 / 2.0, &[(k, [-1, 0])]))
                    .scale(1.0 / sq),
                CoordKind::Angle(nu) => {
                    let m = (d - nu) as f64;
                    p.sub(&DiffOperator::mono(sys, 0.5 * m, &[(k, [-1, 1])]))
                        .add(&DiffOperator::mono(sys, 0.5, &[(k, [1, -1])]))
                }
                CoordKind::Phase(_) => p,
            }
        };
        let mut out = DiffOperator::zero(sys);
        for t in &self.terms {
            let scale = sq.powi(t.exps[0][0]);
            let mut op = DiffOperator {
                system: sys,
                terms: vec![Term {
                    coef: t.coef * scale,
                    exps: t.exps.clone(),
                    orders: vec![0; sys.n_coords()],
                }],
            };
            for (k, &o) in t.orders.iter().enumerate() {
                for _ in 0..o {
                    op = op.compose(&shifted(k))?;
                }
            }
            out = out.add(&op);
        }
        Ok(out)
    }

    /// `(O ψ)(x)` from the analytic derivative table of `psi`.
    pub fn apply(&self, psi: &WaveEval, point: &[f64]) -> Result<Complex64> {
        self.system.check_same(&psi.system)?;
        let jets = psi.jets(point);
        let mut total = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            if t.order() > 2 {
                return Err(Error::DerivativeOrder(t.order()));
            }
            let mut v = t.coef * psi.scale;
            for (k, jet) in jets.iter().enumerate() {
                v *=
                    eval_mono(self.system.kind(k), t.exps[k], point[k]) * jet[t.orders[k] as usize];
            }
            total += v;
        }
        Ok(total)
    }

    /// `O ψ` sampled on a grid as a sum of separable terms.
    pub fn apply_on_grid(&self, grid: &Grid, psi: &WaveEval) -> Result<SepField> {
        self.system.check_same(&psi.system)?;
        self.system.check_same(&grid.system)?;
        let jets = grid.sample_jets(psi);
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.order() > 2 {
                return Err(Error::DerivativeOrder(t.order()));
            }
            let factors = (0..self.system.n_coords())
                .map(|k| {
                    let kind = self.system.kind(k);
                    let jet = &jets[k][t.orders[k] as usize];
                    let v: Vec<Complex64> = grid.nodes[k]
                        .iter()
                        .zip(jet)
                        .map(|(&x, &f)| eval_mono(kind, t.exps[k], x) * f)
                        .collect();
                    Arc::new(v)
                })
                .collect();
            terms.push(SepTerm {
                scale: t.coef * psi.scale,
                factors,
            });
        }
        Ok(SepField { terms })
    }
}

/// `sin λ = (e^{iλ} - e^{-iλ}) / 2i` on phase coordinate `k`.
pub fn sin_phase(system: CoordSystem, k: usize) -> DiffOperator {
    DiffOperator::mono(system, -0.5 * I, &[(k, [1, 0])]).add(&DiffOperator::mono(
        system,
        0.5 * I,
        &[(k, [-1, 0])],
    ))
}

/// `cos λ = (e^{iλ} + e^{-iλ}) / 2` on phase coordinate `k`.
pub fn cos_phase(system: CoordSystem, k: usize) -> DiffOperator {
    DiffOperator::mono(system, 0.5, &[(k, [1, 0])]).add(&DiffOperator::mono(
        system,
        0.5,
        &[(k, [-1, 0])],
    ))
}

pub(crate) const INV_SQRT2: f64 = FRAC_1_SQRT_2;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave::WaveFactor;

    fn test_wave() -> WaveEval {
        WaveEval::new(CoordSystem::osc(2), 1.0)
            .with(0, WaveFactor::Power(1.0))
            .with(0, WaveFactor::Gaussian(0.5))
            .with(1, WaveFactor::SinCos { sin: 1.0, cos: 2.0 })
            .with(2, WaveFactor::Phase(1.0))
            .with(3, WaveFactor::Phase(-2.0))
    }

    #[test]
    fn composition_matches_sequential_application() {
        let sys = CoordSystem::osc(2);
        let a = DiffOperator::term(sys, 0.7, &[(1, [-1, 1])], &[(1, 1)]);
        let b = DiffOperator::term(sys, 1.3, &[(0, [2, 0]), (1, [1, 0])], &[(0, 1)]);
        let ab = a.compose(&b).unwrap();
        // (a∘b)ψ at x versus a finite difference in θ of (bψ).
        let psi = test_wave();
        let x = [0.9, 0.6, 0.2, 1.1];
        let h = 1e-5;
        let bpsi = |t: f64| b.apply(&psi, &[x[0], t, x[2], x[3]]).unwrap();
        let fd = 0.7 * (x[1].cos() / x[1].sin()) * (bpsi(x[1] + h) - bpsi(x[1] - h)) / (2.0 * h);
        let got = ab.apply(&psi, &x).unwrap();
        assert!((got - fd).norm() < 1e-7, "{got} vs {fd}");
    }

    #[test]
    fn third_order_rejected() {
        let sys = CoordSystem::osc(2);
        let d2 = DiffOperator::term(sys, 1.0, &[], &[(0, 2)]);
        let d1 = DiffOperator::partial(sys, 1);
        assert!(matches!(d2.compose(&d1), Err(Error::DerivativeOrder(3))));
    }

    #[test]
    fn zero_and_identity() {
        let psi = test_wave();
        let x = [0.9, 0.6, 0.2, 1.1];
        let sys = CoordSystem::osc(2);
        assert_eq!(
            DiffOperator::zero(sys).apply(&psi, &x).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert!(
            (DiffOperator::identity(sys).apply(&psi, &x).unwrap() - psi.value(&x)).norm() < 1e-15
        );
    }
}
