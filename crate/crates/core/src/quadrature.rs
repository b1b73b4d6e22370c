//! Gauss rules on the coordinate domains and tensor-product inner products
//! of separable fields.

use std::f64::consts::{FRAC_PI_2, PI};
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{CoordKind, CoordSystem};
use crate::error::{Error, Result};
use crate::wave::WaveEval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainKind {
    RadialZ,
    AngleTheta,
    AnglePhi,
    AngleLambda,
}

impl FromStr for DomainKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "radial-z" => Ok(DomainKind::RadialZ),
            "angle-theta" => Ok(DomainKind::AngleTheta),
            "angle-phi" => Ok(DomainKind::AnglePhi),
            "angle-lambda" => Ok(DomainKind::AngleLambda),
            _ => Err(Error::Usage(format!("unknown quadrature domain {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadRule {
    pub kind: DomainKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for k in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * k + 1) as f64 * z * p2 - k as f64 * p3) / (k + 1) as f64;
            }
            dp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        // Recompute the derivative at the converged node.
        let (mut p1, mut p2) = (1.0, 0.0);
        for k in 0..n {
            let p3 = p2;
            p2 = p1;
            p1 = ((2 * k + 1) as f64 * z * p2 - k as f64 * p3) / (k + 1) as f64;
        }
        if (z * z - 1.0).abs() > 0.0 {
            dp = nf * (z * p1 - p2) / (z * z - 1.0);
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// `(L_n(z), L_{n-1}(z))` by the three-term recurrence.
fn laguerre_pair(n: usize, z: f64) -> (f64, f64) {
    let (mut p1, mut p2) = (1.0, 0.0);
    for k in 0..n {
        let p3 = p2;
        p2 = p1;
        p1 = (((2 * k + 1) as f64 - z) * p2 - k as f64 * p3) / (k + 1) as f64;
    }
    (p1, p2)
}

/// Gauss-Laguerre nodes and weights for weight `e^{-z}` on `[0, ∞)`.
fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - x[i - 2])
            }
        };
        for _ in 0..200 {
            let (p1, p2) = laguerre_pair(n, z);
            let dz = p1 / (nf * (p1 - p2) / z);
            z -= dz;
            if dz.abs() <= 1e-16 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        // w = -1/(n L_n'(z) L_{n-1}(z)), evaluated at the converged node
        let (p1, p2) = laguerre_pair(n, z);
        let dp = nf * (p1 - p2) / z;
        w[i] = -1.0 / (nf * dp * p2);
    }
    (x, w)
}

/// Build a rule of the given order on a domain.
pub fn make_rule(kind: DomainKind, order: usize) -> Result<QuadRule> {
    if order == 0 {
        return Err(Error::Usage("quadrature order must be positive".into()));
    }
    let (nodes, weights) = match kind {
        DomainKind::RadialZ => gauss_laguerre(order),
        DomainKind::AngleTheta | DomainKind::AnglePhi => {
            let (x, w) = gauss_legendre(order);
            (
                x.iter().map(|t| FRAC_PI_2 * 0.5 * (t + 1.0)).collect(),
                w.iter().map(|v| v * FRAC_PI_2 * 0.5).collect(),
            )
        }
        DomainKind::AngleLambda => {
            let h = 2.0 * PI / order as f64;
            ((0..order).map(|i| i as f64 * h).collect(), vec![h; order])
        }
    };
    Ok(QuadRule {
        kind,
        nodes,
        weights,
    })
}

/// Rule orders per domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadOrders {
    pub radial: usize,
    pub angular: usize,
    pub lambda: usize,
}

impl Default for QuadOrders {
    fn default() -> Self {
        QuadOrders {
            radial: 48,
            angular: 48,
            lambda: 32,
        }
    }
}

impl QuadOrders {
    pub fn bumped(&self, by: usize) -> Self {
        QuadOrders {
            radial: self.radial + by,
            angular: self.angular + by,
            lambda: self.lambda + by,
        }
    }
}

/// Nodes in coordinate space with weights that include the volume element.
///
/// Radial weights are multiplied by `e^{z}` so that integrands may carry
/// their own Gaussian factor.
#[derive(Clone, Debug)]
pub struct Grid {
    pub system: CoordSystem,
    pub orders: QuadOrders,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<Vec<f64>>,
}

impl Grid {
    pub fn new(system: CoordSystem, orders: QuadOrders) -> Result<Self> {
        let d = system.d();
        let radial = make_rule(DomainKind::RadialZ, orders.radial)?;
        let angle_kind = if system.is_osc() {
            DomainKind::AngleTheta
        } else {
            DomainKind::AnglePhi
        };
        let angle = make_rule(angle_kind, orders.angular)?;
        let lambda = make_rule(DomainKind::AngleLambda, orders.lambda)?;
        let mut nodes = Vec::with_capacity(2 * d);
        let mut weights = Vec::with_capacity(2 * d);
        for k in 0..2 * d {
            match system.kind(k) {
                CoordKind::Radial => {
                    let (xs, ws): (Vec<f64>, Vec<f64>) = radial
                        .nodes
                        .iter()
                        .zip(&radial.weights)
                        .map(|(&z, &w)| {
                            let we = w * z.exp();
                            match system {
                                // R^{2D-1} dR = z^{D-1} dz / 2
                                CoordSystem::Osc { .. } => {
                                    (z.sqrt(), 0.5 * we * z.powi(d as i32 - 1))
                                }
                                // r^{D-1} dr = ω^{-D/2} z^{D/2-1} dz / 2
                                CoordSystem::Sw { omega, .. } => (
                                    (z / omega).sqrt(),
                                    0.5 * we
                                        * omega.powf(-(d as f64) / 2.0)
                                        * z.powf(d as f64 / 2.0 - 1.0),
                                ),
                            }
                        })
                        .unzip();
                    nodes.push(xs);
                    weights.push(ws);
                }
                CoordKind::Angle(nu) => {
                    let ws = angle
                        .nodes
                        .iter()
                        .zip(&angle.weights)
                        .map(|(&t, &w)| {
                            let (s, c) = t.sin_cos();
                            if system.is_osc() {
                                w * s.powi((2 * d - 2 * nu - 1) as i32) * c
                            } else {
                                w * s.powi((d - nu - 1) as i32)
                            }
                        })
                        .collect();
                    nodes.push(angle.nodes.clone());
                    weights.push(ws);
                }
                CoordKind::Phase(_) => {
                    nodes.push(lambda.nodes.clone());
                    weights.push(lambda.weights.clone());
                }
            }
        }
        Ok(Grid {
            system,
            orders,
            nodes,
            weights,
        })
    }

    /// Sample every coordinate factor of `psi` at the nodes: `[value, d1, d2]` vectors.
    pub fn sample_jets(&self, psi: &WaveEval) -> Vec<[Vec<Complex64>; 3]> {
        (0..self.system.n_coords())
            .map(|k| {
                let mut out: [Vec<Complex64>; 3] = Default::default();
                for &x in &self.nodes[k] {
                    let j = psi.coord_jet(k, x);
                    for o in 0..3 {
                        out[o].push(j[o]);
                    }
                }
                out
            })
            .collect()
    }

    /// The separable field of `psi` itself.
    pub fn sample(&self, psi: &WaveEval) -> SepField {
        let jets = self.sample_jets(psi);
        SepField {
            terms: vec![SepTerm {
                scale: psi.scale,
                factors: jets.into_iter().map(|[v, _, _]| Arc::new(v)).collect(),
            }],
        }
    }

    /// `∫ conj(a) b` against the grid's weights.
    pub fn inner(&self, a: &SepField, b: &SepField) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        // Phase coordinates first: their integrals usually vanish by selection rules.
        let order: Vec<usize> = (self.system.d()..self.system.n_coords())
            .chain(0..self.system.d())
            .collect();
        for s in &a.terms {
            for t in &b.terms {
                let mut acc = s.scale.conj() * t.scale;
                for &k in &order {
                    acc *= self.dot(k, &s.factors[k], &t.factors[k]);
                    if acc == Complex64::new(0.0, 0.0) {
                        break;
                    }
                }
                total += acc;
            }
        }
        total
    }

    pub(crate) fn dot(&self, k: usize, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        u.iter()
            .zip(v)
            .zip(&self.weights[k])
            .map(|((a, b), &w)| a.conj() * b * w)
            .sum()
    }
}

/// One separable term sampled on a grid.
#[derive(Clone, Debug)]
pub struct SepTerm {
    pub scale: Complex64,
    pub factors: Vec<Arc<Vec<Complex64>>>,
}

/// A finite sum of separable terms sampled on a grid.
#[derive(Clone, Debug, Default)]
pub struct SepField {
    pub terms: Vec<SepTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InnerProductResult {
    pub value: Complex64,
    pub est_error: f64,
}

/// `⟨bra|ket⟩` under the system's volume element, with an error estimate from
/// a second evaluation at orders raised by 8.
pub fn inner_product(
    bra: &WaveEval,
    ket: &WaveEval,
    orders: QuadOrders,
) -> Result<InnerProductResult> {
    bra.system.check_same(&ket.system)?;
    let at = |o: QuadOrders| -> Result<Complex64> {
        let g = Grid::new(bra.system, o)?;
        Ok(g.inner(&g.sample(bra), &g.sample(ket)))
    };
    let value = at(orders)?;
    let finer = at(orders.bumped(8))?;
    Ok(InnerProductResult {
        value,
        est_error: (value - finer).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_sums() {
        let r = make_rule(DomainKind::AngleLambda, 8).unwrap();
        assert!((r.weights.iter().sum::<f64>() - 2.0 * PI).abs() < 1e-14);
        let r = make_rule(DomainKind::RadialZ, 16).unwrap();
        let s: f64 = r.weights.iter().sum();
        assert!((s - 1.0).abs() < 1e-14, "{s}");
        let r = make_rule(DomainKind::AngleTheta, 24).unwrap();
        assert!((r.weights.iter().sum::<f64>() - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn unknown_domain() {
        assert!("angle-psi".parse::<DomainKind>().is_err());
        assert!(make_rule(DomainKind::RadialZ, 0).is_err());
    }

    #[test]
    fn laguerre_moments() {
        let r = make_rule(DomainKind::RadialZ, 48).unwrap();
        for k in 0..12 {
            let exact: f64 = (1..=k).map(f64::from).product();
            let got = r.integrate(|z| z.powi(k));
            assert!(
                (got - exact).abs() < 1e-12 * exact,
                "k={k}: {got} vs {exact}"
            );
        }
    }
}
