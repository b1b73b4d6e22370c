//! Separable wavefunctions `scale · Π_k f_k(x_k)` with analytic derivatives
//! through second order.

use num_complex::Complex64;
use serde::Serialize;

use crate::coords::CoordSystem;
use crate::error::{Error, Result};
use crate::specfun::{jacobi_unchecked, laguerre_unchecked};

/// Value and first two derivatives of a univariate function.
pub type Jet = [Complex64; 3];

const JET_ONE: Jet = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 0.0),
    Complex64::new(0.0, 0.0),
];

fn jet_mul(u: &Jet, v: &Jet) -> Jet {
    [
        u[0] * v[0],
        u[1] * v[0] + u[0] * v[1],
        u[2] * v[0] + 2.0 * u[1] * v[1] + u[0] * v[2],
    ]
}

fn real_jet(v: f64, d1: f64, d2: f64) -> Jet {
    [v.into(), d1.into(), d2.into()]
}

/// `c · x^e`, treating a zero coefficient as an exact zero even where `x^e` diverges.
fn cpow(c: f64, x: f64, e: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else if e == 0.0 {
        c
    } else {
        c * x.powf(e)
    }
}

/// One univariate building block of a wavefunction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum WaveFactor {
    /// `x^p`.
    Power(f64),
    /// `sin^a x · cos^b x`.
    SinCos { sin: f64, cos: f64 },
    /// `e^{i k x}`.
    Phase(f64),
    /// `e^{-c x²}`.
    Gaussian(f64),
    /// `L_n^{(α)}(c x²)`.
    Laguerre { n: usize, alpha: f64, c: f64 },
    /// `P_n^{(α,β)}(s · cos 2x)` with `s = ±1`.
    Jacobi {
        n: usize,
        alpha: f64,
        beta: f64,
        sign: f64,
    },
}

impl WaveFactor {
    pub fn jet(&self, x: f64) -> Jet {
        match *self {
            WaveFactor::Power(p) => real_jet(
                cpow(1.0, x, p),
                cpow(p, x, p - 1.0),
                cpow(p * (p - 1.0), x, p - 2.0),
            ),
            WaveFactor::SinCos { sin: a, cos: b } => {
                let (s, c) = x.sin_cos();
                let sc = |ea: f64, eb: f64, k: f64| {
                    if k == 0.0 {
                        0.0
                    } else {
                        cpow(k, s, ea) * cpow(1.0, c, eb)
                    }
                };
                let v = sc(a, b, 1.0);
                let d1 = sc(a - 1.0, b + 1.0, a) - sc(a + 1.0, b - 1.0, b);
                let d2 = sc(a - 2.0, b + 2.0, a * (a - 1.0))
                    - sc(a, b, a * (b + 1.0) + b * (a + 1.0))
                    + sc(a + 2.0, b - 2.0, b * (b - 1.0));
                real_jet(v, d1, d2)
            }
            WaveFactor::Phase(k) => {
                let v = Complex64::from_polar(1.0, k * x);
                [v, Complex64::i() * k * v, -k * k * v]
            }
            WaveFactor::Gaussian(c) => {
                let v = (-c * x * x).exp();
                real_jet(v, -2.0 * c * x * v, (4.0 * c * c * x * x - 2.0 * c) * v)
            }
            WaveFactor::Laguerre { n, alpha, c } => {
                let l = laguerre_unchecked(n, alpha, c * x * x);
                let u1 = 2.0 * c * x;
                real_jet(l.value, l.d1 * u1, l.d2 * u1 * u1 + l.d1 * 2.0 * c)
            }
            WaveFactor::Jacobi {
                n,
                alpha,
                beta,
                sign,
            } => {
                let (s2, c2) = (2.0 * x).sin_cos();
                let p = jacobi_unchecked(n, alpha, beta, sign * c2);
                let u1 = -2.0 * sign * s2;
                let u2 = -4.0 * sign * c2;
                real_jet(p.value, p.d1 * u1, p.d2 * u1 * u1 + p.d1 * u2)
            }
        }
    }
}

/// A product wavefunction over a coordinate system.
#[derive(Clone, Debug, Serialize)]
pub struct WaveEval {
    pub system: CoordSystem,
    pub scale: Complex64,
    /// Factors per coordinate index; an empty list means the constant 1.
    pub factors: Vec<Vec<WaveFactor>>,
}

/// Value, gradient and Hessian at a point.
#[derive(Clone, Debug)]
pub struct Derivatives {
    pub value: Complex64,
    pub grad: Vec<Complex64>,
    pub hess: Vec<Vec<Complex64>>,
}

impl WaveEval {
    pub fn new(system: CoordSystem, scale: impl Into<Complex64>) -> Self {
        WaveEval {
            system,
            scale: scale.into(),
            factors: vec![Vec::new(); system.n_coords()],
        }
    }

    pub fn push(&mut self, k: usize, f: WaveFactor) -> &mut Self {
        self.factors[k].push(f);
        self
    }

    pub fn with(mut self, k: usize, f: WaveFactor) -> Self {
        self.factors[k].push(f);
        self
    }

    /// Jet of the product of all factors in coordinate `k` (scale excluded).
    pub fn coord_jet(&self, k: usize, x: f64) -> Jet {
        self.factors[k]
            .iter()
            .fold(JET_ONE, |acc, f| jet_mul(&acc, &f.jet(x)))
    }

    pub fn jets(&self, point: &[f64]) -> Vec<Jet> {
        (0..self.system.n_coords())
            .map(|k| self.coord_jet(k, point[k]))
            .collect()
    }

    pub fn value(&self, point: &[f64]) -> Complex64 {
        self.scale
            * (0..self.system.n_coords())
                .map(|k| {
                    self.factors[k]
                        .iter()
                        .fold(Complex64::new(1.0, 0.0), |a, f| a * f.jet(point[k])[0])
                })
                .product::<Complex64>()
    }

    /// Mixed partial derivative with the given per-coordinate orders.
    pub fn derivative(&self, point: &[f64], orders: &[u8]) -> Result<Complex64> {
        let total: usize = orders.iter().map(|&o| o as usize).sum();
        if total > 2 {
            return Err(Error::DerivativeOrder(total));
        }
        let jets = self.jets(point);
        Ok(self.scale
            * jets
                .iter()
                .zip(orders)
                .map(|(j, &o)| j[o as usize])
                .product::<Complex64>())
    }

    pub fn derivatives(&self, point: &[f64]) -> Derivatives {
        let jets = self.jets(point);
        let n = jets.len();
        let prod_except = |skip: &[usize], pick: &dyn Fn(usize) -> usize| -> Complex64 {
            let mut acc = self.scale;
            for (k, j) in jets.iter().enumerate() {
                acc *= if skip.contains(&k) { j[pick(k)] } else { j[0] };
            }
            acc
        };
        let value = prod_except(&[], &|_| 0);
        let grad = (0..n).map(|k| prod_except(&[k], &|_| 1)).collect();
        let hess = (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| {
                        if k == l {
                            prod_except(&[k], &|_| 2)
                        } else {
                            prod_except(&[k, l], &|_| 1)
                        }
                    })
                    .collect()
            })
            .collect();
        Derivatives { value, grad, hess }
    }

    /// Pointwise product with another separable function on the same system.
    pub fn times(&self, other: &WaveEval) -> Result<WaveEval> {
        self.system.check_same(&other.system)?;
        let mut out = self.clone();
        out.scale *= other.scale;
        for (k, fs) in other.factors.iter().enumerate() {
            out.factors[k].extend(fs.iter().cloned());
        }
        Ok(out)
    }

    pub fn scaled(mut self, c: impl Into<Complex64>) -> Self {
        self.scale *= c.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(f: &WaveFactor, x: f64) -> (f64, f64) {
        let h = 1e-4;
        let v = |t: f64| f.jet(t)[0].re;
        (
            (v(x + h) - v(x - h)) / (2.0 * h),
            (v(x + h) - 2.0 * v(x) + v(x - h)) / (h * h),
        )
    }

    #[test]
    fn factor_jets_match_finite_differences() {
        let factors = [
            WaveFactor::Power(2.5),
            WaveFactor::SinCos { sin: 1.5, cos: 0.5 },
            WaveFactor::Gaussian(0.5),
            WaveFactor::Laguerre {
                n: 3,
                alpha: 2.0,
                c: 1.0,
            },
            WaveFactor::Jacobi {
                n: 3,
                alpha: 1.0,
                beta: 0.5,
                sign: -1.0,
            },
        ];
        for f in &factors {
            let x = 0.63;
            let j = f.jet(x);
            let (d1, d2) = fd(f, x);
            assert!((j[1].re - d1).abs() < 1e-6 * (1.0 + d1.abs()), "{f:?}");
            assert!((j[2].re - d2).abs() < 1e-5 * (1.0 + d2.abs()), "{f:?}");
        }
    }

    #[test]
    fn power_at_origin() {
        let j = WaveFactor::Power(2.0).jet(0.0);
        assert_eq!((j[0].re, j[1].re, j[2].re), (0.0, 0.0, 2.0));
        let j = WaveFactor::Power(0.0).jet(0.0);
        assert_eq!((j[0].re, j[1].re, j[2].re), (1.0, 0.0, 0.0));
    }

    #[test]
    fn order_three_rejected() {
        let w = WaveEval::new(CoordSystem::osc(2), 1.0);
        assert!(w.derivative(&[1.0, 0.5, 0.1, 0.2], &[2, 1, 0, 0]).is_err());
    }
}
