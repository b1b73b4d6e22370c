//! Jacobi and Laguerre polynomials with analytic derivatives, and Wigner
//! rotation functions d^j_{m,m'}.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::half::Half;

/// A polynomial value together with its first two derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyEval {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl PolyEval {
    pub const ONE: PolyEval = PolyEval {
        value: 1.0,
        d1: 0.0,
        d2: 0.0,
    };
}

/// `ln(x!)` for real `x > -1`.
pub fn ln_factorial(x: f64) -> f64 {
    if x == 0.0 || x == 1.0 {
        0.0
    } else {
        ln_gamma(x + 1.0)
    }
}

/// Binomial coefficient for nonnegative integer arguments, exact up to 2^53.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// `P_n^{(α,β)}(x)` by the three-term recurrence. No parameter checks.
pub(crate) fn jacobi_value(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let mut p_prev = 1.0;
    let mut p = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta);
        let a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        let next = (a2 * p - a3 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    p
}

/// `L_n^{(α)}(z)` by the three-term recurrence. No parameter checks.
pub(crate) fn laguerre_value(n: usize, alpha: f64, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut l_prev = 1.0;
    let mut l = 1.0 + alpha - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - z) * l - (kf + alpha) * l_prev) / (kf + 1.0);
        l_prev = l;
        l = next;
    }
    l
}

/// Jacobi polynomial `P_n^{(α,β)}(x)` with first and second derivatives in `x`.
pub fn jacobi_eval(n: usize, alpha: f64, beta: f64, x: f64) -> Result<PolyEval> {
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(Error::ParameterDomain(format!(
            "Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}"
        )));
    }
    Ok(jacobi_unchecked(n, alpha, beta, x))
}

pub(crate) fn jacobi_unchecked(n: usize, alpha: f64, beta: f64, x: f64) -> PolyEval {
    let value = jacobi_value(n, alpha, beta, x);
    let nf = n as f64;
    let d1 = if n >= 1 {
        0.5 * (nf + alpha + beta + 1.0) * jacobi_value(n - 1, alpha + 1.0, beta + 1.0, x)
    } else {
        0.0
    };
    let d2 = if n >= 2 {
        0.25 * (nf + alpha + beta + 1.0)
            * (nf + alpha + beta + 2.0)
            * jacobi_value(n - 2, alpha + 2.0, beta + 2.0, x)
    } else {
        0.0
    };
    PolyEval { value, d1, d2 }
}

/// Generalized Laguerre polynomial `L_n^{(α)}(z)` with first and second derivatives in `z`.
pub fn laguerre_eval(n: usize, alpha: f64, z: f64) -> Result<PolyEval> {
    if !(alpha > -1.0) {
        return Err(Error::ParameterDomain(format!(
            "Laguerre parameter must exceed -1, got alpha={alpha}"
        )));
    }
    Ok(laguerre_unchecked(n, alpha, z))
}

pub(crate) fn laguerre_unchecked(n: usize, alpha: f64, z: f64) -> PolyEval {
    let value = laguerre_value(n, alpha, z);
    let d1 = if n >= 1 {
        -laguerre_value(n - 1, alpha + 1.0, z)
    } else {
        0.0
    };
    let d2 = if n >= 2 {
        laguerre_value(n - 2, alpha + 2.0, z)
    } else {
        0.0
    };
    PolyEval { value, d1, d2 }
}

pub(crate) fn check_projection(j: Half, m: Half) -> Result<()> {
    if j.twice() < 0 || m.abs().twice() > j.twice() || (j.twice() - m.twice()) % 2 != 0 {
        return Err(Error::Label(format!(
            "projection {m} incompatible with j={j}"
        )));
    }
    Ok(())
}

/// Parameters of the Jacobi-polynomial form of `d^j_{m1,m2}`:
/// `d = sign · norm · sin^μ(β/2) cos^ν(β/2) P_s^{(μ,ν)}(cos β)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationJacobiForm {
    pub s: usize,
    pub mu: usize,
    pub nu: usize,
    pub norm: f64,
}

/// Decompose `d^j_{m1,m2}(β)` into Jacobi form; the sign is folded into `norm`.
pub fn rotation_jacobi_form(j: Half, m1: Half, m2: Half) -> Result<RotationJacobiForm> {
    check_projection(j, m1)?;
    check_projection(j, m2)?;
    // Differences of projections are integers because parities match.
    let mu = (m1 - m2).abs().as_int().unwrap() as usize;
    let nu = (m1 + m2).abs().as_int().unwrap() as usize;
    let s = ((j.twice() - (mu + nu) as i32) / 2) as usize;
    let (sf, muf, nuf) = (s as f64, mu as f64, nu as f64);
    let ln_norm = 0.5
        * (ln_factorial(sf) + ln_factorial(sf + muf + nuf)
            - ln_factorial(sf + muf)
            - ln_factorial(sf + nuf));
    // d^j_{m1,m2} = (-1)^{m1-m2} d^j_{m2,m1}; the Jacobi form is exact for m2 >= m1.
    let sign = if m2.twice() >= m1.twice() {
        1.0
    } else {
        f64::from((m1 - m2).phase())
    };
    Ok(RotationJacobiForm {
        s,
        mu,
        nu,
        norm: sign * ln_norm.exp(),
    })
}

/// Wigner rotation function `d^j_{m1,m2}(β) = ⟨j m1| e^{-iβJ_y} |j m2⟩`.
pub fn rotation_d(j: Half, m1: Half, m2: Half, beta: f64) -> Result<f64> {
    let f = rotation_jacobi_form(j, m1, m2)?;
    let (s, c) = (0.5 * beta).sin_cos();
    Ok(f.norm
        * s.powi(f.mu as i32)
        * c.powi(f.nu as i32)
        * jacobi_value(f.s, f.mu as f64, f.nu as f64, beta.cos()))
}
