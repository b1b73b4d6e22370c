//! Reduction of the 2D-dimensional oscillator to the D-dimensional
//! Smorodinsky-Winternitz system, and the D = 2 label systems.
//!
//! All conversions between `(n, p_1, p_2)`, `(j, m, m')` and `(n, a, b)`
//! labels, together with their relative phases, live in this module.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{CoordKind, CoordSystem};
use crate::error::{Error, Result};
use crate::half::Half;
use crate::oscillator::{ln_angular_norm, osc_psibar, OscLabel};
use crate::specfun::ln_factorial;
use crate::wave::{WaveEval, WaveFactor};

/// Frequency and barrier strengths of an SW Hamiltonian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwParams {
    pub omega: f64,
    pub d: usize,
    pub k: Vec<f64>,
}

impl SwParams {
    pub fn new(omega: f64, k: Vec<f64>) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "omega must be positive, got {omega}"
            )));
        }
        if k.len() < 2 {
            return Err(Error::Label("need at least two barrier strengths".into()));
        }
        if let Some(bad) = k.iter().find(|&&x| !(x > 0.0)) {
            return Err(Error::Unphysical(format!(
                "barrier strength {bad} is not positive"
            )));
        }
        Ok(SwParams {
            omega,
            d: k.len(),
            k,
        })
    }

    /// Parameters matching an oscillator label: `k_ν = sqrt(p_{D-ν+1}² - 1/4)`.
    pub fn from_label(label: &OscLabel, omega: f64) -> Result<Self> {
        let d = label.d;
        let k = (1..=d)
            .map(|nu| k_from_p(label.p[d - nu]))
            .collect::<Result<Vec<_>>>()?;
        SwParams::new(omega, k)
    }
}

/// `k = sqrt(p² - 1/4)`; `p = 0` would give an imaginary barrier strength.
pub fn k_from_p(p: i32) -> Result<f64> {
    if p == 0 {
        return Err(Error::Unphysical(
            "p = 0 gives an imaginary barrier strength".into(),
        ));
    }
    let p = f64::from(p);
    Ok((p * p - 0.25).sqrt())
}

/// `𝒪 = (ωr)^D Π (sin φ_ν)^{D-ν} cos φ_ν`.
pub fn reduction_factor(r: f64, phi: &[f64], omega: f64, d: usize) -> f64 {
    let mut o = (omega * r).powi(d as i32);
    for (i, &f) in phi.iter().enumerate().take(d - 1) {
        let nu = i + 1;
        o *= f.sin().powi((d - nu) as i32) * f.cos();
    }
    o
}

/// `E = 2ω(2n_r + 2j + D)`.
pub fn sw_energy(n_r: u32, j: Half, omega: f64, d: usize) -> f64 {
    2.0 * omega * (2.0 * f64::from(n_r) + f64::from(j.twice()) + d as f64)
}

/// Map an oscillator-picture wavefunction to `𝒪^{1/2} Ψ(R = √ω r, θ = φ, λ)`.
pub fn osc_to_sw_wave(psi: &WaveEval, omega: f64) -> Result<WaveEval> {
    if !psi.system.is_osc() {
        return Err(Error::Usage(
            "expected an oscillator-picture wavefunction".into(),
        ));
    }
    let d = psi.system.d();
    let system = CoordSystem::sw(d, omega);
    let mut out = WaveEval::new(system, psi.scale);
    for (k, fs) in psi.factors.iter().enumerate() {
        for f in fs {
            let g = match (*f).clone() {
                WaveFactor::Power(p) => {
                    out.scale *= omega.powf(p / 2.0);
                    WaveFactor::Power(p)
                }
                WaveFactor::Gaussian(c) => WaveFactor::Gaussian(c * omega),
                WaveFactor::Laguerre { n, alpha, c } => WaveFactor::Laguerre {
                    n,
                    alpha,
                    c: c * omega,
                },
                other => other,
            };
            out.factors[k].push(g);
        }
    }
    // 𝒪^{1/2}
    out.scale *= omega.powf(d as f64 / 2.0);
    for k in 0..d {
        match system.kind(k) {
            CoordKind::Radial => out.factors[k].push(WaveFactor::Power(d as f64 / 2.0)),
            CoordKind::Angle(nu) => out.factors[k].push(WaveFactor::SinCos {
                sin: (d - nu) as f64 / 2.0,
                cos: 0.5,
            }),
            CoordKind::Phase(_) => {}
        }
    }
    Ok(out)
}

fn require_physical(label: &OscLabel) -> Result<()> {
    if label.p.contains(&0) {
        return Err(Error::Unphysical(format!(
            "{label} has a vanishing azimuthal number"
        )));
    }
    Ok(())
}

/// `Ψ_{n_r n p}(r, φ, λ)` normalized under `dv`. Negative `p` give replicas of
/// the `|p|` states and are accepted.
pub fn sw_wavefunction(label: &OscLabel, omega: f64) -> Result<WaveEval> {
    require_physical(label)?;
    if !(omega > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "omega must be positive, got {omega}"
        )));
    }
    let d = label.d;
    let df = d as f64;
    let j = label.j().to_f64();
    let mut ln_norm = (j + df / 2.0) * omega.ln()
        + 0.5
            * (ln_factorial(f64::from(label.n_r))
                - df * PI.ln()
                - ln_factorial(f64::from(label.n_r) + 2.0 * j + df - 1.0));
    let mut psi = WaveEval::new(CoordSystem::sw(d, omega), 1.0);
    // (z/ω)^{j + D/4} = r^{2j + D/2}
    psi.push(0, WaveFactor::Power(2.0 * j + df / 2.0))
        .push(
            0,
            WaveFactor::Laguerre {
                n: label.n_r as usize,
                alpha: 2.0 * j + df - 1.0,
                c: omega,
            },
        )
        .push(0, WaveFactor::Gaussian(omega / 2.0));
    for nu in 1..d {
        let a = label.a(nu).to_f64();
        let b = label.b(nu).to_f64();
        let shift = (d - nu) as f64;
        let n = label.n[nu - 1];
        ln_norm += ln_angular_norm(n, a, b, shift);
        psi.push(
            nu,
            WaveFactor::SinCos {
                sin: b + 0.5 * (shift - 1.0),
                cos: a,
            },
        )
        .push(
            nu,
            WaveFactor::Jacobi {
                n: n as usize,
                alpha: a - 0.5,
                beta: b + shift - 1.5,
                sign: -1.0,
            },
        );
    }
    for nu in 1..=d {
        psi.push(d + nu - 1, WaveFactor::Phase(f64::from(label.p[d - nu])));
    }
    psi.scale = Complex64::new(ln_norm.exp(), 0.0);
    Ok(psi)
}

/// `Ψ^{(k)}_{n_r n}(r, φ)`: the λ-independent part, eigenfunction of the
/// D-dimensional SW Hamiltonian with `k` fixed by `p`.
pub fn sw_reduced_wavefunction(label: &OscLabel, omega: f64) -> Result<WaveEval> {
    let mut psi = sw_wavefunction(label, omega)?;
    let d = label.d;
    for k in d..2 * d {
        psi.factors[k].clear();
    }
    psi.scale *= (2.0 * PI).powf(d as f64 / 2.0);
    Ok(psi)
}

/// D = 2 oscillator labels `(n_r, j, m, m')` of the rotation-function basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JmLabel {
    pub n_r: u32,
    pub j: Half,
    pub m: Half,
    pub mp: Half,
}

impl JmLabel {
    pub fn new(n_r: u32, j: Half, m: Half, mp: Half) -> Result<Self> {
        let l = JmLabel { n_r, j, m, mp };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<()> {
        crate::specfun::check_projection(self.j, self.m)?;
        crate::specfun::check_projection(self.j, self.mp)
    }

    pub fn big_n(&self) -> u32 {
        2 * self.n_r + self.j.twice() as u32
    }

    /// All labels with `n_r ≤ max_nr` and `j ≤ max_j`, ordered by `(n_r, j, m, m')` descending projections.
    pub fn grid(max_nr: u32, max_j: Half) -> Vec<JmLabel> {
        let mut out = Vec::new();
        for n_r in 0..=max_nr {
            for tj in 0..=max_j.twice() {
                let j = Half(tj);
                for m in crate::half::projections(j) {
                    for mp in crate::half::projections(j) {
                        out.push(JmLabel { n_r, j, m, mp });
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Display for JmLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "nr={};j={};m={};mp={}",
            self.n_r, self.j, self.m, self.mp
        )
    }
}

/// `(n, p_1, p_2) → (j, m, m')` with the phase `s` such that `Ψ_{n p} = s · Ψ̄_{j m m'}`.
pub fn jm_from_np(label: &OscLabel) -> Result<(JmLabel, i32)> {
    if label.d != 2 {
        return Err(Error::UnsupportedDimension(
            label.d,
            "(j, m, m') labels exist for D = 2 only".into(),
        ));
    }
    let (p1, p2) = (label.p[0], label.p[1]);
    let jm = JmLabel {
        n_r: label.n_r,
        j: label.j(),
        m: Half(p1 - p2),
        mp: Half(-(p1 + p2)),
    };
    Ok((jm, np_phase(p1, p2)))
}

/// Inverse of [`jm_from_np`].
pub fn np_from_jm(jm: &JmLabel) -> Result<(OscLabel, i32)> {
    jm.validate()?;
    let p1 = (jm.m - jm.mp).as_int().unwrap();
    let p2 = (-jm.m - jm.mp).as_int().unwrap();
    let n = (jm.j.twice() - p1.abs() - p2.abs()) / 2;
    let label = OscLabel::new(2, jm.n_r, vec![n as u32], vec![p1, p2])?;
    Ok((label, np_phase(p1, p2)))
}

/// `(-1)^{(|p_1| + p_1)/2 + |p_2|}`.
fn np_phase(p1: i32, p2: i32) -> i32 {
    let e = (p1.abs() + p1) / 2 + p2.abs();
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// D = 2 SW labels `(n_r, n, a, b)` with barrier strengths `k_1² = b(b-1)`, `k_2² = a(a-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwLabel {
    pub n_r: u32,
    pub n: u32,
    pub a: f64,
    pub b: f64,
}

impl SwLabel {
    pub fn new(n_r: u32, n: u32, a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.5) || !(b >= 0.5) {
            return Err(Error::Label(format!("need a, b >= 1/2, got a={a}, b={b}")));
        }
        Ok(SwLabel { n_r, n, a, b })
    }

    /// Half-integer `(a, b)` as doubled integers, if they are half-integers.
    pub fn ab_half(&self) -> Option<(Half, Half)> {
        let a = Half::from_f64(self.a)?;
        let b = Half::from_f64(self.b)?;
        (!a.is_integer() && !b.is_integer()).then_some((a, b))
    }

    /// `j = n + (a+b-1)/2`, `m = (a-b)/2`, `m' = -(a+b-1)/2`.
    pub fn to_jm(&self) -> Result<JmLabel> {
        let (a, b) = self.ab_half().ok_or_else(|| {
            Error::Label(format!(
                "(a, b) = ({}, {}) are not half-integers",
                self.a, self.b
            ))
        })?;
        let n = Half::int(self.n as i32);
        // a + b is an integer, so (a+b-1)/2 in doubled units is a+b-1.
        let abm1 = (a + b).twice() / 2 - 1;
        Ok(JmLabel {
            n_r: self.n_r,
            j: n + Half(abm1),
            m: Half((a - b).twice() / 2),
            mp: Half(-abm1),
        })
    }

    /// `a = m - m' + 1/2`, `b = -m - m' + 1/2`, `n = j + m'`. The result may
    /// have `a` or `b` below 1/2 (outside the physical range).
    pub fn from_jm(jm: &JmLabel) -> Result<SwLabel> {
        jm.validate()?;
        let a = (jm.m - jm.mp).to_f64() + 0.5;
        let b = (-jm.m - jm.mp).to_f64() + 0.5;
        let n = (jm.j + jm.mp).as_int().unwrap();
        if n < 0 {
            return Err(Error::Label(format!("{jm} maps to negative n")));
        }
        Ok(SwLabel {
            n_r: jm.n_r,
            n: n as u32,
            a,
            b,
        })
    }

    pub fn is_physical(&self) -> bool {
        self.a >= 0.5 && self.b >= 0.5
    }

    /// Grid with `n_r, n ≤ max` and `a, b ∈ {1/2, 3/2, …, max_ab}`.
    pub fn grid(max_nr: u32, max_n: u32, max_ab: Half) -> Vec<SwLabel> {
        let abs: Vec<f64> = (0..)
            .map(|k| 0.5 + f64::from(k))
            .take_while(|&x| x <= max_ab.to_f64())
            .collect();
        let mut out = Vec::new();
        for n_r in 0..=max_nr {
            for n in 0..=max_n {
                for &a in &abs {
                    for &b in &abs {
                        out.push(SwLabel { n_r, n, a, b });
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Display for SwLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |x: f64| match Half::from_f64(x) {
            Some(h) => h.to_string(),
            None => x.to_string(),
        };
        write!(
            f,
            "nr={};n={};a={};b={}",
            self.n_r,
            self.n,
            show(self.a),
            show(self.b)
        )
    }
}

/// `Ψ̄_{n_r n a b}(r, φ, λ)` from its closed form. Non-half-integer `(a, b)`
/// use gamma-function normalization and a `+1` sign.
pub fn sw_psibar(label: &SwLabel, omega: f64) -> Result<WaveEval> {
    let SwLabel { n_r, n, a, b } = *label;
    if !label.is_physical() {
        return Err(Error::Label(format!("{label} lies outside a, b >= 1/2")));
    }
    let (nf, nrf) = (f64::from(n), f64::from(n_r));
    let sign = match Half::from_f64(a + b - 1.0).and_then(|h| h.as_int()) {
        Some(e) if e % 2 != 0 => -1.0,
        _ => 1.0,
    };
    let ln_norm = 2f64.ln()
        + 0.5
            * ((2.0 * nf + a + b + 1.0) * omega.ln()
                + ln_factorial(nrf)
                + ln_factorial(nf)
                + (2.0 * nf + a + b).ln()
                + ln_factorial(nf + a + b - 1.0)
                - ln_factorial(nrf + 2.0 * nf + a + b)
                - ln_factorial(nf + a - 0.5)
                - ln_factorial(nf + b - 0.5))
        - (2.0 * PI).ln();
    let psi = WaveEval::new(CoordSystem::sw(2, omega), sign * ln_norm.exp())
        // (z/ω)^{n + (a+b)/2} = r^{2n + a + b}
        .with(0, WaveFactor::Power(2.0 * nf + a + b))
        .with(
            0,
            WaveFactor::Laguerre {
                n: n_r as usize,
                alpha: 2.0 * nf + a + b,
                c: omega,
            },
        )
        .with(0, WaveFactor::Gaussian(omega / 2.0))
        .with(1, WaveFactor::SinCos { sin: b, cos: a })
        .with(
            1,
            WaveFactor::Jacobi {
                n: n as usize,
                alpha: a - 0.5,
                beta: b - 0.5,
                sign: -1.0,
            },
        )
        .with(2, WaveFactor::Phase(b - 0.5))
        .with(3, WaveFactor::Phase(a - 0.5));
    Ok(psi)
}

/// SW-picture function of any `(j, m, m')` label, as `𝒪^{1/2} Ψ̄^osc`.
pub fn sw_psibar_jm(jm: &JmLabel, omega: f64) -> Result<WaveEval> {
    osc_to_sw_wave(&osc_psibar(jm)?, omega)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_values() {
        assert!((k_from_p(1).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(k_from_p(-1).unwrap(), k_from_p(1).unwrap());
        assert!(k_from_p(0).is_err());
    }

    #[test]
    fn reduction_factor_examples() {
        let v = reduction_factor(1.0, &[PI / 4.0], 1.0, 2);
        assert!((v - 0.5).abs() < 1e-15);
        assert_eq!(reduction_factor(1.0, &[0.0], 1.0, 2), 0.0);
        let ratio = reduction_factor(0.7, &[0.3], 2.0, 2) / reduction_factor(0.7, &[0.3], 1.0, 2);
        assert!((ratio - 4.0).abs() < 1e-14);
    }

    #[test]
    fn energies() {
        assert_eq!(sw_energy(0, Half(2), 1.0, 2), 8.0);
        assert_eq!(sw_energy(1, Half(0), 1.0, 2), 8.0);
        assert_eq!(
            sw_energy(1, Half(3), 2.0, 2),
            2.0 * sw_energy(1, Half(3), 1.0, 2)
        );
    }

    #[test]
    fn label_maps_round_trip() {
        for jm in JmLabel::grid(1, Half(4)) {
            let (np, s) = np_from_jm(&jm).unwrap();
            let (back, s2) = jm_from_np(&np).unwrap();
            assert_eq!(back, jm);
            assert_eq!(s, s2);
            let sw = SwLabel::from_jm(&jm).unwrap();
            if sw.is_physical() {
                assert_eq!(sw.to_jm().unwrap(), jm);
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(SwParams::new(0.0, vec![1.0, 1.0]).is_err());
        assert!(SwParams::new(1.0, vec![1.0, -1.0]).is_err());
        let l = OscLabel::new(2, 0, vec![0], vec![0, 1]).unwrap();
        assert!(SwParams::from_label(&l, 1.0).is_err());
        assert!(sw_wavefunction(&l, 1.0).is_err());
    }
}
