//! The 2D-dimensional isotropic oscillator in `(R, θ, λ)` coordinates:
//! labels, spectrum, separation constants and wavefunctions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::CoordSystem;
use crate::error::{Error, Result};
use crate::half::Half;
use crate::specfun::{binomial, ln_factorial, rotation_jacobi_form};
use crate::swreduce::JmLabel;
use crate::wave::{WaveEval, WaveFactor};

/// Quantum numbers `(n_r, n_1..n_{D-1}, p_1..p_D)` of an oscillator state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OscLabel {
    pub d: usize,
    pub n_r: u32,
    pub n: Vec<u32>,
    pub p: Vec<i32>,
}

impl OscLabel {
    pub fn new(d: usize, n_r: u32, n: Vec<u32>, p: Vec<i32>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Label(format!("D must be at least 2, got {d}")));
        }
        if n.len() != d - 1 || p.len() != d {
            return Err(Error::Label(format!(
                "D={d} needs {} polar and {d} azimuthal quantum numbers, got {} and {}",
                d - 1,
                n.len(),
                p.len()
            )));
        }
        Ok(OscLabel { d, n_r, n, p })
    }

    /// `j = Σ n_ν + ½ Σ |p_ν|`.
    pub fn j(&self) -> Half {
        let twice: i32 = self.n.iter().map(|&v| 2 * v as i32).sum::<i32>()
            + self.p.iter().map(|v| v.abs()).sum::<i32>();
        Half(twice)
    }

    /// Principal number `N = 2n_r + 2j`.
    pub fn big_n(&self) -> u32 {
        2 * self.n_r + self.j().twice() as u32
    }

    /// `a_ν = |p_ν| + ½` for `ν = 1..D-1`.
    pub fn a(&self, nu: usize) -> Half {
        Half(2 * self.p[nu - 1].abs() + 1)
    }

    /// `b_ν = 2(n_{ν+1}+…+n_{D-1}) + |p_{ν+1}|+…+|p_D| + ½`.
    pub fn b(&self, nu: usize) -> Half {
        let twice: i32 = self.n[nu..].iter().map(|&v| 4 * v as i32).sum::<i32>()
            + self.p[nu..].iter().map(|v| 2 * v.abs()).sum::<i32>()
            + 1;
        Half(twice)
    }

    pub fn energy(&self) -> f64 {
        osc_energy(self)
    }
}

impl std::fmt::Display for OscLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        write!(
            f,
            "nr={};n=({});p=({})",
            self.n_r,
            join(self.n.iter().map(|x| x.to_string()).collect()),
            join(self.p.iter().map(|x| x.to_string()).collect())
        )
    }
}

/// `Δ_1..Δ_D` and `C_1..C_D` (index 0 holds ν = 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationData {
    pub delta: Vec<i64>,
    pub c: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedLabels {
    pub j: Half,
    pub big_n: u32,
    pub a: Vec<Half>,
    pub b: Vec<Half>,
    pub separation: SeparationData,
}

/// Separation constants from the recursion `Δ_ν = 2n_ν + |p_ν| + Δ_{ν+1} + 1`, `Δ_D = |p_D|`.
pub fn separation_by_recursion(label: &OscLabel) -> SeparationData {
    let d = label.d;
    let mut delta = vec![0i64; d];
    delta[d - 1] = i64::from(label.p[d - 1].abs());
    for nu in (1..d).rev() {
        delta[nu - 1] =
            2 * i64::from(label.n[nu - 1]) + i64::from(label.p[nu - 1].abs()) + delta[nu] + 1;
    }
    let c = (1..=d)
        .map(|nu| {
            let k = (d - nu) as i64;
            delta[nu - 1] * delta[nu - 1] - k * k
        })
        .collect();
    SeparationData { delta, c }
}

/// Separation constants from the summed closed form `C_ν = S_ν (S_ν + 2D - 2ν)`.
pub fn separation_closed_form(label: &OscLabel) -> SeparationData {
    let d = label.d;
    let s = |nu: usize| -> i64 {
        label.n[nu - 1..]
            .iter()
            .map(|&v| 2 * i64::from(v))
            .sum::<i64>()
            + label.p[nu - 1..]
                .iter()
                .map(|v| i64::from(v.abs()))
                .sum::<i64>()
    };
    let delta = (1..=d).map(|nu| s(nu) + (d - nu) as i64).collect();
    let c = (1..=d)
        .map(|nu| {
            let sv = s(nu);
            sv * (sv + 2 * (d - nu) as i64)
        })
        .collect();
    SeparationData { delta, c }
}

/// All labels derived from `(n_r, n, p)`; separation constants are computed
/// both ways and required to agree.
pub fn derived_labels(label: &OscLabel) -> DerivedLabels {
    let rec = separation_by_recursion(label);
    let closed = separation_closed_form(label);
    assert_eq!(rec, closed, "separation constants disagree for {label}");
    let j = label.j();
    // C_1 = 4 j (j + D - 1) in doubled units: (2j)(2j + 2D - 2).
    let tj = i64::from(j.twice());
    assert_eq!(rec.c[0], tj * (tj + 2 * label.d as i64 - 2));
    let d = label.d;
    let a: Vec<Half> = (1..d).map(|nu| label.a(nu)).collect();
    let b: Vec<Half> = (1..d).map(|nu| label.b(nu)).collect();
    for nu in 1..d {
        // b_ν = Δ_{ν+1} - (D - ν - 3/2)
        let from_delta = Half(2 * rec.delta[nu] as i32 - (2 * (d - nu) as i32 - 3));
        assert_eq!(b[nu - 1], from_delta);
    }
    DerivedLabels {
        j,
        big_n: label.big_n(),
        a,
        b,
        separation: rec,
    }
}

/// `E = 2(2n_r + 2j + D)`.
pub fn osc_energy(label: &OscLabel) -> f64 {
    2.0 * (f64::from(label.big_n()) + label.d as f64)
}

/// Level degeneracy `C(N + 2D - 1, 2D - 1)`.
pub fn degeneracy(big_n: u32, d: usize) -> u64 {
    binomial(u64::from(big_n) + 2 * d as u64 - 1, 2 * d as u64 - 1) as u64
}

/// Vectors of `len` nonnegative integers with weighted sum `Σ w·v ≤ budget`, lexicographic.
fn bounded_vectors(len: usize, weight: u32, budget: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=budget / weight {
        for rest in bounded_vectors(len - 1, weight, budget - first * weight) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// Integer vectors of `len` entries with `Σ|p| = total`, lexicographic by value.
fn signed_vectors(len: usize, total: u32) -> Vec<Vec<i32>> {
    if len == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let t = total as i32;
    let mut out = Vec::new();
    for first in -t..=t {
        for rest in signed_vectors(len - 1, total - first.unsigned_abs()) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// Every label of level `N`, ordered lexicographically in `(n_r, n, p)`.
pub fn enumerate_level(big_n: u32, d: usize) -> Vec<OscLabel> {
    let mut out = Vec::new();
    for n_r in 0..=big_n / 2 {
        let rest = big_n - 2 * n_r;
        for n in bounded_vectors(d - 1, 2, rest) {
            let used: u32 = n.iter().map(|v| 2 * v).sum();
            for p in signed_vectors(d, rest - used) {
                out.push(OscLabel {
                    d,
                    n_r,
                    n: n.clone(),
                    p,
                });
            }
        }
    }
    out
}

/// Log of the angular normalization for one polar factor with parameters
/// `(a, b)` and Jacobi shift `D - ν`.
pub(crate) fn ln_angular_norm(n: u32, a: f64, b: f64, shift: f64) -> f64 {
    let n = f64::from(n);
    0.5 * (ln_factorial(n)
        + (2.0 * n + a + b + shift - 1.0).ln()
        + ln_factorial(n + a + b + shift - 2.0)
        - ln_factorial(n + a - 0.5)
        - ln_factorial(n + b + shift - 1.5))
}

/// `Ψ^osc_{n_r n p}(R, θ, λ)`, normalized under `dV`.
pub fn osc_wavefunction(label: &OscLabel) -> WaveEval {
    let d = label.d;
    let j = label.j().to_f64();
    let df = d as f64;
    let mut ln_norm = 0.5
        * (ln_factorial(f64::from(label.n_r))
            - df * PI.ln()
            - ln_factorial(f64::from(label.n_r) + 2.0 * j + df - 1.0));
    let mut psi = WaveEval::new(CoordSystem::osc(d), 1.0);
    psi.push(0, WaveFactor::Power(2.0 * j))
        .push(
            0,
            WaveFactor::Laguerre {
                n: label.n_r as usize,
                alpha: 2.0 * j + df - 1.0,
                c: 1.0,
            },
        )
        .push(0, WaveFactor::Gaussian(0.5));
    for nu in 1..d {
        let a = label.a(nu).to_f64();
        let b = label.b(nu).to_f64();
        let shift = (d - nu) as f64;
        let n = label.n[nu - 1];
        ln_norm += ln_angular_norm(n, a, b, shift);
        psi.push(
            nu,
            WaveFactor::SinCos {
                sin: b - 0.5,
                cos: a - 0.5,
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
    psi
}

/// `Ψ̄^osc_{n_r j m m'}` for D = 2, built on the rotation function `d^j_{m,-m'}(2θ)`.
pub fn osc_psibar(label: &JmLabel) -> Result<WaveEval> {
    label.validate()?;
    let j = label.j.to_f64();
    let f = rotation_jacobi_form(label.j, label.m, -label.mp)?;
    let ln_norm = 0.5
        * ((2.0 * j + 1.0).ln() + ln_factorial(f64::from(label.n_r))
            - 2.0 * PI.ln()
            - ln_factorial(f64::from(label.n_r) + 2.0 * j + 1.0));
    let phase = f64::from((label.j - label.mp).phase());
    let m = label.m.to_f64();
    let mp = label.mp.to_f64();
    let psi = WaveEval::new(CoordSystem::osc(2), phase * f.norm * ln_norm.exp())
        .with(0, WaveFactor::Power(2.0 * j))
        .with(
            0,
            WaveFactor::Laguerre {
                n: label.n_r as usize,
                alpha: 2.0 * j + 1.0,
                c: 1.0,
            },
        )
        .with(0, WaveFactor::Gaussian(0.5))
        .with(
            1,
            WaveFactor::SinCos {
                sin: f.mu as f64,
                cos: f.nu as f64,
            },
        )
        .with(
            1,
            WaveFactor::Jacobi {
                n: f.s,
                alpha: f.mu as f64,
                beta: f.nu as f64,
                sign: 1.0,
            },
        )
        .with(2, WaveFactor::Phase(-(m + mp)))
        .with(3, WaveFactor::Phase(m - mp));
    Ok(psi)
}

pub use crate::coords::cartesian_from_hyper;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_examples() {
        let l = OscLabel::new(2, 0, vec![1], vec![1, 2]).unwrap();
        let dl = derived_labels(&l);
        assert_eq!(dl.j, Half(5));
        assert_eq!(dl.big_n, 5);
        let l = OscLabel::new(2, 0, vec![0], vec![0, 0]).unwrap();
        assert_eq!(derived_labels(&l).separation.c[0], 0);
        let l = OscLabel::new(3, 0, vec![1, 0], vec![1, 1, 2]).unwrap();
        let dl = derived_labels(&l);
        assert_eq!(dl.j, Half(6));
        assert_eq!(dl.separation.c[0], 60);
    }

    #[test]
    fn energies() {
        let l = OscLabel::new(2, 0, vec![0], vec![0, 0]).unwrap();
        assert_eq!(osc_energy(&l), 4.0);
        let l = OscLabel::new(2, 1, vec![0], vec![1, 0]).unwrap();
        assert_eq!(osc_energy(&l), 10.0);
        let l = OscLabel::new(3, 0, vec![0, 0], vec![0, 0, 0]).unwrap();
        assert_eq!(osc_energy(&l), 6.0);
    }

    #[test]
    fn small_levels() {
        assert_eq!(enumerate_level(0, 2).len(), 1);
        assert_eq!(enumerate_level(2, 2).len(), 10);
        assert_eq!(enumerate_level(1, 3).len(), 6);
        let lv = enumerate_level(3, 2);
        let mut sorted = lv.clone();
        sorted.sort_by(|x, y| (x.n_r, &x.n, &x.p).cmp(&(y.n_r, &y.n, &y.p)));
        assert_eq!(lv, sorted);
    }

    #[test]
    fn label_shape_checked() {
        assert!(OscLabel::new(2, 0, vec![0, 0], vec![0, 0]).is_err());
        assert!(OscLabel::new(1, 0, vec![], vec![0]).is_err());
    }
}
