//! Cartesian multiplication and derivative operators `X_μ`, `∂_{X_μ}` in
//! oscillator hyperspherical coordinates, and the map from boson
//! polynomials to differential operators.

use num_complex::Complex64;

use super::operator::{cos_phase, sin_phase, DiffOperator, INV_SQRT2};
use crate::bosonalg::BosonPoly;
use crate::coords::CoordSystem;
use crate::error::{Error, Result};

/// Exponents `[sin, cos]` of `amp_ν` on the polar angles `θ_1..θ_{D-1}`.
pub(crate) fn amp_exps(d: usize, nu: usize) -> Vec<[i32; 2]> {
    let mut e = vec![[0, 0]; d - 1];
    for slot in e.iter_mut().take(d - nu) {
        slot[0] = 1;
    }
    if nu > 1 {
        e[d - nu][1] = 1;
    }
    e
}

/// Coefficient monomial for `coef · R^rexp · Π_θ (sin, cos exponents)`.
fn angular_mono(
    sys: CoordSystem,
    c: impl Into<Complex64>,
    rexp: i32,
    angles: &[[i32; 2]],
) -> DiffOperator {
    let mut spec: Vec<(usize, [i32; 2])> = vec![(0, [rexp, 0])];
    spec.extend(angles.iter().enumerate().map(|(i, &e)| (i + 1, e)));
    DiffOperator::mono(sys, c, &spec)
}

fn check_osc(sys: CoordSystem) -> Result<usize> {
    match sys {
        CoordSystem::Osc { d } if d >= 2 => Ok(d),
        CoordSystem::Osc { d } => Err(Error::UnsupportedDimension(d, "need D >= 2".into())),
        CoordSystem::Sw { .. } => Err(Error::Usage(
            "Cartesian operators live in the oscillator picture".into(),
        )),
    }
}

fn check_mode(d: usize, mu: usize) -> Result<()> {
    if mu == 0 || mu > 2 * d {
        return Err(Error::Label(format!(
            "Cartesian index {mu} outside 1..={}",
            2 * d
        )));
    }
    Ok(())
}

/// Multiplication by `X_μ` (1-based).
pub fn position(sys: CoordSystem, mu: usize) -> Result<DiffOperator> {
    let d = check_osc(sys)?;
    check_mode(d, mu)?;
    let nu = mu.div_ceil(2);
    let amp = angular_mono(sys, 1.0, 1, &amp_exps(d, nu));
    let k = sys.phase_index(nu);
    let trig = if mu % 2 == 1 {
        sin_phase(sys, k)
    } else {
        cos_phase(sys, k)
    };
    amp.compose(&trig)
}

/// `∂^{(ν,1)}`: derivative along the amplitude of the pair `ν`.
fn radial_part(sys: CoordSystem, d: usize, nu: usize) -> Result<DiffOperator> {
    let amp = amp_exps(d, nu);
    let mut op = angular_mono(sys, 1.0, 0, &amp).compose(&DiffOperator::partial(sys, 0))?;
    for rho in 1..d {
        let mut e = amp.clone();
        let [s, c] = e[rho - 1];
        // ∂_θ (sin^s cos^c) for s, c ∈ {0, 1}
        let (coef, ne) = match (s, c) {
            (1, 0) => (1.0, [0, 1]),
            (0, 1) => (-1.0, [1, 0]),
            _ => continue,
        };
        e[rho - 1] = ne;
        for slot in e.iter_mut().take(rho - 1) {
            slot[0] -= 2;
        }
        let m = angular_mono(sys, coef, -1, &e);
        op = op.add(&m.compose(&DiffOperator::partial(sys, rho))?);
    }
    Ok(op)
}

/// `∂^{(ν,2)} = R^{-1} amp_ν^{-1} ∂_{λ_ν}`.
fn phase_part(sys: CoordSystem, d: usize, nu: usize) -> Result<DiffOperator> {
    let inv: Vec<[i32; 2]> = amp_exps(d, nu).iter().map(|e| [-e[0], -e[1]]).collect();
    angular_mono(sys, 1.0, -1, &inv).compose(&DiffOperator::partial(sys, sys.phase_index(nu)))
}

/// `∂_{X_μ}` (1-based).
pub fn partial_x(sys: CoordSystem, mu: usize) -> Result<DiffOperator> {
    let d = check_osc(sys)?;
    check_mode(d, mu)?;
    let nu = mu.div_ceil(2);
    let k = sys.phase_index(nu);
    let (s, c) = (sin_phase(sys, k), cos_phase(sys, k));
    let p1 = radial_part(sys, d, nu)?;
    let p2 = phase_part(sys, d, nu)?;
    if mu % 2 == 1 {
        Ok(s.compose(&p1)?.add(&c.compose(&p2)?))
    } else {
        Ok(c.compose(&p1)?.sub(&s.compose(&p2)?))
    }
}

/// `α†_μ = (X_μ - ∂_μ)/√2` and `α_μ = (X_μ + ∂_μ)/√2`.
pub fn boson_letter(sys: CoordSystem, mu: usize, dagger: bool) -> Result<DiffOperator> {
    let x = position(sys, mu)?;
    let p = partial_x(sys, mu)?;
    let v = if dagger { x.sub(&p) } else { x.add(&p) };
    Ok(v.scale(INV_SQRT2))
}

/// Coordinate form of a normal-ordered boson polynomial of degree ≤ 2.
pub fn boson_to_operator(poly: &BosonPoly, sys: CoordSystem) -> Result<DiffOperator> {
    let d = check_osc(sys)?;
    if poly.modes() != 2 * d {
        return Err(Error::Usage(format!(
            "{} modes do not match D = {d}",
            poly.modes()
        )));
    }
    let mut cre = Vec::with_capacity(2 * d);
    let mut ann = Vec::with_capacity(2 * d);
    for mu in 1..=2 * d {
        cre.push(boson_letter(sys, mu, true)?);
        ann.push(boson_letter(sys, mu, false)?);
    }
    let mut out = DiffOperator::zero(sys);
    for (m, c) in poly.terms() {
        let mut op = DiffOperator::constant(sys, c.to_complex());
        for (letters, exps) in [(&cre, &m.cre), (&ann, &m.ann)] {
            for (mu, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    op = op.compose(&letters[mu])?;
                }
            }
        }
        out = out.add(&op);
    }
    Ok(out)
}
