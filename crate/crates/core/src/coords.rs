//! Coordinate systems: oscillator `(R, θ_1..θ_{D-1}, λ_1..λ_D)` and the
//! reduced system `(r, φ_1..φ_{D-1}, λ_1..λ_D)`.
//!
//! Coordinates are stored in a flat slice: index 0 is the radius, indices
//! `1..D` the polar angles, indices `D..2D` the phase angles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CoordSystem {
    Osc { d: usize },
    Sw { d: usize, omega: f64 },
}

/// What a coordinate index refers to. Angle and phase indices are 1-based as in `θ_ν`, `λ_ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordKind {
    Radial,
    Angle(usize),
    Phase(usize),
}

impl CoordSystem {
    pub fn osc(d: usize) -> Self {
        CoordSystem::Osc { d }
    }

    pub fn sw(d: usize, omega: f64) -> Self {
        CoordSystem::Sw { d, omega }
    }

    pub fn d(&self) -> usize {
        match *self {
            CoordSystem::Osc { d } | CoordSystem::Sw { d, .. } => d,
        }
    }

    pub fn omega(&self) -> Option<f64> {
        match *self {
            CoordSystem::Osc { .. } => None,
            CoordSystem::Sw { omega, .. } => Some(omega),
        }
    }

    pub fn is_osc(&self) -> bool {
        matches!(self, CoordSystem::Osc { .. })
    }

    pub fn n_coords(&self) -> usize {
        2 * self.d()
    }

    pub fn kind(&self, k: usize) -> CoordKind {
        let d = self.d();
        if k == 0 {
            CoordKind::Radial
        } else if k < d {
            CoordKind::Angle(k)
        } else {
            CoordKind::Phase(k - d + 1)
        }
    }

    pub fn angle_index(&self, nu: usize) -> usize {
        nu
    }

    pub fn phase_index(&self, nu: usize) -> usize {
        self.d() + nu - 1
    }

    pub fn coord_name(&self, k: usize) -> String {
        let (r, a) = if self.is_osc() {
            ("R", "theta")
        } else {
            ("r", "phi")
        };
        match self.kind(k) {
            CoordKind::Radial => r.to_string(),
            CoordKind::Angle(nu) => format!("{a}{nu}"),
            CoordKind::Phase(nu) => format!("lambda{nu}"),
        }
    }

    pub fn check_same(&self, other: &CoordSystem) -> Result<()> {
        if self != other {
            return Err(Error::Usage(format!(
                "coordinate systems differ: {self} vs {other}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for CoordSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordSystem::Osc { d } => write!(f, "osc(D={d})"),
            CoordSystem::Sw { d, omega } => write!(f, "sw(D={d}, omega={omega})"),
        }
    }
}

/// The 2D Cartesian coordinates `X_μ` of a point given in oscillator coordinates.
pub fn cartesian_from_hyper(r: f64, theta: &[f64], lambda: &[f64], d: usize) -> Result<Vec<f64>> {
    if d < 2 || theta.len() != d - 1 || lambda.len() != d {
        return Err(Error::Usage(format!(
            "expected D-1 polar and D phase angles for D={d}, got {} and {}",
            theta.len(),
            lambda.len()
        )));
    }
    let mut x = vec![0.0; 2 * d];
    for nu in 1..=d {
        let amp = r * radial_amplitude(theta, d, nu);
        let (s, c) = lambda[nu - 1].sin_cos();
        x[2 * nu - 2] = amp * s;
        x[2 * nu - 1] = amp * c;
    }
    Ok(x)
}

/// Angular amplitude multiplying `R` in the pair `(X_{2ν-1}, X_{2ν})`.
pub(crate) fn radial_amplitude(theta: &[f64], d: usize, nu: usize) -> f64 {
    let sins: f64 = theta[..d - nu].iter().map(|t| t.sin()).product();
    if nu == 1 {
        sins
    } else {
        sins * theta[d - nu].cos()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn kinds_and_names() {
        let s = CoordSystem::osc(3);
        assert_eq!(s.kind(0), CoordKind::Radial);
        assert_eq!(s.kind(2), CoordKind::Angle(2));
        assert_eq!(s.kind(3), CoordKind::Phase(1));
        assert_eq!(s.coord_name(5), "lambda3");
        assert_eq!(CoordSystem::sw(2, 1.0).coord_name(1), "phi1");
    }

    #[test]
    fn d2_special_points() {
        let x = cartesian_from_hyper(2.0, &[0.0], &[0.3, 0.7], 2).unwrap();
        assert!(x[0].abs() < 1e-15 && x[1].abs() < 1e-15);
        assert!((x[2] - 2.0 * 0.7f64.sin()).abs() < 1e-15);
        assert!((x[3] - 2.0 * 0.7f64.cos()).abs() < 1e-15);
        let x = cartesian_from_hyper(1.5, &[FRAC_PI_2], &[0.0, 0.4], 2).unwrap();
        assert!((x[1] - 1.5).abs() < 1e-15);
        assert!(x[0].abs() < 1e-15 && x[2].abs() < 1e-15 && x[3].abs() < 1e-15);
    }

    #[test]
    fn radius_identity_d4() {
        let x = cartesian_from_hyper(1.7, &[0.3, 1.1, 0.5], &[0.1, 2.0, 4.0, 5.5], 4).unwrap();
        let r2: f64 = x.iter().map(|v| v * v).sum();
        assert!((r2 - 1.7 * 1.7).abs() < 1e-12);
    }
}
