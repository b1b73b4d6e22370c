//! Coordinate forms of the Hamiltonians and of the D = 2 generators, as
//! displayed for each picture.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cartesian::amp_exps;
use super::operator::DiffOperator;
use crate::coords::CoordSystem;
use crate::error::{Error, Result};
use crate::half::Half;
use crate::swreduce::SwParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Names of the operators with a coordinate display.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorName {
    HOsc,
    HSw,
    HK,
    J0,
    Jp,
    Jm,
    K0,
    Kp,
    Km,
    Adag(Half, Half),
    A(Half, Half),
    T(i32, i32),
    Ddag(i32, i32),
    DdagScalar,
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use OperatorName::*;
        match self {
            HOsc => write!(f, "H-osc"),
            HSw => write!(f, "H-sw"),
            HK => write!(f, "H-k"),
            J0 => write!(f, "J0"),
            Jp => write!(f, "Jp"),
            Jm => write!(f, "Jm"),
            K0 => write!(f, "K0"),
            Kp => write!(f, "Kp"),
            Km => write!(f, "Km"),
            Adag(s, t) => write!(f, "Adag({s},{t})"),
            A(s, t) => write!(f, "A({s},{t})"),
            T(s, t) => write!(f, "T({s:+},{t:+})"),
            Ddag(s, t) => write!(f, "Ddag({s:+},{t:+})"),
            DdagScalar => write!(f, "Ddag-scalar"),
        }
    }
}

impl FromStr for OperatorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use OperatorName::*;
        let bad = || Error::Label(format!("unknown operator name {s:?}"));
        let simple = match s {
            "H-osc" => Some(HOsc),
            "H-sw" => Some(HSw),
            "H-k" => Some(HK),
            "J0" => Some(J0),
            "Jp" => Some(Jp),
            "Jm" => Some(Jm),
            "K0" => Some(K0),
            "Kp" => Some(Kp),
            "Km" => Some(Km),
            "Ddag-scalar" => Some(DdagScalar),
            _ => None,
        };
        if let Some(n) = simple {
            return Ok(n);
        }
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        let half = |v: &str| v.trim().parse::<Half>().map_err(|_| bad());
        let int = |v: &str| {
            v.trim()
                .trim_start_matches('+')
                .parse::<i32>()
                .map_err(|_| bad())
        };
        match &s[..open] {
            "Adag" => Ok(Adag(half(x)?, half(y)?)),
            "A" => Ok(A(half(x)?, half(y)?)),
            "T" => Ok(T(int(x)?, int(y)?)),
            "Ddag" => Ok(Ddag(int(x)?, int(y)?)),
            _ => Err(bad()),
        }
    }
}

/// Term builder for D = 2: `c · r^e · sin^s cos^k · e^{i(l1 λ1 + l2 λ2)} · ∂^ord`.
struct D2 {
    sys: CoordSystem,
    op: DiffOperator,
}

impl D2 {
    fn new(sys: CoordSystem) -> Self {
        D2 {
            sys,
            op: DiffOperator::zero(sys),
        }
    }

    fn t(mut self, c: impl Into<Complex64>, r: i32, sc: [i32; 2], ord: [u8; 4]) -> Self {
        let orders: Vec<(usize, u8)> = ord.iter().enumerate().map(|(k, &o)| (k, o)).collect();
        let term = DiffOperator::term(self.sys, c, &[(0, [r, 0]), (1, sc)], &orders);
        self.op = self.op.add(&term);
        self
    }

    /// Multiplies everything built so far by `c · e^{i(l1 λ1 + l2 λ2)}` on the left.
    fn times(self, c: impl Into<Complex64>, l: [i32; 2]) -> DiffOperator {
        let pre = DiffOperator::mono(self.sys, c, &[(2, [l[0], 0]), (3, [l[1], 0])]);
        pre.compose(&self.op)
            .expect("multiplication keeps the order")
    }
}

const R: [u8; 4] = [1, 0, 0, 0];
const TH: [u8; 4] = [0, 1, 0, 0];
const L1: [u8; 4] = [0, 0, 1, 0];
const L2: [u8; 4] = [0, 0, 0, 1];
const NONE: [u8; 4] = [0; 4];

fn unsupported(name: OperatorName, sys: CoordSystem) -> Error {
    Error::Catalogue(name.to_string(), sys.to_string())
}

/// `-(1/ρ²) Σ_ν (Π_{μ<ν} sin^{-2}) [∂²_ν + f_ν ∂_ν]` with `f_ν = c_ν cot - t_ν tan`.
fn angular_laplacian(
    sys: CoordSystem,
    cot: impl Fn(usize) -> f64,
    tan: f64,
) -> Result<DiffOperator> {
    let d = sys.d();
    let mut out = DiffOperator::zero(sys);
    for nu in 1..d {
        let mut pre: Vec<(usize, [i32; 2])> = vec![(0, [-2, 0])];
        pre.extend((1..nu).map(|mu| (mu, [-2, 0])));
        let m = DiffOperator::mono(sys, -1.0, &pre);
        let mut inner = DiffOperator::term(sys, 1.0, &[], &[(nu, 2)]);
        let c = cot(nu);
        if c != 0.0 {
            inner = inner.add(&DiffOperator::term(sys, c, &[(nu, [-1, 1])], &[(nu, 1)]));
        }
        if tan != 0.0 {
            inner = inner.add(&DiffOperator::term(sys, -tan, &[(nu, [1, -1])], &[(nu, 1)]));
        }
        out = out.add(&m.compose(&inner)?);
    }
    Ok(out)
}

/// `r^{-2} amp_ν^{-2}` as a coefficient monomial list.
fn inv_amp2(d: usize, nu: usize) -> Vec<(usize, [i32; 2])> {
    let mut v = vec![(0, [-2, 0])];
    v.extend(
        amp_exps(d, nu)
            .iter()
            .enumerate()
            .map(|(i, e)| (i + 1, [-2 * e[0], -2 * e[1]])),
    );
    v
}

fn h_osc(sys: CoordSystem) -> Result<DiffOperator> {
    let d = sys.d();
    let df = d as f64;
    let mut h = DiffOperator::term(sys, -1.0, &[], &[(0, 2)])
        .add(&DiffOperator::term(
            sys,
            -(2.0 * df - 1.0),
            &[(0, [-1, 0])],
            &[(0, 1)],
        ))
        .add(&DiffOperator::mono(sys, 1.0, &[(0, [2, 0])]))
        .add(&angular_laplacian(
            sys,
            |nu| (2 * d - 2 * nu - 1) as f64,
            1.0,
        )?);
    for nu in 1..=d {
        h = h.add(&DiffOperator::term(
            sys,
            -1.0,
            &inv_amp2(d, nu),
            &[(sys.phase_index(nu), 2)],
        ));
    }
    Ok(h)
}

/// Radial and polar part shared by `H` and `H^(k)`.
fn h_sw_common(sys: CoordSystem, omega: f64) -> Result<DiffOperator> {
    let d = sys.d();
    Ok(DiffOperator::term(sys, -1.0, &[], &[(0, 2)])
        .add(&DiffOperator::term(
            sys,
            -((d - 1) as f64),
            &[(0, [-1, 0])],
            &[(0, 1)],
        ))
        .add(&DiffOperator::mono(sys, omega * omega, &[(0, [2, 0])]))
        .add(&angular_laplacian(sys, |nu| (d - nu - 1) as f64, 0.0)?))
}

fn h_sw(sys: CoordSystem, omega: f64) -> Result<DiffOperator> {
    let d = sys.d();
    let mut h = h_sw_common(sys, omega)?;
    for nu in 1..=d {
        let m = inv_amp2(d, nu);
        h = h
            .add(&DiffOperator::term(
                sys,
                -1.0,
                &m,
                &[(sys.phase_index(nu), 2)],
            ))
            .add(&DiffOperator::mono(sys, -0.25, &m));
    }
    Ok(h)
}

fn h_k(sys: CoordSystem, omega: f64, params: &SwParams) -> Result<DiffOperator> {
    let d = sys.d();
    if params.d != d {
        return Err(Error::Usage(format!(
            "{} barrier strengths for D = {d}",
            params.d
        )));
    }
    let mut h = h_sw_common(sys, omega)?;
    for nu in 1..=d {
        let k = params.k[nu - 1];
        h = h.add(&DiffOperator::mono(sys, k * k, &inv_amp2(d, nu)));
    }
    Ok(h)
}

fn sign_of(s: Half) -> i32 {
    if s.twice() > 0 {
        1
    } else {
        -1
    }
}

fn adag_osc(sys: CoordSystem, s: i32) -> DiffOperator {
    let sf = f64::from(s);
    D2::new(sys)
        .t(I, 0, [1, 0], R)
        .t(I, -1, [0, 1], TH)
        .t(sf, -1, [-1, 0], L1)
        .t(-I, 1, [1, 0], NONE)
        .times(0.5, [-s, 0])
}

fn adag_sw(sys: CoordSystem, omega: f64, s: i32) -> DiffOperator {
    let sf = f64::from(s);
    let (w, iw) = (omega.sqrt(), 1.0 / omega.sqrt());
    D2::new(sys)
        .t(I * iw, 0, [1, 0], R)
        .t(I * iw, -1, [0, 1], TH)
        .t(sf * iw, -1, [-1, 0], L1)
        .t(-0.5 * I * iw, -1, [-1, 0], NONE)
        .t(-I * w, 1, [1, 0], NONE)
        .times(0.5, [-s, 0])
}

/// Second-order part shared by `𝒯_{+1,+1}` and `𝒟†_{+1,+1}`.
fn plus_plus_second_order(sys: CoordSystem) -> D2 {
    D2::new(sys)
        .t(-1.0, 0, [2, 0], [2, 0, 0, 0])
        .t(-2.0, -1, [1, 1], [1, 1, 0, 0])
        .t(2.0 * I, -1, [0, 0], [1, 0, 1, 0])
        .t(-1.0, -2, [0, 2], [0, 2, 0, 0])
        .t(2.0 * I, -2, [-1, 1], [0, 1, 1, 0])
        .t(1.0, -2, [-2, 0], [0, 0, 2, 0])
}

fn t_pp_sw(sys: CoordSystem, omega: f64) -> DiffOperator {
    plus_plus_second_order(sys)
        .t(1.0, -1, [0, 0], R)
        .t(1.0, -1, [2, 0], R)
        .t(2.0, -2, [-1, 1], TH)
        .t(2.0, -2, [1, 1], TH)
        .t(-3.0 * I, -2, [-2, 0], L1)
        .t(-1.25, -2, [-2, 0], NONE)
        .t(omega * omega, 2, [2, 0], NONE)
        .times(0.25 / omega, [-2, 0])
}

fn ddag_pp_sw(sys: CoordSystem, omega: f64) -> DiffOperator {
    plus_plus_second_order(sys)
        .t(1.0, -1, [0, 0], R)
        .t(1.0, -1, [2, 0], R)
        .t(2.0 * omega, 1, [2, 0], R)
        .t(2.0, -2, [-1, 1], TH)
        .t(2.0, -2, [1, 1], TH)
        .t(2.0 * omega, 0, [1, 1], TH)
        .t(-3.0 * I, -2, [-2, 0], L1)
        .t(-2.0 * omega * I, 0, [0, 0], L1)
        .t(-1.25, -2, [-2, 0], NONE)
        .t(-omega * omega, 2, [2, 0], NONE)
        .t(-omega, 0, [0, 0], NONE)
        .times(0.25 / omega, [-2, 0])
}

fn ddag_scalar_sw(sys: CoordSystem, omega: f64) -> Result<DiffOperator> {
    let extra = DiffOperator::term(sys, -2.0 * omega, &[(0, [1, 0])], &[(0, 1)])
        .add(&DiffOperator::mono(
            sys,
            2.0 * omega * omega,
            &[(0, [2, 0])],
        ))
        .add(&DiffOperator::constant(sys, -2.0 * omega));
    Ok(h_sw(sys, omega)?.scale(-1.0).add(&extra).scale(0.5 / omega))
}

/// `J_0`, `J_±`, `K_0`, `K_±` for either picture.
fn su2_pair(name: OperatorName, sys: CoordSystem) -> DiffOperator {
    use OperatorName::*;
    let sw = !sys.is_osc();
    let half_i = 0.5 * I;
    match name {
        J0 => D2::new(sys)
            .t(half_i, 0, [0, 0], L1)
            .t(-half_i, 0, [0, 0], L2)
            .times(1.0, [0, 0]),
        K0 => D2::new(sys)
            .t(half_i, 0, [0, 0], L1)
            .t(half_i, 0, [0, 0], L2)
            .times(1.0, [0, 0]),
        Jp | Jm => {
            let s = if name == Jp { 1 } else { -1 };
            let sf = f64::from(s);
            let mut b =
                D2::new(sys)
                    .t(sf, 0, [0, 0], TH)
                    .t(-I, 0, [-1, 1], L1)
                    .t(-I, 0, [1, -1], L2);
            if sw {
                b = b
                    .t(-0.5 * sf, 0, [-1, 1], NONE)
                    .t(0.5 * sf, 0, [1, -1], NONE);
            }
            b.times(0.5, [-s, s])
        }
        Kp | Km => {
            let s = if name == Kp { 1 } else { -1 };
            let sf = f64::from(s);
            let mut b =
                D2::new(sys)
                    .t(-sf, 0, [0, 0], TH)
                    .t(I, 0, [-1, 1], L1)
                    .t(-I, 0, [1, -1], L2);
            if sw {
                b = b
                    .t(0.5 * sf, 0, [-1, 1], NONE)
                    .t(-0.5 * sf, 0, [1, -1], NONE);
            }
            b.times(0.5, [-s, -s])
        }
        _ => unreachable!("not an su(2) generator"),
    }
}

fn require_d2(name: OperatorName, sys: CoordSystem) -> Result<()> {
    if sys.d() != 2 {
        return Err(Error::UnsupportedDimension(
            sys.d(),
            format!("{name} is displayed for D = 2 only"),
        ));
    }
    Ok(())
}

fn check_rank_half(name: OperatorName, sys: CoordSystem, s: Half, t: Half) -> Result<i32> {
    if s.twice().abs() != 1 || t.twice().abs() != 1 {
        return Err(Error::Label(format!("{name}: components must be ±1/2")));
    }
    if s != t {
        return Err(unsupported(name, sys));
    }
    Ok(sign_of(s))
}

/// Builds a displayed operator. `params` is needed for `H-k` only.
pub fn build_operator(
    name: OperatorName,
    system: CoordSystem,
    params: Option<&SwParams>,
) -> Result<DiffOperator> {
    use OperatorName::*;
    if system.d() < 2 {
        return Err(Error::UnsupportedDimension(
            system.d(),
            "need D >= 2".into(),
        ));
    }
    match (name, system) {
        (HOsc, CoordSystem::Osc { .. }) => h_osc(system),
        (HSw, CoordSystem::Sw { omega, .. }) => h_sw(system, omega),
        (HK, CoordSystem::Sw { omega, .. }) => {
            let p = params.ok_or_else(|| Error::Usage("H-k needs barrier strengths".into()))?;
            if (p.omega - omega).abs() > 0.0 {
                return Err(Error::Usage(format!(
                    "frequency {} does not match {system}",
                    p.omega
                )));
            }
            h_k(system, omega, p)
        }
        (J0 | Jp | Jm | K0 | Kp | Km, _) => {
            require_d2(name, system)?;
            Ok(su2_pair(name, system))
        }
        (Adag(s, t), _) => {
            require_d2(name, system)?;
            let s = check_rank_half(name, system, s, t)?;
            Ok(match system {
                CoordSystem::Osc { .. } => adag_osc(system, s),
                CoordSystem::Sw { omega, .. } => adag_sw(system, omega, s),
            })
        }
        (A(s, t), _) => {
            require_d2(name, system)?;
            check_rank_half(name, system, s, t)?;
            // A_{σ,τ} = (-1)^{1-σ-τ} (A†_{-σ,-τ})†; the sign is +1 when σ = τ.
            build_operator(Adag(-s, -t), system, None)?.formal_adjoint()
        }
        (T(1, 1), CoordSystem::Sw { omega, .. }) => {
            require_d2(name, system)?;
            Ok(t_pp_sw(system, omega))
        }
        (Ddag(1, 1), CoordSystem::Sw { omega, .. }) => {
            require_d2(name, system)?;
            Ok(ddag_pp_sw(system, omega))
        }
        (DdagScalar, CoordSystem::Sw { omega, .. }) => {
            require_d2(name, system)?;
            ddag_scalar_sw(system, omega)
        }
        _ => Err(unsupported(name, system)),
    }
}

/// Every `(name, picture)` pair in the catalogue for D = 2.
pub fn catalogue_d2() -> Vec<(OperatorName, bool)> {
    use OperatorName::*;
    let h = Half::HALF;
    let mut out = Vec::new();
    for osc in [true, false] {
        out.push((if osc { HOsc } else { HSw }, osc));
        if !osc {
            out.push((HK, false));
        }
        for n in [J0, Jp, Jm, K0, Kp, Km] {
            out.push((n, osc));
        }
        for s in [h, -h] {
            out.push((Adag(s, s), osc));
            out.push((A(s, s), osc));
        }
        if !osc {
            out.push((T(1, 1), false));
            out.push((Ddag(1, 1), false));
            out.push((DdagScalar, false));
        }
    }
    out
}
