//! Closed-form actions of the D = 2 generators on the `Ψ̄` bases: reduced
//! matrix elements with Wigner–Eckart assembly (oscillator labels), and the
//! coefficient tables in `(n, a, b)` labels.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::catalogue::OperatorName;
use crate::bosonalg::Generator;
use crate::error::{Error, Result};
use crate::half::Half;
use crate::swreduce::{JmLabel, SwLabel};
use crate::wigner::cg;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A generator component of the D = 2 oscillator algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
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
    D(i32, i32),
    DdagScalar,
    DScalar,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Component::*;
        match self {
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
            D(s, t) => write!(f, "D({s:+},{t:+})"),
            DdagScalar => write!(f, "Ddag-scalar"),
            DScalar => write!(f, "D-scalar"),
        }
    }
}

impl Component {
    /// Every component, in a fixed order.
    pub fn all() -> Vec<Component> {
        use Component::*;
        let mut v = vec![J0, Jp, Jm, K0, Kp, Km];
        let halves = [Half::HALF, -Half::HALF];
        for &s in &halves {
            for &t in &halves {
                v.push(Adag(s, t));
            }
        }
        for &s in &halves {
            for &t in &halves {
                v.push(A(s, t));
            }
        }
        for make in [T as fn(i32, i32) -> Component, Ddag, D] {
            for s in [1, 0, -1] {
                for t in [1, 0, -1] {
                    v.push(make(s, t));
                }
            }
        }
        v.push(DdagScalar);
        v.push(DScalar);
        v
    }

    /// Boson-algebra definition, used for the Cartesian route.
    pub fn generator(&self) -> Generator {
        use Component::*;
        match *self {
            J0 => Generator::J(3),
            Jp => Generator::JLadder(1),
            Jm => Generator::JLadder(-1),
            K0 => Generator::K(3),
            Kp => Generator::KLadder(1),
            Km => Generator::KLadder(-1),
            Adag(s, t) => Generator::AdagTensor(s, t),
            A(s, t) => Generator::ATensor(s, t),
            T(s, t) => Generator::TTensor(s, t),
            Ddag(s, t) => Generator::DdagTensor(s, t),
            D(s, t) => Generator::DlowTensor(s, t),
            DdagScalar => Generator::DdagScalar,
            DScalar => Generator::DlowScalar,
        }
    }

    /// Catalogue entry with a coordinate display in the given picture, if any.
    pub fn displayed(&self, osc: bool) -> Option<OperatorName> {
        use Component::*;
        match *self {
            J0 => Some(OperatorName::J0),
            Jp => Some(OperatorName::Jp),
            Jm => Some(OperatorName::Jm),
            K0 => Some(OperatorName::K0),
            Kp => Some(OperatorName::Kp),
            Km => Some(OperatorName::Km),
            Adag(s, t) if s == t => Some(OperatorName::Adag(s, t)),
            A(s, t) if s == t => Some(OperatorName::A(s, t)),
            T(1, 1) if !osc => Some(OperatorName::T(1, 1)),
            Ddag(1, 1) if !osc => Some(OperatorName::Ddag(1, 1)),
            DdagScalar if !osc => Some(OperatorName::DdagScalar),
            _ => None,
        }
    }

    /// Whether the component belongs to the dynamical (non-symmetry) part.
    pub fn is_dynamical(&self) -> bool {
        use Component::*;
        matches!(
            self,
            Adag(..) | A(..) | Ddag(..) | D(..) | DdagScalar | DScalar
        )
    }

    /// Allowed `(Δa, Δb)` shifts in doubled units.
    pub fn allowed_shifts(&self) -> Vec<(i32, i32)> {
        let mut v = vec![
            (0, 0),
            (2, -2),
            (-2, 2),
            (2, 2),
            (-2, -2),
            (4, 0),
            (-4, 0),
            (0, 4),
            (0, -4),
        ];
        if matches!(self, Component::Adag(..) | Component::A(..)) {
            v.extend([(2, 0), (-2, 0), (0, 2), (0, -2)]);
        }
        v
    }
}

/// Tensor kinds with reduced matrix elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RmeKind {
    Adag,
    A,
    T,
    Ddag,
    Dlow,
}

impl RmeKind {
    pub fn rank(&self) -> Half {
        match self {
            RmeKind::Adag | RmeKind::A => Half::HALF,
            _ => Half::ONE,
        }
    }

    /// Change of `n_r` for each change of `j`.
    fn radial_shift(&self, dj: Half) -> Option<i64> {
        use RmeKind::*;
        let shift = match (self, dj.twice()) {
            (Adag, 1) => 0,
            (Adag, -1) => 1,
            (A, 1) => -1,
            (A, -1) => 0,
            (T, 2) => -1,
            (T, 0) => 0,
            (T, -2) => 1,
            (Ddag, 2) => 0,
            (Ddag, 0) => 1,
            (Ddag, -2) => 2,
            (Dlow, 2) => -2,
            (Dlow, 0) => -1,
            (Dlow, -2) => 0,
            _ => return None,
        };
        Some(shift)
    }
}

/// A reduced matrix element `⟨n_r', j' ‖ X ‖ n_r, j⟩` together with its target.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rme {
    pub n_r: u32,
    pub j: Half,
    pub value: Complex64,
}

/// Reduced matrix element for `j' = j + dj`. `None` when the branch does not
/// exist (`j' < 0`, `n_r' < 0`, or `dj` not allowed for the rank).
pub fn reduced_matrix_element(kind: RmeKind, n_r: u32, j: Half, dj: Half) -> Option<Rme> {
    let shift = kind.radial_shift(dj)?;
    let jp = j + dj;
    let nrp = i64::from(n_r) + shift;
    if jp.twice() < 0 || nrp < 0 {
        return None;
    }
    let nrp = nrp as u32;
    let (n, jj) = (f64::from(n_r), j.to_f64());
    let tj = 2.0 * jj;
    let value = match (kind, dj.twice()) {
        (RmeKind::Adag, 1) => I * ((tj + 1.0) * (n + tj + 2.0) / (tj + 2.0)).sqrt(),
        (RmeKind::Adag, -1) => -I * ((tj + 1.0) * (n + 1.0) / tj).sqrt(),
        (RmeKind::T, 2) => Complex64::from(-((tj + 1.0) * n * (n + tj + 2.0) / (tj + 3.0)).sqrt()),
        (RmeKind::T, 0) => Complex64::from(n + jj + 1.0),
        (RmeKind::T, -2) => {
            Complex64::from(-((tj + 1.0) * (n + 1.0) * (n + tj + 1.0) / (tj - 1.0)).sqrt())
        }
        (RmeKind::Ddag, 2) => {
            Complex64::from(-((tj + 1.0) * (n + tj + 2.0) * (n + tj + 3.0) / (tj + 3.0)).sqrt())
        }
        (RmeKind::Ddag, 0) => Complex64::from(((n + 1.0) * (n + tj + 2.0)).sqrt()),
        (RmeKind::Ddag, -2) => {
            Complex64::from(-((tj + 1.0) * (n + 1.0) * (n + 2.0) / (tj - 1.0)).sqrt())
        }
        (RmeKind::A, _) | (RmeKind::Dlow, _) => {
            let raise = if kind == RmeKind::A {
                RmeKind::Adag
            } else {
                RmeKind::Ddag
            };
            let back = reduced_matrix_element(raise, nrp, jp, -dj)?;
            debug_assert_eq!((back.n_r, back.j), (n_r, j));
            back.value.conj() * (tj + 1.0) / (f64::from(jp.twice()) + 1.0)
        }
        _ => return None,
    };
    Some(Rme {
        n_r: nrp,
        j: jp,
        value,
    })
}

/// One term of a predicted action: `coef · Ψ̄_target`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub target: JmLabel,
    pub coef: Complex64,
}

fn push(out: &mut Vec<Prediction>, target: Option<JmLabel>, coef: Complex64) {
    if let Some(t) = target {
        if coef != Complex64::new(0.0, 0.0) && t.validate().is_ok() {
            out.push(Prediction { target: t, coef });
        }
    }
}

fn with_label(n_r: i64, j: Half, m: Half, mp: Half) -> Option<JmLabel> {
    if n_r < 0 || m.abs() > j || mp.abs() > j {
        return None;
    }
    Some(JmLabel {
        n_r: n_r as u32,
        j,
        m,
        mp,
    })
}

fn ladder(j: Half, m: Half, s: i32) -> f64 {
    let (j, m, s) = (j.to_f64(), m.to_f64(), f64::from(s));
    ((j - s * m) * (j + s * m + 1.0)).max(0.0).sqrt()
}

fn tensor_parts(c: Component) -> Option<(RmeKind, Half, Half)> {
    use Component::*;
    match c {
        Adag(s, t) => Some((RmeKind::Adag, s, t)),
        A(s, t) => Some((RmeKind::A, s, t)),
        T(s, t) => Some((RmeKind::T, Half::int(s), Half::int(t))),
        Ddag(s, t) => Some((RmeKind::Ddag, Half::int(s), Half::int(t))),
        D(s, t) => Some((RmeKind::Dlow, Half::int(s), Half::int(t))),
        _ => None,
    }
}

fn check_component(c: Component) -> Result<()> {
    if let Some((kind, s, t)) = tensor_parts(c) {
        let rank = kind.rank();
        let ok = |x: Half| x.abs() <= rank && (x - rank).is_integer();
        if !ok(s) || !ok(t) {
            return Err(Error::Label(format!(
                "{c} is not a component of a rank ({rank},{rank}) tensor"
            )));
        }
    }
    Ok(())
}

/// Action of a component on `Ψ̄^osc_{n_r, j, m, m'}`.
pub fn predict_osc(c: Component, ket: &JmLabel) -> Result<Vec<Prediction>> {
    use Component::*;
    ket.validate()?;
    check_component(c)?;
    let JmLabel { n_r, j, m, mp } = *ket;
    let nr = i64::from(n_r);
    let mut out = Vec::new();
    match c {
        J0 => push(&mut out, Some(*ket), m.to_f64().into()),
        K0 => push(&mut out, Some(*ket), mp.to_f64().into()),
        Jp | Jm => {
            let s = if c == Jp { 1 } else { -1 };
            let t = with_label(nr, j, m + Half::int(s), mp);
            push(&mut out, t, ladder(j, m, s).into());
        }
        Kp | Km => {
            let s = if c == Kp { 1 } else { -1 };
            let t = with_label(nr, j, m, mp + Half::int(s));
            push(&mut out, t, ladder(j, mp, s).into());
        }
        DdagScalar => {
            let v =
                -2.0 * ((f64::from(n_r) + 1.0) * (f64::from(n_r) + j.to_f64() * 2.0 + 2.0)).sqrt();
            push(&mut out, with_label(nr + 1, j, m, mp), v.into());
        }
        DScalar => {
            let v = -2.0 * (f64::from(n_r) * (f64::from(n_r) + j.to_f64() * 2.0 + 1.0)).sqrt();
            push(&mut out, with_label(nr - 1, j, m, mp), v.into());
        }
        _ => {
            let (kind, s, t) = tensor_parts(c).expect("tensor component");
            let rank = kind.rank();
            let mut dj = rank;
            while dj >= -rank {
                if let Some(rme) = reduced_matrix_element(kind, n_r, j, dj) {
                    let (m2, mp2) = (m + s, mp + t);
                    if m2.abs() <= rme.j && mp2.abs() <= rme.j {
                        let c1 = cg(j, m, rank, s, rme.j, m2);
                        let c2 = cg(j, mp, rank, t, rme.j, mp2);
                        let target = with_label(i64::from(rme.n_r), rme.j, m2, mp2);
                        push(&mut out, target, rme.value * c1 * c2);
                    }
                }
                dj = dj - Half::ONE;
            }
        }
    }
    Ok(out)
}

/// `(n_r, n, a, b)` with doubled `a`, `b` → `(n_r, j, m, m')`, if valid.
fn sw_target(n_r: i64, n: i64, a2: i32, b2: i32) -> Option<JmLabel> {
    if n_r < 0 || n < 0 {
        return None;
    }
    // j = n + (a+b-1)/2, m = (a-b)/2, m' = -(a+b-1)/2, all in doubled units.
    let abm1 = (a2 + b2) / 2 - 1;
    let jm = JmLabel {
        n_r: n_r as u32,
        j: Half(2 * n as i32 + abm1),
        m: Half((a2 - b2) / 2),
        mp: Half(-abm1),
    };
    jm.validate().ok().map(|_| jm)
}

/// `t`, `a`, `d` coefficient of the tables, indexed by `dn = n' - n - τ`
/// (doubled) and `S = 2n + a + b`.
fn table_coefficient(kind: RmeKind, dn2: i32, n_r: f64, s: f64) -> Complex64 {
    match (kind, dn2) {
        (RmeKind::T, 2) => (-(s * n_r * (n_r + s + 1.0) / (s + 2.0)).sqrt()).into(),
        (RmeKind::T, 0) => (n_r + 0.5 * (s + 1.0)).into(),
        (RmeKind::T, -2) => (-(s * (n_r + 1.0) * (n_r + s) / (s - 2.0)).sqrt()).into(),
        (RmeKind::Adag, 1) => I * (s * (n_r + s + 1.0) / (s + 1.0)).sqrt(),
        (RmeKind::Adag, -1) => -I * (s * (n_r + 1.0) / (s - 1.0)).sqrt(),
        (RmeKind::Ddag, 2) => (-(s * (n_r + s + 1.0) * (n_r + s + 2.0) / (s + 2.0)).sqrt()).into(),
        (RmeKind::Ddag, 0) => Complex64::from(((n_r + 1.0) * (n_r + s + 1.0)).sqrt()),
        (RmeKind::Ddag, -2) => (-(s * (n_r + 1.0) * (n_r + 2.0) / (s - 2.0)).sqrt()).into(),
        _ => unreachable!("no table entry"),
    }
}

/// Action of a component on `Ψ̄_{n_r, n, a, b}` for half-integer `a, b`.
///
/// `J`, `K`, `𝒯`, `𝒜†`, `𝒟†` and the scalar `𝒟†` use the `(n, a, b)`
/// coefficient tables; `𝒜`, `𝒟` and the scalar `𝒟` go through the
/// `(j, m, m')` labels. Targets are returned as `(j, m, m')` labels because
/// they may leave the `a, b ≥ 1/2` range.
pub fn predict_sw(c: Component, ket: &SwLabel) -> Result<Vec<Prediction>> {
    use Component::*;
    check_component(c)?;
    let (ah, bh) = ket
        .ab_half()
        .ok_or_else(|| Error::Label(format!("{ket}: matrix elements need half-integer a, b")))?;
    let (a2, b2) = (ah.twice(), bh.twice());
    let (a, b) = (ket.a, ket.b);
    let (nr, n) = (i64::from(ket.n_r), i64::from(ket.n));
    let (nrf, nf) = (f64::from(ket.n_r), f64::from(ket.n));
    let s = 2.0 * nf + a + b;
    let mut out = Vec::new();
    match c {
        J0 => push(&mut out, sw_target(nr, n, a2, b2), (0.5 * (a - b)).into()),
        K0 => push(
            &mut out,
            sw_target(nr, n, a2, b2),
            (-0.5 * (a + b - 1.0)).into(),
        ),
        Jp => push(
            &mut out,
            sw_target(nr, n, a2 + 2, b2 - 2),
            ((nf + a + 0.5) * (nf + b - 0.5)).max(0.0).sqrt().into(),
        ),
        Jm => push(
            &mut out,
            sw_target(nr, n, a2 - 2, b2 + 2),
            ((nf + a - 0.5) * (nf + b + 0.5)).max(0.0).sqrt().into(),
        ),
        Kp => push(
            &mut out,
            sw_target(nr, n + 1, a2 - 2, b2 - 2),
            ((nf + 1.0) * (nf + a + b - 1.0)).max(0.0).sqrt().into(),
        ),
        Km => push(
            &mut out,
            sw_target(nr, n - 1, a2 + 2, b2 + 2),
            (nf * (nf + a + b)).max(0.0).sqrt().into(),
        ),
        DdagScalar => push(
            &mut out,
            sw_target(nr + 1, n, a2, b2),
            (-2.0 * ((nrf + 1.0) * (nrf + s + 1.0)).sqrt()).into(),
        ),
        T(..) | Adag(..) | Ddag(..) => {
            let (kind, sg, tau) = tensor_parts(c).expect("tensor component");
            let rank = kind.rank();
            let jm = ket.to_jm()?;
            // Doubled offsets dn = n' - n - τ: ±1, 0 for rank 1; ±1/2 for rank 1/2.
            let offsets: &[i32] = if rank == Half::HALF {
                &[1, -1]
            } else {
                &[2, 0, -2]
            };
            // Extra radial quanta: +1/2 for 𝒜†, +1 for 𝒟† (doubled).
            let extra2 = match kind {
                RmeKind::Adag => 1,
                RmeKind::Ddag => 2,
                _ => 0,
            };
            for &dn2 in offsets {
                let np2 = 2 * n as i32 + dn2 + tau.twice();
                let nr2 = 2 * nr as i32 - dn2 + extra2;
                if np2 % 2 != 0 || nr2 % 2 != 0 {
                    return Err(Error::Label(format!(
                        "{c} on {ket} gives a non-integer target"
                    )));
                }
                let target = sw_target(
                    i64::from(nr2 / 2),
                    i64::from(np2 / 2),
                    a2 + sg.twice() - tau.twice(),
                    b2 - sg.twice() - tau.twice(),
                );
                let Some(t) = target else { continue };
                // J' = n' - τ + (a+b-1)/2 = J + dn.
                let jp = jm.j + Half(dn2);
                if jp != t.j {
                    return Err(Error::Label(format!(
                        "{c}: inconsistent target {t} for {ket}"
                    )));
                }
                let c1 = cg(jm.j, jm.m, rank, sg, jp, jm.m + sg);
                let c2 = cg(jm.j, jm.mp, rank, tau, jp, jm.mp + tau);
                if c1 == 0.0 || c2 == 0.0 {
                    continue;
                }
                push(
                    &mut out,
                    Some(t),
                    table_coefficient(kind, dn2, nrf, s) * c1 * c2,
                );
            }
        }
        A(..) | D(..) | DScalar => return predict_osc(c, &ket.to_jm()?),
    }
    Ok(out)
}

/// Predictions collected into a map keyed by target label.
pub fn prediction_map(preds: &[Prediction]) -> BTreeMap<JmLabel, Complex64> {
    let mut map = BTreeMap::new();
    for p in preds {
        *map.entry(p.target).or_insert(Complex64::new(0.0, 0.0)) += p.coef;
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rme_examples() {
        let r = reduced_matrix_element(RmeKind::Adag, 0, Half::ZERO, Half::HALF).unwrap();
        assert!((r.value - I).norm() < 1e-15);
        assert!(reduced_matrix_element(RmeKind::Adag, 0, Half::ZERO, -Half::HALF).is_none());
        let r = reduced_matrix_element(RmeKind::T, 2, Half(3), Half::ZERO).unwrap();
        assert_eq!(r.value, Complex64::new(4.5, 0.0));
        let r = reduced_matrix_element(RmeKind::Ddag, 0, Half::ZERO, Half::ZERO).unwrap();
        assert!((r.value.re - 2f64.sqrt()).abs() < 1e-15);
        assert!(reduced_matrix_element(RmeKind::T, 0, Half::ONE, Half::ONE).is_none());
    }

    #[test]
    fn k_minus_example() {
        let ket = SwLabel::new(1, 1, 1.5, 1.5).unwrap();
        let p = predict_sw(Component::Km, &ket).unwrap();
        assert_eq!(p.len(), 1);
        assert!((p[0].coef.re - 2.0).abs() < 1e-15);
        let expect = SwLabel::new(1, 0, 2.5, 2.5).unwrap().to_jm().unwrap();
        assert_eq!(p[0].target, expect);
        let ket0 = SwLabel::new(1, 0, 1.5, 1.5).unwrap();
        assert!(predict_sw(Component::Km, &ket0).unwrap().is_empty());
    }

    #[test]
    fn tables_agree_with_reduced_elements() {
        let comps: Vec<Component> = Component::all()
            .into_iter()
            .filter(|c| {
                matches!(
                    c,
                    Component::T(..)
                        | Component::Adag(..)
                        | Component::Ddag(..)
                        | Component::DdagScalar
                        | Component::Jp
                        | Component::Jm
                        | Component::Kp
                        | Component::Km
                        | Component::J0
                        | Component::K0
                )
            })
            .collect();
        for ket in SwLabel::grid(2, 2, Half(7)) {
            let jm = ket.to_jm().unwrap();
            for &c in &comps {
                let a = prediction_map(&predict_sw(c, &ket).unwrap());
                let b = prediction_map(&predict_osc(c, &jm).unwrap());
                let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
                for k in keys {
                    let x = a.get(k).copied().unwrap_or_default();
                    let y = b.get(k).copied().unwrap_or_default();
                    assert!((x - y).norm() < 1e-12, "{c} on {ket} -> {k}: {x} vs {y}");
                }
            }
        }
    }
}
