//! Generators of u(2D), su(2D), so(2D), sp(4D,R) and w(2D) as boson
//! polynomials, plus the D=2 su(2)⊕su(2) tensor components.

use std::fmt;

use super::poly::BosonPoly;
use super::ring::Coeff;
use crate::error::{Error, Result};
use crate::half::{projections, Half};
use crate::wigner::{clebsch_gordan_exact, CgArg};

/// A generator with its indices. Mode indices are 1-based as in the usual
/// `μ = 1, …, 2D` notation; tensor components carry their `(σ, τ)` labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Identity,
    AlphaDag(usize),
    Alpha(usize),
    E(usize, usize),
    Ebar(usize, usize),
    L(usize, usize),
    T(usize, usize),
    Ddag(usize, usize),
    Dlow(usize, usize),
    /// `ℰ = Σ_μ E_μμ`.
    Casimir1,
    /// `Σ_μ (X_μ² - ∂²_{X_μ})` written through `X = (α + α†)/√2`, `∂ = (α - α†)/√2`.
    HOsc,
    /// Cartesian `J_i`, `i = 1, 2, 3` (D=2).
    J(usize),
    K(usize),
    /// `J_±`, `K_±` with the sign in the field.
    JLadder(i8),
    KLadder(i8),
    /// Spherical components coupled from `A†` and `A`: `J_σ = [A†×A]^{1,0}_{σ,0}`.
    JSpherical(i32),
    KSpherical(i32),
    AdagTensor(Half, Half),
    ATensor(Half, Half),
    /// `𝒯_{στ} = [A†×A]^{1,1}_{στ}`.
    TTensor(i32, i32),
    /// `𝒟†_{στ} = [A†×A†]^{1,1}_{στ}`.
    DdagTensor(i32, i32),
    DlowTensor(i32, i32),
    /// `𝒟† = -2 [A†×A†]^{0,0}`.
    DdagScalar,
    DlowScalar,
    /// `[A†×A]^{0,0}_{0,0}`.
    ScalarAA,
    /// Component tables of `𝒯` and `𝒟†` written in terms of `T_μν` and `D†_μν`.
    TTable(i32, i32),
    DdagTable(i32, i32),
    /// `Σ_μ D†_μμ`.
    DdagTraceTable,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Generator::*;
        match *self {
            Identity => write!(f, "I"),
            AlphaDag(m) => write!(f, "ad{m}"),
            Alpha(m) => write!(f, "a{m}"),
            E(m, n) => write!(f, "E{m}{n}"),
            Ebar(m, n) => write!(f, "Ebar{m}{n}"),
            L(m, n) => write!(f, "L{m}{n}"),
            T(m, n) => write!(f, "T{m}{n}"),
            Ddag(m, n) => write!(f, "Ddag{m}{n}"),
            Dlow(m, n) => write!(f, "D{m}{n}"),
            Casimir1 => write!(f, "Casimir1"),
            HOsc => write!(f, "Hosc"),
            J(i) => write!(f, "J{i}"),
            K(i) => write!(f, "K{i}"),
            JLadder(s) => write!(f, "J{}", if s > 0 { "+" } else { "-" }),
            KLadder(s) => write!(f, "K{}", if s > 0 { "+" } else { "-" }),
            JSpherical(s) => write!(f, "J[{s}]"),
            KSpherical(s) => write!(f, "K[{s}]"),
            AdagTensor(s, t) => write!(f, "Adag[{s},{t}]"),
            ATensor(s, t) => write!(f, "A[{s},{t}]"),
            TTensor(s, t) => write!(f, "Tt[{s},{t}]"),
            DdagTensor(s, t) => write!(f, "Ddagt[{s},{t}]"),
            DlowTensor(s, t) => write!(f, "Dt[{s},{t}]"),
            DdagScalar => write!(f, "Ddag"),
            DlowScalar => write!(f, "D"),
            ScalarAA => write!(f, "[AdagxA]00"),
            TTable(s, t) => write!(f, "Ttable[{s},{t}]"),
            DdagTable(s, t) => write!(f, "Ddagtable[{s},{t}]"),
            DdagTraceTable => write!(f, "sum Ddag_mumu"),
        }
    }
}

fn mode(d: usize, mu: usize) -> Result<usize> {
    if mu == 0 || mu > 2 * d {
        return Err(Error::Label(format!(
            "mode index {mu} outside 1..={}",
            2 * d
        )));
    }
    Ok(mu - 1)
}

fn require_d2(d: usize, what: &Generator) -> Result<()> {
    if d != 2 {
        return Err(Error::UnsupportedDimension(
            d,
            format!("{what} is defined for D=2 only"),
        ));
    }
    Ok(())
}

fn check_component(s: Half, sigma: Half) -> Result<()> {
    if sigma.abs() > s || !(s - sigma).is_integer() {
        return Err(Error::Label(format!(
            "component {sigma} invalid for rank {s}"
        )));
    }
    Ok(())
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Exact Clebsch–Gordan coefficient as a ring element.
pub fn cg_coeff(j1: Half, m1: Half, j2: Half, m2: Half, j: Half, m: Half) -> Result<Coeff> {
    Coeff::from_signed_sqrt(&clebsch_gordan_exact(&CgArg::new(j1, m1, j2, m2, j, m)))
}

/// `[X × Y]^{s,t}_{σ,τ}` for two rank-(½,½) tensors.
fn couple(
    d: usize,
    x: impl Fn(Half, Half) -> Result<BosonPoly>,
    y: impl Fn(Half, Half) -> Result<BosonPoly>,
    (s, t): (Half, Half),
    (sigma, tau): (Half, Half),
) -> Result<BosonPoly> {
    check_component(s, sigma)?;
    check_component(t, tau)?;
    let h = Half::HALF;
    let mut out = BosonPoly::zero(2 * d);
    for sp in projections(h) {
        for tp in projections(h) {
            let (s2, t2) = (sigma - sp, tau - tp);
            if s2.abs() > h || t2.abs() > h {
                continue;
            }
            let c = &cg_coeff(h, sp, h, s2, s, sigma)? * &cg_coeff(h, tp, h, t2, t, tau)?;
            if c.is_zero() {
                continue;
            }
            out = out.add(&x(sp, tp)?.mul(&y(s2, t2)?).scale(&c));
        }
    }
    Ok(out)
}

/// The shared corner/edge pattern of the rank-(1,1) tables for `𝒯` and `𝒟†`.
fn rank11_table(
    g: impl Fn(usize, usize) -> Result<BosonPoly>,
    (sigma, tau): (i32, i32),
    corner: Coeff,
    edge: Coeff,
) -> Result<BosonPoly> {
    let i = Coeff::i();
    let two_i = &Coeff::int(2) * &i;
    let lin = |terms: Vec<(Coeff, usize, usize)>| -> Result<BosonPoly> {
        let mut out = g(1, 1)?.scale(&Coeff::zero());
        for (c, m, n) in terms {
            out = out.add(&g(m, n)?.scale(&c));
        }
        Ok(out)
    };
    let one = Coeff::one();
    let neg = Coeff::int(-1);
    let sc = |s: i32| Coeff::int(i64::from(s));
    let poly = match (sigma, tau) {
        (s, t) if s.abs() == 1 && t == s => lin(vec![
            (one.clone(), 1, 1),
            (&sc(s) * &two_i, 1, 2),
            (neg.clone(), 2, 2),
        ])?
        .scale(&corner),
        (s, t) if s.abs() == 1 && t == -s => lin(vec![
            (one.clone(), 3, 3),
            (&sc(-s) * &two_i, 3, 4),
            (neg.clone(), 4, 4),
        ])?
        .scale(&corner),
        (s, 0) if s.abs() == 1 => lin(vec![
            (sc(s), 1, 3),
            (-&i, 1, 4),
            (i.clone(), 2, 3),
            (sc(s), 2, 4),
        ])?
        .scale(&edge),
        (0, t) if t.abs() == 1 => lin(vec![
            (sc(t), 1, 3),
            (i.clone(), 1, 4),
            (i.clone(), 2, 3),
            (sc(-t), 2, 4),
        ])?
        .scale(&edge),
        _ => {
            return Err(Error::Label(format!(
                "no corner/edge table entry for ({sigma},{tau})"
            )))
        }
    };
    Ok(poly)
}

/// Builds a generator for the `2D`-mode oscillator.
pub fn build_generator(g: &Generator, d: usize) -> Result<BosonPoly> {
    use Generator::*;
    if d < 2 {
        return Err(Error::UnsupportedDimension(d, "need D >= 2".into()));
    }
    let n = 2 * d;
    let gen = |x: Generator| build_generator(&x, d);
    let half = Coeff::ratio(1, 2);
    match *g {
        Identity => Ok(BosonPoly::identity(n)),
        AlphaDag(mu) => Ok(BosonPoly::creation(n, mode(d, mu)?)),
        Alpha(mu) => Ok(BosonPoly::annihilation(n, mode(d, mu)?)),
        E(mu, nu) => {
            let (a, b) = (mode(d, mu)?, mode(d, nu)?);
            let p = BosonPoly::creation(n, a).mul(&BosonPoly::annihilation(n, b));
            Ok(p.add(&BosonPoly::constant(n, Coeff::ratio(delta(a, b), 2))))
        }
        Ebar(mu, nu) => {
            let e = gen(E(mu, nu))?;
            if mu == nu {
                let trace = gen(Casimir1)?.scale(&Coeff::ratio(1, n as i64));
                Ok(e.sub(&trace))
            } else {
                Ok(e)
            }
        }
        L(mu, nu) => Ok(gen(E(mu, nu))?.sub(&gen(E(nu, mu))?).scale(&(-&Coeff::i()))),
        T(mu, nu) => Ok(gen(Ebar(mu, nu))?.add(&gen(Ebar(nu, mu))?)),
        Ddag(mu, nu) => Ok(gen(AlphaDag(mu))?.mul(&gen(AlphaDag(nu))?)),
        Dlow(mu, nu) => Ok(gen(Alpha(mu))?.mul(&gen(Alpha(nu))?)),
        Casimir1 => (1..=n).try_fold(BosonPoly::zero(n), |acc, mu| Ok(acc.add(&gen(E(mu, mu))?))),
        HOsc => {
            let r = Coeff::inv_sqrt2();
            let mut h = BosonPoly::zero(n);
            for mu in 1..=n {
                let (ad, a) = (gen(AlphaDag(mu))?, gen(Alpha(mu))?);
                let x = a.add(&ad).scale(&r);
                let p = a.sub(&ad).scale(&r);
                h = h.add(&x.mul(&x)).sub(&p.mul(&p));
            }
            Ok(h)
        }
        J(i) | K(i) => {
            require_d2(d, g)?;
            let (j, k) = match i {
                1 => (2, 3),
                2 => (3, 1),
                3 => (1, 2),
                _ => return Err(Error::Label(format!("su(2) component {i} outside 1..=3"))),
            };
            let sign = if matches!(g, J(_)) { -1 } else { 1 };
            Ok(gen(L(j, k))?
                .add(&gen(L(i, 4))?.scale(&Coeff::int(sign)))
                .scale(&half))
        }
        JLadder(s) | KLadder(s) => {
            let (x, y) = if matches!(g, JLadder(_)) {
                (J(1), J(2))
            } else {
                (K(1), K(2))
            };
            let c = &Coeff::int(i64::from(s.signum())) * &Coeff::i();
            Ok(gen(x)?.add(&gen(y)?.scale(&c)))
        }
        JSpherical(s) | KSpherical(s) => {
            require_d2(d, g)?;
            let (rank, comp) = if matches!(g, JSpherical(_)) {
                ((Half::ONE, Half::ZERO), (Half::int(s), Half::ZERO))
            } else {
                ((Half::ZERO, Half::ONE), (Half::ZERO, Half::int(s)))
            };
            couple(
                d,
                |a, b| gen(AdagTensor(a, b)),
                |a, b| gen(ATensor(a, b)),
                rank,
                comp,
            )
        }
        AdagTensor(s, t) => {
            require_d2(d, g)?;
            check_component(Half::HALF, s)?;
            check_component(Half::HALF, t)?;
            let i = Coeff::i();
            let r = Coeff::inv_sqrt2();
            let pm = if s.twice() > 0 { 1 } else { -1 };
            let signed_i = &Coeff::int(pm) * &i;
            if s == t {
                // ∓(α†₁ ± iα†₂)/√2
                let p = gen(AlphaDag(1))?.add(&gen(AlphaDag(2))?.scale(&signed_i));
                Ok(p.scale(&(&Coeff::int(-pm) * &r)))
            } else {
                // (α†₃ ∓ iα†₄)/√2 for σ = ±½, τ = ∓½
                let p = gen(AlphaDag(3))?.sub(&gen(AlphaDag(4))?.scale(&signed_i));
                Ok(p.scale(&r))
            }
        }
        ATensor(s, t) => {
            let sign = Coeff::sign(i64::from(2 - s.twice() - t.twice()) / 2);
            Ok(gen(AdagTensor(-s, -t))?.adjoint().scale(&sign))
        }
        TTensor(s, t) => couple(
            d,
            |a, b| gen(AdagTensor(a, b)),
            |a, b| gen(ATensor(a, b)),
            (Half::ONE, Half::ONE),
            (Half::int(s), Half::int(t)),
        ),
        DdagTensor(s, t) => couple(
            d,
            |a, b| gen(AdagTensor(a, b)),
            |a, b| gen(AdagTensor(a, b)),
            (Half::ONE, Half::ONE),
            (Half::int(s), Half::int(t)),
        ),
        DlowTensor(s, t) => {
            let sign = Coeff::sign(i64::from(s + t));
            Ok(gen(DdagTensor(-s, -t))?.adjoint().scale(&sign))
        }
        DdagScalar => Ok(couple(
            d,
            |a, b| gen(AdagTensor(a, b)),
            |a, b| gen(AdagTensor(a, b)),
            (Half::ZERO, Half::ZERO),
            (Half::ZERO, Half::ZERO),
        )?
        .scale(&Coeff::int(-2))),
        DlowScalar => Ok(gen(DdagScalar)?.adjoint()),
        ScalarAA => couple(
            d,
            |a, b| gen(AdagTensor(a, b)),
            |a, b| gen(ATensor(a, b)),
            (Half::ZERO, Half::ZERO),
            (Half::ZERO, Half::ZERO),
        ),
        TTable(s, t) => {
            require_d2(d, g)?;
            if (s, t) == (0, 0) {
                return Ok(gen(T(1, 1))?.add(&gen(T(2, 2))?).scale(&half));
            }
            rank11_table(
                |m, k| gen(T(m, k)),
                (s, t),
                Coeff::ratio(-1, 4),
                Coeff::sqrt2(1, 4),
            )
        }
        DdagTable(s, t) => {
            require_d2(d, g)?;
            if (s, t) == (0, 0) {
                let p = gen(Ddag(3, 3))?
                    .add(&gen(Ddag(4, 4))?)
                    .sub(&gen(Ddag(1, 1))?)
                    .sub(&gen(Ddag(2, 2))?);
                return Ok(p.scale(&half));
            }
            rank11_table(
                |m, k| gen(Ddag(m, k)),
                (s, t),
                half.clone(),
                Coeff::sqrt2(-1, 2),
            )
        }
        DdagTraceTable => (1..=n).try_fold(BosonPoly::zero(n), |acc, mu| {
            Ok(acc.add(&gen(Ddag(mu, mu))?))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adag_tensor_display() {
        let p = build_generator(&Generator::AdagTensor(Half::HALF, Half::HALF), 2).unwrap();
        let ad1 = BosonPoly::creation(4, 0);
        let ad2 = BosonPoly::creation(4, 1);
        let expect = ad1.add(&ad2.scale(&Coeff::i())).scale(&Coeff::sqrt2(-1, 2));
        assert_eq!(p, expect);
    }

    #[test]
    fn tensors_need_d2() {
        let e = build_generator(&Generator::TTensor(1, 1), 3).unwrap_err();
        assert!(matches!(e, Error::UnsupportedDimension(3, _)));
        assert!(build_generator(&Generator::E(7, 1), 3).is_err());
    }

    #[test]
    fn e12_e21_commutator() {
        let e = |m, n| build_generator(&Generator::E(m, n), 2).unwrap();
        assert_eq!(e(1, 2).commutator(&e(2, 1)), e(1, 1).sub(&e(2, 2)));
    }
}
