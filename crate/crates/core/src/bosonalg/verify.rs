//! Exhaustive exact checks of the commutation relations of
//! `w(2D) ⊕_s sp(4D,R)`, its su(2D)/so(2D) subalgebras and the D=2 tensors.

use rayon::prelude::*;
use serde::Serialize;

use super::generators::{build_generator, Generator};
use super::poly::BosonPoly;
use super::ring::Coeff;
use crate::error::{Error, Result};
use crate::half::{projections, Half};

/// How the left-hand side of a relation is formed.
#[derive(Clone, Debug)]
pub enum Lhs {
    /// `[x, y]`.
    Commutator(BosonPoly, BosonPoly),
    /// `x†`.
    Adjoint(BosonPoly),
    /// `x` itself.
    Value(BosonPoly),
}

impl Lhs {
    pub fn evaluate(&self) -> BosonPoly {
        match self {
            Lhs::Commutator(x, y) => x.commutator(y),
            Lhs::Adjoint(x) => x.adjoint(),
            Lhs::Value(x) => x.clone(),
        }
    }
}

/// One identity `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub lhs: Lhs,
    pub rhs: BosonPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    #[serde(rename = "relation-id")]
    pub id: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    #[serde(rename = "D")]
    pub d: usize,
    pub checks: usize,
    pub failures: usize,
    pub relations: Vec<RelationCheck>,
}

impl AlgebraReport {
    pub fn failed(&self) -> impl Iterator<Item = &RelationCheck> {
        self.relations.iter().filter(|r| r.status == Status::Fail)
    }
}

struct Builder {
    d: usize,
    out: Vec<Relation>,
}

impl Builder {
    fn g(&self, x: Generator) -> Result<BosonPoly> {
        build_generator(&x, self.d)
    }

    fn zero(&self) -> BosonPoly {
        BosonPoly::zero(2 * self.d)
    }

    fn push(&mut self, id: String, lhs: Lhs, rhs: BosonPoly) {
        self.out.push(Relation { id, lhs, rhs });
    }

    fn comm(&mut self, x: Generator, y: Generator, rhs: BosonPoly) -> Result<()> {
        let lhs = Lhs::Commutator(self.g(x)?, self.g(y)?);
        self.push(format!("[{x},{y}]"), lhs, rhs);
        Ok(())
    }

    fn adj(&mut self, x: Generator, rhs: BosonPoly) -> Result<()> {
        let lhs = Lhs::Adjoint(self.g(x)?);
        self.push(format!("({x})^dag"), lhs, rhs);
        Ok(())
    }

    fn equal(&mut self, x: Generator, rhs: BosonPoly) -> Result<()> {
        let lhs = Lhs::Value(self.g(x)?);
        self.push(format!("{x}"), lhs, rhs);
        Ok(())
    }

    /// `Σ c_k · G_k`.
    fn lin(&self, terms: &[(i64, Generator)]) -> Result<BosonPoly> {
        terms.iter().try_fold(self.zero(), |acc, (c, x)| {
            Ok(if *c == 0 {
                acc
            } else {
                acc.add(&self.g(*x)?.scale(&Coeff::int(*c)))
            })
        })
    }
}

fn d(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

fn weyl_and_cross(b: &mut Builder) -> Result<()> {
    use Generator::*;
    let n = 2 * b.d;
    for mu in 1..=n {
        for nu in 1..=n {
            b.comm(Alpha(mu), AlphaDag(nu), b.lin(&[(d(mu, nu), Identity)])?)?;
            b.comm(Alpha(mu), Alpha(nu), b.zero())?;
            b.comm(AlphaDag(mu), AlphaDag(nu), b.zero())?;
        }
    }
    for mu in 1..=n {
        for nu in 1..=n {
            for m2 in 1..=n {
                b.comm(
                    E(mu, nu),
                    AlphaDag(m2),
                    b.lin(&[(d(nu, m2), AlphaDag(mu))])?,
                )?;
                b.comm(E(mu, nu), Alpha(m2), b.lin(&[(-d(mu, m2), Alpha(nu))])?)?;
                b.comm(
                    Dlow(mu, nu),
                    AlphaDag(m2),
                    b.lin(&[(d(mu, m2), Alpha(nu)), (d(nu, m2), Alpha(mu))])?,
                )?;
                b.comm(
                    Ddag(mu, nu),
                    Alpha(m2),
                    b.lin(&[(-d(mu, m2), AlphaDag(nu)), (-d(nu, m2), AlphaDag(mu))])?,
                )?;
                b.comm(Dlow(mu, nu), Alpha(m2), b.zero())?;
                b.comm(Ddag(mu, nu), AlphaDag(m2), b.zero())?;
            }
        }
    }
    Ok(())
}

fn unitary_and_symplectic(b: &mut Builder) -> Result<()> {
    use Generator::*;
    let n = 2 * b.d;
    let quads: Vec<(usize, usize, usize, usize)> = (1..=n)
        .flat_map(|a| {
            (1..=n).flat_map(move |c| (1..=n).flat_map(move |e| (1..=n).map(move |f| (a, c, e, f))))
        })
        .collect();
    for &(mu, nu, m2, n2) in &quads {
        b.comm(
            E(mu, nu),
            E(m2, n2),
            b.lin(&[(d(nu, m2), E(mu, n2)), (-d(mu, n2), E(m2, nu))])?,
        )?;
        b.comm(
            Ebar(mu, nu),
            Ebar(m2, n2),
            b.lin(&[(d(nu, m2), Ebar(mu, n2)), (-d(mu, n2), Ebar(m2, nu))])?,
        )?;
        let i = Coeff::i();
        let so = b
            .lin(&[
                (d(mu, m2), L(nu, n2)),
                (-d(mu, n2), L(nu, m2)),
                (-d(nu, m2), L(mu, n2)),
                (d(nu, n2), L(mu, m2)),
            ])?
            .scale(&i);
        b.comm(L(mu, nu), L(m2, n2), so)?;
        b.comm(
            E(mu, nu),
            Ddag(m2, n2),
            b.lin(&[(d(nu, m2), Ddag(mu, n2)), (d(nu, n2), Ddag(mu, m2))])?,
        )?;
        b.comm(
            E(mu, nu),
            Dlow(m2, n2),
            b.lin(&[(-d(mu, m2), Dlow(nu, n2)), (-d(mu, n2), Dlow(nu, m2))])?,
        )?;
        b.comm(
            Dlow(mu, nu),
            Ddag(m2, n2),
            b.lin(&[
                (d(mu, m2), E(n2, nu)),
                (d(mu, n2), E(m2, nu)),
                (d(nu, m2), E(n2, mu)),
                (d(nu, n2), E(m2, mu)),
            ])?,
        )?;
        b.comm(Dlow(mu, nu), Dlow(m2, n2), b.zero())?;
        b.comm(Ddag(mu, nu), Ddag(m2, n2), b.zero())?;
    }
    for mu in 1..=n {
        for nu in 1..=n {
            b.adj(E(mu, nu), b.g(E(nu, mu))?)?;
            b.adj(Ebar(mu, nu), b.g(Ebar(nu, mu))?)?;
            b.adj(L(mu, nu), b.g(L(mu, nu))?)?;
            b.equal(L(mu, nu), b.g(L(nu, mu))?.scale(&Coeff::int(-1)))?;
            b.adj(T(mu, nu), b.g(T(mu, nu))?)?;
            b.adj(Dlow(mu, nu), b.g(Ddag(mu, nu))?)?;
            b.comm(Casimir1, Ebar(mu, nu), b.zero())?;
            b.comm(HOsc, Ebar(mu, nu), b.zero())?;
        }
    }
    let trace = (1..=n).try_fold(b.zero(), |acc, mu| {
        Ok::<_, Error>(acc.add(&b.g(Ebar(mu, mu))?))
    })?;
    b.push("sum Ebar_mumu".into(), Lhs::Value(trace), b.zero());
    b.equal(HOsc, b.g(Casimir1)?.scale(&Coeff::int(2)))?;
    Ok(())
}

/// `[(s ∓ σ)(s ± σ + 1)]^{1/2}` as an exact coefficient (doubled labels).
fn ladder(s: Half, sigma: Half, up: bool) -> Result<Coeff> {
    let (a, b) = if up {
        (s - sigma, s + sigma + Half::ONE)
    } else {
        (s + sigma, s - sigma + Half::ONE)
    };
    let sq = i64::from(a.twice()) * i64::from(b.twice());
    // sq/4 is the radicand; for ranks ≤ 1 it is 0, 1 or 2.
    match sq {
        0 => Ok(Coeff::zero()),
        4 => Ok(Coeff::one()),
        8 => Ok(Coeff::sqrt2(1, 1)),
        _ => Err(Error::ParameterDomain(format!(
            "ladder radicand {sq}/4 outside Q(sqrt2)"
        ))),
    }
}

fn tensor_relations(
    b: &mut Builder,
    rank: (Half, Half),
    comp: impl Fn(Half, Half) -> Generator,
) -> Result<()> {
    use Generator::*;
    let (s, t) = rank;
    for sigma in projections(s) {
        for tau in projections(t) {
            let x = comp(sigma, tau);
            b.comm(
                J(3),
                x,
                b.g(x)?.scale(&Coeff::ratio(i64::from(sigma.twice()), 2)),
            )?;
            b.comm(
                K(3),
                x,
                b.g(x)?.scale(&Coeff::ratio(i64::from(tau.twice()), 2)),
            )?;
            for (up, step) in [(true, Half::ONE), (false, -Half::ONE)] {
                let sgn = if up { 1 } else { -1 };
                let js = sigma + step;
                let rhs_j = if js.abs() <= s {
                    b.g(comp(js, tau))?.scale(&ladder(s, sigma, up)?)
                } else {
                    b.zero()
                };
                b.comm(JLadder(sgn), x, rhs_j)?;
                let kt = tau + step;
                let rhs_k = if kt.abs() <= t {
                    b.g(comp(sigma, kt))?.scale(&ladder(t, tau, up)?)
                } else {
                    b.zero()
                };
                b.comm(KLadder(sgn), x, rhs_k)?;
            }
        }
    }
    Ok(())
}

fn su2_pair(b: &mut Builder) -> Result<()> {
    use Generator::*;
    let i = Coeff::i();
    let cyc = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];
    for &(p, q, r) in &cyc {
        b.comm(J(p), J(q), b.g(J(r))?.scale(&i))?;
        b.comm(K(p), K(q), b.g(K(r))?.scale(&i))?;
    }
    for p in 1..=3 {
        for q in 1..=3 {
            b.comm(J(p), K(q), b.zero())?;
        }
        b.adj(J(p), b.g(J(p))?)?;
        b.adj(K(p), b.g(K(p))?)?;
    }
    // Spherical components from the coupling agree with the Cartesian ones.
    let r = Coeff::inv_sqrt2();
    b.equal(JSpherical(0), b.g(J(3))?)?;
    b.equal(KSpherical(0), b.g(K(3))?)?;
    for s in [1i8, -1] {
        let c = &Coeff::int(-i64::from(s)) * &r;
        b.equal(JSpherical(i32::from(s)), b.g(JLadder(s))?.scale(&c))?;
        b.equal(KSpherical(i32::from(s)), b.g(KLadder(s))?.scale(&c))?;
    }
    Ok(())
}

fn d2_tensors(b: &mut Builder) -> Result<()> {
    use Generator::*;
    let h = Half::HALF;
    let one = Half::ONE;
    let int = |x: Half| x.twice() / 2;
    su2_pair(b)?;
    tensor_relations(b, (h, h), AdagTensor)?;
    tensor_relations(b, (h, h), ATensor)?;
    tensor_relations(b, (one, one), |s, t| TTensor(int(s), int(t)))?;
    tensor_relations(b, (one, one), |s, t| DdagTensor(int(s), int(t)))?;
    tensor_relations(b, (one, one), |s, t| DlowTensor(int(s), int(t)))?;
    tensor_relations(b, (Half::ZERO, Half::ZERO), |_, _| DdagScalar)?;
    tensor_relations(b, (Half::ZERO, Half::ZERO), |_, _| DlowScalar)?;
    for s in -1..=1 {
        for t in -1..=1 {
            b.equal(TTensor(s, t), b.g(TTable(s, t))?)?;
            b.equal(DdagTensor(s, t), b.g(DdagTable(s, t))?)?;
        }
    }
    b.equal(
        TTensor(0, 0),
        b.g(T(3, 3))?
            .add(&b.g(T(4, 4))?)
            .scale(&Coeff::ratio(-1, 2)),
    )?;
    b.equal(
        ScalarAA,
        b.g(Casimir1)?
            .sub(&b.lin(&[(2, Identity)])?)
            .scale(&Coeff::ratio(1, 2)),
    )?;
    b.equal(DdagScalar, b.g(DdagTraceTable)?)?;
    b.adj(DlowScalar, b.g(DdagScalar)?)?;
    for s in [h, -h] {
        for t in [h, -h] {
            let sign = Coeff::sign(i64::from(2 - s.twice() - t.twice()) / 2);
            b.adj(AdagTensor(-s, -t), b.g(ATensor(s, t))?.scale(&sign))?;
        }
    }
    Ok(())
}

/// The full list of identities checked for `D` (tensor families only for D=2).
pub fn relations(d: usize) -> Result<Vec<Relation>> {
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(
            d,
            "relation suite covers D=2 and D=3".into(),
        ));
    }
    let mut b = Builder { d, out: Vec::new() };
    weyl_and_cross(&mut b)?;
    unitary_and_symplectic(&mut b)?;
    if d == 2 {
        d2_tensors(&mut b)?;
    }
    Ok(b.out)
}

/// Checks every relation exactly. `perturb`, if given, adds `I` to the
/// right-hand side of that relation; used to show the checker detects a
/// single wrong structure constant.
pub fn verify_relations_with(d: usize, perturb: Option<usize>) -> Result<AlgebraReport> {
    let mut rels = relations(d)?;
    if let Some(k) = perturb {
        let rel = rels
            .get_mut(k)
            .ok_or_else(|| Error::Usage(format!("no relation with index {k}")))?;
        rel.rhs = rel.rhs.add(&BosonPoly::identity(2 * d));
    }
    let relations: Vec<RelationCheck> = rels
        .par_iter()
        .map(|r| {
            let lhs = r.lhs.evaluate();
            let status = if lhs == r.rhs {
                Status::Pass
            } else {
                Status::Fail
            };
            RelationCheck {
                id: r.id.clone(),
                status,
                lhs: lhs.canonical(),
                rhs: r.rhs.canonical(),
            }
        })
        .collect();
    let failures = relations
        .iter()
        .filter(|r| r.status == Status::Fail)
        .count();
    Ok(AlgebraReport {
        d,
        checks: relations.len(),
        failures,
        relations,
    })
}

pub fn verify_relations(d: usize) -> Result<AlgebraReport> {
    verify_relations_with(d, None)
}
