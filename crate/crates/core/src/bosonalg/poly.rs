//! Normal-ordered polynomials in boson creation and annihilation operators.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::ring::Coeff;

/// `Π_μ (α†_μ)^{cre_μ} · Π_μ (α_μ)^{ann_μ}`. The identity `I` is the monomial
/// with all exponents zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub cre: Vec<u32>,
    pub ann: Vec<u32>,
}

impl Monomial {
    pub fn identity(modes: usize) -> Self {
        Monomial {
            cre: vec![0; modes],
            ann: vec![0; modes],
        }
    }

    pub fn degree(&self) -> u32 {
        self.cre.iter().chain(&self.ann).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.degree() == 0
    }

    pub fn modes(&self) -> usize {
        self.cre.len()
    }
}

/// Graded lexicographic: total degree first, then creation exponents, then
/// annihilation exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.cre.cmp(&self.cre))
            .then_with(|| other.ann.cmp(&self.ann))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut parts = Vec::new();
        for (tag, exps) in [("ad", &self.cre), ("a", &self.ann)] {
            for (mu, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("{tag}{}", mu + 1)),
                    _ => parts.push(format!("{tag}{}^{e}", mu + 1)),
                }
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// One letter of an operator word: `α†_mode` or `α_mode` (0-based mode).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub mode: usize,
    pub dagger: bool,
}

/// A finite sum of normal-ordered monomials with coefficients in `Q(√2)(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BosonPoly {
    modes: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

fn factorial(n: u32) -> i64 {
    (1..=i64::from(n)).product()
}

/// Product of two normal-ordered monomials, normal ordered. Each mode is
/// independent: `α^b (α†)^c = Σ_k C(b,k) C(c,k) k! (α†)^{c-k} α^{b-k}`.
fn monomial_product(x: &Monomial, y: &Monomial) -> Vec<(i64, Monomial)> {
    let modes = x.modes();
    let mut out = vec![(1i64, Monomial::identity(modes))];
    for mu in 0..modes {
        let (b, c) = (x.ann[mu], y.cre[mu]);
        let mut next = Vec::with_capacity(out.len() * (b.min(c) as usize + 1));
        for (coef, m) in &out {
            for k in 0..=b.min(c) {
                let mut m = m.clone();
                m.cre[mu] = x.cre[mu] + c - k;
                m.ann[mu] = b - k + y.ann[mu];
                next.push((coef * binomial(b, k) * binomial(c, k) * factorial(k), m));
            }
        }
        out = next;
    }
    out
}

impl BosonPoly {
    pub fn zero(modes: usize) -> Self {
        BosonPoly {
            modes,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(modes: usize) -> Self {
        BosonPoly::constant(modes, Coeff::one())
    }

    pub fn constant(modes: usize, c: Coeff) -> Self {
        BosonPoly::term(Monomial::identity(modes), c)
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        let mut p = BosonPoly::zero(m.modes());
        p.add_term(m, c);
        p
    }

    /// `α†_mu` (0-based mode).
    pub fn creation(modes: usize, mu: usize) -> Self {
        let mut m = Monomial::identity(modes);
        m.cre[mu] = 1;
        BosonPoly::term(m, Coeff::one())
    }

    /// `α_mu` (0-based mode).
    pub fn annihilation(modes: usize, mu: usize) -> Self {
        let mut m = Monomial::identity(modes);
        m.ann[mu] = 1;
        BosonPoly::term(m, Coeff::one())
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &BosonPoly) -> BosonPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BosonPoly) -> BosonPoly {
        self.add(&other.scale(&Coeff::int(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> BosonPoly {
        let mut out = BosonPoly::zero(self.modes);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &BosonPoly) -> BosonPoly {
        assert_eq!(self.modes, other.modes, "mode count mismatch");
        let mut out = BosonPoly::zero(self.modes);
        for (mx, cx) in &self.terms {
            for (my, cy) in &other.terms {
                let c = cx * cy;
                for (k, m) in monomial_product(mx, my) {
                    out.add_term(m, &c * &Coeff::int(k));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &BosonPoly) -> BosonPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// Hermitian adjoint. `(α†^γ α^β)† = α†^β α^γ` is already normal ordered.
    pub fn adjoint(&self) -> BosonPoly {
        let mut out = BosonPoly::zero(self.modes);
        for (m, c) in &self.terms {
            let adj = Monomial {
                cre: m.ann.clone(),
                ann: m.cre.clone(),
            };
            out.add_term(adj, c.conj());
        }
        out
    }

    /// Rebuilds the term map from scratch. Polynomials are kept normal ordered
    /// by construction, so this is the identity on values.
    pub fn normal_order(&self) -> BosonPoly {
        let mut out = BosonPoly::zero(self.modes);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Normal-ordered form of an arbitrary product of letters.
    pub fn from_word(modes: usize, word: &[Letter]) -> BosonPoly {
        word.iter().fold(BosonPoly::identity(modes), |acc, l| {
            let f = if l.dagger {
                BosonPoly::creation(modes, l.mode)
            } else {
                BosonPoly::annihilation(modes, l.mode)
            };
            acc.mul(&f)
        })
    }

    /// Canonical string, terms in increasing monomial order.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BosonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("[{c}]{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for BosonPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.canonical())
    }
}
