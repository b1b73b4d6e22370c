//! Exact su(2) Clebsch-Gordan coefficients (Condon-Shortley phase) via
//! Racah's single-sum formula.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::half::Half;

/// Arguments of `⟨j1 m1, j2 m2 | J M⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CgArg {
    pub j1: Half,
    pub m1: Half,
    pub j2: Half,
    pub m2: Half,
    pub j: Half,
    pub m: Half,
}

impl CgArg {
    pub fn new(j1: Half, m1: Half, j2: Half, m2: Half, j: Half, m: Half) -> Self {
        CgArg {
            j1,
            m1,
            j2,
            m2,
            j,
            m,
        }
    }

    fn selection_ok(&self) -> bool {
        let ok_proj = |j: Half, m: Half| {
            j.twice() >= 0 && m.abs().twice() <= j.twice() && (j.twice() - m.twice()) % 2 == 0
        };
        ok_proj(self.j1, self.m1)
            && ok_proj(self.j2, self.m2)
            && ok_proj(self.j, self.m)
            && self.m1 + self.m2 == self.m
            && (self.j1 - self.j2).abs().twice() <= self.j.twice()
            && self.j.twice() <= (self.j1 + self.j2).twice()
            && (self.j1 + self.j2 - self.j).is_integer()
    }
}

/// A real number `sign · sqrt(square)` with `square` a nonnegative rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSqrt {
    pub sign: i8,
    pub square: BigRational,
}

impl SignedSqrt {
    pub fn zero() -> Self {
        SignedSqrt {
            sign: 0,
            square: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.square.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    pub fn mul(&self, other: &SignedSqrt) -> SignedSqrt {
        let sign = self.sign * other.sign;
        if sign == 0 {
            return SignedSqrt::zero();
        }
        SignedSqrt {
            sign,
            square: &self.square * &other.square,
        }
    }

    /// Write as `r · sqrt(k)` with `k` a square-free positive integer.
    pub fn to_radical(&self) -> (BigRational, BigInt) {
        if self.sign == 0 {
            return (BigRational::zero(), BigInt::one());
        }
        // sqrt(p/q) = sqrt(p q) / q
        let pq = self.square.numer() * self.square.denom();
        let (outside, kernel) = split_square(&pq);
        let r = BigRational::new(outside, self.square.denom().clone());
        (if self.sign < 0 { -r } else { r }, kernel)
    }
}

/// Split `n > 0` as `a² k` with `k` square-free; returns `(a, k)`.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut kernel = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        for _ in 0..count / 2 {
            outside *= &p;
        }
        if count % 2 == 1 {
            kernel *= &p;
        }
        p += 1;
    }
    kernel *= rest;
    (outside, kernel)
}

/// Exact sum of terms `r_i · sqrt(k_i)`, grouped by square-free kernel.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SqrtSum {
    terms: BTreeMap<BigInt, BigRational>,
}

impl SqrtSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: &SignedSqrt) {
        if x.is_zero() {
            return;
        }
        let (r, k) = x.to_radical();
        let e = self
            .terms
            .entry(k.clone())
            .or_insert_with(BigRational::zero);
        *e += r;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if the sum is exactly the rational `q`.
    pub fn equals_rational(&self, q: &BigRational) -> bool {
        let mut d = self.clone();
        if !q.is_zero() {
            d.add(&SignedSqrt {
                sign: if q.is_negative() { 1 } else { -1 },
                square: q * q,
            });
        }
        d.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, r)| r.to_f64().unwrap() * k.to_f64().unwrap().sqrt())
            .sum()
    }
}

fn factorial(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Exact Condon-Shortley coefficient. Selection-rule violations give zero.
pub fn clebsch_gordan_exact(arg: &CgArg) -> SignedSqrt {
    if !arg.selection_ok() {
        return SignedSqrt::zero();
    }
    // All combinations below are integers once the selection rules hold.
    let t = |h: Half| i64::from(h.twice());
    let (j1, m1, j2, m2, j, m) = (
        t(arg.j1),
        t(arg.m1),
        t(arg.j2),
        t(arg.m2),
        t(arg.j),
        t(arg.m),
    );
    let half = |x: i64| {
        debug_assert!(x % 2 == 0);
        x / 2
    };
    let a = half(j1 + j2 - j);
    let b = half(j1 - m1);
    let c = half(j2 + m2);
    let d = half(j - j2 + m1);
    let e = half(j - j1 - m2);

    let mut sum = BigRational::zero();
    let kmin = 0.max(-d).max(-e);
    let kmax = a.min(b).min(c);
    for k in kmin..=kmax {
        let den = factorial(k)
            * factorial(a - k)
            * factorial(b - k)
            * factorial(c - k)
            * factorial(d + k)
            * factorial(e + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return SignedSqrt::zero();
    }
    let num = BigInt::from(j + 1)
        * factorial(half(j + j1 - j2))
        * factorial(half(j - j1 + j2))
        * factorial(a)
        * factorial(half(j + m))
        * factorial(half(j - m))
        * factorial(half(j1 - m1))
        * factorial(half(j1 + m1))
        * factorial(half(j2 - m2))
        * factorial(half(j2 + m2));
    let den = factorial(half(j1 + j2 + j) + 1);
    let prefactor = BigRational::new(num, den);
    let sign = if sum.is_positive() { 1 } else { -1 };
    SignedSqrt {
        sign,
        square: prefactor * &sum * &sum,
    }
}

/// `⟨j1 m1, j2 m2 | J M⟩` as a float.
pub fn clebsch_gordan(arg: &CgArg) -> f64 {
    clebsch_gordan_exact(arg).to_f64()
}

/// Shorthand taking the six labels directly.
pub fn cg(j1: Half, m1: Half, j2: Half, m2: Half, j: Half, m: Half) -> f64 {
    clebsch_gordan(&CgArg::new(j1, m1, j2, m2, j, m))
}

/// Double-CG Wigner-Eckart assembly for su(2)⊕su(2) tensors.
pub fn wigner_eckart(reduced: Complex64, cg_m: f64, cg_mp: f64) -> Complex64 {
    reduced * cg_m * cg_mp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_values() {
        let h = Half;
        assert!((cg(h(1), h(1), h(1), h(-1), h(2), h(0)) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((cg(h(2), h(2), h(2), h(-2), h(0), h(0)) - (1.0 / 3.0f64).sqrt()).abs() < 1e-15);
        assert!((cg(h(3), h(1), h(0), h(0), h(3), h(1)) - 1.0).abs() < 1e-15);
        assert_eq!(cg(h(1), h(1), h(1), h(1), h(0), h(0)), 0.0);
        assert_eq!(cg(h(1), h(1), h(1), h(1), h(6), h(2)), 0.0);
    }

    #[test]
    fn radical_form() {
        let x = SignedSqrt {
            sign: -1,
            square: BigRational::new(BigInt::from(8), BigInt::from(3)),
        };
        let (r, k) = x.to_radical();
        assert_eq!(k, BigInt::from(6));
        assert_eq!(r, BigRational::new(BigInt::from(-2), BigInt::from(3)));
    }
}
