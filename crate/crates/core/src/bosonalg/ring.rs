//! Exact coefficients in `Q(√2)(i)`: `(r₁ + s₁√2) + i(r₂ + s₂√2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::wigner::SignedSqrt;

/// `r + s√2` with rational `r`, `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub r: BigRational,
    pub s: BigRational,
}

impl QSqrt2 {
    pub fn zero() -> Self {
        QSqrt2 {
            r: BigRational::zero(),
            s: BigRational::zero(),
        }
    }

    pub fn rational(r: BigRational) -> Self {
        QSqrt2 {
            r,
            s: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.r.to_f64().unwrap() + self.s.to_f64().unwrap() * std::f64::consts::SQRT_2
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2 {
            r: &self.r + &o.r,
            s: &self.s + &o.s,
        }
    }
}

impl Sub for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2 {
            r: &self.r - &o.r,
            s: &self.s - &o.s,
        }
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2 {
            r: &self.r * &o.r + two * &self.s * &o.s,
            s: &self.r * &o.s + &self.s * &o.r,
        }
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 {
            r: -&self.r,
            s: -&self.s,
        }
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r.is_zero(), self.s.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(&self.r)),
            (true, false) => write!(f, "{}*sqrt2", fmt_rat(&self.s)),
            (false, false) => {
                let sign = if self.s.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}*sqrt2",
                    fmt_rat(&self.r),
                    sign,
                    fmt_rat(&self.s.abs())
                )
            }
        }
    }
}

/// An element of `Q(√2)(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coeff {
    pub re: QSqrt2,
    pub im: QSqrt2,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff {
            re: QSqrt2::zero(),
            im: QSqrt2::zero(),
        }
    }

    pub fn one() -> Self {
        Coeff::int(1)
    }

    pub fn int(n: i64) -> Self {
        Coeff::ratio(n, 1)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Coeff {
            re: QSqrt2::rational(BigRational::new(num.into(), den.into())),
            im: QSqrt2::zero(),
        }
    }

    pub fn i() -> Self {
        Coeff {
            re: QSqrt2::zero(),
            im: QSqrt2::rational(BigRational::one()),
        }
    }

    /// `num/den · √2`.
    pub fn sqrt2(num: i64, den: i64) -> Self {
        Coeff {
            re: QSqrt2 {
                r: BigRational::zero(),
                s: BigRational::new(num.into(), den.into()),
            },
            im: QSqrt2::zero(),
        }
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Coeff::sqrt2(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Coeff {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Exact conversion of a signed square root, when it lies in `Q(√2)`.
    pub fn from_signed_sqrt(x: &SignedSqrt) -> Result<Self> {
        let (r, k) = x.to_radical();
        let k = k.to_i64().unwrap_or(0);
        let re = match k {
            1 => QSqrt2::rational(r),
            2 => QSqrt2 {
                r: BigRational::zero(),
                s: r,
            },
            _ => {
                return Err(Error::ParameterDomain(format!(
                    "sqrt({}) lies outside Q(sqrt2)",
                    x.square
                )))
            }
        };
        Ok(Coeff {
            re,
            im: QSqrt2::zero(),
        })
    }

    /// `(-1)^k`.
    pub fn sign(k: i64) -> Self {
        Coeff::int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        Coeff {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        Coeff {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        Coeff {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "i*({})", self.im),
            (false, false) => write!(f, "({})+i*({})", self.re, self.im),
        }
    }
}
