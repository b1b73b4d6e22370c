//! Half-integer labels stored as doubled integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A number `k/2` with `k` an integer. The field holds `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Half(pub i32);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    pub const fn from_twice(twice: i32) -> Self {
        Half(twice)
    }

    pub const fn int(n: i32) -> Self {
        Half(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn abs(self) -> Self {
        Half(self.0.abs())
    }

    /// Integer value, if this is one.
    pub fn as_int(self) -> Option<i32> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Exact `f64` -> `Half`, when `2x` is an integer.
    pub fn from_f64(x: f64) -> Option<Self> {
        let t = 2.0 * x;
        (t.fract() == 0.0 && t.abs() < f64::from(i32::MAX)).then_some(Half(t as i32))
    }

    /// `(-1)^self` for an integer value.
    pub fn phase(self) -> i32 {
        let n = self.as_int().expect("phase of a non-integer exponent");
        if n.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a half-integer: {0:?}")]
pub struct ParseHalfError(pub String);

impl FromStr for Half {
    type Err = ParseHalfError;

    /// Accepts `3`, `-1/2`, `1.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfError(s.to_string());
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| err())?;
            match den.trim() {
                "1" => Ok(Half(2 * num)),
                "2" => Ok(Half(num)),
                _ => Err(err()),
            }
        } else if let Ok(n) = s.parse::<i32>() {
            Ok(Half(2 * n))
        } else {
            let x: f64 = s.parse().map_err(|_| err())?;
            Half::from_f64(x).ok_or_else(err)
        }
    }
}

/// All values `j, j-1, ..., -j`.
pub fn projections(j: Half) -> impl Iterator<Item = Half> {
    (0..=j.0).map(move |k| Half(j.0 - 2 * k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<Half>().unwrap(), Half(3));
        assert_eq!("-1/2".parse::<Half>().unwrap(), Half(-1));
        assert_eq!("2".parse::<Half>().unwrap(), Half(4));
        assert_eq!("1.5".parse::<Half>().unwrap(), Half(3));
        assert!("1/3".parse::<Half>().is_err());
        assert!("0.25".parse::<Half>().is_err());
        assert_eq!(Half(3).to_string(), "3/2");
        assert_eq!(Half(-4).to_string(), "-2");
    }

    #[test]
    fn projections_of_three_halves() {
        let ms: Vec<_> = projections(Half(3)).collect();
        assert_eq!(ms, vec![Half(3), Half(1), Half(-1), Half(-3)]);
    }

    #[test]
    fn phase_signs() {
        assert_eq!(Half(0).phase(), 1);
        assert_eq!(Half(2).phase(), -1);
        assert_eq!(Half(-2).phase(), -1);
    }
}
