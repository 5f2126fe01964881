//! Exact rational scalar used for every coordinate and distance in the crate.
//!
//! All arithmetic is arbitrary-precision and never rounds. Values print and
//! parse as `"p/q"` strings (plain `"p"` for integers); reports never emit
//! decimals except through [`Rational::to_decimal_string`], which is an
//! explicitly approximate rendering.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (maintained by the underlying representation).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Rational {
        assert!(denom != 0, "rational denominator must be nonzero");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Rational {
        Rational(BigRational::from_integer(n))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Rational {
        assert!(!denom.is_zero(), "rational denominator must be nonzero");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    /// 2^k for k ≥ 0.
    pub fn two_pow(k: u32) -> Rational {
        Rational(BigRational::from_integer(BigInt::one() << k))
    }

    /// 1/2^k for k ≥ 0.
    pub fn inv_two_pow(k: u32) -> Rational {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn min(self, other: Rational) -> Rational {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn floor(&self) -> Rational {
        Rational(self.0.floor())
    }

    /// Fractional part in `[0, 1)`: `x - floor(x)`.
    pub fn mod_one(&self) -> Rational {
        Rational(&self.0 - self.0.floor())
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "division by zero");
        Rational(self.0.recip())
    }

    /// Approximate `f64` value; only for display heuristics, never for logic.
    pub fn to_f64_approx(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Parse `"p/q"` or `"p"` with optional sign.
    pub fn parse(s: &str) -> Result<Rational> {
        let s = s.trim();
        let bad = || Error::BadRational(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(p, q)))
            }
            None => {
                let p = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(p)))
            }
        }
    }

    /// Decimal approximation with `sig` significant digits, round-half-even.
    /// Exact when the value terminates within `sig` digits. Scientific
    /// notation is used outside `[1e-4, 1e12)`.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        assert!(sig > 0);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let p = self.numer().abs().into_parts().1;
        let q = self.denom().abs().into_parts().1;

        // Decimal exponent e with 10^e <= p/q < 10^(e+1).
        let ten = num_bigint::BigUint::from(10u32);
        let mut e: i64 = 0;
        let mut hi = q.clone(); // p/q < 10^(e+1)  <=>  p < q*10^(e+1)
        let mut lo = p.clone(); // p/q >= 10^e     <=>  p*?? ...
        // Normalize by scaling whichever side is smaller.
        loop {
            if lo >= &hi * &ten {
                hi *= &ten;
                e += 1;
            } else if lo < hi {
                lo *= &ten;
                e -= 1;
            } else {
                break;
            }
        }
        // Now 10^e <= p/q < 10^(e+1). Round p/q * 10^(sig-1-e) to integer.
        let shift = sig as i64 - 1 - e;
        let (num, den) = if shift >= 0 {
            (p * ten.pow(shift as u32), q)
        } else {
            (p, q * ten.pow((-shift) as u32))
        };
        let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
        let mut digits = {
            let twice = &rem * 2u32;
            let round_up = match twice.cmp(&den) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => num_integer::Integer::is_odd(&quot),
            };
            if round_up {
                quot + 1u32
            } else {
                quot
            }
        }
        .to_string();
        // Rounding may carry into an extra digit (e.g. 999.95 -> 1000).
        let mut exp = e;
        if digits.len() > sig {
            digits.truncate(sig);
            exp += 1;
        }
        let digits = digits.trim_end_matches('0');
        let digits = if digits.is_empty() { "0" } else { digits };

        let sign = if neg { "-" } else { "" };
        if (-4..12).contains(&exp) {
            if exp >= 0 {
                let exp = exp as usize;
                if digits.len() > exp + 1 {
                    format!("{sign}{}.{}", &digits[..=exp], &digits[exp + 1..])
                } else {
                    let zeros = "0".repeat(exp + 1 - digits.len());
                    format!("{sign}{digits}{zeros}")
                }
            } else {
                let zeros = "0".repeat((-exp - 1) as usize);
                format!("{sign}0.{zeros}{digits}")
            }
        } else if digits.len() > 1 {
            format!("{sign}{}.{}e{}", &digits[..1], &digits[1..], exp)
        } else {
            format!("{sign}{digits}e{exp}")
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        Rational::parse(s)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_int(n)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        Rational::parse(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Shorthand used pervasively in tests and gallery constructions.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}
