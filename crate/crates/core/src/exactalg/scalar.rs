use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact complex number with arbitrary-precision rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl CScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CScalar { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        CScalar { re, im: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num/den + i * 0`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn complex(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        CScalar {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn zero() -> Self {
        CScalar::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CScalar { re: self.re.clone(), im: -&self.im }
    }

    /// |z|^2, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular("division by zero scalar".into()));
        }
        let d = self.norm_sqr();
        Ok(CScalar { re: &self.re / &d, im: -&self.im / &d })
    }

    pub fn div(&self, other: &CScalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let r = BigRational::from_str(s).map_err(|e| Error::Parse(format!("rational '{s}': {e}")))?;
    Ok(r)
}

impl fmt::Debug for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl From<i64> for CScalar {
    fn from(v: i64) -> Self {
        CScalar::from_int(v)
    }
}

impl From<BigRational> for CScalar {
    fn from(v: BigRational) -> Self {
        CScalar::real(v)
    }
}

impl<'a> Add<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn add(self, rhs: &CScalar) -> CScalar {
        CScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn sub(self, rhs: &CScalar) -> CScalar {
        CScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn mul(self, rhs: &CScalar) -> CScalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return CScalar::real(&self.re * &rhs.re);
        }
        CScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CScalar> for CScalar {
            type Output = CScalar;
            fn $method(self, rhs: CScalar) -> CScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CScalar> for CScalar {
            type Output = CScalar;
            fn $method(self, rhs: &CScalar) -> CScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CScalar> for CScalar {
    fn add_assign(&mut self, rhs: &CScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&CScalar> for CScalar {
    fn sub_assign(&mut self, rhs: &CScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&CScalar> for CScalar {
    fn mul_assign(&mut self, rhs: &CScalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for CScalar {
    fn sum<I: Iterator<Item = CScalar>>(iter: I) -> Self {
        iter.fold(CScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl std::iter::Product for CScalar {
    fn product<I: Iterator<Item = CScalar>>(iter: I) -> Self {
        iter.fold(CScalar::one(), |acc, x| &acc * &x)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    re: String,
    im: String,
}

impl Serialize for CScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexRepr { re: format_rational(&self.re), im: format_rational(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // accept {"re":..,"im":..} or a bare "p/q" string for real values
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Either {
            Complex(ComplexRepr),
            Real(String),
            Int(i64),
        }
        let parsed = Either::deserialize(d)?;
        let value = match parsed {
            Either::Complex(c) => CScalar {
                re: parse_rational(&c.re).map_err(serde::de::Error::custom)?,
                im: parse_rational(&c.im).map_err(serde::de::Error::custom)?,
            },
            Either::Real(s) => CScalar::real(parse_rational(&s).map_err(serde::de::Error::custom)?),
            Either::Int(v) => CScalar::from_int(v),
        };
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_inverse() {
        let a = CScalar::complex(1, 2, 3, 1);
        let b = CScalar::complex(-2, 3, 1, 7);
        let prod = &a * &b;
        assert_eq!(prod.div(&b).unwrap(), a);
        assert!(CScalar::zero().inv().is_err());
        assert_eq!(&a - &a, CScalar::zero());
        assert_eq!(CScalar::ratio(2, 4), CScalar::ratio(1, 2));
    }

    #[test]
    fn json_uses_p_over_q() {
        let a = CScalar::complex(3, 1, -1, 2);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"re":"3/1","im":"-1/2"}"#);
        let back: CScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let bare: CScalar = serde_json::from_str(r#""5/3""#).unwrap();
        assert_eq!(bare, CScalar::ratio(5, 3));
    }
}
