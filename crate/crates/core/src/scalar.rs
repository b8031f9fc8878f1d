//! Exact Gaussian-rational scalars.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// `re + i·im` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ComplexScalar {
    pub re: Rational,
    pub im: Rational,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl ComplexScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexScalar { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        ComplexScalar::new(rat(re), rat(im))
    }

    pub fn real(re: Rational) -> Self {
        ComplexScalar::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        ComplexScalar::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        ComplexScalar::default()
    }

    pub fn one() -> Self {
        ComplexScalar::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, always real.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(ComplexScalar::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ComplexScalar::new(&self.re * r, &self.im * r)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => ComplexScalar::from_ints(1, 0),
            1 => ComplexScalar::from_ints(0, 1),
            2 => ComplexScalar::from_ints(-1, 0),
            _ => ComplexScalar::from_ints(0, -1),
        }
    }

    pub fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = ComplexScalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Largest absolute value among the real and imaginary parts.
    pub fn max_abs(&self) -> Rational {
        let a = self.re.abs();
        let b = self.im.abs();
        if a > b {
            a
        } else {
            b
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
    }
}

impl FromStr for ComplexScalar {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, with `a`, `b` integers or `p/q`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty complex literal".into()));
        }
        let imag_part = |p: &str| -> Result<Rational, Error> {
            match p {
                "" | "+" => Ok(rat(1)),
                "-" => Ok(rat(-1)),
                _ => parse_rational(p.strip_prefix('+').unwrap_or(p)),
            }
        };
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not the leading one
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .filter(|&i| !body[..i].ends_with('/'))
                .last();
            match split {
                Some(i) => Ok(ComplexScalar::new(
                    parse_rational(&body[..i])?,
                    imag_part(&body[i..])?,
                )),
                None => Ok(ComplexScalar::new(Rational::zero(), imag_part(body)?)),
            }
        } else {
            Ok(ComplexScalar::real(parse_rational(&t)?))
        }
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl<'a> Add<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, o: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, o: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, o: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &ComplexScalar) -> ComplexScalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        -&self
    }
}

impl Add for ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, o: ComplexScalar) -> ComplexScalar {
        &self + &o
    }
}

impl Sub for ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, o: ComplexScalar) -> ComplexScalar {
        &self - &o
    }
}

impl Mul for ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, o: ComplexScalar) -> ComplexScalar {
        &self * &o
    }
}

impl AddAssign<&ComplexScalar> for ComplexScalar {
    fn add_assign(&mut self, o: &ComplexScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&ComplexScalar> for ComplexScalar {
    fn sub_assign(&mut self, o: &ComplexScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl From<i64> for ComplexScalar {
    fn from(n: i64) -> Self {
        ComplexScalar::from_ints(n, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        let cases = [
            ("i", (0, 1)),
            ("-i", (0, -1)),
            ("3", (3, 0)),
            ("1+2i", (1, 2)),
            ("-1-i", (-1, -1)),
            ("0+1i", (0, 1)),
        ];
        for (s, (re, im)) in cases {
            assert_eq!(s.parse::<ComplexScalar>().unwrap(), ComplexScalar::from_ints(re, im), "{s}");
        }
        let z: ComplexScalar = "1/2-3/4i".parse().unwrap();
        assert_eq!(z, ComplexScalar::new(ratio(1, 2), ratio(-3, 4)));
        assert!("abc".parse::<ComplexScalar>().is_err());
        assert!("1/0".parse::<ComplexScalar>().is_err());
    }

    #[test]
    fn conj_and_norm() {
        let z = ComplexScalar::from_ints(3, -4);
        assert_eq!(z.conj().conj(), z);
        let n = &z * &z.conj();
        assert!(n.im.is_zero());
        assert_eq!(n.re, rat(25));
        assert_eq!(z.norm_sqr(), rat(25));
    }

    #[test]
    fn inverse_and_powers() {
        let z = ComplexScalar::from_ints(1, 1);
        assert_eq!(&z * &z.inv().unwrap(), ComplexScalar::one());
        assert!(ComplexScalar::zero().inv().is_none());
        assert_eq!(ComplexScalar::i().powi(-1).unwrap(), ComplexScalar::from_ints(0, -1));
        assert_eq!(ComplexScalar::i_pow(6), ComplexScalar::from_ints(-1, 0));
    }

    #[test]
    fn display_round_trips() {
        for s in ["1+2i", "-1/2i", "7", "3-5/3i"] {
            let z: ComplexScalar = s.parse().unwrap();
            assert_eq!(z.to_string().parse::<ComplexScalar>().unwrap(), z);
        }
    }
}
