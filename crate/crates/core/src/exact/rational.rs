//! Exact rationals and vectors of rationals in the canonical basis `(e_0, e_1, e_ω)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `%g`-style formatting with `digits` significant digits and trailing zeros dropped.
pub fn format_significant(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -5 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, e) = s.split_once('e').unwrap();
        return format!("{}e{}", trim_zeros(mantissa), e);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator and denominator both overflow f64; scale through bit lengths
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 1000;
        let n = if shift > 0 { r.numer() >> shift as usize } else { r.numer().clone() };
        let d = if shift > 0 { r.denom() >> shift as usize } else { r.denom().clone() };
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Parses `p/q`, an integer, or a decimal such as `0.125` (converted exactly).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = |reason: &str| Error::Parse { input: text.to_string(), reason: reason.to_string() };
    if s.is_empty() {
        return Err(err("empty input"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err("bad numerator"))?;
        let q: BigInt = q.trim().parse().map_err(|_| err("bad denominator"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return Err(err("bad decimal"));
        }
        let digits = format!("{whole_digits}{frac}");
        let mut value = Rational::new(
            digits.parse::<BigInt>().map_err(|_| err("bad decimal"))?,
            num_traits::pow(BigInt::from(10), frac.len()),
        );
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let p: BigInt = s.parse().map_err(|_| err("not a rational"))?;
    Ok(Rational::from_integer(p))
}

pub fn check_unit_interval(s: &Rational) -> Result<()> {
    if s.is_negative() || *s > Rational::one() {
        Err(Error::Domain(fmt_rational(s)))
    } else {
        Ok(())
    }
}

/// A vector of `ℝ³` with exact coordinates in the basis `(e_0, e_1, e_ω)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec3Q(pub [Rational; 3]);

impl Vec3Q {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Vec3Q([x, y, z])
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3Q([int(x), int(y), int(z)])
    }

    pub fn zero() -> Self {
        Vec3Q::from_ints(0, 0, 0)
    }

    /// The canonical basis vector `e_0`, `e_1` or `e_ω` (index 0, 1, 2).
    pub fn basis(i: usize) -> Self {
        let mut v = Vec3Q::zero();
        v.0[i] = Rational::one();
        v
    }

    pub fn x(&self) -> &Rational {
        &self.0[0]
    }

    pub fn y(&self) -> &Rational {
        &self.0[1]
    }

    pub fn z(&self) -> &Rational {
        &self.0[2]
    }

    pub fn coordinate_sum(&self) -> Rational {
        &self.0[0] + &self.0[1] + &self.0[2]
    }

    /// Membership in the value triangle `K`: nonnegative coordinates summing to one.
    pub fn in_triangle(&self) -> bool {
        self.coordinate_sum().is_one() && self.0.iter().all(|c| !c.is_negative())
    }

    pub fn in_vector_plane(&self) -> bool {
        self.coordinate_sum().is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Vec3Q(self.0.clone().map(|c| c * k))
    }

    pub fn dot(&self, row: &[Rational; 3]) -> Rational {
        self.0.iter().zip(row).map(|(a, b)| a * b).sum()
    }

    pub fn max_norm(&self) -> Rational {
        self.0.iter().map(|c| c.abs()).max().unwrap()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [to_f64(&self.0[0]), to_f64(&self.0[1]), to_f64(&self.0[2])]
    }
}

impl Add for &Vec3Q {
    type Output = Vec3Q;
    fn add(self, rhs: &Vec3Q) -> Vec3Q {
        Vec3Q([&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1], &self.0[2] + &rhs.0[2]])
    }
}

impl Sub for &Vec3Q {
    type Output = Vec3Q;
    fn sub(self, rhs: &Vec3Q) -> Vec3Q {
        Vec3Q([&self.0[0] - &rhs.0[0], &self.0[1] - &rhs.0[1], &self.0[2] - &rhs.0[2]])
    }
}

impl Neg for &Vec3Q {
    type Output = Vec3Q;
    fn neg(self) -> Vec3Q {
        Vec3Q(self.0.clone().map(|c| -c))
    }
}

impl Mul<&Rational> for &Vec3Q {
    type Output = Vec3Q;
    fn mul(self, k: &Rational) -> Vec3Q {
        self.scale(k)
    }
}

impl fmt::Display for Vec3Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            fmt_rational(&self.0[0]),
            fmt_rational(&self.0[1]),
            fmt_rational(&self.0[2])
        )
    }
}

impl Serialize for Vec3Q {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        parts.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(1.1185532, 6), "1.11855");
        assert_eq!(format_significant(0.7369655941662062, 6), "0.736966");
        assert_eq!(format_significant(0.5, 6), "0.5");
        assert_eq!(format_significant(1234567.0, 3), "1.23e6");
        assert_eq!(format_significant(1.5e-9, 4), "1.5e-9");
        assert_eq!(format_significant(0.0, 6), "0");
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("1").unwrap(), int(1));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "0.1.2", "1/x", "."] {
            assert!(matches!(parse_rational(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn unit_interval_check() {
        assert!(check_unit_interval(&rat(0, 1)).is_ok());
        assert!(check_unit_interval(&rat(1, 1)).is_ok());
        assert!(matches!(check_unit_interval(&rat(3, 2)), Err(Error::Domain(_))));
        assert!(matches!(check_unit_interval(&rat(-1, 7)), Err(Error::Domain(_))));
    }

    #[test]
    fn huge_rationals_convert() {
        let big = Rational::new(num_traits::pow(BigInt::from(3), 2000), num_traits::pow(BigInt::from(3), 2000) * 4);
        assert_eq!(to_f64(&big), 0.25);
        let r = Rational::new(num_traits::pow(BigInt::from(5), 900) + 1, num_traits::pow(BigInt::from(5), 900) * 2);
        assert!((to_f64(&r) - 0.5).abs() < 1e-15);
    }
}
