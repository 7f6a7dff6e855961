//! Elements of a real quadratic field `ℚ(√d)`, written `a + b·√d`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, to_f64, Rational};

/// `rational + coeff · √radicand`, with `radicand ≥ 0`.
///
/// Eigenvalues `(t ± √d)/2` of a 2×2 matrix live here. Values with a
/// perfect-square radicand are folded into the rational part, so two
/// values are equal exactly when their normalized parts are.
#[derive(Debug, Clone)]
pub struct QuadraticValue {
    rational: Rational,
    coeff: Rational,
    radicand: Rational,
}

fn exact_sqrt(r: &Rational) -> Option<Rational> {
    let sqrt_int = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(Rational::new(sqrt_int(r.numer())?, sqrt_int(r.denom())?))
}

/// `n = outside² · inside`, taking out squares of primes below 1000 only.
fn pull_small_squares(n: &BigInt) -> (BigInt, BigInt) {
    let mut inside = n.clone();
    let mut outside = BigInt::one();
    for p in (2u32..1000).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        let sq = BigInt::from(p * p);
        while (&inside % &sq).is_zero() {
            inside /= &sq;
            outside *= p;
        }
    }
    (outside, inside)
}

impl QuadraticValue {
    pub fn new(rational: Rational, coeff: Rational, radicand: Rational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        let mut v = QuadraticValue { rational, coeff, radicand };
        v.normalize();
        v
    }

    pub fn from_rational(r: Rational) -> Self {
        QuadraticValue { rational: r, coeff: Rational::zero(), radicand: Rational::zero() }
    }

    /// `(t + √d)/2`, or `(t − √d)/2` for the conjugate.
    pub fn half_form(t: &Rational, d: &Rational, conjugate: bool) -> Self {
        let half = Rational::new(1.into(), 2.into());
        let c = if conjugate { -&half } else { half.clone() };
        QuadraticValue::new(t * &half, c, d.clone())
    }

    fn normalize(&mut self) {
        if !self.radicand.is_zero() && !self.radicand.is_integer() {
            // c·√(p/q) = (c/q)·√(p·q)
            let q = Rational::from_integer(self.radicand.denom().clone());
            self.coeff = &self.coeff / &q;
            self.radicand = &self.radicand * &q * &q;
        }
        if !self.radicand.is_zero() {
            let (outside, inside) = pull_small_squares(self.radicand.numer());
            self.coeff = &self.coeff * Rational::from_integer(outside);
            self.radicand = Rational::from_integer(inside);
        }
        if self.coeff.is_zero() || self.radicand.is_zero() {
            self.coeff = Rational::zero();
            self.radicand = Rational::zero();
        } else if let Some(root) = exact_sqrt(&self.radicand) {
            self.rational = &self.rational + &self.coeff * root;
            self.coeff = Rational::zero();
            self.radicand = Rational::zero();
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn irrational_coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadraticValue { rational: self.rational.clone(), coeff: -&self.coeff, radicand: self.radicand.clone() }
    }

    fn common_radicand(&self, other: &Self) -> Rational {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.radicand.clone(),
            (_, true) => self.radicand.clone(),
            _ => {
                assert!(
                    exact_sqrt(&(&self.radicand / &other.radicand)).is_some(),
                    "operands live in different quadratic fields"
                );
                self.radicand.clone()
            }
        }
    }

    /// The same number written over the radicand `d` (which must differ from ours by a square).
    fn rebased(&self, d: &Rational) -> QuadraticValue {
        if self.is_rational() || self.radicand == *d {
            return QuadraticValue { rational: self.rational.clone(), coeff: self.coeff.clone(), radicand: d.clone() };
        }
        let ratio = exact_sqrt(&(&self.radicand / d)).expect("radicands differ by a non-square");
        QuadraticValue { rational: self.rational.clone(), coeff: &self.coeff * ratio, radicand: d.clone() }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sign = |r: &Rational| match r.cmp(&Rational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        let (a, b) = (sign(&self.rational), sign(&self.coeff));
        if b == 0 {
            return a;
        }
        if a == 0 || a == b {
            return b;
        }
        let rational_sq = &self.rational * &self.rational;
        let irrational_sq = &self.coeff * &self.coeff * &self.radicand;
        match rational_sq.cmp(&irrational_sq) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.coeff.is_zero()
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rational) + to_f64(&self.coeff) * to_f64(&self.radicand).sqrt()
    }
}

/// Equal as real numbers, whichever radicand each side is written over.
impl PartialEq for QuadraticValue {
    fn eq(&self, other: &Self) -> bool {
        self.rational == other.rational
            && self.coeff.signum() == other.coeff.signum()
            && &self.coeff * &self.coeff * &self.radicand == &other.coeff * &other.coeff * &other.radicand
    }
}

impl Eq for QuadraticValue {}

impl From<Rational> for QuadraticValue {
    fn from(r: Rational) -> Self {
        QuadraticValue::from_rational(r)
    }
}

impl Add for &QuadraticValue {
    type Output = QuadraticValue;
    fn add(self, rhs: &QuadraticValue) -> QuadraticValue {
        let d = self.common_radicand(rhs);
        let rhs = rhs.rebased(&d);
        QuadraticValue::new(&self.rational + &rhs.rational, &self.coeff + &rhs.coeff, d)
    }
}

impl Sub for &QuadraticValue {
    type Output = QuadraticValue;
    fn sub(self, rhs: &QuadraticValue) -> QuadraticValue {
        self + &(-rhs)
    }
}

impl Neg for &QuadraticValue {
    type Output = QuadraticValue;
    fn neg(self) -> QuadraticValue {
        QuadraticValue { rational: -&self.rational, coeff: -&self.coeff, radicand: self.radicand.clone() }
    }
}

impl Mul for &QuadraticValue {
    type Output = QuadraticValue;
    fn mul(self, rhs: &QuadraticValue) -> QuadraticValue {
        let d = self.common_radicand(rhs);
        let (lhs, rhs) = (self.rebased(&d), rhs.rebased(&d));
        QuadraticValue::new(
            &lhs.rational * &rhs.rational + &lhs.coeff * &rhs.coeff * &d,
            &lhs.rational * &rhs.coeff + &lhs.coeff * &rhs.rational,
            d,
        )
    }
}

impl Mul<&Rational> for &QuadraticValue {
    type Output = QuadraticValue;
    fn mul(self, k: &Rational) -> QuadraticValue {
        QuadraticValue::new(&self.rational * k, &self.coeff * k, self.radicand.clone())
    }
}

impl Div for &QuadraticValue {
    type Output = QuadraticValue;
    /// Panics on division by zero.
    fn div(self, rhs: &QuadraticValue) -> QuadraticValue {
        let norm = &rhs.rational * &rhs.rational - &rhs.coeff * &rhs.coeff * &rhs.radicand;
        assert!(!norm.is_zero(), "division by zero in quadratic field");
        let numerator = self * &rhs.conjugate();
        &numerator * &(Rational::one() / norm)
    }
}

impl fmt::Display for QuadraticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rational(&self.rational));
        }
        let sign = if self.coeff.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}*sqrt({})",
            fmt_rational(&self.rational),
            sign,
            fmt_rational(&self.coeff.abs()),
            fmt_rational(&self.radicand)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn q(a: i64, b: i64, d: i64) -> QuadraticValue {
        QuadraticValue::new(rat(a, 1), rat(b, 1), rat(d, 1))
    }

    #[test]
    fn perfect_squares_fold() {
        let v = q(1, 2, 9);
        assert!(v.is_rational());
        assert_eq!(v.rational_part(), &rat(7, 1));
        let half = QuadraticValue::half_form(&rat(4, 5), &rat(4, 25), false);
        assert_eq!(half, QuadraticValue::from_rational(rat(3, 5)));
    }

    #[test]
    fn sign_of_mixed_terms() {
        assert_eq!(q(3, -1, 8).signum(), 1); // 3 - √8 > 0
        assert_eq!(q(2, -1, 8).signum(), -1);
        assert_eq!(q(-3, 1, 8).signum(), -1);
        assert_eq!(q(0, 0, 0).signum(), 0);
        assert_eq!(q(-1, 1, 2).signum(), 1);
    }

    #[test]
    fn field_arithmetic_round_trips() {
        let a = q(1, 1, 13);
        let b = q(-2, 3, 13);
        let prod = &a * &b;
        assert_eq!(&prod / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        // (1 + √13)(1 - √13) = -12
        assert_eq!(&a * &a.conjugate(), QuadraticValue::from_rational(rat(-12, 1)));
    }

    #[test]
    fn float_agrees() {
        let v = QuadraticValue::half_form(&rat(7, 25), &rat(13, 625), false);
        assert!((v.to_f64() - (7.0 + 13f64.sqrt()) / 50.0).abs() < 1e-15);
    }
}
