//! Outward-rounded interval arithmetic on fixed-point dyadics, enough to
//! enclose `ln` of a positive rational to any number of bits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::rational::Rational;

/// `[lo, hi] / 2^prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Fixed {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Fixed {
    fn from_rational(r: &Rational, prec: u32) -> Fixed {
        let scaled = r.numer() << prec as usize;
        Fixed { lo: floor_div(&scaled, r.denom()), hi: ceil_div(&scaled, r.denom()), prec }
    }

    fn add(&self, other: &Fixed) -> Fixed {
        Fixed { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, prec: self.prec }
    }

    fn mul(&self, other: &Fixed) -> Fixed {
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        let unit = BigInt::one() << self.prec as usize;
        Fixed { lo: floor_div(min, &unit), hi: ceil_div(max, &unit), prec: self.prec }
    }

    fn square(&self) -> Fixed {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            let m = self.lo.abs().max(self.hi.abs());
            let unit = BigInt::one() << self.prec as usize;
            return Fixed { lo: BigInt::zero(), hi: ceil_div(&(&m * &m), &unit), prec: self.prec };
        }
        self.mul(self)
    }

    fn div_int(&self, k: u64) -> Fixed {
        let k = BigInt::from(k);
        Fixed { lo: floor_div(&self.lo, &k), hi: ceil_div(&self.hi, &k), prec: self.prec }
    }

    fn scale_int(&self, k: i64) -> Fixed {
        let k = BigInt::from(k);
        let (a, b) = (&self.lo * &k, &self.hi * &k);
        if k.is_negative() {
            Fixed { lo: b, hi: a, prec: self.prec }
        } else {
            Fixed { lo: a, hi: b, prec: self.prec }
        }
    }

    fn widen(&self, radius_units: &BigInt) -> Fixed {
        Fixed { lo: &self.lo - radius_units, hi: &self.hi + radius_units, prec: self.prec }
    }

    fn to_rationals(&self) -> (Rational, Rational) {
        let unit = BigInt::one() << self.prec as usize;
        (Rational::new(self.lo.clone(), unit.clone()), Rational::new(self.hi.clone(), unit))
    }
}

/// `2·atanh(z)` for `|z| ≤ bound < 1`, to `prec` bits.
fn two_atanh(z: &Rational, bound: &Rational, prec: u32) -> Fixed {
    let work = prec + 16;
    let zf = Fixed::from_rational(z, work);
    let z2 = zf.square();
    let mut term = zf.clone();
    let mut sum = zf;
    let target = Rational::new(BigInt::one(), BigInt::one() << (work as usize));
    let b2 = bound * bound;
    // tail after the term z^{2N+1}: ≤ |z|^{2N+3} / ((2N+3)(1 − z²))
    let mut power = bound.clone();
    let mut j: u64 = 0;
    loop {
        power = &power * &b2;
        let tail = &power / (Rational::from_integer(BigInt::from(2 * j + 3)) * (Rational::one() - &b2));
        if tail < target {
            let units = (tail * Rational::from_integer(BigInt::one() << (work as usize))).ceil().to_integer() + 1;
            sum = sum.widen(&units);
            break;
        }
        j += 1;
        term = term.mul(&z2);
        sum = sum.add(&term.div_int(2 * j + 1));
    }
    sum.scale_int(2)
}

/// Rational bounds `(lo, hi)` with `lo ≤ ln x ≤ hi`, width about `2^-prec`.
pub fn ln_enclosure(x: &Rational, prec: u32) -> (Rational, Rational) {
    assert!(x.is_positive(), "ln of a non-positive number");
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = Rational::from_integer(BigInt::from(2));
    let mut y = x / pow2(k);
    let (upper, lower) = (Rational::new(3.into(), 2.into()), Rational::new(3.into(), 4.into()));
    while y > upper {
        y /= &two;
        k += 1;
    }
    while y < lower {
        y *= &two;
        k -= 1;
    }
    // y ∈ [3/4, 3/2] ⇒ z = (y−1)/(y+1) ∈ [−1/7, 1/5]
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let ln_y = two_atanh(&z, &Rational::new(1.into(), 5.into()), prec);
    let third = Rational::new(1.into(), 3.into());
    let ln2 = two_atanh(&third, &third, prec);
    let total = ln_y.add(&ln2.scale_int(k));
    total.to_rationals()
}

fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(BigInt::one() << k as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

/// Rational bounds on `√r` with absolute width `1 / (denom(r)·2^prec)`.
pub fn sqrt_enclosure(r: &Rational, prec: u32) -> (Rational, Rational) {
    assert!(!r.is_negative(), "sqrt of a negative number");
    let (a, b) = (r.numer(), r.denom());
    let s = (a * b << (2 * prec as usize)).sqrt();
    let den = b << prec as usize;
    let lo = Rational::new(s.clone(), den.clone());
    let hi = if &s * &s == (a * b << (2 * prec as usize)) { lo.clone() } else { Rational::new(s + 1, den) };
    (lo, hi)
}

/// Nearest f64 at or below `r`.
pub fn f64_down(r: &Rational) -> f64 {
    let x = crate::exact::rational::to_f64(r);
    if Rational::from_float(x).is_some_and(|fx| fx <= *r) {
        x
    } else {
        next_down(x)
    }
}

/// Nearest f64 at or above `r`.
pub fn f64_up(r: &Rational) -> f64 {
    let x = crate::exact::rational::to_f64(r);
    if Rational::from_float(x).is_some_and(|fx| fx >= *r) {
        x
    } else {
        next_up(x)
    }
}

fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    f64::from_bits(if x > 0.0 { bits + 1 } else { bits - 1 })
}

fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, to_f64};

    #[test]
    fn ln_brackets_float_log() {
        for (p, q) in [(1, 1), (2, 1), (3, 5), (1, 1000), (7, 3), (123456, 7), (1, 3)] {
            let x = rat(p, q);
            let (lo, hi) = ln_enclosure(&x, 64);
            let f = (p as f64 / q as f64).ln();
            assert!(to_f64(&lo) <= f + 1e-15 && f - 1e-15 <= to_f64(&hi), "{p}/{q}");
            assert!(to_f64(&(&hi - &lo)) < 1e-17, "{p}/{q} too wide");
        }
    }

    #[test]
    fn ln_of_one_contains_zero() {
        let (lo, hi) = ln_enclosure(&rat(1, 1), 100);
        assert!(lo <= rat(0, 1) && rat(0, 1) <= hi);
    }

    #[test]
    fn ln_two_high_precision() {
        // ln 2 = 0.69314718055994530941723212145817656807...
        let (lo, hi) = ln_enclosure(&rat(2, 1), 200);
        let reference = Rational::new(
            "69314718055994530941723212145817656807".parse().unwrap(),
            num_traits::pow(BigInt::from(10), 38),
        );
        let slack = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 37));
        assert!(&lo - &slack <= reference && reference <= &hi + &slack);
        assert!(&hi - &lo < Rational::new(BigInt::one(), BigInt::one() << 190usize));
    }

    #[test]
    fn sqrt_brackets() {
        let (lo, hi) = sqrt_enclosure(&rat(13, 625), 80);
        let f = (13f64 / 625.0).sqrt();
        assert!(to_f64(&lo) <= f + 1e-16 && f - 1e-16 <= to_f64(&hi));
        assert_eq!(sqrt_enclosure(&rat(9, 4), 10), (rat(3, 2), rat(3, 2)));
    }

    #[test]
    fn directed_float_rounding() {
        let third = rat(1, 3);
        assert!(Rational::from_float(f64_down(&third)).unwrap() <= third);
        assert!(Rational::from_float(f64_up(&third)).unwrap() >= third);
        assert_eq!(f64_down(&rat(1, 2)), 0.5);
        assert_eq!(f64_up(&rat(1, 2)), 0.5);
    }
}
