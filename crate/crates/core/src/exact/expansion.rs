//! Eventually periodic binary expansions of rationals in `[0, 1]`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::rational::{check_unit_interval, fmt_rational, Rational};
use crate::error::{Error, Result};

/// Which of the two expansions of a dyadic rational is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// Never ends in an infinite run of ones; defined on `[0, 1)`.
    Upper,
    /// Never ends in an infinite run of zeros; defined on `(0, 1]`.
    Lower,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Upper => "upper",
            Variant::Lower => "lower",
        }
    }
}

/// `0.<preperiod>(<period>)` in binary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expansion {
    preperiod: Vec<u8>,
    period: Vec<u8>,
    variant: Variant,
    /// Exact value, kept because reducing it from million-digit periods is costly.
    value: Rational,
}

pub fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse { input: text.to_string(), reason: format!("not a bit: {c:?}") }),
        })
        .collect()
}

pub fn format_bits(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// Integer whose binary digits are `bits` (most significant first).
pub fn bits_value(bits: &[u8]) -> BigInt {
    if bits.is_empty() {
        return BigInt::zero();
    }
    BigInt::from(BigUint::from_radix_be(bits, 2).expect("bits must be 0 or 1"))
}

fn two_pow(k: usize) -> BigInt {
    BigInt::one() << k
}

/// Binary expansion of `s` by long division.
pub fn expand(s: &Rational, variant: Variant) -> Result<Expansion> {
    check_unit_interval(s)?;
    let (p, q) = (s.numer().clone(), s.denom().clone());
    let no_expansion = || Error::NoExpansion { value: fmt_rational(s), variant: variant.name() };

    let dyadic_exp = q.trailing_zeros().unwrap_or(0) as usize;
    let odd = &q >> dyadic_exp;

    if odd.is_one() {
        // dyadic: p / 2^k with p odd unless s ∈ {0, 1}
        let k = dyadic_exp;
        return match variant {
            Variant::Upper if s.is_one() => Err(no_expansion()),
            Variant::Lower if s.is_zero() => Err(no_expansion()),
            Variant::Upper => Ok(Expansion { preperiod: digits_of(&p, k), period: vec![0], variant, value: s.clone() }),
            Variant::Lower => {
                let mut pre = digits_of(&(p - 1), k);
                if s.is_one() {
                    pre.clear();
                }
                Ok(Expansion { preperiod: pre, period: vec![1], variant, value: s.clone() })
            }
        };
    }

    // preperiod: the first `dyadic_exp` digits; the tail is r/odd, purely periodic
    let mut preperiod = Vec::with_capacity(dyadic_exp);
    let mut r = p;
    for _ in 0..dyadic_exp {
        r <<= 1u8;
        if r >= q {
            preperiod.push(1);
            r -= &q;
        } else {
            preperiod.push(0);
        }
    }
    let r = r >> dyadic_exp; // tail numerator over `odd`
    let period = match (r.to_u64(), odd.to_u64()) {
        (Some(r), Some(odd)) if odd < 1 << 62 => cycle_u64(r, odd),
        _ => cycle_big(r, &odd),
    };
    Ok(Expansion { preperiod, period, variant, value: s.clone() })
}

/// Digits of `r/odd` (`r < odd`, `odd` odd) up to the first repeat of the remainder.
fn cycle_u64(start: u64, odd: u64) -> Vec<u8> {
    let mut r = start;
    let mut period = Vec::new();
    loop {
        r <<= 1;
        if r >= odd {
            period.push(1);
            r -= odd;
        } else {
            period.push(0);
        }
        if r == start {
            return period;
        }
    }
}

fn cycle_big(start: BigInt, odd: &BigInt) -> Vec<u8> {
    let mut r = start.clone();
    let mut period = Vec::new();
    loop {
        r <<= 1u8;
        if r >= *odd {
            period.push(1);
            r -= odd;
        } else {
            period.push(0);
        }
        if r == start {
            return period;
        }
    }
}

/// The `k` low binary digits of `n`, most significant first.
fn digits_of(n: &BigInt, k: usize) -> Vec<u8> {
    (0..k).rev().map(|i| u8::from(n.bit(i as u64))).collect()
}

impl Expansion {
    /// Builds the normalized expansion with these digits: the period is reduced to a
    /// primitive word, the preperiod to minimal length.
    pub fn from_parts(preperiod: &[u8], period: &[u8]) -> Result<Expansion> {
        if period.is_empty() {
            return Err(Error::Invalid("empty period".into()));
        }
        if preperiod.iter().chain(period).any(|&b| b > 1) {
            return Err(Error::Invalid("digits must be 0 or 1".into()));
        }
        let value = raw_value(preperiod, period);
        let variant = if period.iter().all(|&b| b == 1) { Variant::Lower } else { Variant::Upper };
        expand(&value, variant)
    }

    /// Parses `0.<pre>(<period>)`, e.g. `0.(01)` or `0.1(0)`.
    pub fn parse(text: &str) -> Result<Expansion> {
        let err = |reason: &str| Error::Parse { input: text.to_string(), reason: reason.to_string() };
        let body = text.trim().strip_prefix("0.").ok_or_else(|| err("expected leading \"0.\""))?;
        let (pre, rest) = body.split_once('(').ok_or_else(|| err("missing \"(\""))?;
        let period = rest.strip_suffix(')').ok_or_else(|| err("missing \")\""))?;
        Expansion::from_parts(&parse_bits(pre)?, &parse_bits(period)?)
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Digit `i` (0-based) of the infinite expansion.
    pub fn bit(&self, i: usize) -> u8 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.bit(i)).collect()
    }

    pub fn value(&self) -> Rational {
        self.value.clone()
    }
}

fn raw_value(preperiod: &[u8], period: &[u8]) -> Rational {
    let pre = Rational::from_integer(bits_value(preperiod));
    let per = Rational::new(bits_value(period), two_pow(period.len()) - 1);
    (pre + per) / Rational::from_integer(two_pow(preperiod.len()))
}

pub fn expansion_value(e: &Expansion) -> Rational {
    e.value()
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.{}({})", format_bits(&self.preperiod), format_bits(&self.period))
    }
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Convenience: is `q` (a reduced denominator) a power of two.
pub fn is_dyadic(s: &Rational) -> bool {
    let q = s.denom();
    (q & (q - BigInt::one())).is_zero()
}
