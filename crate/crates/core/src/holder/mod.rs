//! Hölder exponents of `u`: exact at rationals through the dominant eigenvalue of
//! the period matrix, estimated from matrix products on arbitrary bit streams.

pub mod estimate;
pub mod interval;
pub mod table;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::expansion::{expand, Expansion, Variant};
use crate::exact::matrix::{dominant_eigen, plane_trace, restrict_to_plane, word_product_bits, PlaneBasis};
use crate::exact::quadratic::QuadraticValue;
use crate::exact::rational::{check_unit_interval, fmt_rational, Rational};
use crate::exact::words::transition_density;
use crate::harmonic::LinearForm;
use crate::tangent::{kernel_test, tangent_direction, DirRef, KernelVerdict};

pub use estimate::{alpha_estimate, lyapunov_random_estimate, EstimateTrace, LyapunovSummary, MatrixNorm};
pub use table::{check_golden, generate_table, maxrun_experiment, MaxRunRow, GOLDEN_TABLE, TABLE_CAP};

/// Target width of a certified α enclosure.
pub const ALPHA_WIDTH: f64 = 1e-12;

const START_PRECISION: u32 = 64;
const MAX_PRECISION: u32 = 1 << 14;

/// `ln(3/5)/ln(1/2)`: the exponent at every dyadic and a lower bound everywhere.
pub fn trivial_exponent() -> f64 {
    (0.6f64).ln() / (0.5f64).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DerivativeClass {
    Zero,
    Infinite,
    Exceptional,
    Undetermined,
}

impl DerivativeClass {
    pub fn name(self) -> &'static str {
        match self {
            DerivativeClass::Zero => "Zero",
            DerivativeClass::Infinite => "Infinite",
            DerivativeClass::Exceptional => "Exceptional",
            DerivativeClass::Undetermined => "Undetermined",
        }
    }
}

impl fmt::Display for DerivativeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Certified `lo ≤ α ≤ hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaEnclosure {
    pub lo: f64,
    pub hi: f64,
    /// Working precision, in bits, that produced it.
    pub precision: u32,
}

impl AlphaEnclosure {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    fn separated_from_one(&self) -> bool {
        self.lo > 1.0 || self.hi < 1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderReport {
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
    pub expansion: Expansion,
    #[serde(serialize_with = "ser_period")]
    pub period: Vec<u8>,
    pub n: usize,
    /// `5^n · tr M⃗_period`, always an integer.
    #[serde(serialize_with = "ser_bigint")]
    pub scaled_trace: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub lambda: QuadraticValue,
    pub alpha: f64,
    pub enclosure: AlphaEnclosure,
    pub derivative_class: DerivativeClass,
}

impl HolderReport {
    pub fn period_string(&self) -> String {
        crate::exact::expansion::format_bits(&self.period)
    }
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

fn ser_period<S: Serializer>(p: &[u8], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exact::expansion::format_bits(p))
}

fn ser_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Integers that fit `i64` become JSON numbers; larger ones are written as digit strings.
fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match i64::try_from(n) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&n.to_string()),
    }
}

/// Period data shared by every rational with the same period.
#[derive(Debug, Clone)]
struct PeriodData {
    n: usize,
    scaled_trace: BigInt,
    lambda: QuadraticValue,
    trace: Rational,
    disc: Rational,
}

fn period_data(period: &[u8]) -> Result<PeriodData> {
    let n = period.len();
    let m3 = word_product_bits(period);
    let m = restrict_to_plane(&m3, PlaneBasis::B);
    let eig = dominant_eigen(&m)?;
    debug_assert_eq!(eig.det, det_of_length(n));
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(5), n));
    let scaled = plane_trace(&m3) * scale;
    debug_assert!(scaled.is_integer());
    let disc = &eig.trace * &eig.trace - Rational::from_integer(4.into()) * &eig.det;
    Ok(PeriodData { n, scaled_trace: scaled.to_integer(), lambda: eig.lambda, trace: eig.trace, disc })
}

/// `(3/25)^n`, the determinant of every plane restriction of length `n`.
pub fn det_of_length(n: usize) -> Rational {
    Rational::new(num_traits::pow(BigInt::from(3), n), num_traits::pow(BigInt::from(25), n))
}

/// Certified enclosure of `ln λ / (n ln ½)` at `prec` bits.
fn enclose_at(data: &PeriodData, prec: u32) -> AlphaEnclosure {
    let half = Rational::new(1.into(), 2.into());
    let (root_lo, root_hi) = interval::sqrt_enclosure(&data.disc, prec);
    let lambda_lo = (&data.trace + root_lo) * &half;
    let lambda_hi = (&data.trace + root_hi) * &half;
    let (ln_lo, _) = interval::ln_enclosure(&lambda_lo, prec);
    let (_, ln_hi) = interval::ln_enclosure(&lambda_hi, prec);
    let (ln2_lo, ln2_hi) = interval::ln_enclosure(&Rational::from_integer(2.into()), prec);
    // λ < 1, so −ln λ > 0 and α = (−ln λ) / (n ln 2) with both factors positive
    let n = Rational::from_integer(BigInt::from(data.n));
    let lo = -ln_hi / (&n * ln2_hi);
    let hi = -ln_lo / (&n * ln2_lo);
    AlphaEnclosure { lo: interval::f64_down(&lo), hi: interval::f64_up(&hi), precision: prec }
}

/// Refines until the width target is met and 1 is excluded, or precision runs out.
fn certified_alpha(data: &PeriodData) -> AlphaEnclosure {
    let mut prec = START_PRECISION;
    loop {
        let enc = enclose_at(data, prec);
        if (enc.width() <= ALPHA_WIDTH && enc.separated_from_one()) || prec >= MAX_PRECISION {
            return enc;
        }
        prec *= 2;
    }
}

/// The one-sided expansion used for exponents: upper, except at `s = 1`.
pub fn exponent_expansion(s: &Rational) -> Result<Expansion> {
    check_unit_interval(s)?;
    let variant = if s.is_one() { Variant::Lower } else { Variant::Upper };
    expand(s, variant)
}

fn class_of(enc: &AlphaEnclosure) -> DerivativeClass {
    if enc.lo > 1.0 {
        DerivativeClass::Zero
    } else if enc.hi < 1.0 {
        DerivativeClass::Infinite
    } else {
        DerivativeClass::Undetermined
    }
}

fn report(s: Rational, expansion: Expansion) -> Result<HolderReport> {
    let period = expansion.period().to_vec();
    let data = period_data(&period)?;
    let enclosure = certified_alpha(&data);
    let derivative_class = class_of(&enclosure);
    Ok(HolderReport {
        s,
        expansion,
        period,
        n: data.n,
        scaled_trace: data.scaled_trace,
        lambda: data.lambda,
        alpha: enclosure.mid(),
        enclosure,
        derivative_class,
    })
}

/// Exact Hölder exponent of `u` at a rational point; the preperiod plays no role.
pub fn alpha_rational(s: &Rational) -> Result<HolderReport> {
    let expansion = exponent_expansion(s)?;
    report(s.clone(), expansion)
}

/// Report for the purely periodic point `0.(period)`.
pub fn alpha_periodic(period: &[u8]) -> Result<HolderReport> {
    let expansion = Expansion::from_parts(&[], period)?;
    let s = expansion.value();
    if expansion.period() != period {
        return Err(Error::Invalid(format!(
            "period {} is not primitive",
            crate::exact::expansion::format_bits(period)
        )));
    }
    report(s, expansion)
}

/// `u′(s)` is 0 when α > 1 and ∞ when α < 1.
pub fn classify_u(s: &Rational) -> Result<DerivativeClass> {
    Ok(alpha_rational(s)?.derivative_class)
}

/// Classification of `Φ ∘ u` at `s`, with `Φ` a linear form.
pub fn classify_uacb(form: &LinearForm, s: &Rational) -> Result<DerivativeClass> {
    let (class, _) = classify_uacb_verbose(form, s)?;
    Ok(class)
}

/// As [`classify_uacb`], also returning the kernel verdict behind it.
pub fn classify_uacb_verbose(form: &LinearForm, s: &Rational) -> Result<(DerivativeClass, KernelVerdict)> {
    check_unit_interval(s)?;
    let dir = tangent_direction(s)?;
    let verdict = kernel_test(form, DirRef::Exact(&dir));
    let class = match verdict {
        KernelVerdict::InKernel => DerivativeClass::Exceptional,
        KernelVerdict::Undetermined => DerivativeClass::Undetermined,
        KernelVerdict::NotInKernel => classify_u(s)?,
    };
    Ok((class, verdict))
}

/// Upper bounds on `α_inf` and `α_sup` from the transition density of the period.
pub fn holder_bound(e: &Expansion) -> (f64, f64) {
    let d = crate::exact::rational::to_f64(&transition_density(e.period()));
    let b = trivial_exponent() + d;
    (b, b)
}

/// `d < 1 − ln(3/5)/ln(1/2)`, which forces `u′(s) = ∞`.
pub fn corollary_infinite_test(e: &Expansion) -> bool {
    let d = crate::exact::rational::to_f64(&transition_density(e.period()));
    d < 1.0 - trivial_exponent()
}

/// Certifies `λ_period ≠ 2^-n` exactly, hence `α ≠ 1`.
pub fn integrality_check(period: &[u8]) -> bool {
    let Ok(data) = period_data(period) else {
        return false;
    };
    let critical = Rational::new(BigInt::one(), BigInt::one() << data.n);
    !(&data.lambda - &QuadraticValue::from_rational(critical)).is_zero()
}

/// Exact comparison of `α` with 1: `Greater` iff `λ < 2^-n`.
pub fn compare_alpha_with_one(period: &[u8]) -> Result<std::cmp::Ordering> {
    let data = period_data(period)?;
    let critical = QuadraticValue::from_rational(Rational::new(BigInt::one(), BigInt::one() << data.n));
    Ok(critical.cmp_exact(&data.lambda))
}

/// `0 < λ < 1`, checked exactly.
pub fn lambda_in_unit_interval(r: &HolderReport) -> bool {
    r.lambda.signum() > 0 && (&QuadraticValue::from_rational(Rational::one()) - &r.lambda).signum() > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::expansion::parse_bits;
    use crate::exact::rational::rat;

    fn bits(s: &str) -> Vec<u8> {
        parse_bits(s).unwrap()
    }

    #[test]
    fn dyadic_exponent() {
        let a = trivial_exponent();
        for s in [rat(0, 1), rat(1, 2), rat(3, 8), rat(1, 1), rat(5, 64)] {
            let r = alpha_rational(&s).unwrap();
            assert_eq!(r.scaled_trace, BigInt::from(4));
            assert!(r.enclosure.width() <= ALPHA_WIDTH);
            assert!((r.alpha - a).abs() < 1e-12, "{s}: {}", r.alpha);
            assert_eq!(r.derivative_class, DerivativeClass::Infinite);
        }
        assert_eq!(alpha_rational(&rat(0, 1)).unwrap().lambda, QuadraticValue::from_rational(rat(3, 5)));
    }

    #[test]
    fn table_examples() {
        let r = alpha_rational(&rat(1, 3)).unwrap();
        assert_eq!((r.n, r.scaled_trace.clone()), (2, BigInt::from(7)));
        assert!((r.alpha - 1.119).abs() < 1e-3);
        assert_eq!(r.derivative_class, DerivativeClass::Zero);
        let r = alpha_rational(&rat(1, 5)).unwrap();
        assert_eq!((r.n, r.scaled_trace.clone()), (4, BigInt::from(34)));
        assert!((r.alpha - 1.078).abs() < 1e-3);
        assert_eq!(classify_u(&rat(1, 127)).unwrap(), DerivativeClass::Infinite);
    }

    #[test]
    fn near_one_is_separated() {
        let r = alpha_rational(&rat(5, 127)).unwrap();
        assert!(r.enclosure.hi < 1.0 && r.enclosure.width() <= ALPHA_WIDTH);
        assert_eq!(r.derivative_class, DerivativeClass::Infinite);
        assert_eq!(compare_alpha_with_one(&bits("0000101")).unwrap(), std::cmp::Ordering::Less);
    }

    #[test]
    fn preperiod_is_ignored() {
        let a = alpha_rational(&rat(1, 3)).unwrap();
        let b = alpha_rational(&rat(1, 6)).unwrap();
        assert_eq!((a.period, a.lambda, a.enclosure), (b.period, b.lambda, b.enclosure));
    }

    #[test]
    fn exceptional_points() {
        assert_eq!(classify_uacb(&LinearForm::chi(), &rat(0, 1)).unwrap(), DerivativeClass::Exceptional);
        assert_eq!(classify_uacb(&LinearForm::xi(), &rat(1, 1)).unwrap(), DerivativeClass::Exceptional);
        assert_eq!(classify_uacb(&LinearForm::phi(), &rat(1, 2)).unwrap(), DerivativeClass::Infinite);
        assert_eq!(classify_uacb(&LinearForm::phi(), &rat(1, 3)).unwrap(), DerivativeClass::Zero);
        assert_eq!(classify_uacb(&LinearForm::psi(), &rat(1, 2)).unwrap(), DerivativeClass::Infinite);
        assert_eq!(classify_uacb(&LinearForm::chi(), &rat(1, 1)).unwrap(), DerivativeClass::Infinite);
    }

    #[test]
    fn bounds() {
        let e = |p: &str| Expansion::from_parts(&[], &bits(p)).unwrap();
        assert!((holder_bound(&e("0")).0 - 0.737).abs() < 1e-3);
        assert!((holder_bound(&e("01")).1 - 1.737).abs() < 1e-3);
        assert!((holder_bound(&e("0000001")).0 - (trivial_exponent() + 2.0 / 7.0)).abs() < 1e-12);
        assert!(corollary_infinite_test(&e("00000001")));
        assert!(!corollary_infinite_test(&e("0000001")));
        assert!(!corollary_infinite_test(&e("01")));
    }

    #[test]
    fn integrality() {
        for p in ["01", "0000101", "0", "1", "0011"] {
            assert!(integrality_check(&bits(p)), "{p}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(alpha_rational(&rat(3, 2)).is_err());
        assert!(alpha_rational(&rat(-1, 3)).is_err());
        assert!(alpha_periodic(&bits("0101")).is_err());
    }

    #[test]
    fn report_serializes() {
        let r = alpha_rational(&rat(1, 3)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["s"], "1/3");
        assert_eq!(v["period"], "01");
        assert_eq!(v["scaled_trace"], 7);
        assert_eq!(v["derivative_class"], "Zero");
        assert!(lambda_in_unit_interval(&r));
    }
}
