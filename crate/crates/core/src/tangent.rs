//! Tangent directions of the curve `u([0, 1])`.
//!
//! A direction in the difference cone `K⃗` is recorded by its chart coordinate
//! `a/b`, where the vector is `a·v + b·w` with `v = (−½, −½, 1)` and
//! `w = (−½, ½, 0)`. The cone's image `K̃` is the chart interval `[−1/3, 1/3]`
//! (endpoints `π(v⃗_1)` and `π(v⃗_0)`), and each `M̃_i` acts on it as a Möbius
//! map with Lipschitz constant 3/4.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::cone::{chart_v, chart_w, ConeSpec};
use crate::exact::expansion::{expand, Expansion, Variant};
use crate::exact::matrix::{dominant_eigen, restrict_to_plane, word_product_bits, PlaneBasis, ScaledIntMat2};
use crate::exact::quadratic::QuadraticValue;
use crate::exact::rational::{fmt_rational, rat, to_f64, Rational, Vec3Q};
use crate::harmonic::LinearForm;

/// Lipschitz constant of `M̃_0` and `M̃_1` in the chart metric.
pub const CHART_LIPSCHITZ: f64 = 0.75;

/// Diameter of the chart interval `[−1/3, 1/3]`.
pub const CHART_DIAMETER: f64 = 2.0 / 3.0;

/// The chart of the right-hand direction decreases as `s` increases
/// (from `1/3` at `s = 0` to `−1/3` at `s = 1`).
pub const CHART_DECREASING_IN_S: bool = true;

/// Largest number of digits the inexact kernel test will unroll (about 256 bits of chart precision).
const MAX_REFINE_DIGITS: usize = 620;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Limit from `t > s`, read off the upper expansion.
    Right,
    /// Limit from `t < s`, read off the lower expansion.
    Left,
}

impl Side {
    fn variant(self) -> Variant {
        match self {
            Side::Right => Variant::Upper,
            Side::Left => Variant::Lower,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

/// Chart coordinate `a/b` of a vector-plane vector; needs `b ≠ 0`.
pub fn chart_coordinate(v: &Vec3Q) -> Option<Rational> {
    let a = v.z().clone();
    let b = v.y() - v.x();
    (v.in_vector_plane() && !b.is_zero()).then(|| a / b)
}

/// Chart coordinate of a vector of the difference cone.
pub fn chart_of(v: &Vec3Q) -> Result<Rational> {
    if !ConeSpec::difference_cone().contains(v) {
        return Err(Error::NotInCone);
    }
    Ok(chart_coordinate(v).expect("cone vectors have b > 0"))
}

/// The vector `chart·v + w` (a positive multiple of any cone vector with that chart).
pub fn chart_vector(chart: &Rational) -> Vec3Q {
    &chart_v().scale(chart) + &chart_w()
}

/// Euclidean unit vector of the direction with this chart value (coordinates sum to 0).
pub fn unit_vector(chart: f64) -> [f64; 3] {
    let raw = [-0.5 * chart - 0.5, -0.5 * chart + 0.5, chart];
    let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
    raw.map(|c| c / norm)
}

/// `x ↦ (p x + q) / (r x + s)` for the matrix `[[p, q], [r, s]]` in basis `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    coeffs: [[Rational; 2]; 2],
}

impl Mobius {
    pub fn from_matrix(m: &ScaledIntMat2) -> Mobius {
        assert_eq!(m.basis(), PlaneBasis::V, "chart maps need the (v, w) basis");
        // the common scale cancels
        let c = m.entries();
        Mobius { coeffs: std::array::from_fn(|i| std::array::from_fn(|j| Rational::from_integer(c[i][j].clone()))) }
    }

    pub fn for_word(bits: &[u8]) -> Mobius {
        Mobius::from_matrix(&restrict_to_plane(&word_product_bits(bits), PlaneBasis::V))
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        let [[p, q], [r, s]] = &self.coeffs;
        (p * x + q) / (r * x + s)
    }

    pub fn apply_quadratic(&self, x: &QuadraticValue) -> QuadraticValue {
        let [[p, q], [r, s]] = &self.coeffs;
        let num = &(x * p) + &QuadraticValue::from_rational(q.clone());
        let den = &(x * r) + &QuadraticValue::from_rational(s.clone());
        &num / &den
    }

    /// Coefficients of `r x² + (s − p) x − q = 0`, whose roots are the fixed points.
    pub fn fixed_point_quadratic(&self) -> [Rational; 3] {
        let [[p, q], [r, s]] = &self.coeffs;
        [r.clone(), s - p, -q]
    }
}

/// `M̃_word` applied to a chart value.
pub fn tilde_apply(bits: &[u8], chart: &Rational) -> Rational {
    Mobius::for_word(bits).apply(chart)
}

/// A direction known to within `error_bound` in the chart metric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjDir {
    pub chart: f64,
    pub error_bound: f64,
    /// Exact chart of the finite-word approximant `M̃_{a_1…a_n}(0)`.
    #[serde(serialize_with = "ser_rational")]
    pub approximant: Rational,
    pub iterations: usize,
    pub expansion: Expansion,
    pub side: Side,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

impl ProjDir {
    pub fn unit_vector(&self) -> [f64; 3] {
        unit_vector(self.chart)
    }
}

fn expansion_for_side(s: &Rational, side: Side) -> Result<Expansion> {
    let side_error = || Error::Side { side: side.name(), value: fmt_rational(s) };
    match side {
        Side::Right if s.is_one() => Err(side_error()),
        Side::Left if s.is_zero() => Err(side_error()),
        _ => expand(s, side.variant()),
    }
}

fn iterations_for(tol: f64) -> usize {
    if tol >= CHART_DIAMETER {
        return 0;
    }
    ((tol / CHART_DIAMETER).ln() / CHART_LIPSCHITZ.ln()).ceil() as usize
}

fn approximate(expansion: Expansion, side: Side, n: usize) -> ProjDir {
    let approximant = tilde_apply(&expansion.prefix(n), &Rational::zero());
    ProjDir {
        chart: to_f64(&approximant),
        error_bound: CHART_DIAMETER * CHART_LIPSCHITZ.powi(n as i32),
        approximant,
        iterations: n,
        expansion,
        side,
    }
}

/// One-sided tangent direction at the point with expansion `e`, to within `tol`.
pub fn direction_at(e: &Expansion, side: Side, tol: f64) -> Result<ProjDir> {
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let expansion = expansion_for_side(&e.value(), side)?;
    Ok(approximate(expansion, side, iterations_for(tol)))
}

/// Exact tangent direction at a rational point: a quadratic irrational chart value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadDir {
    /// Chart of the direction at `s`.
    pub chart: QuadraticValue,
    /// Fixed point of `M̃_period` (the direction at the purely periodic point).
    pub period_chart: QuadraticValue,
    pub preperiod: Vec<u8>,
    pub period: Vec<u8>,
    pub side: Side,
}

/// Direction at the purely periodic point with this period: the dominant eigendirection of `M⃗_period`.
pub fn periodic_direction(period: &[u8]) -> Result<QuadraticValue> {
    let m = restrict_to_plane(&word_product_bits(period), PlaneBasis::V);
    let eig = dominant_eigen(&m)?;
    Ok(&eig.eigvec[0] / &eig.eigvec[1])
}

pub fn direction_at_rational_exact(s: &Rational, side: Side) -> Result<QuadDir> {
    let expansion = expansion_for_side(s, side)?;
    let period_chart = periodic_direction(expansion.period())?;
    let chart = Mobius::for_word(expansion.preperiod()).apply_quadratic(&period_chart);
    Ok(QuadDir {
        chart,
        period_chart,
        preperiod: expansion.preperiod().to_vec(),
        period: expansion.period().to_vec(),
        side,
    })
}

/// The sign-folded tangent direction `D⃗u(s)`; both one-sided limits agree, so the
/// right side is used except at `s = 1`.
pub fn tangent_direction(s: &Rational) -> Result<QuadDir> {
    let side = if s.is_one() { Side::Left } else { Side::Right };
    direction_at_rational_exact(s, side)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KernelVerdict {
    InKernel,
    NotInKernel,
    Undetermined,
}

/// A direction to test against a linear form.
#[derive(Debug, Clone, Copy)]
pub enum DirRef<'a> {
    Exact(&'a QuadDir),
    Approx(&'a ProjDir),
}

/// Does `Φ` vanish on the direction? `Φ(x·v + w) = x·Φ(v) + Φ(w)`.
pub fn kernel_test(form: &LinearForm, dir: DirRef<'_>) -> KernelVerdict {
    let on_v = form.apply(&chart_v());
    let on_w = form.apply(&chart_w());
    if on_v.is_zero() && on_w.is_zero() {
        return KernelVerdict::InKernel;
    }
    match dir {
        DirRef::Exact(q) => {
            let value = &(&q.chart * &on_v) + &QuadraticValue::from_rational(on_w);
            if value.is_zero() {
                KernelVerdict::InKernel
            } else {
                KernelVerdict::NotInKernel
            }
        }
        DirRef::Approx(p) => {
            let mut n = p.iterations.max(1);
            loop {
                let d = approximate(p.expansion.clone(), p.side, n);
                let centre = &d.approximant * &on_v + &on_w;
                let radius = to_f64(&on_v.abs()) * d.error_bound;
                if to_f64(&centre).abs() > radius {
                    return KernelVerdict::NotInKernel;
                }
                if n >= MAX_REFINE_DIGITS {
                    return KernelVerdict::Undetermined;
                }
                n = (n * 2).min(MAX_REFINE_DIGITS);
            }
        }
    }
}

/// `π(v⃗_0)`, the right endpoint of `K̃`.
pub fn chart_v0() -> Rational {
    rat(1, 3)
}

/// `π(v⃗_1)`, the left endpoint of `K̃`.
pub fn chart_v1() -> Rational {
    rat(-1, 3)
}

pub fn in_chart_interval(x: &Rational) -> bool {
    x.abs() <= rat(1, 3)
}
