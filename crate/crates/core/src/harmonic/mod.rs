//! Exact and certified evaluation of `u` and of the harmonic functions it encodes.
//!
//! `u` is the restriction to `[0, 1]` of the harmonic function with corner
//! values `(e_0, e_1, e_ω)`. At a dyadic `k/2^n` it equals `M_w(e_0)` where `w`
//! is the `n`-bit expansion; elsewhere it is the limit of `M_{a_1…a_n}(u_0)`.

pub mod grid;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::expansion::{is_dyadic, Expansion};
use crate::exact::matrix::{word_product, word_product_bits, ScaledIntMat3, Symbol};
use crate::exact::rational::{check_unit_interval, rat, to_f64, Rational, Vec3Q};

pub use grid::{
    check_harmonic, grid_cap_from_env, harmonic_grid, subdivide, BoundaryTriple, HarmonicGrid, HarmonicValue,
    DEFAULT_GRID_CAP,
};

/// Max-norm diameter used for the value triangle `K` in error bounds.
pub const DIAM_K: f64 = 2.0;

/// Exact `u(k / 2^n)`.
pub fn u_exact_dyadic(k: u64, n: u32) -> Result<Vec3Q> {
    if n >= 64 || k > (1u64 << n) {
        return Err(Error::Range { k, n });
    }
    if k == 1u64 << n {
        return Ok(Vec3Q::basis(1));
    }
    let bits: Vec<u8> = (0..n).rev().map(|i| ((k >> i) & 1) as u8).collect();
    Ok(word_product_bits(&bits).column(0))
}

/// Exact `u(s)` for a dyadic rational `s`.
pub fn u_exact_rational_dyadic(s: &Rational) -> Result<Vec3Q> {
    check_unit_interval(s)?;
    if !is_dyadic(s) {
        return Err(Error::Invalid(format!("{s} is not dyadic")));
    }
    if s.is_one() {
        return Ok(Vec3Q::basis(1));
    }
    let n = s.denom().bits() as usize - 1;
    let k = s.numer();
    let bits: Vec<u8> = (0..n).rev().map(|i| u8::from(k.bit(i as u64))).collect();
    Ok(word_product_bits(&bits).column(0))
}

/// A point of `ℝ³` known to within `error_bound` in the max norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxPoint {
    pub value: [f64; 3],
    pub error_bound: f64,
}

fn centroid() -> Vec3Q {
    Vec3Q::new(rat(1, 3), rat(1, 3), rat(1, 3))
}

/// Max-norm diameter of `m(K)`: the largest distance between two image vertices.
pub fn image_diameter(m: &ScaledIntMat3) -> Rational {
    let cols = [m.column(0), m.column(1), m.column(2)];
    [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| (&cols[i] - &cols[j]).max_norm()).max().unwrap()
}

/// `M_{a_1…a_n}(u_0)` from the centroid, with the diameter of `M_{a_1…a_n}(K)` as error bound.
///
/// The bound is never larger than `(3/5)^n · DIAM_K`.
pub fn u_approx(e: &Expansion, n: usize) -> ApproxPoint {
    let m = word_product_bits(&e.prefix(n));
    let exact = m.apply(&centroid());
    let diam = to_f64(&image_diameter(&m));
    // conversion of each coordinate to f64 costs at most one ulp of a value ≤ 1
    ApproxPoint { value: exact.to_f64(), error_bound: diam + f64::EPSILON }
}

/// Exact value of the harmonic function with corner values `(e_0, e_1, e_ω)` at the vertex `h_w(0)`.
pub fn f_exact_address(word: &[Symbol]) -> Vec3Q {
    word_product(word.iter().copied()).column(0)
}

/// `P`: swaps the first two coordinates. `u(1 − s) = P u(s)`.
pub fn symmetry_apply(v: &Vec3Q) -> Vec3Q {
    Vec3Q::new(v.y().clone(), v.x().clone(), v.z().clone())
}

/// A real linear form `(a, b, c)`; `Φ ∘ u` is the harmonic function with corner values `a, b, c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm(pub [Rational; 3]);

impl LinearForm {
    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        LinearForm([rat(a, 1), rat(b, 1), rat(c, 1)])
    }

    pub fn phi() -> Self {
        Self::from_ints(0, 1, 0)
    }

    pub fn psi() -> Self {
        Self::from_ints(0, 1, 1)
    }

    pub fn chi() -> Self {
        Self::from_ints(0, 1, -1)
    }

    pub fn xi() -> Self {
        Self::from_ints(0, 1, 2)
    }

    /// `phi`, `psi`, `chi`, `xi`, or a literal `a,b,c` of rationals.
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "phi" | "φ" => return Ok(Self::phi()),
            "psi" | "ψ" => return Ok(Self::psi()),
            "chi" | "χ" => return Ok(Self::chi()),
            "xi" | "ξ" => return Ok(Self::xi()),
            _ => {}
        }
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse { input: text.into(), reason: "expected a preset or a,b,c".into() });
        }
        let mut row = Vec::with_capacity(3);
        for p in parts {
            row.push(crate::exact::rational::parse_rational(p)?);
        }
        Ok(LinearForm([row[0].clone(), row[1].clone(), row[2].clone()]))
    }

    pub fn apply(&self, v: &Vec3Q) -> Rational {
        v.dot(&self.0)
    }

    pub fn l1_norm(&self) -> Rational {
        self.0.iter().map(|c| c.abs()).sum()
    }
}

/// Where to evaluate: an exact dyadic `k / 2^n`, or an expansion truncated after `n` digits.
#[derive(Debug, Clone)]
pub enum EvalPoint {
    Dyadic { k: u64, n: u32 },
    Expansion { expansion: Expansion, digits: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScalarValue {
    Exact(#[serde(serialize_with = "ser_rational")] Rational),
    Approx { value: f64, error_bound: f64 },
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exact::rational::fmt_rational(r))
}

/// `u_{a,c,b}(s) = Φ(u(s))`; approximate bounds scale by the form's L1 norm.
pub fn uacb_eval(form: &LinearForm, point: &EvalPoint) -> Result<ScalarValue> {
    match point {
        EvalPoint::Dyadic { k, n } => Ok(ScalarValue::Exact(form.apply(&u_exact_dyadic(*k, *n)?))),
        EvalPoint::Expansion { expansion, digits } => {
            let p = u_approx(expansion, *digits);
            let row = form.0.iter().map(to_f64).collect::<Vec<_>>();
            let value = p.value.iter().zip(&row).map(|(x, c)| x * c).sum();
            Ok(ScalarValue::Approx { value, error_bound: p.error_bound * to_f64(&form.l1_norm()) })
        }
    }
}

/// `u(s)`: exact when `s` is dyadic, otherwise certified to `n` digits.
#[derive(Debug, Clone, PartialEq)]
pub enum UValue {
    Exact(Vec3Q),
    Approx(ApproxPoint),
}

pub fn u_at(s: &Rational, digits: usize) -> Result<UValue> {
    check_unit_interval(s)?;
    if is_dyadic(s) {
        return u_exact_rational_dyadic(s).map(UValue::Exact);
    }
    let e = crate::exact::expansion::expand(s, crate::exact::expansion::Variant::Upper)?;
    Ok(UValue::Approx(u_approx(&e, digits)))
}

/// The sample `u(k / 2^n)` for `k = 0..=2^n`, in order.
pub fn u_dyadic_samples(n: u32) -> Result<Vec<Vec3Q>> {
    if n >= 32 {
        return Err(Error::Resource { requested: n, cap: 31 });
    }
    // u(h_0(x)) = M_0 u(x), u(h_1(x)) = M_1 u(x): refine level by level
    let m0 = crate::exact::matrix::generator_matrix(Symbol::Zero);
    let m1 = crate::exact::matrix::generator_matrix(Symbol::One);
    let mut level = vec![Vec3Q::basis(0), Vec3Q::basis(1)];
    for _ in 0..n {
        let mut next: Vec<Vec3Q> = level.iter().map(|v| m0.apply(v)).collect();
        next.extend(level.iter().skip(1).map(|v| m1.apply(v)));
        level = next;
    }
    Ok(level)
}
