//! Generator matrices `M_0`, `M_1`, `M_ω`, their products, and their
//! restrictions to the vector plane `x + y + z = 0`.
//!
//! Every matrix is held as integer entries over a power of 5, so word
//! products never leave integer arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::quadratic::QuadraticValue;
use super::rational::{Rational, Vec3Q};
use crate::error::{Error, Result};

/// Letters of the address alphabet: the three homothety centres.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Omega,
}

impl Symbol {
    pub fn from_bit(bit: u8) -> Symbol {
        match bit {
            0 => Symbol::Zero,
            1 => Symbol::One,
            _ => panic!("bit must be 0 or 1, got {bit}"),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn parse_word(text: &str) -> Result<Vec<Symbol>> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(Symbol::Zero),
                '1' => Ok(Symbol::One),
                'w' | 'W' | 'ω' => Ok(Symbol::Omega),
                _ => Err(Error::Parse { input: text.to_string(), reason: format!("unexpected symbol {c:?}") }),
            })
            .collect()
    }
}

fn pow5(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(5), k as usize)
}

/// 3×3 matrix with meaning `entries / 5^pow5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledIntMat3 {
    entries: [[BigInt; 3]; 3],
    pow5: u32,
}

impl ScaledIntMat3 {
    pub fn from_ints(rows: [[i64; 3]; 3], pow5: u32) -> Self {
        ScaledIntMat3 { entries: rows.map(|r| r.map(BigInt::from)), pow5 }
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 0)
    }

    /// The permutation swapping the first two coordinates; realizes `u(1 − s) = P u(s)`.
    pub fn swap_p() -> Self {
        Self::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]], 0)
    }

    pub fn entries(&self) -> &[[BigInt; 3]; 3] {
        &self.entries
    }

    pub fn pow5(&self) -> u32 {
        self.pow5
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.entries[i][j].clone(), pow5(self.pow5))
    }

    pub fn mul(&self, rhs: &ScaledIntMat3) -> ScaledIntMat3 {
        let entries = std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| &self.entries[i][k] * &rhs.entries[k][j]).sum())
        });
        ScaledIntMat3 { entries, pow5: self.pow5 + rhs.pow5 }
    }

    pub fn apply(&self, v: &Vec3Q) -> Vec3Q {
        let scale = Rational::new(BigInt::one(), pow5(self.pow5));
        Vec3Q(std::array::from_fn(|i| {
            let row: Rational = (0..3).map(|k| Rational::from_integer(self.entries[i][k].clone()) * &v.0[k]).sum();
            row * &scale
        }))
    }

    /// Column `j` of the meaning, i.e. the image of the basis vector `e_j`.
    pub fn column(&self, j: usize) -> Vec3Q {
        Vec3Q(std::array::from_fn(|i| self.entry(i, j)))
    }

    pub fn trace(&self) -> Rational {
        Rational::new((0..3).map(|i| &self.entries[i][i]).sum(), pow5(self.pow5))
    }

    pub fn columns_sum_to_scale(&self) -> bool {
        let scale = pow5(self.pow5);
        (0..3).all(|j| (0..3).map(|i| &self.entries[i][j]).sum::<BigInt>() == scale)
    }
}

impl fmt::Display for ScaledIntMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/5^{} [", self.pow5)?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

/// `M_0`, `M_1` or `M_ω`: the exact matrix fixing `e_symbol`, with `pow5 = 1`.
pub fn generator_matrix(symbol: Symbol) -> ScaledIntMat3 {
    match symbol {
        Symbol::Zero => ScaledIntMat3::from_ints([[5, 2, 2], [0, 2, 1], [0, 1, 2]], 1),
        Symbol::One => ScaledIntMat3::from_ints([[2, 0, 1], [2, 5, 2], [1, 0, 2]], 1),
        Symbol::Omega => ScaledIntMat3::from_ints([[2, 1, 0], [1, 2, 0], [2, 2, 5]], 1),
    }
}

/// `M_{a_1} M_{a_2} ⋯ M_{a_n}`; the empty word gives the identity.
pub fn word_product<I: IntoIterator<Item = Symbol>>(word: I) -> ScaledIntMat3 {
    let gens = [Symbol::Zero, Symbol::One, Symbol::Omega].map(generator_matrix);
    word.into_iter().fold(ScaledIntMat3::identity(), |acc, s| acc.mul(&gens[s.index()]))
}

pub fn word_product_bits(bits: &[u8]) -> ScaledIntMat3 {
    word_product(bits.iter().map(|&b| Symbol::from_bit(b)))
}

/// Trace of the restriction to the vector plane: `tr M − 1`.
pub fn plane_trace(m: &ScaledIntMat3) -> Rational {
    m.trace() - Rational::one()
}

/// Fixed bases of the vector plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaneBasis {
    /// `(e_0 − e_1, e_1 − e_ω)`: keeps integer entries over `5^n`.
    B,
    /// `(v, w)` with `v = (−½, −½, 1)`, `w = (−½, ½, 0)`: the chart basis of the projective cone.
    V,
}

/// 2×2 matrix with meaning `entries / (2^pow2 · 5^pow5)`.
///
/// Restrictions in basis `B` always have `pow2 = 0`; basis `V` needs one factor of 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledIntMat2 {
    entries: [[BigInt; 2]; 2],
    pow5: u32,
    pow2: u32,
    basis: PlaneBasis,
}

impl ScaledIntMat2 {
    pub fn new(entries: [[BigInt; 2]; 2], pow5: u32, pow2: u32, basis: PlaneBasis) -> Self {
        ScaledIntMat2 { entries, pow5, pow2, basis }
    }

    pub fn from_ints(rows: [[i64; 2]; 2], pow5: u32, basis: PlaneBasis) -> Self {
        ScaledIntMat2 { entries: rows.map(|r| r.map(BigInt::from)), pow5, pow2: 0, basis }
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.entries
    }

    pub fn pow5(&self) -> u32 {
        self.pow5
    }

    pub fn pow2(&self) -> u32 {
        self.pow2
    }

    pub fn basis(&self) -> PlaneBasis {
        self.basis
    }

    fn scale(&self) -> BigInt {
        pow5(self.pow5) << self.pow2 as usize
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.entries[i][j].clone(), self.scale())
    }

    pub fn trace(&self) -> Rational {
        Rational::new(&self.entries[0][0] + &self.entries[1][1], self.scale())
    }

    pub fn det(&self) -> Rational {
        let e = &self.entries;
        let s = self.scale();
        Rational::new(&e[0][0] * &e[1][1] - &e[0][1] * &e[1][0], &s * &s)
    }

    pub fn mul(&self, rhs: &ScaledIntMat2) -> ScaledIntMat2 {
        assert_eq!(self.basis, rhs.basis, "matrices expressed in different bases");
        let entries = std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.entries[i][0] * &rhs.entries[0][j] + &self.entries[i][1] * &rhs.entries[1][j])
        });
        ScaledIntMat2 { entries, pow5: self.pow5 + rhs.pow5, pow2: self.pow2 + rhs.pow2, basis: self.basis }
    }

    /// Applies the integer part only: `entries · (a, b)`; callers track the scale.
    pub fn apply_unscaled(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let e = &self.entries;
        (&e[0][0] * a + &e[0][1] * b, &e[1][0] * a + &e[1][1] * b)
    }

    /// Natural log of the Frobenius norm of the meaning, computed without overflow.
    pub fn ln_frobenius(&self) -> f64 {
        let sum_sq: BigInt = self.entries.iter().flatten().map(|e| e * e).sum();
        0.5 * ln_big(&sum_sq) - self.ln_scale()
    }

    /// Natural log of the largest absolute entry of the meaning.
    pub fn ln_max_abs(&self) -> f64 {
        let max = self.entries.iter().flatten().map(|e| e.abs()).max().unwrap();
        ln_big(&max) - self.ln_scale()
    }

    fn ln_scale(&self) -> f64 {
        self.pow5 as f64 * 5f64.ln() + self.pow2 as f64 * 2f64.ln()
    }
}

/// `ln n` for a positive big integer, accurate to f64 precision at any size.
pub fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    let top = (n >> shift as usize).to_f64().unwrap();
    top.ln() + shift as f64 * 2f64.ln()
}

/// Coordinates of a vector-plane vector in basis `B`.
fn coords_b(col: [BigInt; 3]) -> [BigInt; 2] {
    let [x0, _, x2] = col;
    [x0, -x2]
}

/// Coordinates `(a, b)` with `x = a v + b w`.
fn coords_v(col: [BigInt; 3]) -> [BigInt; 2] {
    let [x0, x1, x2] = col;
    [x2, x1 - x0]
}

/// Exact restriction of `m` to the vector plane, in the requested basis.
pub fn restrict_to_plane(m: &ScaledIntMat3, basis: PlaneBasis) -> ScaledIntMat2 {
    let e = m.entries();
    let apply = |v: [i64; 3]| -> [BigInt; 3] {
        std::array::from_fn(|i| (0..3).map(|k| &e[i][k] * v[k]).sum())
    };
    let (images, pow2) = match basis {
        PlaneBasis::B => ([apply([1, -1, 0]), apply([0, 1, -1])].map(coords_b), 0),
        // images of 2v and 2w keep integer inputs, hence one factor of 2
        PlaneBasis::V => ([apply([-1, -1, 2]), apply([-1, 1, 0])].map(coords_v), 1),
    };
    let [c0, c1] = images;
    let [a00, a10] = c0;
    let [a01, a11] = c1;
    let mut out = ScaledIntMat2 { entries: [[a00, a01], [a10, a11]], pow5: m.pow5(), pow2, basis };
    out.reduce_pow2();
    out
}

impl ScaledIntMat2 {
    fn reduce_pow2(&mut self) {
        while self.pow2 > 0 && self.entries.iter().flatten().all(|e| (e % 2u8).is_zero()) {
            for e in self.entries.iter_mut().flatten() {
                *e /= 2;
            }
            self.pow2 -= 1;
        }
    }
}

/// Eigen-decomposition of a 2×2 matrix with real distinct eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantEigen {
    pub lambda: QuadraticValue,
    pub mu: QuadraticValue,
    /// Eigenvector for `lambda`, in the matrix's own basis.
    pub eigvec: [QuadraticValue; 2],
    pub trace: Rational,
    pub det: Rational,
}

/// Larger and smaller eigenvalue via the quadratic formula, plus the dominant eigenvector.
pub fn dominant_eigen(m: &ScaledIntMat2) -> Result<DominantEigen> {
    let t = m.trace();
    let d = m.det();
    let disc = &t * &t - Rational::from_integer(4.into()) * &d;
    if !disc.is_positive() {
        return Err(Error::DegenerateDiscriminant(super::rational::fmt_rational(&disc)));
    }
    let lambda = QuadraticValue::half_form(&t, &disc, false);
    let mu = QuadraticValue::half_form(&t, &disc, true);
    // (A − λ) x = 0: take x = (b, λ − a), or (λ − d, c) when b vanishes.
    let (a, b, c) = (m.entry(0, 0), m.entry(0, 1), m.entry(1, 0));
    let eigvec = if !b.is_zero() {
        [QuadraticValue::from_rational(b), &lambda - &QuadraticValue::from_rational(a)]
    } else {
        [&lambda - &QuadraticValue::from_rational(m.entry(1, 1)), QuadraticValue::from_rational(c)]
    };
    Ok(DominantEigen { lambda, mu, eigvec, trace: t, det: d })
}
