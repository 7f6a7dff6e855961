//! Exact arithmetic: rationals, generator matrices, quadratic eigenvalues,
//! binary expansions and necklace combinatorics.

pub mod cone;
pub mod expansion;
pub mod matrix;
pub mod quadratic;
pub mod rational;
pub mod words;

pub use cone::ConeSpec;
pub use expansion::{expand, expansion_value, format_bits, parse_bits, Expansion, Variant};
pub use matrix::{
    dominant_eigen, generator_matrix, plane_trace, restrict_to_plane, word_product, word_product_bits,
    DominantEigen, PlaneBasis, ScaledIntMat2, ScaledIntMat3, Symbol,
};
pub use quadratic::QuadraticValue;
pub use rational::{fmt_rational, format_significant, parse_rational, Rational, Vec3Q};
pub use words::{enumerate_necklace_classes, transition_density};
