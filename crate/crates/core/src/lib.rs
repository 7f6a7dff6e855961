//! Harmonic functions on the Sierpinski triangle and the local analysis of
//! their restriction `u` to the side `[0, 1]`.
//!
//! Modules, bottom up:
//! - [`exact`]: rationals, the generator matrices `M_0`, `M_1`, `M_ω`, quadratic
//!   eigenvalues, binary expansions and necklace classes;
//! - [`harmonic`]: exact and certified evaluation of `u`, discrete harmonic grids;
//! - [`tangent`]: tangent directions through the projective maps `M̃_i`;
//! - [`holder`]: Hölder exponents, derivative classification and the period table.

pub mod error;
pub mod exact;
pub mod harmonic;
pub mod holder;
pub mod tangent;

pub use error::{Error, Result};
