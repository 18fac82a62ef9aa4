//! Polar derivatives of complex polynomials and numerical verification of
//! Bernstein-type inequalities for them.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: dense complex polynomials (evaluation, derivatives,
//!   conjugate-reciprocal transform, argument scaling);
//! - [`polar`]: the polar derivative `D_a P(z) = n P(z) + (a - z) P'(z)`,
//!   iterated chains and the constants `n_s`, `Lambda_s`;
//! - [`roots`]: simultaneous-iteration root finding and argument-principle
//!   zero counting;
//! - [`extrema`]: certified maximum / minimum of `|P|` on a circle;
//! - [`inequalities`]: the registry of inequalities and the pointwise checker;
//! - [`generators`]: seeded generators for hypothesis-satisfying inputs;
//! - [`harness`]: randomized suites, fuzzing and report emission.

pub mod error;
pub mod extrema;
pub mod generators;
pub mod harness;
pub mod inequalities;
pub mod polar;
pub mod poly;
pub mod roots;

pub use error::{Error, Result};
pub use extrema::{circle_extremum, CircleExtremum, ExtremumKind};
pub use generators::{dominated_pair, extremal_poly, random_zeros_poly, Family, GenConfig, GenMode};
pub use inequalities::{
    build_instance, check_inequality, evaluate_sides, sharpness_probe, CheckParams, InequalityId,
    InequalityInstance, InequalityReport,
};
pub use num_complex::Complex64;
pub use polar::{falling_factorial, lambda_product, polar_chain, polar_derivative, PolarSpec};
pub use poly::Polynomial;
pub use roots::{count_zeros_in_disk, find_roots, ZeroLocationReport};
