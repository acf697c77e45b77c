//! Half-line discrete-time quantum walks and their CMV spectral theory.
//!
//! Two walk models live on the half line `{0, 1, 2, ...}`:
//!
//! - **Type I**: a self-loop state `S` at the origin.
//! - **Type II**: a reflecting origin, `|0,L> -> e^{i gamma} |1,R>`.
//!
//! Each one-step evolution is unitarily equivalent to a CMV matrix whose
//! Verblunsky coefficients vanish on every other index (null-odd for Type I,
//! null-even for Type II). The spectral measure of that CMV matrix is known
//! in closed form; its point masses are exactly what makes the walk localize.
//!
//! Module map:
//!
//! - [`coin`]: the 2x2 quantum coin and its derived scalars.
//! - [`walk`]: direct time evolution, the brute-force oracle.
//! - [`cmv`]: banded CMV matrices, walk/CMV conjugation, rotations.
//! - [`laurent`]: closed-form orthonormal Laurent polynomials.
//! - [`spectral`]: Caratheodory functions, densities, atoms, quadrature.
//! - [`limits`]: limit distributions and localization predicates.
//! - [`verify`]: cross-module check suites used by the CLI.
//! - [`output`]: CSV/JSON writers.

pub mod cmv;
pub mod coin;
pub mod error;
pub mod laurent;
pub mod limits;
pub mod output;
pub mod spectral;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Which of the two walk models (and CMV families) is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum WalkType {
    /// Self-loop at the origin; null-odd Verblunsky family `(a, 0, a, 0, ...)`.
    I,
    /// Reflecting origin; null-even Verblunsky family `(0, b, 0, b, ...)`.
    II,
}

impl std::fmt::Display for WalkType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WalkType::I => write!(f, "I"),
            WalkType::II => write!(f, "II"),
        }
    }
}

/// `sgn` with `sgn(0) = 0`.
pub(crate) fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Wraps an angle into `[-pi, pi)`.
pub fn wrap_angle(theta: f64) -> f64 {
    use std::f64::consts::PI;
    let t = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if t >= PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}
