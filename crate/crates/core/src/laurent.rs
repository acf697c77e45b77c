//! Closed-form orthonormal Laurent polynomials of the two alternating families.
//!
//! Both families share the characteristic roots
//!
//! ```text
//! lambda_pm(z) = (z + 1/z -+ s sqrt((z - 1/z)^2 + 4|a|^2)) / (2 rho),   lambda_+ lambda_- = 1,
//! ```
//!
//! where `s = sgn(Im(e^{-i arccos rho} z))` fixes which root is called `+`.
//! Every polynomial is `B_+ lambda_+^n + B_- lambda_-^n` for suitable `B_pm`; the
//! sum does not depend on how the two roots are labelled, so the ratio helpers
//! order them by modulus instead and divide out the dominant power.
//!
//! - Null-odd `(a, 0, a, 0, ...)`: column eigenvector `C x = z x`,
//!   `x_{2n-1} = B_+ lambda_+^n + B_- lambda_-^n`, `B_pm = (±(1/z - a)/rho ∓ lambda_∓)/(lambda_+ - lambda_-)`,
//!   `x_{2n}(z) = conj(x_{2n-1}(1/conj z))`.
//! - Null-even `(0, b, 0, b, ...)`: row eigenvector `chi C = z chi`, with
//!   `(1/z - b z)/rho` driving the even entries and `z (z - conj(b)/z)/rho` the odd ones.

use num_complex::Complex64;

use crate::{sgn, Error, Result, WalkType};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Roots closer than this count as coincident.
pub const DEGENERATE_TOL: f64 = 1e-14;

/// Branch data for the characteristic roots at one point `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchContext {
    pub z: Complex64,
    pub rho: f64,
    /// `sgn(Im(e^{-i arccos rho} z))`, one of `-1, 0, 1`.
    pub sign: f64,
}

impl BranchContext {
    pub fn new(z: Complex64, alpha: Complex64) -> Self {
        let rho = rho_of(alpha);
        let sign = sgn((Complex64::from_polar(1.0, -rho.acos()) * z).im);
        Self { z, rho, sign }
    }
}

fn rho_of(alpha: Complex64) -> f64 {
    (1.0 - alpha.norm_sqr()).max(0.0).sqrt()
}

fn discriminant_sqrt(z: Complex64, alpha: Complex64) -> Complex64 {
    let d = z - z.inv();
    (d * d + 4.0 * alpha.norm_sqr()).sqrt()
}

/// `(lambda_+, lambda_-)` with the sign-selected labelling.
pub fn lambda_pm(z: Complex64, alpha: Complex64) -> (Complex64, Complex64) {
    let ctx = BranchContext::new(z, alpha);
    let sum = z + z.inv();
    let root = discriminant_sqrt(z, alpha) * ctx.sign;
    ((sum - root) / (2.0 * ctx.rho), (sum + root) / (2.0 * ctx.rho))
}

/// Roots ordered as `(dominant, recessive)` by modulus; no sign convention.
fn roots_by_modulus(z: Complex64, alpha: Complex64) -> (Complex64, Complex64) {
    let rho = rho_of(alpha);
    let sum = z + z.inv();
    let root = discriminant_sqrt(z, alpha);
    let (p, m) = ((sum + root) / (2.0 * rho), (sum - root) / (2.0 * rho));
    if p.norm() >= m.norm() {
        (p, m)
    } else {
        (m, p)
    }
}

fn checked_pm(z: Complex64, alpha: Complex64) -> Result<(Complex64, Complex64)> {
    let (lp, lm) = lambda_pm(z, alpha);
    if !((lp - lm).norm() >= DEGENERATE_TOL) {
        return Err(Error::DegenerateRoots { re: z.re, im: z.im });
    }
    Ok((lp, lm))
}

/// `B_1 l1^n + B_2 l2^n` for the sequence with values `1, drive` at `n = 0, 1`.
fn combo(n: usize, drive: Complex64, (l1, l2): (Complex64, Complex64)) -> Complex64 {
    let diff = l1 - l2;
    let b1 = (drive - l2) / diff;
    let b2 = (l1 - drive) / diff;
    b1 * l1.powu(n as u32) + b2 * l2.powu(n as u32)
}

/// The same combination divided by `l1^n`.
fn combo_scaled(n: usize, drive: Complex64, (l1, l2): (Complex64, Complex64)) -> Complex64 {
    let diff = l1 - l2;
    let b1 = (drive - l2) / diff;
    let b2 = (l1 - drive) / diff;
    b1 + b2 * (l2 / l1).powu(n as u32)
}

fn validate(alpha: Complex64, z: Complex64) -> Result<()> {
    if !(alpha.norm() < 1.0) {
        return Err(Error::InvalidVerblunsky { index: 0, modulus: alpha.norm() });
    }
    if z.norm() == 0.0 || !z.is_finite() {
        return Err(Error::InvalidArgument(format!("Laurent polynomials need a finite nonzero z, got {z}")));
    }
    Ok(())
}

fn finite(v: Complex64) -> Result<Complex64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Underflow)
    }
}

fn odd_drive_i(z: Complex64, a: Complex64) -> Complex64 {
    (z.inv() - a) / rho_of(a)
}

fn even_drive_ii(z: Complex64, b: Complex64) -> Complex64 {
    (z.inv() - b * z) / rho_of(b)
}

fn odd_drive_ii(z: Complex64, b: Complex64) -> Complex64 {
    (z - b.conj() / z) / rho_of(b)
}

/// `x_j(z)` of the null-odd family with parameter `a`.
pub fn x_hat(j: usize, z: Complex64, a: Complex64) -> Result<Complex64> {
    validate(a, z)?;
    if j == 0 {
        return Ok(ONE);
    }
    let n = j.div_ceil(2);
    if j % 2 == 1 {
        finite(combo(n, odd_drive_i(z, a), checked_pm(z, a)?))
    } else {
        let w = z.conj().inv();
        finite(combo(n, odd_drive_i(w, a), checked_pm(w, a)?).conj())
    }
}

/// `chi_j(z)` of the null-even family with parameter `b`.
pub fn chi(j: usize, z: Complex64, b: Complex64) -> Result<Complex64> {
    validate(b, z)?;
    if j == 0 {
        return Ok(ONE);
    }
    let roots = checked_pm(z, b)?;
    if j % 2 == 0 {
        finite(combo(j / 2, even_drive_ii(z, b), roots))
    } else {
        finite(z * combo((j - 1) / 2, odd_drive_ii(z, b), roots))
    }
}

/// Family polynomial: `x_j` for the null-odd family, `chi_j` for the null-even one.
pub fn family_poly(family: WalkType, j: usize, z: Complex64, alpha: Complex64) -> Result<Complex64> {
    match family {
        WalkType::I => x_hat(j, z, alpha),
        WalkType::II => chi(j, z, alpha),
    }
}

/// The same polynomial for the sign-flipped sequence `-alpha_j`.
pub fn tilde_variant(family: WalkType, j: usize, z: Complex64, alpha: Complex64) -> Result<Complex64> {
    family_poly(family, j, z, -alpha)
}

/// First `len` polynomials of a family at `z`.
pub fn family_prefix(family: WalkType, len: usize, z: Complex64, alpha: Complex64) -> Result<Vec<Complex64>> {
    (0..len).map(|j| family_poly(family, j, z, alpha)).collect()
}

/// Polynomial `j` at `z`, divided by the dominant root power shared by both signs of `alpha`.
fn scaled_poly(family: WalkType, j: usize, z: Complex64, alpha: Complex64) -> Complex64 {
    if j == 0 {
        return ONE;
    }
    match family {
        WalkType::I => {
            let n = j.div_ceil(2);
            if j % 2 == 1 {
                combo_scaled(n, odd_drive_i(z, alpha), roots_by_modulus(z, alpha))
            } else {
                let w = z.conj().inv();
                combo_scaled(n, odd_drive_i(w, alpha), roots_by_modulus(w, alpha)).conj()
            }
        }
        WalkType::II => {
            let roots = roots_by_modulus(z, alpha);
            if j % 2 == 0 {
                combo_scaled(j / 2, even_drive_ii(z, alpha), roots)
            } else {
                z * combo_scaled((j - 1) / 2, odd_drive_ii(z, alpha), roots)
            }
        }
    }
}

/// `tilde_j / plain_j` evaluated without forming large root powers.
pub fn tilde_ratio(family: WalkType, j: usize, z: Complex64, alpha: Complex64) -> Result<Complex64> {
    validate(alpha, z)?;
    let (l1, l2) = roots_by_modulus(z, alpha);
    if (l1 - l2).norm() < DEGENERATE_TOL {
        return Err(Error::DegenerateRoots { re: z.re, im: z.im });
    }
    let num = scaled_poly(family, j, z, -alpha);
    let den = scaled_poly(family, j, z, alpha);
    if den.norm() == 0.0 {
        return Err(Error::Underflow);
    }
    finite(num / den)
}
