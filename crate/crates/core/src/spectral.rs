//! Caratheodory functions and spectral measures of the alternating families.
//!
//! The measure of either family is an absolutely continuous part supported on
//! the band `{theta : |cos theta| < rho}` plus at most two point masses:
//!
//! ```text
//! dmu = w(theta) dtheta / (2 pi) + sum m_0 delta(theta - theta_0)
//! ```
//!
//! `F(z) = 1 + 2 sum_n conj(mu_n) z^n` is evaluated in closed form using the
//! square root of `g(z) = z^4 - 2(1 - 2|a|^2) z^2 + 1` that is analytic on the
//! open disk with `sqrt(g(0)) = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::cmv::{eigen_prefix, VerblunskySeq};
use crate::laurent::{family_poly, tilde_ratio};
use crate::limits::m_of_b;
use crate::{wrap_angle, Error, Result, WalkType};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Point masses lighter than this are not reported.
pub const ATOM_THRESHOLD: f64 = 1e-8;

/// Change between successive node doublings accepted as converged.
pub const QUADRATURE_TOL: f64 = 1e-8;

const MIN_NODES: usize = 32;
const MAX_NODES: usize = 2048;

fn check_alpha(alpha: Complex64) -> Result<f64> {
    let modulus = alpha.norm();
    if !(modulus < 1.0) {
        return Err(Error::InvalidVerblunsky { index: 0, modulus });
    }
    Ok((1.0 - alpha.norm_sqr()).sqrt())
}

fn check_disk(z: Complex64) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::InvalidArgument(format!("Caratheodory functions need |z| < 1, got |z| = {}", z.norm())));
    }
    Ok(())
}

/// `sqrt(g(z))` on the disk, as a product of principal `sqrt(1 - z/r)` over the roots of `g`.
pub fn sqrt_g(z: Complex64, alpha: Complex64) -> Complex64 {
    let half = (1.0 - 2.0 * alpha.norm_sqr()).clamp(-1.0, 1.0).acos() / 2.0;
    [half, -half, PI + half, PI - half]
        .iter()
        .map(|&t| (ONE - z / Complex64::from_polar(1.0, t)).sqrt())
        .product()
}

fn carath_checked(f: Complex64, z: Complex64) -> Result<Complex64> {
    if !f.is_finite() || f.re < -1e-9 * (1.0 + f.norm()) {
        return Err(Error::BranchFailure { re: z.re, im: z.im });
    }
    Ok(f)
}

/// Null-odd family: `F(z) = -(z - 1/z - 2i Im a) / (s - 2 Re a)`, `s = sqrt(g)/z`.
pub fn caratheodory_i(z: Complex64, a: Complex64) -> Result<Complex64> {
    check_alpha(a)?;
    check_disk(z)?;
    // Multiplied through by z so that z = 0 needs no special case.
    let num = z * z - ONE - Complex64::new(0.0, 2.0 * a.im) * z;
    let den = sqrt_g(z, a) - 2.0 * a.re * z;
    carath_checked(-num / den, z)
}

/// Null-even family: `F(z) = ((1-b) z - (1-conj b)/z) / (b z + conj(b)/z - s)`.
///
/// [`caratheodory_ii_printed`] is the same expression with the opposite overall
/// sign; this one satisfies `F(0) = 1` and agrees with the ratio limit.
pub fn caratheodory_ii(z: Complex64, b: Complex64) -> Result<Complex64> {
    check_alpha(b)?;
    check_disk(z)?;
    carath_checked(ii_expression(z, b), z)
}

/// `-((1-b) z - (1-conj b)/z) / (b z + conj(b)/z - s)`; equals `-F` everywhere on the disk.
pub fn caratheodory_ii_printed(z: Complex64, b: Complex64) -> Result<Complex64> {
    check_alpha(b)?;
    check_disk(z)?;
    Ok(-ii_expression(z, b))
}

fn ii_expression(z: Complex64, b: Complex64) -> Complex64 {
    let num = (ONE - b) * z * z - (ONE - b.conj());
    let den = b * z * z + b.conj() - sqrt_g(z, b);
    num / den
}

pub fn caratheodory(family: WalkType, z: Complex64, alpha: Complex64) -> Result<Complex64> {
    match family {
        WalkType::I => caratheodory_i(z, alpha),
        WalkType::II => caratheodory_ii(z, alpha),
    }
}

/// `F` as the limit of `tilde_j / plain_j`, with the parity sign that makes `F(0) = 1`.
///
/// Converges like `|lambda_- / lambda_+|^{j/2}`, which is slow close to the band.
pub fn caratheodory_ratio(z: Complex64, family: WalkType, alpha: Complex64, j: usize) -> Result<Complex64> {
    check_alpha(alpha)?;
    if !(z.norm() <= 0.99) {
        return Err(Error::InvalidArgument(format!("ratio limit needs |z| <= 0.99, got {}", z.norm())));
    }
    if z.norm() == 0.0 {
        return Ok(ONE);
    }
    let odd = j % 2 == 1;
    let sign = match family {
        WalkType::I if !odd => -1.0,
        WalkType::II if odd => -1.0,
        _ => 1.0,
    };
    Ok(tilde_ratio(family, j, z, alpha)? * sign)
}

fn density_unchecked(theta: f64, family: WalkType, alpha: Complex64, rho: f64) -> f64 {
    let c = theta.cos();
    let num = (rho * rho - c * c).max(0.0).sqrt();
    num / density_denominator(theta, family, alpha)
}

fn density_denominator(theta: f64, family: WalkType, alpha: Complex64) -> f64 {
    match family {
        WalkType::I => (theta.sin() + alpha.im).abs(),
        WalkType::II => ((alpha + 1.0) * Complex64::from_polar(1.0, theta)).im.abs(),
    }
}

/// Density `w(theta)` of the absolutely continuous part.
pub fn ac_density(theta: f64, family: WalkType, alpha: Complex64) -> Result<f64> {
    let rho = check_alpha(alpha)?;
    if !(theta.cos().abs() < rho) {
        return Err(Error::OutsideSupport { theta });
    }
    Ok(density_unchecked(theta, family, alpha, rho))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub theta: f64,
    pub mass: f64,
}

/// Point masses from their closed forms.
pub fn atoms(family: WalkType, alpha: Complex64) -> Result<Vec<Atom>> {
    check_alpha(alpha)?;
    Ok(match family {
        WalkType::I => {
            let mass = alpha.re.abs() / (1.0 - alpha.im * alpha.im).sqrt();
            if alpha.re == 0.0 || mass < ATOM_THRESHOLD {
                Vec::new()
            } else {
                let base = (-alpha.im).asin();
                let theta = wrap_angle(if alpha.re > 0.0 { base } else { PI - base });
                vec![Atom { theta, mass }]
            }
        }
        WalkType::II => {
            let total = m_of_b(alpha);
            if total < ATOM_THRESHOLD {
                Vec::new()
            } else {
                let theta = wrap_angle(-(ONE + alpha).arg());
                vec![Atom { theta, mass: total / 2.0 }, Atom { theta: wrap_angle(theta + PI), mass: total / 2.0 }]
            }
        }
    })
}

/// `lim_{r -> 1} (1 - r)/2 F(r e^{i theta})`, Richardson-extrapolated from `1 - r = 1e-3, 1e-4, 1e-5`.
pub fn atom_mass_radial(theta: f64, family: WalkType, alpha: Complex64) -> Result<f64> {
    let sample = |h: f64| -> Result<f64> {
        let f = caratheodory(family, Complex64::from_polar(1.0 - h, theta), alpha)?;
        Ok(h / 2.0 * f.re)
    };
    let (v1, v2, v3) = (sample(1e-3)?, sample(1e-4)?, sample(1e-5)?);
    let r1 = (10.0 * v2 - v1) / 9.0;
    let r2 = (10.0 * v3 - v2) / 9.0;
    let mass = (100.0 * r2 - r1) / 99.0;
    if mass < ATOM_THRESHOLD {
        return Err(Error::NoAtom { theta });
    }
    Ok(mass)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm) / (x * x - 1.0);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// One quadrature node of the absolutely continuous part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcSample {
    pub theta: f64,
    pub w: f64,
    /// `dtheta` weight of the node; `sum(weight * w) / (2 pi)` is the a.c. mass.
    #[serde(skip)]
    pub weight: f64,
}

/// Nodes on the band, `n` per arc.
///
/// Each arc is parametrised by `cos theta = rho cos u`, `u in (0, pi)`; the
/// square-root edges of `w` cancel against the Jacobian, so the integrand in
/// `u` is smooth and Gauss–Legendre converges fast.
pub fn band_nodes(family: WalkType, alpha: Complex64, n: usize) -> Result<Vec<AcSample>> {
    let rho = check_alpha(alpha)?;
    let (x, wt) = gauss_legendre(n);
    let mut out = Vec::with_capacity(2 * n);
    for side in [1.0, -1.0] {
        for (xi, wi) in x.iter().zip(&wt) {
            let u = (xi + 1.0) * PI / 2.0;
            let theta = side * (rho * u.cos()).acos();
            let su = rho * u.sin();
            let sin_theta = theta.sin().abs();
            // w * jacobian, with sqrt(rho^2 - cos^2 theta) = rho sin u.
            let w = su / density_denominator(theta, family, alpha);
            out.push(AcSample { theta, w, weight: wi * PI / 2.0 * su / sin_theta });
        }
    }
    Ok(out)
}

/// Absolutely continuous samples plus point masses.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralMeasure {
    pub family: WalkType,
    #[serde(skip)]
    pub alpha: Complex64,
    pub ac: Vec<AcSample>,
    pub atoms: Vec<Atom>,
}

impl SpectralMeasure {
    pub fn compute(family: WalkType, alpha: Complex64, nodes_per_arc: usize) -> Result<Self> {
        if nodes_per_arc == 0 {
            return Err(Error::InvalidArgument("at least one quadrature node per arc is needed".into()));
        }
        Ok(Self { family, alpha, ac: band_nodes(family, alpha, nodes_per_arc)?, atoms: atoms(family, alpha)? })
    }

    pub fn ac_mass(&self) -> f64 {
        self.ac.iter().map(|s| s.weight * s.w).sum::<f64>() / (2.0 * PI)
    }

    pub fn atom_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.ac_mass() + self.atom_mass()
    }

    /// `int f dmu` at the stored node count.
    pub fn integrate<F: Fn(f64) -> Result<Complex64>>(&self, f: F) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for s in &self.ac {
            total += f(s.theta)? * (s.weight * s.w / (2.0 * PI));
        }
        for a in &self.atoms {
            total += f(a.theta)? * a.mass;
        }
        Ok(total)
    }
}

/// `int f dmu`, doubling the node count until two successive values agree to [`QUADRATURE_TOL`].
pub fn integrate_adaptive<F: Fn(f64) -> Result<Complex64>>(family: WalkType, alpha: Complex64, f: F) -> Result<Complex64> {
    let mut n = MIN_NODES;
    let mut prev = SpectralMeasure::compute(family, alpha, n)?.integrate(&f)?;
    let mut change = f64::INFINITY;
    while n < MAX_NODES {
        n *= 2;
        let next = SpectralMeasure::compute(family, alpha, n)?.integrate(&f)?;
        change = (next - prev).norm();
        if change <= QUADRATURE_TOL {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureNonconvergence { change })
}

/// `int z^t p_l conj(p_m) dmu` (null-odd) or `int z^t conj(p_l) p_m dmu` (null-even);
/// equals `(C^t)_{l,m}`.
pub fn moment_integral(t: usize, l: usize, m: usize, family: WalkType, alpha: Complex64) -> Result<Complex64> {
    integrate_adaptive(family, alpha, |theta| {
        let z = Complex64::from_polar(1.0, theta);
        let (pl, pm) = (family_poly(family, l, z, alpha)?, family_poly(family, m, z, alpha)?);
        let pair = match family {
            WalkType::I => pl * pm.conj(),
            WalkType::II => pl.conj() * pm,
        };
        Ok(z.powu(t as u32) * pair)
    })
}

/// Christoffel function `1 / sum_j |x_j(e^{i theta})|^2` over a prefix of the column eigenvector.
pub fn christoffel(seq: &VerblunskySeq, theta: f64, len: usize) -> f64 {
    let x = eigen_prefix(seq, Complex64::from_polar(1.0, theta), len);
    let s: f64 = x.iter().map(|v| v.norm_sqr()).sum();
    if s.is_finite() {
        1.0 / s
    } else {
        0.0
    }
}

/// Heaviest point mass of the measure of an arbitrary Verblunsky sequence.
///
/// The Christoffel function of a prefix is largest near a point mass and
/// tends to the mass as the prefix grows. A short prefix gives a broad peak
/// that a grid scan can see; longer prefixes then sharpen it, each time
/// re-locating the maximum by bisection on the sign of a central difference.
/// Inside the band the value keeps shrinking like 1/len, so it never settles.
pub fn find_atom(seq: &VerblunskySeq) -> Result<Atom> {
    const GRID: usize = 4096;
    const COARSE_LEN: usize = 8;
    const LEN_STEP: usize = 8;
    const MAX_LEN: usize = 240;
    const SETTLED: f64 = 1e-11;
    let step = 2.0 * PI / GRID as f64;
    let (mut theta, mut prev) = (0.0, -1.0);
    for i in 0..GRID {
        let t = -PI + i as f64 * step;
        let v = christoffel(seq, t, COARSE_LEN);
        if v > prev {
            theta = t;
            prev = v;
        }
    }
    if prev < ATOM_THRESHOLD {
        return Err(Error::NoAtoms);
    }
    let mut len = COARSE_LEN;
    while len < MAX_LEN {
        len += LEN_STEP;
        theta = peak(seq, len, theta, step).ok_or(Error::NoAtoms)?;
        let mass = christoffel(seq, theta, len);
        if mass < ATOM_THRESHOLD {
            return Err(Error::NoAtoms);
        }
        if (mass - prev).abs() <= SETTLED * mass {
            return Ok(Atom { theta: wrap_angle(theta), mass });
        }
        prev = mass;
    }
    Err(Error::NoAtoms)
}

/// Local maximum of the prefix Christoffel function near `start`, found by
/// widening a bracket from `start` until the slope changes sign across it.
fn peak(seq: &VerblunskySeq, len: usize, start: f64, width: f64) -> Option<f64> {
    const MAX_REACH: f64 = 0.5;
    let slope = |theta: f64| {
        let h = 1e-9;
        christoffel(seq, theta + h, len) - christoffel(seq, theta - h, len)
    };
    let widen = |dir: f64| {
        let mut d = width;
        while d <= MAX_REACH {
            let edge = start + dir * d;
            if dir * slope(edge) < 0.0 {
                return Some(edge);
            }
            d *= 2.0;
        }
        None
    };
    let (mut lo, mut hi) = (widen(-1.0)?, widen(1.0)?);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
