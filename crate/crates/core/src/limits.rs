//! Long-time limits of the walks: localization predicates, limit distributions,
//! the regular-tree specialization, and the atom part of passage weights.

use num_complex::Complex64;
use serde::Serialize;

use crate::coin::QuantumCoin;
use crate::laurent::family_poly;
use crate::spectral::atoms;
use crate::walk::{basis_index, Direction};
use crate::{sgn, Error, Result, WalkType};

/// Moduli below this count as zero in the predicates.
pub const ZERO_TOL: f64 = 1e-12;

fn check_alpha(alpha: Complex64) -> Result<()> {
    if !(alpha.norm() < 1.0) {
        return Err(Error::InvalidVerblunsky { index: 0, modulus: alpha.norm() });
    }
    Ok(())
}

/// Type I decay rate `sgn(Re a)/rho (sqrt(1 - Im^2 a) - |Re a|)`.
pub fn nu_i(a: Complex64) -> f64 {
    let rho = (1.0 - a.norm_sqr()).sqrt();
    sgn(a.re) / rho * ((1.0 - a.im * a.im).sqrt() - a.re.abs())
}

/// `alpha e^{i phi/2} + beta e^{-i phi/2} nu`: the overlap of the initial state with the bound state.
fn overlap_i(a: Complex64, phi: f64, alpha0: Complex64, beta0: Complex64) -> Complex64 {
    alpha0 * Complex64::from_polar(1.0, phi / 2.0) + beta0 * Complex64::from_polar(1.0, -phi / 2.0) * nu_i(a)
}

/// Type II decay rate `rho / |1 + b|`.
pub fn nu_ii(b: Complex64) -> f64 {
    (1.0 - b.norm_sqr()).sqrt() / (Complex64::new(1.0, 0.0) + b).norm()
}

/// Total point mass of the null-even measure, `(1 + sgn q) |q / (1+b)^2|`, `q = |b|^2 + Re b`.
pub fn m_of_b(b: Complex64) -> f64 {
    let q = b.norm_sqr() + b.re;
    let one_b = Complex64::new(1.0, 0.0) + b;
    (1.0 + sgn(q)) * (q / (one_b * one_b)).norm()
}

/// Limit probabilities `p(x)`, `x = 0..=xmax`.
///
/// For Type II the values hold along times with `x + t` even; the time average
/// (Cesaro limit) is half of each value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitDistribution {
    pub walk_type: WalkType,
    pub parity_resolved: bool,
    pub p: Vec<f64>,
    /// Mass not captured by the bound states. Type II: `1 - sum over even x`
    /// (equal to the sum over odd x).
    pub escape_mass: f64,
}

impl LimitDistribution {
    fn zeros(walk_type: WalkType, xmax: usize) -> Self {
        Self { walk_type, parity_resolved: walk_type == WalkType::II, p: vec![0.0; xmax + 1], escape_mass: 1.0 }
    }

    /// Time-averaged limit at each site.
    pub fn cesaro(&self) -> Vec<f64> {
        let factor = if self.parity_resolved { 0.5 } else { 1.0 };
        self.p.iter().map(|v| v * factor).collect()
    }
}

/// Type I limit from the initial state `alpha0|0,S> + beta0|0,L>`.
pub fn limit_dist_i(a: Complex64, phi: f64, alpha0: Complex64, beta0: Complex64, xmax: usize) -> Result<LimitDistribution> {
    check_alpha(a)?;
    let norm = alpha0.norm_sqr() + beta0.norm_sqr();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInitialState(format!("|alpha|^2 + |beta|^2 = {norm}, expected 1")));
    }
    let mut out = LimitDistribution::zeros(WalkType::I, xmax);
    let nu = nu_i(a);
    let nu2 = nu * nu;
    let p0 = a.re * a.re / (1.0 - a.im * a.im) * overlap_i(a, phi, alpha0, beta0).norm_sqr() * (1.0 + nu2);
    let mut term = p0;
    for v in out.p.iter_mut() {
        *v = term;
        term *= nu2;
    }
    if p0 > 0.0 {
        out.escape_mass = 1.0 - p0 / (1.0 - nu2);
    }
    Ok(out)
}

/// Whether `limsup P(X_t = 0) > 0` for the Type I walk.
pub fn localized_i(a: Complex64, phi: f64, alpha0: Complex64, beta0: Complex64) -> bool {
    a.re.abs() > ZERO_TOL && overlap_i(a, phi, alpha0, beta0).norm() > ZERO_TOL
}

/// Type II limit along the parity-matching times; independent of the initial phase.
pub fn limit_dist_ii(b: Complex64, xmax: usize) -> Result<LimitDistribution> {
    check_alpha(b)?;
    let mut out = LimitDistribution::zeros(WalkType::II, xmax);
    let m = m_of_b(b);
    if m == 0.0 {
        return Ok(out);
    }
    let nu2 = nu_ii(b).powi(2);
    let m2 = m * m;
    out.p[0] = m2;
    let mut term = m2 * (1.0 + 1.0 / nu2);
    for v in out.p.iter_mut().skip(1) {
        term *= nu2;
        *v = term;
    }
    out.escape_mass = 1.0 - m2 / (1.0 - nu2);
    Ok(out)
}

/// Whether the Type II walk localizes: `|b|^2 + Re b > 0`, i.e. `b` outside the disk `|b + 1/2| <= 1/2`.
pub fn localized_ii(b: Complex64) -> bool {
    b.norm_sqr() + b.re > ZERO_TOL
}

/// The two reflection phases giving the distance-from-root process on a regular tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TreeCase {
    /// `gamma = 0`, `b = 2/kappa - 1`.
    A,
    /// `gamma = pi`, `b = 1 - 2/kappa`.
    B,
}

impl std::str::FromStr for TreeCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(TreeCase::A),
            "B" | "b" => Ok(TreeCase::B),
            _ => Err(Error::Parse(format!("tree case must be A or B, got {s:?}"))),
        }
    }
}

fn check_kappa(kappa: u32) -> Result<()> {
    if kappa < 2 {
        return Err(Error::InvalidArgument(format!("tree degree must be at least 2, got {kappa}")));
    }
    Ok(())
}

/// Real coin and reflection phase of the tree walk with degree `kappa`.
pub fn tree_coin(kappa: u32, case: TreeCase) -> Result<(QuantumCoin, f64)> {
    check_kappa(kappa)?;
    let coin = QuantumCoin::c_alpha(Complex64::new(2.0 / kappa as f64 - 1.0, 0.0))?;
    let gamma = match case {
        TreeCase::A => 0.0,
        TreeCase::B => std::f64::consts::PI,
    };
    Ok((coin, gamma))
}

/// Null-even parameter of the tree walk.
pub fn tree_b(kappa: u32, case: TreeCase) -> Result<Complex64> {
    check_kappa(kappa)?;
    let b = 1.0 - 2.0 / kappa as f64;
    Ok(Complex64::new(if case == TreeCase::B { b } else { -b }, 0.0))
}

/// Total point mass of the Case B tree measure, `(kappa - 2)/(kappa - 1)`.
pub fn tree_atom_total(kappa: u32) -> Result<f64> {
    check_kappa(kappa)?;
    Ok((kappa as f64 - 2.0) / (kappa as f64 - 1.0))
}

/// Case B limit of `P(X_t = 0)` along even times: the square of [`tree_atom_total`].
pub fn tree_p0_limit(kappa: u32) -> Result<f64> {
    Ok(tree_atom_total(kappa)?.powi(2))
}

pub fn tree_limit(kappa: u32, case: TreeCase, xmax: usize) -> Result<LimitDistribution> {
    limit_dist_ii(tree_b(kappa, case)?, xmax)
}

/// Atom part of the passage weight from the origin to site `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassageBlock {
    pub walk_type: WalkType,
    pub k: usize,
    /// `block[d1][d2]` in the `{R, L}` direction basis, as for passage weights.
    pub block: [[Complex64; 2]; 2],
}

impl PassageBlock {
    pub fn moduli(&self) -> [[f64; 2]; 2] {
        self.block.map(|row| row.map(|v| v.norm()))
    }
}

fn diag_phase(theta: f64) -> [Complex64; 2] {
    [Complex64::from_polar(1.0, theta / 2.0), Complex64::from_polar(1.0, -theta / 2.0)]
}

/// Large-time form of `Xi_{k,0}(t)` keeping only the point masses.
///
/// The global phase `(Delta^{1/2})^t e^{i k phi} z_0^t` is dropped; for Type II
/// the block is the value along times with `k + t` even, and only the `L`
/// column exists. Without point masses the block is zero.
pub fn asymptotic_passage(k: usize, walk_type: WalkType, coin: &QuantumCoin, gamma: f64) -> Result<PassageBlock> {
    coin.validate()?;
    let params = coin.extract_params(gamma)?;
    let zero = Complex64::new(0.0, 0.0);
    let mut real = [[zero; 2]; 2];
    let (alpha, twist) = match walk_type {
        WalkType::I => (params.a, params.phi),
        WalkType::II => (params.b, params.psi),
    };
    let found = atoms(walk_type, alpha)?;
    if let Some(first) = found.first() {
        let z0 = Complex64::from_polar(1.0, first.theta);
        for (d1, dir) in Direction::BOTH.iter().enumerate() {
            let Some(row_idx) = basis_index(walk_type, k, *dir) else { continue };
            for (d2, src) in Direction::BOTH.iter().enumerate() {
                let Some(col_idx) = basis_index(walk_type, 0, *src) else { continue };
                real[d1][d2] = match walk_type {
                    // W = C^T for the real coin: <row| W^t |col> = int z^t x_col conj(x_row) dmu.
                    WalkType::I => {
                        first.mass
                            * family_poly(WalkType::I, col_idx, z0, alpha)?
                            * family_poly(WalkType::I, row_idx, z0, alpha)?.conj()
                    }
                    // W = C: <row| W^t |0> = int z^t conj(chi_row) dmu, atoms at z0 and -z0.
                    WalkType::II => {
                        let mut sum = zero;
                        for (j, atom) in found.iter().enumerate() {
                            let zj = Complex64::from_polar(1.0, atom.theta);
                            let sign = if j == 1 && k % 2 == 1 { -1.0 } else { 1.0 };
                            sum += atom.mass * sign * family_poly(WalkType::II, row_idx, zj, alpha)?.conj();
                        }
                        sum
                    }
                };
            }
        }
    }
    let d = diag_phase(twist);
    let mut block = [[zero; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            block[i][j] = d[i].conj() * real[i][j] * d[j];
        }
    }
    Ok(PassageBlock { walk_type, k, block })
}
