//! CMV matrices built from Verblunsky sequences, and their link to the walks.
//!
//! Row `2k` of the (semi-infinite) matrix has nonzero entries in columns
//! `2k-1 ..= 2k+2`:
//!
//! ```text
//! rho_{2k-1} conj(a_{2k}),  -a_{2k-1} conj(a_{2k}),  rho_{2k} conj(a_{2k+1}),  rho_{2k} rho_{2k+1}
//! ```
//!
//! and row `2k+1` has, in the same columns,
//!
//! ```text
//! rho_{2k-1} rho_{2k},      -a_{2k-1} rho_{2k},      -a_{2k} conj(a_{2k+1}),   -a_{2k} rho_{2k+1}
//! ```
//!
//! with the conventions `a_{-1} = -1`, `rho_{-1} = 0`. This is the product
//! `L M` of `L = Theta_0 + Theta_2 + ...` and `M = 1 + Theta_1 + Theta_3 + ...`,
//! `Theta_j = [[conj(a_j), rho_j], [rho_j, -a_j]]`.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::coin::{CoinParams, QuantumCoin};
use crate::{Error, Result, WalkType};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Small dense square matrix, row-major. Only used for conjugation checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = self.transpose();
        out.data.iter_mut().for_each(|v| *v = v.conj());
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// `diag(left) * self * diag(right)`.
    pub fn scale(&self, left: &[Complex64], right: &[Complex64]) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = left[i] * self[(i, j)] * right[j];
            }
        }
        out
    }

    /// Largest `|self - other|` over the leading `keep x keep` block.
    pub fn max_diff(&self, other: &Self, keep: usize) -> f64 {
        let keep = keep.min(self.n).min(other.n);
        let mut worst: f64 = 0.0;
        for i in 0..keep {
            for j in 0..keep {
                worst = worst.max((self[(i, j)] - other[(i, j)]).norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// A Verblunsky sequence `a_0, a_1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub enum VerblunskySeq {
    /// `(a, 0, a, 0, ...)`.
    NullOdd(Complex64),
    /// `(0, b, 0, b, ...)`.
    NullEven(Complex64),
    /// Finite list, continued by zeros.
    Explicit(Vec<Complex64>),
    /// `base_j * e^{i (j+1) w}`.
    Rotated { base: Box<VerblunskySeq>, w: f64 },
}

impl VerblunskySeq {
    pub fn alpha(&self, j: usize) -> Complex64 {
        match self {
            VerblunskySeq::NullOdd(a) => {
                if j % 2 == 0 {
                    *a
                } else {
                    ZERO
                }
            }
            VerblunskySeq::NullEven(b) => {
                if j % 2 == 1 {
                    *b
                } else {
                    ZERO
                }
            }
            VerblunskySeq::Explicit(v) => v.get(j).copied().unwrap_or(ZERO),
            VerblunskySeq::Rotated { base, w } => base.alpha(j) * Complex64::from_polar(1.0, (j as f64 + 1.0) * w),
        }
    }

    pub fn rho(&self, j: usize) -> f64 {
        (1.0 - self.alpha(j).norm_sqr()).max(0.0).sqrt()
    }

    /// Checks `|a_j| < 1` for `j < count`.
    pub fn validate(&self, count: usize) -> Result<()> {
        for j in 0..count {
            let modulus = self.alpha(j).norm();
            if !(modulus < 1.0) {
                return Err(Error::InvalidVerblunsky { index: j, modulus });
            }
        }
        Ok(())
    }
}

/// `a'_j = a_j e^{i (j+1) w}`. The CMV matrix becomes unitarily equivalent to
/// `e^{-iw} C`, so every point of the measure moves by `-w`.
pub fn rotate_verblunsky(seq: &VerblunskySeq, w: f64) -> VerblunskySeq {
    match seq {
        VerblunskySeq::Rotated { base, w: w0 } => VerblunskySeq::Rotated { base: base.clone(), w: w0 + w },
        _ => VerblunskySeq::Rotated { base: Box::new(seq.clone()), w },
    }
}

/// Verblunsky sequence whose CMV matrix is conjugate to the walk with this coin.
pub fn walk_verblunsky(params: &CoinParams, walk_type: WalkType) -> VerblunskySeq {
    let half_sum = (params.sigma_r + params.sigma_l) / 2.0;
    match walk_type {
        WalkType::I => rotate_verblunsky(&VerblunskySeq::NullOdd(params.a), -half_sum),
        WalkType::II => rotate_verblunsky(&VerblunskySeq::NullEven(params.b), params.gamma - half_sum),
    }
}

/// `N x N` truncation of the CMV matrix of a Verblunsky sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CmvMatrix {
    seq: VerblunskySeq,
    n: usize,
    alpha: Vec<Complex64>,
    rho: Vec<f64>,
}

impl CmvMatrix {
    pub fn build(seq: VerblunskySeq, n: usize) -> Result<Self> {
        if n < 6 {
            return Err(Error::InvalidArgument(format!("CMV truncation needs N >= 6, got {n}")));
        }
        // Rows up to n-1 reach coefficient index n.
        seq.validate(n + 1)?;
        let alpha: Vec<Complex64> = (0..=n).map(|j| seq.alpha(j)).collect();
        let rho = (0..=n).map(|j| seq.rho(j)).collect();
        Ok(Self { seq, n, alpha, rho })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn verblunsky(&self) -> &VerblunskySeq {
        &self.seq
    }

    fn a(&self, j: isize) -> Complex64 {
        if j < 0 {
            -ONE
        } else {
            self.alpha[j as usize]
        }
    }

    fn r(&self, j: isize) -> f64 {
        if j < 0 {
            0.0
        } else {
            self.rho[j as usize]
        }
    }

    /// Nonzero pattern of row `row`: `(column, value)` for columns `< N`.
    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let k = (row / 2) as isize;
        let (e, o) = (2 * k, 2 * k + 1);
        let vals = if row % 2 == 0 {
            [
                self.a(e).conj() * self.r(e - 1),
                -self.a(e - 1) * self.a(e).conj(),
                self.a(o).conj() * self.r(e),
                Complex64::new(self.r(e) * self.r(o), 0.0),
            ]
        } else {
            [
                Complex64::new(self.r(e - 1) * self.r(e), 0.0),
                -self.a(e - 1) * self.r(e),
                -self.a(e) * self.a(o).conj(),
                -self.a(e) * self.r(o),
            ]
        };
        let n = self.n as isize;
        (0..4).filter_map(move |i| {
            let col = e - 1 + i as isize;
            (col >= 0 && col < n).then(|| (col as usize, vals[i]))
        })
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.row(row).find(|&(c, _)| c == col).map(|(_, v)| v).unwrap_or(ZERO)
    }

    fn check_len(&self, v: &[Complex64]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: v.len() });
        }
        Ok(())
    }

    /// `C v`.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v)?;
        Ok((0..self.n).map(|r| self.row(r).map(|(c, x)| x * v[c]).sum()).collect())
    }

    /// `u C` for a row vector `u`.
    pub fn apply_left(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(u)?;
        let mut out = vec![ZERO; self.n];
        for (r, &ur) in u.iter().enumerate() {
            for (c, x) in self.row(r) {
                out[c] += ur * x;
            }
        }
        Ok(out)
    }

    /// `(C^t)_{l,m}`; exact only while `m + 2t < N`.
    pub fn power_entry(&self, t: usize, l: usize, m: usize) -> Result<Complex64> {
        Ok(self.power_column(t, m)?.get(l).copied().ok_or(Error::TruncationOverflow)?)
    }

    /// Column `m` of `C^t`.
    pub fn power_column(&self, t: usize, m: usize) -> Result<Vec<Complex64>> {
        if m + 2 * t >= self.n {
            return Err(Error::TruncationOverflow);
        }
        let mut v = vec![ZERO; self.n];
        v[m] = ONE;
        for _ in 0..t {
            v = self.apply(&v)?;
        }
        Ok(v)
    }

    pub fn dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.n);
        for r in 0..self.n {
            for (c, v) in self.row(r) {
                m[(r, c)] = v;
            }
        }
        m
    }
}

/// Diagonal phases `lambda_j` relating the walk basis to the CMV basis.
pub fn walk_phases(params: &CoinParams, walk_type: WalkType, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| {
            let phase = match walk_type {
                WalkType::I if i % 2 == 0 => -((i / 2) as f64) * params.sigma_r,
                WalkType::I => ((i + 1) / 2) as f64 * params.sigma_l,
                WalkType::II if i % 2 == 0 => -((i / 2) as f64) * (params.sigma_l - params.gamma),
                WalkType::II => (i / 2) as f64 * (params.sigma_r - params.gamma),
            };
            Complex64::from_polar(1.0, phase)
        })
        .collect()
}

/// The walk operator rebuilt from its CMV matrix.
///
/// Type I: `W = L* C^T L`; Type II: `W = e^{i gamma} L C L*`, `L = diag(walk_phases)`.
/// Entries within a few indices of the cut differ from the truncated walk operator.
pub fn walk_matrix(coin: &QuantumCoin, gamma: f64, walk_type: WalkType, n: usize) -> Result<DenseMatrix> {
    coin.validate()?;
    let params = coin.extract_params(gamma)?;
    let cmv = CmvMatrix::build(walk_verblunsky(&params, walk_type), n)?.dense();
    let lam = walk_phases(&params, walk_type, n);
    let lam_conj: Vec<Complex64> = lam.iter().map(|l| l.conj()).collect();
    Ok(match walk_type {
        WalkType::I => cmv.transpose().scale(&lam_conj, &lam),
        WalkType::II => {
            let g = Complex64::from_polar(1.0, gamma);
            let left: Vec<Complex64> = lam.iter().map(|l| g * l).collect();
            cmv.scale(&left, &lam_conj)
        }
    })
}

/// First `len` entries of the column eigenvector `C x = z x`, `x_0 = 1`.
pub fn eigen_prefix(seq: &VerblunskySeq, z: Complex64, len: usize) -> Vec<Complex64> {
    // C = L M; with y = M x the relation reads y = z L* x, solved block by block.
    let mut x = Vec::with_capacity(len + 2);
    x.push(ONE);
    let mut y = ONE;
    let mut k = 0;
    while x.len() < len {
        let (ae, re) = (seq.alpha(2 * k), seq.rho(2 * k));
        let x_odd = (y / z - ae * x[2 * k]) / re;
        let y_odd = z * (re * x[2 * k] - ae.conj() * x_odd);
        let (ao, ro) = (seq.alpha(2 * k + 1), seq.rho(2 * k + 1));
        let x_even = (y_odd - ao.conj() * x_odd) / ro;
        y = ro * x_odd - ao * x_even;
        x.push(x_odd);
        x.push(x_even);
        k += 1;
    }
    x.truncate(len);
    x
}

/// First `len` entries of the row eigenvector `u C = z u`, `u_0 = 1`.
pub fn left_eigen_prefix(seq: &VerblunskySeq, z: Complex64, len: usize) -> Vec<Complex64> {
    // C^T = M L; with y = L u the relation reads y = z M* u.
    let mut u = Vec::with_capacity(len + 2);
    u.push(ONE);
    let mut y = z;
    let mut k = 0;
    while u.len() < len {
        let (ae, re) = (seq.alpha(2 * k), seq.rho(2 * k));
        let u_odd = (y - ae.conj() * u[2 * k]) / re;
        let y_odd = re * u[2 * k] - ae * u_odd;
        let (ao, ro) = (seq.alpha(2 * k + 1), seq.rho(2 * k + 1));
        let u_even = (y_odd / z - ao * u_odd) / ro;
        y = z * (ro * u_odd - ao.conj() * u_even);
        u.push(u_odd);
        u.push(u_even);
        k += 1;
    }
    u.truncate(len);
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::operator_matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn row_vec(m: &CmvMatrix, r: usize) -> Vec<Complex64> {
        (0..m.dim()).map(|col| m.entry(r, col)).collect()
    }

    fn close(a: &[Complex64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, &y)| (x - c(y, 0.0)).norm() < 1e-15)
    }

    #[test]
    fn zero_sequence_is_a_shift() {
        let m = CmvMatrix::build(VerblunskySeq::Explicit(vec![]), 6).unwrap();
        assert!(close(&row_vec(&m, 0), &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0]));
        assert!(close(&row_vec(&m, 1), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        let mut e2 = vec![ZERO; 6];
        e2[2] = ONE;
        // Column 2 of the free matrix has a single 1 in row 0.
        assert!(close(&m.apply(&e2).unwrap(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn first_rows_of_the_families() {
        let m = CmvMatrix::build(VerblunskySeq::NullOdd(c(0.6, 0.0)), 6).unwrap();
        assert!(close(&row_vec(&m, 0), &[0.6, 0.0, 0.8, 0.0, 0.0, 0.0]));
        let m = CmvMatrix::build(VerblunskySeq::NullEven(c(1.0 / 3.0, 0.0)), 6).unwrap();
        assert!(close(&row_vec(&m, 0), &[0.0, 1.0 / 3.0, 8f64.sqrt() / 3.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn apply_e0_is_column_zero() {
        let a = c(0.3, 0.4);
        let m = CmvMatrix::build(VerblunskySeq::Explicit(vec![a, c(0.1, -0.2)]), 8).unwrap();
        let mut e0 = vec![ZERO; 8];
        e0[0] = ONE;
        let col = m.apply(&e0).unwrap();
        assert!((col[0] - a.conj()).norm() < 1e-15);
        assert!((col[1] - c(a.norm_sqr().mul_add(-1.0, 1.0).sqrt(), 0.0)).norm() < 1e-15);
        assert!(col[2..].iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            CmvMatrix::build(VerblunskySeq::NullOdd(c(1.0, 0.0)), 8),
            Err(Error::InvalidVerblunsky { index: 0, .. })
        ));
        assert!(CmvMatrix::build(VerblunskySeq::NullOdd(c(0.5, 0.0)), 5).is_err());
        let m = CmvMatrix::build(VerblunskySeq::NullOdd(c(0.5, 0.0)), 8).unwrap();
        assert_eq!(m.apply(&[ZERO; 7]), Err(Error::DimensionMismatch { expected: 8, found: 7 }));
    }

    #[test]
    fn dense_matches_lm_factorisation() {
        let seq = VerblunskySeq::Explicit(vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.7, 0.0), c(0.0, -0.4), c(0.1, 0.1), c(-0.6, 0.2)]);
        let n = 12;
        let theta = |j: usize| {
            let (a, r) = (seq.alpha(j), seq.rho(j));
            [[a.conj(), c(r, 0.0)], [c(r, 0.0), -a]]
        };
        let mut l = DenseMatrix::zeros(n);
        let mut m = DenseMatrix::zeros(n);
        m[(0, 0)] = ONE;
        for j in 0..n {
            let target = if j % 2 == 0 { &mut l } else { &mut m };
            let t = theta(j);
            for p in 0..2 {
                for q in 0..2 {
                    if j + p < n && j + q < n {
                        target[(j + p, j + q)] = t[p][q];
                    }
                }
            }
        }
        let lm = l.matmul(&m);
        let cmv = CmvMatrix::build(seq, n).unwrap().dense();
        assert!(lm.max_diff(&cmv, n - 2) < 1e-15);
    }

    #[test]
    fn power_entry_small_times() {
        let m = CmvMatrix::build(VerblunskySeq::NullOdd(c(0.6, 0.0)), 20).unwrap();
        assert_eq!(m.power_entry(0, 3, 3).unwrap(), ONE);
        assert_eq!(m.power_entry(0, 3, 4).unwrap(), ZERO);
        for (l, mm) in [(0, 0), (2, 1), (1, 0), (5, 4)] {
            assert!((m.power_entry(1, l, mm).unwrap() - m.entry(l, mm)).norm() < 1e-15);
        }
        assert_eq!(m.power_entry(10, 0, 0), Err(Error::TruncationOverflow));
    }

    #[test]
    fn real_coin_type_i_is_plain_transpose() {
        let coin = QuantumCoin::c_alpha(c(0.6, 0.0)).unwrap();
        let w = walk_matrix(&coin, 0.0, WalkType::I, 24).unwrap();
        let cmv = CmvMatrix::build(VerblunskySeq::NullOdd(c(0.6, 0.0)), 24).unwrap().dense().transpose();
        assert_eq!(w.max_diff(&cmv, 24), 0.0);
    }

    #[test]
    fn diagonal_coin_gives_phased_shift() {
        let coin = QuantumCoin::new(c(0.0, 1.0), ZERO, ZERO, Complex64::from_polar(1.0, 0.7));
        let params = coin.extract_params(0.4).unwrap();
        assert_eq!(params.a, ZERO);
        for wt in [WalkType::I, WalkType::II] {
            let w = walk_matrix(&coin, 0.4, wt, 32).unwrap();
            let oracle = operator_matrix(wt, &coin, 0.4, 32);
            assert!(w.max_diff(&oracle, 28) < 1e-12);
        }
    }

    #[test]
    fn conjugation_matches_simulator() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let coin = QuantumCoin::from_euler(
                rng.random_range(0.05..1.5),
                rng.random_range(-3.1..3.1),
                rng.random_range(-3.1..3.1),
                rng.random_range(-3.1..3.1),
            );
            let gamma = rng.random_range(-3.1..3.1);
            for wt in [WalkType::I, WalkType::II] {
                let w = walk_matrix(&coin, gamma, wt, 64).unwrap();
                let oracle = operator_matrix(wt, &coin, gamma, 64);
                assert!(w.max_diff(&oracle, 60) < 1e-12, "{wt}");
            }
        }
        let h = QuantumCoin::hadamard();
        assert!(walk_matrix(&h, 0.0, WalkType::I, 64).unwrap().max_diff(&operator_matrix(WalkType::I, &h, 0.0, 64), 60) < 1e-12);
    }

    #[test]
    fn rotation_substitution() {
        let base = VerblunskySeq::NullOdd(c(0.6, 0.0));
        let same = rotate_verblunsky(&base, 0.0);
        for j in 0..10 {
            assert_eq!(same.alpha(j), base.alpha(j));
        }
        let rot = rotate_verblunsky(&base, std::f64::consts::FRAC_PI_3);
        assert!((rot.alpha(0) - Complex64::from_polar(0.6, std::f64::consts::FRAC_PI_3)).norm() < 1e-15);
        assert_eq!(rot.alpha(1), ZERO);
        let twice = rotate_verblunsky(&rot, 0.2);
        assert!((twice.alpha(2) - Complex64::from_polar(0.6, 3.0 * (std::f64::consts::FRAC_PI_3 + 0.2))).norm() < 1e-15);
    }

    #[test]
    fn generic_eigenvectors() {
        let seqs = [
            VerblunskySeq::NullOdd(c(0.3, 0.4)),
            VerblunskySeq::NullEven(c(1.0 / 3.0, 0.0)),
            VerblunskySeq::Explicit(vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.7, 0.0), c(0.0, -0.4)]),
            rotate_verblunsky(&VerblunskySeq::NullOdd(c(0.6, 0.0)), 1.0),
        ];
        let n = 30;
        for seq in seqs {
            let m = CmvMatrix::build(seq.clone(), n).unwrap();
            for z in [Complex64::from_polar(1.0, 0.7), Complex64::from_polar(1.0, -2.0), c(0.5, 0.2)] {
                let x = eigen_prefix(&seq, z, n);
                let cx = m.apply(&x).unwrap();
                let u = left_eigen_prefix(&seq, z, n);
                let uc = m.apply_left(&u).unwrap();
                for i in 0..n - 4 {
                    assert!((cx[i] - z * x[i]).norm() < 1e-9 * (1.0 + x[i].norm()), "{seq:?} row {i}");
                    assert!((uc[i] - z * u[i]).norm() < 1e-9 * (1.0 + u[i].norm()), "{seq:?} col {i}");
                }
            }
        }
        // Free family: u = (1, z, z^{-1}, z^2, z^{-2}, ...)
        let z = Complex64::from_polar(1.0, 0.4);
        let u = left_eigen_prefix(&VerblunskySeq::NullEven(ZERO), z, 5);
        let expected = [ONE, z, z.inv(), z * z, (z * z).inv()];
        for (a, b) in u.iter().zip(expected) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]
            #[test]
            fn band_is_isometric(re in -0.7f64..0.7, im in -0.7f64..0.7, odd in any::<bool>(), seed in any::<u64>()) {
                let a = c(re, im);
                let seq = if odd { VerblunskySeq::NullOdd(a) } else { VerblunskySeq::NullEven(a) };
                let n = 40;
                let m = CmvMatrix::build(seq, n).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut v = vec![ZERO; n];
                for x in v.iter_mut().take(n - 6).skip(2) {
                    *x = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                }
                let before: f64 = v.iter().map(|x| x.norm_sqr()).sum();
                let after: f64 = m.apply(&v).unwrap().iter().map(|x| x.norm_sqr()).sum();
                prop_assert!((before.sqrt() - after.sqrt()).abs() < 1e-12);
            }
        }
    }
}
