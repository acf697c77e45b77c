//! Direct time evolution of Type I and Type II walks on a truncated half line.
//!
//! Basis enumeration:
//!
//! - Type I: `(0,S) -> 0`, `(0,L) -> 1`, `(k,R) -> 2k`, `(k,L) -> 2k+1`.
//! - Type II: `(0,L) -> 0`, `(k,R) -> 2k-1`, `(k,L) -> 2k`.
//!
//! In 2x2 direction blocks the `R` slot at the Type I origin stands for `S`.
//!
//! One step moves amplitude by at most one site, so a `t`-step run from the
//! origin on sites `0..=t+2` never touches the top site; the top site is kept
//! as a guard band and any amplitude found there is reported as
//! [`Error::TruncationOverflow`].

use num_complex::Complex64;

use crate::cmv::DenseMatrix;
use crate::coin::QuantumCoin;
use crate::{Error, Result, WalkType};

/// Amplitudes below this modulus count as zero in the guard band.
pub const GUARD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Right mover; the self-loop state `S` at the Type I origin.
    R,
    L,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::R, Direction::L];

    fn slot(self) -> usize {
        match self {
            Direction::R => 0,
            Direction::L => 1,
        }
    }
}

/// Basis index of `(x, dir)`, or `None` when the label does not exist.
pub fn basis_index(walk_type: WalkType, x: usize, dir: Direction) -> Option<usize> {
    match (walk_type, dir) {
        (WalkType::I, Direction::R) => Some(2 * x),
        (WalkType::I, Direction::L) => Some(2 * x + 1),
        (WalkType::II, Direction::R) => (x > 0).then(|| 2 * x - 1),
        (WalkType::II, Direction::L) => Some(2 * x),
    }
}

/// Site carrying basis index `index`.
pub fn site_of(walk_type: WalkType, index: usize) -> usize {
    match walk_type {
        WalkType::I => index / 2,
        WalkType::II => (index + 1) / 2,
    }
}

/// Number of basis elements on sites `0..sites`.
pub fn basis_len(walk_type: WalkType, sites: usize) -> usize {
    match walk_type {
        WalkType::I => 2 * sites,
        WalkType::II => (2 * sites).saturating_sub(1),
    }
}

/// Sites to retain for an exact `steps`-step run from the origin.
pub fn sites_for_steps(steps: usize) -> usize {
    steps + 3
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    walk_type: WalkType,
    sites: usize,
    amplitudes: Vec<Complex64>,
}

impl WalkState {
    /// `alpha|0,S> + beta|0,L>` on `sites` sites.
    pub fn type_i(alpha: Complex64, beta: Complex64, sites: usize) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInitialState(format!("|alpha|^2 + |beta|^2 = {norm}, expected 1")));
        }
        let mut state = Self::zeros(WalkType::I, sites)?;
        state.amplitudes[0] = alpha;
        state.amplitudes[1] = beta;
        Ok(state)
    }

    /// `e^{i delta}|0,L>` on `sites` sites.
    pub fn type_ii(delta: f64, sites: usize) -> Result<Self> {
        let mut state = Self::zeros(WalkType::II, sites)?;
        state.amplitudes[0] = Complex64::from_polar(1.0, delta);
        Ok(state)
    }

    pub(crate) fn basis(walk_type: WalkType, x: usize, dir: Direction, sites: usize) -> Result<Self> {
        let mut state = Self::zeros(walk_type, sites)?;
        let idx = basis_index(walk_type, x, dir)
            .filter(|&i| i < state.amplitudes.len())
            .ok_or_else(|| Error::InvalidArgument(format!("no basis label ({x}, {dir:?})")))?;
        state.amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    fn zeros(walk_type: WalkType, sites: usize) -> Result<Self> {
        if sites < 2 {
            return Err(Error::InvalidArgument("a walk needs at least two sites".into()));
        }
        Ok(Self { walk_type, sites, amplitudes: vec![Complex64::new(0.0, 0.0); basis_len(walk_type, sites)] })
    }

    pub fn walk_type(&self) -> WalkType {
        self.walk_type
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn truncation_size(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, x: usize, dir: Direction) -> Complex64 {
        basis_index(self.walk_type, x, dir)
            .and_then(|i| self.amplitudes.get(i).copied())
            .unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn guard_clear(&self) -> bool {
        let top = self.sites - 1;
        Direction::BOTH.iter().all(|&d| self.amplitude(top, d).norm() < GUARD_TOL)
    }

    /// One application of the walk operator.
    pub fn step(&self, coin: &QuantumCoin, gamma: f64) -> Result<Self> {
        if !self.guard_clear() {
            return Err(Error::TruncationOverflow);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        apply_walk(self.walk_type, coin, gamma, &self.amplitudes, &mut out);
        let next = Self { walk_type: self.walk_type, sites: self.sites, amplitudes: out };
        if !next.guard_clear() {
            return Err(Error::TruncationOverflow);
        }
        Ok(next)
    }

    /// `P(X = x)` for every retained site.
    pub fn distribution(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.sites];
        for (i, a) in self.amplitudes.iter().enumerate() {
            p[site_of(self.walk_type, i)] += a.norm_sqr();
        }
        p
    }
}

/// `steps` applications of [`WalkState::step`].
pub fn evolve(initial: &WalkState, coin: &QuantumCoin, gamma: f64, steps: usize) -> Result<WalkState> {
    coin.validate()?;
    let mut state = initial.clone();
    for _ in 0..steps {
        state = state.step(coin, gamma)?;
    }
    Ok(state)
}

/// Evolves `initial` and records the distribution at every time in `0..=steps`.
pub fn trajectory(initial: &WalkState, coin: &QuantumCoin, gamma: f64, steps: usize) -> Result<Vec<Vec<f64>>> {
    coin.validate()?;
    let mut state = initial.clone();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(state.distribution());
    for _ in 0..steps {
        state = state.step(coin, gamma)?;
        out.push(state.distribution());
    }
    Ok(out)
}

/// `out += W input`; contributions leaving the index range are dropped.
pub(crate) fn apply_walk(walk_type: WalkType, coin: &QuantumCoin, gamma: f64, input: &[Complex64], out: &mut [Complex64]) {
    let n = out.len();
    let mut put = |i: usize, v: Complex64| {
        if i < n {
            out[i] += v;
        }
    };
    match walk_type {
        WalkType::I => {
            for (j, &v) in input.iter().enumerate() {
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let x = j / 2;
                let (right, left) = if j % 2 == 0 { (coin.c_rr, coin.c_lr) } else { (coin.c_rl, coin.c_ll) };
                put(2 * x + 2, right * v);
                // (0,S) and (0,L) both fall back into (0,S); (x,.) into (x-1,L).
                put(if x == 0 { 0 } else { 2 * x - 1 }, left * v);
            }
        }
        WalkType::II => {
            let reflect = Complex64::from_polar(1.0, gamma);
            for (j, &v) in input.iter().enumerate() {
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                if j == 0 {
                    put(1, reflect * v);
                    continue;
                }
                let x = (j + 1) / 2;
                let (right, left) = if j % 2 == 1 { (coin.c_rr, coin.c_lr) } else { (coin.c_rl, coin.c_ll) };
                put(2 * x + 1, right * v);
                put(2 * x - 2, left * v);
            }
        }
    }
}

/// Dense matrix of the walk operator restricted to the first `dim` basis indices.
pub fn operator_matrix(walk_type: WalkType, coin: &QuantumCoin, gamma: f64, dim: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(dim);
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    let mut e = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..dim {
        e[j] = Complex64::new(1.0, 0.0);
        col.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
        apply_walk(walk_type, coin, gamma, &e, &mut col);
        for (i, &v) in col.iter().enumerate() {
            m[(i, j)] = v;
        }
        e[j] = Complex64::new(0.0, 0.0);
    }
    m
}

/// `Xi_{x,y}(t)`: the 2x2 block `<x,d1| W^t |y,d2>` in the `{R, L}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassageWeight {
    pub x: usize,
    pub y: usize,
    pub t: usize,
    pub walk_type: WalkType,
    /// `block[d1][d2]`, rows = destination direction, columns = source direction.
    pub block: [[Complex64; 2]; 2],
}

impl PassageWeight {
    pub fn entry(&self, d1: Direction, d2: Direction) -> Complex64 {
        self.block[d1.slot()][d2.slot()]
    }
}

/// Passage weight from site `y` to site `x` in `t` steps.
pub fn passage_weight(
    x: usize,
    y: usize,
    t: usize,
    walk_type: WalkType,
    coin: &QuantumCoin,
    gamma: f64,
) -> Result<PassageWeight> {
    coin.validate()?;
    let sites = x.max(y) + t + 3;
    let mut block = [[Complex64::new(0.0, 0.0); 2]; 2];
    for d2 in Direction::BOTH {
        if basis_index(walk_type, y, d2).is_none() {
            continue;
        }
        let start = WalkState::basis(walk_type, y, d2, sites)?;
        let end = evolve(&start, coin, gamma, t)?;
        for d1 in Direction::BOTH {
            block[d1.slot()][d2.slot()] = end.amplitude(x, d1);
        }
    }
    Ok(PassageWeight { x, y, t, walk_type, block })
}
