//! Cross-module check suites run by `cmvwalk verify`.
//!
//! Randomised checks draw from a ChaCha stream seeded by `CMVWALK_SEED`
//! (default [`DEFAULT_SEED`]), so reports are reproducible.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cmv::{walk_matrix, CmvMatrix, VerblunskySeq};
use crate::coin::QuantumCoin;
use crate::laurent::family_prefix;
use crate::limits::{limit_dist_i, limit_dist_ii, tree_coin, tree_p0_limit, TreeCase};
use crate::spectral::{integrate_adaptive, moment_integral};
use crate::walk::{operator_matrix, sites_for_steps, trajectory, WalkState};
use crate::{Error, Result, WalkType};

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_VAR: &str = "CMVWALK_SEED";

pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Coin with independent uniform angles; `cos t` stays away from 0.
pub fn random_coin<R: Rng>(rng: &mut R) -> QuantumCoin {
    QuantumCoin::from_euler(
        rng.random_range(0.05..1.5),
        rng.random_range(-PI..PI),
        rng.random_range(-PI..PI),
        rng.random_range(-PI..PI),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Conjugation,
    Eigen,
    Moments,
    Normalization,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Conjugation, Suite::Eigen, Suite::Moments, Suite::Normalization, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Conjugation => "conjugation",
            Suite::Eigen => "eigen",
            Suite::Moments => "moments",
            Suite::Normalization => "normalization",
            Suite::Oracle => "oracle",
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Conjugation => 1e-12,
            Suite::Eigen => 1e-10,
            Suite::Moments | Suite::Normalization => 1e-6,
            Suite::Oracle => 2e-2,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub error: f64,
    pub tol: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.error <= self.tol
    }
}

pub fn run_suite(suite: Suite, tol: Option<f64>, seed: u64) -> Result<Vec<CheckResult>> {
    let tol = tol.unwrap_or(suite.default_tol());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = match suite {
        Suite::Conjugation => conjugation(&mut rng)?,
        Suite::Eigen => eigen(&mut rng)?,
        Suite::Moments => moments()?,
        Suite::Normalization => normalization()?,
        Suite::Oracle => oracle()?,
    };
    Ok(raw.into_iter().map(|(name, error)| CheckResult { suite, name, error, tol }).collect())
}

fn conjugation(rng: &mut ChaCha8Rng) -> Result<Vec<(String, f64)>> {
    const N: usize = 64;
    let mut worst = [0.0f64; 2];
    for _ in 0..20 {
        let coin = random_coin(rng);
        let gamma = rng.random_range(-PI..PI);
        for (slot, wt) in [WalkType::I, WalkType::II].into_iter().enumerate() {
            let rebuilt = walk_matrix(&coin, gamma, wt, N)?;
            let direct = operator_matrix(wt, &coin, gamma, N);
            worst[slot] = worst[slot].max(rebuilt.max_diff(&direct, N - 4));
        }
    }
    Ok(vec![("type I, 20 coins".into(), worst[0]), ("type II, 20 coins".into(), worst[1])])
}

fn eigen(rng: &mut ChaCha8Rng) -> Result<Vec<(String, f64)>> {
    const N: usize = 48;
    let cases = [
        (WalkType::I, Complex64::new(0.6, 0.0)),
        (WalkType::I, Complex64::new(0.3, 0.4)),
        (WalkType::II, Complex64::new(1.0 / 3.0, 0.0)),
        (WalkType::II, Complex64::new(0.2, 0.3)),
    ];
    let mut out = Vec::new();
    for (family, alpha) in cases {
        let m = match family {
            WalkType::I => CmvMatrix::build(VerblunskySeq::NullOdd(alpha), N)?,
            WalkType::II => CmvMatrix::build(VerblunskySeq::NullEven(alpha), N)?,
        };
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let z = Complex64::from_polar(1.0, rng.random_range(-PI..PI));
            let v = family_prefix(family, N, z, alpha)?;
            let image = match family {
                WalkType::I => m.apply(&v)?,
                WalkType::II => m.apply_left(&v)?,
            };
            for i in 0..N - 10 {
                worst = worst.max((image[i] - z * v[i]).norm());
            }
        }
        out.push((format!("family {family}, alpha = {alpha}"), worst));
    }
    Ok(out)
}

fn moments() -> Result<Vec<(String, f64)>> {
    let cases = [
        (WalkType::I, VerblunskySeq::NullOdd(Complex64::new(0.6, 0.0)), Complex64::new(0.6, 0.0)),
        (WalkType::II, VerblunskySeq::NullEven(Complex64::new(0.2, 0.3)), Complex64::new(0.2, 0.3)),
    ];
    let mut out = Vec::new();
    for (family, seq, alpha) in cases {
        let m = CmvMatrix::build(seq, 40)?;
        let mut worst = 0.0f64;
        for t in 0..=10 {
            for l in 0..=6 {
                for k in 0..=6 {
                    let err = (m.power_entry(t, l, k)? - moment_integral(t, l, k, family, alpha)?).norm();
                    worst = worst.max(err);
                }
            }
        }
        out.push((format!("family {family}, alpha = {alpha}, t <= 10, l,m <= 6"), worst));
    }
    Ok(out)
}

fn normalization() -> Result<Vec<(String, f64)>> {
    let cases = [
        (WalkType::I, Complex64::new(0.6, 0.0)),
        (WalkType::I, Complex64::new(-0.4, 0.0)),
        (WalkType::I, Complex64::new(0.3, 0.4)),
        (WalkType::I, Complex64::new(0.0, 0.5)),
        (WalkType::II, Complex64::new(1.0 / 3.0, 0.0)),
        (WalkType::II, Complex64::new(-1.0 / 3.0, 0.0)),
        (WalkType::II, Complex64::new(0.2, 0.3)),
        (WalkType::II, Complex64::new(-0.5, 0.5)),
    ];
    cases
        .into_iter()
        .map(|(family, alpha)| {
            let total = integrate_adaptive(family, alpha, |_| Ok(Complex64::new(1.0, 0.0)))?;
            Ok((format!("family {family}, alpha = {alpha}"), (total - 1.0).norm()))
        })
        .collect()
}

fn window_average(traj: &[Vec<f64>], times: impl Iterator<Item = usize>, x: usize) -> f64 {
    let (sum, n) = times.fold((0.0, 0usize), |(s, n), t| (s + traj[t][x], n + 1));
    sum / n as f64
}

fn oracle() -> Result<Vec<(String, f64)>> {
    let mut out = Vec::new();

    let coin = QuantumCoin::c_alpha(Complex64::new(0.6, 0.0))?;
    let start = WalkState::type_i(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), sites_for_steps(500))?;
    let traj = trajectory(&start, &coin, 0.0, 500)?;
    let limit = limit_dist_i(Complex64::new(0.6, 0.0), 0.0, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 4)?;
    let worst = (0..=4).map(|x| (window_average(&traj, 480..=500, x) - limit.p[x]).abs()).fold(0.0, f64::max);
    out.push(("type I, a = 0.6, t in [480, 500], x <= 4".into(), worst));

    for kappa in [3, 4] {
        let (coin, gamma) = tree_coin(kappa, TreeCase::B)?;
        let traj = trajectory(&WalkState::type_ii(0.0, sites_for_steps(400))?, &coin, gamma, 400)?;
        out.push((format!("tree kappa = {kappa}, case B, P(X_400 = 0)"), (traj[400][0] - tree_p0_limit(kappa)?).abs()));
    }

    let b = Complex64::new(0.2, 0.3);
    let coin = QuantumCoin::c_alpha(b)?;
    let traj = trajectory(&WalkState::type_ii(0.0, sites_for_steps(420))?, &coin, 0.0, 420)?;
    let limit = limit_dist_ii(b, 5)?;
    let worst = (0..=5)
        .map(|x| (window_average(&traj, (400..=420).filter(|t| (t + x) % 2 == 0), x) - limit.p[x]).abs())
        .fold(0.0, f64::max);
    out.push(("type II, b = 0.2+0.3i, t in [400, 420], x <= 5".into(), worst));
    Ok(out)
}
