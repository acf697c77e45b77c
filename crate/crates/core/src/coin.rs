//! The quantum coin and the scalars derived from it.
//!
//! Storage order: the coin is held as the matrix
//!
//! ```text
//!     [ c_RR  c_RL ]
//!     [ c_LR  c_LL ]
//! ```
//!
//! with rows indexed by the *outgoing* direction and columns by the incoming
//! one, so that `W|x,R> = c_RR|x+1,R> + c_LR|x-1,L>` reads off column `R`.
//! With this layout `C(alpha) = [[rho, -alpha], [conj(alpha), rho]]` has
//! `a = alpha`.

use std::str::FromStr;

use num_complex::Complex64;

use crate::{Error, Result};

/// Unitarity tolerance on the Gram matrix.
pub const UNITARY_TOL: f64 = 1e-12;

/// A 2x2 coin, `[[c_RR, c_RL], [c_LR, c_LL]]` (row = outgoing direction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumCoin {
    pub c_rr: Complex64,
    pub c_rl: Complex64,
    pub c_lr: Complex64,
    pub c_ll: Complex64,
}

/// Scalars derived from a coin and the Type II reflection phase `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParams {
    /// `|c_RR| = |c_LL|`.
    pub rho: f64,
    /// `arg c_RR`, in `(-pi, pi]`.
    pub sigma_r: f64,
    /// `arg c_LL`, in `(-pi, pi]`.
    pub sigma_l: f64,
    /// `det U = e^{i(sigma_R + sigma_L)}`.
    pub delta: Complex64,
    /// `e^{i(sigma_R + sigma_L)/2}`.
    pub delta_sqrt: Complex64,
    /// Null-odd Verblunsky scalar `conj(c_LR) * delta_sqrt`.
    pub a: Complex64,
    /// Null-even Verblunsky scalar `conj(c_LR) * delta * e^{-i gamma}`.
    pub b: Complex64,
    /// `(sigma_R - sigma_L) / 2`.
    pub phi: f64,
    /// `sigma_R - gamma`.
    pub psi: f64,
    pub gamma: f64,
}

impl QuantumCoin {
    pub fn new(c_rr: Complex64, c_rl: Complex64, c_lr: Complex64, c_ll: Complex64) -> Self {
        Self { c_rr, c_rl, c_lr, c_ll }
    }

    /// Row-major `[[c_RR, c_RL], [c_LR, c_LL]]`.
    pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Self {
        Self::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.c_rr, self.c_rl], [self.c_lr, self.c_ll]]
    }

    /// `1/sqrt(2) [[1, 1], [1, -1]]`.
    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(h, h, h, -h)
    }

    /// `C(alpha) = [[rho, -alpha], [conj(alpha), rho]]`, `rho = sqrt(1 - |alpha|^2)`.
    ///
    /// Its null-odd scalar is `a = alpha` and, at `gamma = 0`, `b = alpha`.
    pub fn c_alpha(alpha: Complex64) -> Result<Self> {
        let m2 = alpha.norm_sqr();
        if m2 > 1.0 {
            return Err(Error::InvalidArgument(format!("|alpha| = {} exceeds 1", m2.sqrt())));
        }
        let rho = Complex64::new((1.0 - m2).sqrt(), 0.0);
        Ok(Self::new(rho, -alpha, alpha.conj(), rho))
    }

    /// General element of U(2):
    /// `e^{i eta} [[e^{i p} cos t, -e^{-i q} sin t], [e^{i q} sin t, e^{-i p} cos t]]`.
    pub fn from_euler(t: f64, p: f64, q: f64, eta: f64) -> Self {
        let g = Complex64::from_polar(1.0, eta);
        Self::new(
            g * Complex64::from_polar(t.cos(), p),
            -g * Complex64::from_polar(t.sin(), -q),
            g * Complex64::from_polar(t.sin(), q),
            g * Complex64::from_polar(t.cos(), -p),
        )
    }

    /// Largest entry of `|U^* U - I|`.
    pub fn gram_deviation(&self) -> f64 {
        let cols = [[self.c_rr, self.c_lr], [self.c_rl, self.c_ll]];
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let dot = cols[i][0].conj() * cols[j][0] + cols[i][1].conj() * cols[j][1];
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    pub fn validate(&self) -> Result<()> {
        let deviation = self.gram_deviation();
        if deviation.is_finite() && deviation <= UNITARY_TOL {
            Ok(())
        } else {
            Err(Error::NonUnitary { deviation })
        }
    }

    pub fn det(&self) -> Complex64 {
        self.c_rr * self.c_ll - self.c_rl * self.c_lr
    }

    /// Derives every scalar parameter for reflection phase `gamma`.
    pub fn extract_params(&self, gamma: f64) -> Result<CoinParams> {
        self.validate()?;
        let rho = self.c_rr.norm();
        if rho < UNITARY_TOL {
            return Err(Error::DegenerateCoin);
        }
        // Adding +0.0 turns a -0.0 imaginary part into +0.0, keeping arg in (-pi, pi].
        let phase = |c: Complex64| Complex64::new(c.re, c.im + 0.0).arg();
        let sigma_r = phase(self.c_rr);
        let sigma_l = phase(self.c_ll);
        let delta = Complex64::from_polar(1.0, sigma_r + sigma_l);
        let delta_sqrt = Complex64::from_polar(1.0, 0.5 * (sigma_r + sigma_l));
        let lr = self.c_lr.conj();
        Ok(CoinParams {
            rho,
            sigma_r,
            sigma_l,
            delta,
            delta_sqrt,
            a: lr * delta_sqrt,
            b: lr * delta * Complex64::from_polar(1.0, -gamma),
            phi: 0.5 * (sigma_r - sigma_l),
            psi: sigma_r - gamma,
            gamma,
        })
    }
}

impl FromStr for QuantumCoin {
    type Err = Error;

    /// `hadamard` | `real:<alpha>` | `matrix:<re>,<im>;<re>,<im>;<re>,<im>;<re>,<im>`
    /// (row-major `c_RR; c_RL; c_LR; c_LL`).
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let coin = if text.eq_ignore_ascii_case("hadamard") {
            Self::hadamard()
        } else if let Some(rest) = text.strip_prefix("real:") {
            let alpha: f64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad real coin parameter '{rest}'")))?;
            if alpha.abs() >= 1.0 {
                return Err(Error::InvalidArgument(format!("real coin needs |alpha| < 1, got {alpha}")));
            }
            Self::c_alpha(Complex64::new(alpha, 0.0))?
        } else if let Some(rest) = text.strip_prefix("matrix:") {
            let entries = rest
                .split(';')
                .map(|pair| {
                    let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
                    match parts.as_slice() {
                        [re, im] => {
                            let re: f64 = re.parse().map_err(|_| Error::Parse(format!("bad number '{re}'")))?;
                            let im: f64 = im.parse().map_err(|_| Error::Parse(format!("bad number '{im}'")))?;
                            Ok(Complex64::new(re, im))
                        }
                        _ => Err(Error::Parse(format!("expected '<re>,<im>', got '{pair}'"))),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != 4 {
                return Err(Error::Parse(format!("matrix coin needs 4 entries, got {}", entries.len())));
            }
            Self::new(entries[0], entries[1], entries[2], entries[3])
        } else {
            return Err(Error::Parse(format!("unknown coin '{text}'")));
        };
        coin.validate()?;
        Ok(coin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn validate_accepts_standard_unitaries() {
        assert!(QuantumCoin::hadamard().validate().is_ok());
        let id = QuantumCoin::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(id.validate().is_ok());
    }

    #[test]
    fn validate_rejects_shear() {
        let shear = QuantumCoin::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        match shear.validate() {
            Err(Error::NonUnitary { deviation }) => assert!(deviation >= 1.0 - 1e-12),
            other => panic!("expected NonUnitary, got {other:?}"),
        }
    }

    #[test]
    fn hadamard_params() {
        let p = QuantumCoin::hadamard().extract_params(0.0).unwrap();
        assert!((p.rho - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(p.sigma_r, 0.0);
        assert!((p.sigma_l - PI).abs() < 1e-15);
        assert!((p.delta - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((p.delta_sqrt - c(0.0, 1.0)).norm() < 1e-12);
        assert!((p.a - c(0.0, FRAC_1_SQRT_2)).norm() < 1e-12);
        assert!((p.phi + PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn real_coin_params() {
        let coin: QuantumCoin = "real:0.6".parse().unwrap();
        let p = coin.extract_params(0.0).unwrap();
        assert!((p.rho - 0.8).abs() < 1e-15);
        assert_eq!(p.sigma_r, 0.0);
        assert_eq!(p.sigma_l, 0.0);
        assert!((p.delta - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.a.norm() - 0.6).abs() < 1e-12);
        assert!((p.a - c(0.6, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn diagonal_coin_has_zero_verblunsky() {
        let coin = QuantumCoin::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
        let p = coin.extract_params(0.7).unwrap();
        assert_eq!(p.a, c(0.0, 0.0));
        assert_eq!(p.b, c(0.0, 0.0));
    }

    #[test]
    fn flip_coin_is_degenerate() {
        let flip = QuantumCoin::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(flip.extract_params(0.0), Err(Error::DegenerateCoin));
    }

    #[test]
    fn parse_matrix_coin() {
        let h: QuantumCoin = "matrix:0.7071067811865476,0;0.7071067811865476,0;0.7071067811865476,0;-0.7071067811865476,0"
            .parse()
            .unwrap();
        assert!((h.c_ll - QuantumCoin::hadamard().c_ll).norm() < 1e-15);
        assert!("matrix:1,0;1,0;0,0;1,0".parse::<QuantumCoin>().is_err());
        assert!("matrix:1,0;0,0".parse::<QuantumCoin>().is_err());
        assert!("real:1.5".parse::<QuantumCoin>().is_err());
        assert!("pauli".parse::<QuantumCoin>().is_err());
    }

    #[test]
    fn unitarity_consequences_on_euler_coins() {
        for k in 0..50 {
            let k = k as f64;
            let coin = QuantumCoin::from_euler(0.1 + 0.03 * k, 0.7 * k, -0.3 * k, 1.1 * k);
            coin.validate().unwrap();
            assert!((coin.c_rr.norm() - coin.c_ll.norm()).abs() < 1e-12);
            let p = coin.extract_params(0.3).unwrap();
            // c_RL = -Delta conj(c_LR)
            assert!((coin.c_rl + p.delta * coin.c_lr.conj()).norm() < 1e-12);
            assert!((coin.det() - p.delta).norm() < 1e-12);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn params_invariants(t in 0.01f64..1.5, p in -3.1f64..3.1, q in -3.1f64..3.1,
                                 eta in -3.1f64..3.1, g1 in -3.1f64..3.1, g2 in -3.1f64..3.1) {
                let coin = QuantumCoin::from_euler(t, p, q, eta);
                let a = coin.extract_params(g1).unwrap();
                let b = coin.extract_params(g2).unwrap();
                let expect = (1.0 - coin.c_rr.norm_sqr()).max(0.0).sqrt();
                prop_assert!((a.a.norm() - expect).abs() < 1e-12);
                prop_assert!((a.b.norm() - expect).abs() < 1e-12);
                // gamma only moves b and psi
                prop_assert_eq!(a.a, b.a);
                prop_assert_eq!(a.rho, b.rho);
                prop_assert_eq!(a.sigma_r, b.sigma_r);
                prop_assert_eq!(a.sigma_l, b.sigma_l);
                prop_assert_eq!(a.delta, b.delta);
                prop_assert_eq!(a.phi, b.phi);
                // deterministic
                prop_assert_eq!(coin.extract_params(g1).unwrap(), a);
            }
        }
    }
}
