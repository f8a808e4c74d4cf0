use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};

/// Discretization parameters shared by every local fit.
///
/// `m`, `l` and `big_m` are derived and always satisfy
/// `m = ceil(gamma (2n+1))`, `l = ceil(t m)` and `big_m = 2^r (m-1) + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConfig {
    /// Maximum frequency index; the local basis has `2n+1` terms.
    pub n: usize,
    /// Oversampling ratio.
    pub gamma: f64,
    /// Extension ratio of the periodic domain over the fitting domain.
    pub t: f64,
    /// Maximum bisection depth.
    pub r: u32,
    /// Relaxation factor of the acceptance test.
    pub rho: f64,
    /// Local sample count.
    pub m: usize,
    /// Points per period of the extended grid.
    pub l: usize,
    /// Global sample count.
    pub big_m: usize,
}

impl SpectralConfig {
    pub fn new(n: usize, gamma: f64, t: f64, r: u32, rho: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: "must be at least 1",
            });
        }
        if !(gamma >= 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "gamma",
                reason: "must be finite and >= 1 (local system would be underdetermined)",
            });
        }
        if !(t > 1.0) || !t.is_finite() {
            return Err(Error::InvalidParameter {
                name: "T",
                reason: "must be finite and > 1 (no extension region)",
            });
        }
        if !(rho > 1.0) || !rho.is_finite() {
            return Err(Error::InvalidParameter {
                name: "rho",
                reason: "must be finite and > 1",
            });
        }
        if r > 40 {
            return Err(Error::InvalidParameter {
                name: "r",
                reason: "recursion depth above 40 overflows the sample count",
            });
        }
        let m = libm::ceil(gamma * (2 * n + 1) as f64) as usize;
        let l = libm::ceil(t * m as f64) as usize;
        let big_m = (1usize << r) * (m - 1) + 1;
        Ok(Self {
            n,
            gamma,
            t,
            r,
            rho,
            m,
            l,
            big_m,
        })
    }

    /// Number of basis functions, `2n+1`.
    pub fn terms(&self) -> usize {
        2 * self.n + 1
    }

    /// Spacing of the extended periodic grid, `2 pi / L`.
    pub fn grid_step(&self) -> f64 {
        2.0 * PI / self.l as f64
    }

    /// Length of the stretch `[0, (m-1) h]` covered by the local nodes.
    ///
    /// This is the image of every subinterval in the periodic variable and fixes
    /// the chain-rule factor of the derivative operator.
    pub fn local_span(&self) -> f64 {
        (self.m - 1) as f64 * self.grid_step()
    }

    /// Extension ratio actually realized by the grid, `L / (m-1)`.
    pub fn effective_extension(&self) -> f64 {
        self.l as f64 / (self.m - 1) as f64
    }

    /// Global uniform grid with `big_m` nodes on `[a, b]`, both ends included.
    pub fn grid(&self, a: f64, b: f64) -> Vec<f64> {
        uniform_grid(a, b, self.big_m)
    }
}

pub(crate) fn uniform_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return alloc::vec![a];
    }
    let h = (b - a) / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { b } else { a + i as f64 * h })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_parameters() {
        let cfg = SpectralConfig::new(9, 1.0, 6.0, 6, 2.0).unwrap();
        assert_eq!(cfg.m, 19);
        assert_eq!(cfg.l, 114);
        assert_eq!(cfg.big_m, 1153);
        assert_eq!(cfg.terms(), 19);
    }

    #[test]
    fn smallest_config() {
        let cfg = SpectralConfig::new(1, 1.0, 2.0, 0, 2.0).unwrap();
        assert_eq!((cfg.m, cfg.l, cfg.big_m), (3, 6, 3));
    }

    #[test]
    fn oversampled() {
        let cfg = SpectralConfig::new(4, 1.5, 2.5, 3, 2.0).unwrap();
        assert_eq!(cfg.m, 14);
        assert_eq!(cfg.l, 35);
        assert_eq!(cfg.big_m, 8 * 13 + 1);
        assert!(cfg.m >= cfg.terms());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SpectralConfig::new(9, 1.0, 1.0, 6, 2.0).is_err());
        assert!(SpectralConfig::new(9, 0.9, 6.0, 6, 2.0).is_err());
        assert!(SpectralConfig::new(0, 1.0, 6.0, 6, 2.0).is_err());
        assert!(SpectralConfig::new(9, 1.0, 6.0, 6, 1.0).is_err());
        assert!(SpectralConfig::new(9, f64::NAN, 6.0, 6, 2.0).is_err());
    }

    #[test]
    fn grid_endpoints_exact() {
        let cfg = SpectralConfig::new(9, 1.0, 6.0, 6, 2.0).unwrap();
        let x = cfg.grid(-1.0, 1.0);
        assert_eq!(x.len(), 1153);
        assert_eq!(x[0], -1.0);
        assert_eq!(x[1152], 1.0);
        assert!(x.windows(2).all(|w| w[1] > w[0]));
    }
}
