use alloc::vec::Vec;

use crate::config::SpectralConfig;
use crate::error::{Error, Result};
use crate::fit::{local_fourier_fit, LocalFit};
use crate::interp::trig_upsample;
use crate::linalg::{diff_norm2, norm2, Complex};
use crate::operators::PrecomputedOperators;

/// Uniform samples on `[a, b]` with a pointwise noise bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalRecord {
    pub a: f64,
    pub b: f64,
    /// Values on `x_i = a + i (b - a) / (len - 1)`.
    pub samples: Vec<f64>,
    /// Bound on `|noise_i|`; uniform noise on `[-delta1, delta1]` has variance `delta1^2 / 3`.
    pub delta1: f64,
}

impl SignalRecord {
    pub fn new(a: f64, b: f64, samples: Vec<f64>, delta1: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter {
                name: "interval",
                reason: "endpoints must be finite with a < b",
            });
        }
        if !(delta1 >= 0.0) || !delta1.is_finite() {
            return Err(Error::InvalidParameter {
                name: "delta1",
                reason: "noise bound must be finite and >= 0",
            });
        }
        if samples.len() < 2 {
            return Err(Error::LengthMismatch {
                what: "samples",
                expected: 2,
                actual: samples.len(),
            });
        }
        Ok(Self {
            a,
            b,
            samples,
            delta1,
        })
    }
}

/// One accepted subinterval.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionLeaf {
    pub a: f64,
    pub b: f64,
    /// Number of bisections from the global interval.
    pub depth: u32,
    /// Samples spanned, endpoints included: `2^(r - depth) (m - 1) + 1`.
    pub nn: usize,
    pub fit: LocalFit,
    /// Residual of the upsampled fit against all `nn` samples.
    pub full_residual: f64,
    /// Acceptance threshold `rho sqrt(nn / 3) delta` in force for this leaf.
    pub threshold: f64,
}

impl PartitionLeaf {
    /// Stride between the leaf's samples and the local fitting nodes.
    pub fn stride(&self, m: usize) -> usize {
        (self.nn - 1) / (m - 1)
    }

    /// Chain-rule length scale `d_j = (b_j - a_j) / w` with `w` the local span in
    /// the periodic variable; the derivative in `x` is the derivative in `t`
    /// divided by `d_j`.
    pub fn length_scale(&self, cfg: &SpectralConfig) -> f64 {
        (self.b - self.a) / cfg.local_span()
    }
}

/// Ordered leaves tiling `[a, b]` from left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    pub a: f64,
    pub b: f64,
    pub leaves: Vec<PartitionLeaf>,
}

impl PartitionResult {
    pub fn max_depth(&self) -> u32 {
        self.leaves.iter().map(|l| l.depth).max().unwrap_or(0)
    }
}

/// Knobs of the recursive fit that have no counterpart in the noise model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionOptions {
    /// Lower bound on the effective noise level as a fraction of the signal
    /// RMS, `floor = floor_scale * ||y||_2 / sqrt(M)`. Keeps noiseless input
    /// from splitting down to the minimum width on roundoff alone.
    pub floor_scale: f64,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        Self { floor_scale: 1e-12 }
    }
}

/// Strided selection of `m` values from `nn`, both endpoints kept.
pub fn downsample(y: &[f64], m: usize) -> Result<Vec<f64>> {
    let nn = y.len();
    if m < 2 || nn < m || !(nn - 1).is_multiple_of(m - 1) {
        return Err(Error::NotDownsamplable { nn, m });
    }
    let stride = (nn - 1) / (m - 1);
    Ok(y.iter().step_by(stride).copied().collect())
}

/// Accepts when `eps_res <= rho sqrt(nn / 3) delta1` or when no further split is possible.
pub fn accept_test(eps_res: f64, nn: usize, delta1: f64, rho: f64, m: usize) -> bool {
    eps_res <= acceptance_threshold(nn, delta1, rho) || nn <= m
}

fn acceptance_threshold(nn: usize, delta1: f64, rho: f64) -> f64 {
    rho * libm::sqrt(nn as f64 / 3.0) * delta1
}

/// Recursive bisection driver bound to one set of precomputed operators.
#[derive(Debug, Clone, Copy)]
pub struct Partitioner<'a> {
    ops: &'a PrecomputedOperators,
    delta1: f64,
}

impl<'a> Partitioner<'a> {
    /// `delta1` is the effective per-sample noise bound used for both the
    /// local tolerance and the acceptance threshold.
    pub fn new(ops: &'a PrecomputedOperators, delta1: f64) -> Result<Self> {
        if !(delta1 >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "delta1",
                reason: "noise bound must be >= 0",
            });
        }
        Ok(Self { ops, delta1 })
    }

    /// Builds a partitioner for `signal`, raising its noise bound to the floor
    /// of `opts` when needed, and runs it over the whole record.
    pub fn partition(
        signal: &SignalRecord,
        ops: &'a PrecomputedOperators,
        opts: &PartitionOptions,
    ) -> Result<PartitionResult> {
        let cfg = ops.config();
        if signal.samples.len() != cfg.big_m {
            return Err(Error::LengthMismatch {
                what: "global samples",
                expected: cfg.big_m,
                actual: signal.samples.len(),
            });
        }
        let rms = norm2(&signal.samples) / libm::sqrt(signal.samples.len() as f64);
        let delta = signal.delta1.max(opts.floor_scale * rms);
        Partitioner::new(ops, delta)?.fit(signal.a, signal.b, &signal.samples)
    }

    pub fn operators(&self) -> &'a PrecomputedOperators {
        self.ops
    }

    pub fn delta1(&self) -> f64 {
        self.delta1
    }

    /// Fits `y` on `[a, b]`; `y.len() - 1` must be `2^d (m - 1)` for some `d >= 0`.
    pub fn fit(&self, a: f64, b: f64, y: &[f64]) -> Result<PartitionResult> {
        let m = self.ops.config().m;
        let nn = y.len();
        let ratio = if nn >= m && (nn - 1).is_multiple_of(m - 1) {
            (nn - 1) / (m - 1)
        } else {
            0
        };
        if !ratio.is_power_of_two() {
            return Err(Error::NotDownsamplable { nn, m });
        }
        let mut leaves = Vec::new();
        self.recurse(a, b, y, 0, &mut leaves)?;
        Ok(PartitionResult { a, b, leaves })
    }

    /// Local fit of one candidate piece and its full-resolution residual.
    pub fn evaluate(&self, y: &[f64]) -> Result<(LocalFit, f64)> {
        let cfg = self.ops.config();
        let m = cfg.m;
        let reduced = downsample(y, m)?;
        let stride = (y.len() - 1) / (m - 1);
        let delta_loc = self.delta1 * libm::sqrt(m as f64 / 3.0);
        let fit = local_fourier_fit(&reduced, delta_loc, self.ops)?;
        let coarse = evaluate_real(&self.ops.tg, &fit.coef);
        let fine = trig_upsample(&coarse, stride)?;
        let eps_res = diff_norm2(y, &fine[..y.len()]);
        Ok((fit, eps_res))
    }

    fn recurse(
        &self,
        a: f64,
        b: f64,
        y: &[f64],
        depth: u32,
        leaves: &mut Vec<PartitionLeaf>,
    ) -> Result<()> {
        let cfg = self.ops.config();
        let nn = y.len();
        let (fit, eps_res) = self.evaluate(y)?;
        if accept_test(eps_res, nn, self.delta1, cfg.rho, cfg.m) {
            leaves.push(PartitionLeaf {
                a,
                b,
                depth,
                nn,
                fit,
                full_residual: eps_res,
                threshold: acceptance_threshold(nn, self.delta1, cfg.rho),
            });
            return Ok(());
        }
        // both halves keep the shared middle sample
        let mid = (nn - 1) / 2;
        let c = 0.5 * (a + b);
        self.recurse(a, c, &y[..=mid], depth + 1, leaves)?;
        self.recurse(c, b, &y[mid..], depth + 1, leaves)
    }
}

/// `Re(mat * coef)`.
pub(crate) fn evaluate_real(mat: &crate::linalg::CMatrix, coef: &[Complex<f64>]) -> Vec<f64> {
    (0..mat.nrows())
        .map(|i| {
            coef.iter()
                .enumerate()
                .map(|(j, c)| mat[(i, j)] * c)
                .sum::<Complex<f64>>()
                .re
        })
        .collect()
}
