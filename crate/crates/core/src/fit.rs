use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{diff_norm2, norm2, Complex};
use crate::operators::PrecomputedOperators;

/// Result of one truncated-SVD fit on the `m` local nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFit {
    /// Coefficients in the weighted basis: `tg * coef` evaluates the fit.
    pub coef: Vec<Complex<f64>>,
    /// Real part of the fitted values at the local nodes.
    pub ry: Vec<f64>,
    /// Number of singular triplets used.
    pub k_used: usize,
    /// `||ry - y||_2`.
    pub residual: f64,
}

/// Truncated SVD fit of `y` with the smallest rank whose residual drops to `delta_loc`.
///
/// Rank-one terms `v_k (u_k^H y) / s_k` are added in order of decreasing
/// singular value while the residual exceeds `delta_loc`. The loop also stops
/// after `min(m, 2n+1)` terms or at the first singular value that is exactly
/// zero. Running out of terms is not an error here.
///
/// The fitted values are accumulated as `u_k (u_k^H y)`, which equals
/// `g * step` exactly in real arithmetic; forming `g * step` directly loses
/// all accuracy once `s_k` falls below `eps * s_0`.
pub fn local_fourier_fit(
    y: &[f64],
    delta_loc: f64,
    ops: &PrecomputedOperators,
) -> Result<LocalFit> {
    let m = ops.config().m;
    if y.len() != m {
        return Err(Error::LengthMismatch {
            what: "local samples",
            expected: m,
            actual: y.len(),
        });
    }
    if !(delta_loc >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta_loc",
            reason: "must be >= 0",
        });
    }
    let terms = ops.g.ncols();
    let mut coef = vec![Complex::new(0.0, 0.0); terms];
    let mut fitted = vec![Complex::new(0.0, 0.0); m];
    let mut ry = vec![0.0; m];
    let mut residual = norm2(y);
    let mut k = 0;
    while residual > delta_loc && k < ops.max_terms() && ops.s[k] > 0.0 {
        let proj: Complex<f64> = (0..m).map(|i| ops.u[(i, k)].conj() * y[i]).sum();
        let scale = proj / ops.s[k];
        let step: Vec<Complex<f64>> = (0..terms).map(|j| ops.v[(j, k)] * scale).collect();
        for (c, dc) in coef.iter_mut().zip(&step) {
            *c += dc;
        }
        for (i, f) in fitted.iter_mut().enumerate() {
            *f += ops.u[(i, k)] * proj;
        }
        for (r, f) in ry.iter_mut().zip(&fitted) {
            *r = f.re;
        }
        residual = diff_norm2(&ry, y);
        k += 1;
    }
    Ok(LocalFit {
        coef,
        ry,
        k_used: k,
        residual,
    })
}

/// Residuals `||Re(U_k U_k^H y) - y||_2` for every truncation `k = 0..=min(m, 2n+1)`.
///
/// Each entry is rebuilt from scratch as a rank-`k` projection, independent of
/// the incremental update in [`local_fourier_fit`].
pub fn truncation_residuals(y: &[f64], ops: &PrecomputedOperators) -> Vec<f64> {
    let m = y.len();
    let usable = (0..ops.max_terms()).take_while(|&k| ops.s[k] > 0.0).count();
    let coords: Vec<Complex<f64>> = (0..usable)
        .map(|k| (0..m).map(|i| ops.u[(i, k)].conj() * y[i]).sum())
        .collect();
    (0..=ops.max_terms())
        .map(|k| {
            let k = k.min(usable);
            let fitted: Vec<f64> = (0..m)
                .map(|i| {
                    (0..k)
                        .map(|idx| ops.u[(i, idx)] * coords[idx])
                        .sum::<Complex<f64>>()
                        .re
                })
                .collect();
            diff_norm2(&fitted, y)
        })
        .collect()
}

/// Checks that `fit` stopped at the first rank whose residual meets `delta_loc`.
///
/// True when `residual(k) <= delta_loc < residual(k-1)`, when the loop never
/// ran because the data already met the tolerance, or when every term was used.
pub fn discrepancy_bracket_check(
    fit: &LocalFit,
    y: &[f64],
    delta_loc: f64,
    ops: &PrecomputedOperators,
) -> bool {
    let res = truncation_residuals(y, ops);
    let k = fit.k_used;
    let kmax = ops.max_terms();
    if k > kmax {
        return false;
    }
    if k == 0 {
        return res[0] <= delta_loc;
    }
    if k == kmax {
        return res[k - 1] > delta_loc;
    }
    let slack = 1e-12 * res[0].max(f64::MIN_POSITIVE);
    res[k] <= delta_loc + slack && delta_loc < res[k - 1] + slack
}
