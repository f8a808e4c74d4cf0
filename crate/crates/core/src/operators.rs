use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::config::SpectralConfig;
use crate::error::{Error, Result};
use crate::linalg::{cpowi, jacobi_svd, CMatrix, Complex, I};

/// Matrices shared by every local fit, built once per configuration.
///
/// Column `j` corresponds to frequency `j - n`. All matrices use the weighted
/// basis `phi_l(t) / e^{|l|}`, so coefficient vectors produced by the fitter
/// are evaluated directly by [`tg`](Self::tg) and differentiated by
/// [`dtg`](Self::dtg) with no further weighting.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecomputedOperators {
    cfg: SpectralConfig,
    /// Extended periodic grid `t_i = i 2 pi / L`, `i = 0..L`.
    pub nodes: Vec<f64>,
    /// Weights `e^{|l|}`, `l = -n..=n`.
    pub weights: Vec<f64>,
    /// `m x (2n+1)` weighted sampling matrix on the first `m` nodes.
    pub g: CMatrix,
    /// `L x (2n+1)` evaluation matrix on the full period.
    pub tg: CMatrix,
    /// `g * diag(i l w)` with `w` the angular scale of the local span.
    pub dg: CMatrix,
    /// `tg * diag(i l w)`.
    pub dtg: CMatrix,
    /// Thin SVD of `g`: left vectors, singular values (nonincreasing), right vectors.
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub v: CMatrix,
}

/// `phi_l(t)`: the constant term is `1/sqrt(2)`, the rest `e^{i l t}`.
pub(crate) fn basis(l: i64, t: f64) -> Complex<f64> {
    if l == 0 {
        Complex::new(FRAC_1_SQRT_2, 0.0)
    } else {
        let arg = l as f64 * t;
        Complex::new(libm::cos(arg), libm::sin(arg))
    }
}

/// Matrix of `phi_l(t_i) * scale_l` for `l = -n..=n`.
pub(crate) fn fourier_matrix(nodes: &[f64], n: usize, scale: &[f64]) -> CMatrix {
    let cols = 2 * n + 1;
    CMatrix::from_fn(nodes.len(), cols, |i, j| {
        basis(j as i64 - n as i64, nodes[i]) * scale[j]
    })
}

pub(crate) fn frequencies(n: usize) -> impl Iterator<Item = i64> + Clone {
    -(n as i64)..=(n as i64)
}

pub(crate) fn scale_columns(mat: &CMatrix, factors: &[Complex<f64>]) -> CMatrix {
    let mut out = mat.clone();
    for (j, f) in factors.iter().enumerate() {
        for z in out.column_mut(j).iter_mut() {
            *z *= f;
        }
    }
    out
}

impl PrecomputedOperators {
    pub fn build(cfg: &SpectralConfig) -> Result<Self> {
        let mut ops = Self::analytic(cfg);
        let (u, s, v) = jacobi_svd(&ops.g).ok_or(Error::SvdFailed)?;
        if s.iter().any(|x| !x.is_finite()) {
            return Err(Error::SvdFailed);
        }
        ops.u = u;
        ops.s = s;
        ops.v = v;
        Ok(ops)
    }

    /// Reassembles operators from a stored SVD of `g`.
    ///
    /// The factors must have the shapes of this configuration, nonincreasing
    /// positive singular values and reproduce `g` to `1e-12 s_1`; anything
    /// else is rejected with [`Error::SvdFailed`] so callers can rebuild.
    pub fn from_svd(cfg: &SpectralConfig, u: CMatrix, s: Vec<f64>, v: CMatrix) -> Result<Self> {
        let mut ops = Self::analytic(cfg);
        let cols = 2 * cfg.n + 1;
        let k = cfg.m.min(cols);
        let shapes_ok = u.shape() == (cfg.m, k) && v.shape() == (cols, k) && s.len() == k;
        let values_ok =
            s.iter().all(|x| x.is_finite() && *x > 0.0) && s.windows(2).all(|w| w[0] >= w[1]);
        if !shapes_ok || !values_ok {
            return Err(Error::SvdFailed);
        }
        let mut us = u.clone();
        for (j, sj) in s.iter().enumerate() {
            us.column_mut(j).scale_mut(*sj);
        }
        let rebuilt = us * v.adjoint();
        if (&rebuilt - &ops.g).iter().any(|z| z.norm() > 1e-12 * s[0]) {
            return Err(Error::SvdFailed);
        }
        ops.u = u;
        ops.s = s;
        ops.v = v;
        Ok(ops)
    }

    /// Everything except the SVD, which is left empty.
    fn analytic(cfg: &SpectralConfig) -> Self {
        let n = cfg.n;
        let h = cfg.grid_step();
        let nodes: Vec<f64> = (0..cfg.l).map(|i| i as f64 * h).collect();
        let weights: Vec<f64> = frequencies(n)
            .map(|l| libm::exp(l.unsigned_abs() as f64))
            .collect();
        let inv_w: Vec<f64> = weights.iter().map(|w| 1.0 / w).collect();

        let tg = fourier_matrix(&nodes, n, &inv_w);
        let g = tg.rows(0, cfg.m).into_owned();
        let diff = Self::diff_factors(cfg, 1);
        let dg = scale_columns(&g, &diff);
        let dtg = scale_columns(&tg, &diff);
        Self {
            cfg: *cfg,
            nodes,
            weights,
            g,
            tg,
            dg,
            dtg,
            u: CMatrix::zeros(0, 0),
            s: Vec::new(),
            v: CMatrix::zeros(0, 0),
        }
    }

    pub fn config(&self) -> &SpectralConfig {
        &self.cfg
    }

    /// Per-column factors `(i l w)^q` of the order-`q` derivative in the periodic variable.
    pub fn diff_factors(cfg: &SpectralConfig, q: u32) -> Vec<Complex<f64>> {
        let w = cfg.local_span();
        frequencies(cfg.n)
            .map(|l| cpowi(I * (l as f64 * w), q))
            .collect()
    }

    /// `tg * diag((i l w)^q)`; order 1 returns a copy of [`dtg`](Self::dtg).
    pub fn derivative_operator(&self, q: u32) -> CMatrix {
        if q == 1 {
            return self.dtg.clone();
        }
        scale_columns(&self.tg, &Self::diff_factors(&self.cfg, q))
    }

    /// Number of usable truncation terms, `min(m, 2n+1)`.
    pub fn max_terms(&self) -> usize {
        self.cfg.m.min(self.s.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use nalgebra::DVector;

    fn default_ops() -> PrecomputedOperators {
        let cfg = SpectralConfig::new(9, 1.0, 6.0, 6, 2.0).unwrap();
        PrecomputedOperators::build(&cfg).unwrap()
    }

    #[test]
    fn shapes() {
        let ops = default_ops();
        assert_eq!(ops.g.shape(), (19, 19));
        assert_eq!(ops.tg.shape(), (114, 19));
        assert_eq!(ops.dtg.shape(), (114, 19));
        assert_eq!(ops.dg.shape(), (19, 19));
        assert_eq!(ops.u.shape(), (19, 19));
        assert_eq!(ops.v.shape(), (19, 19));
        assert_eq!(ops.s.len(), 19);
    }

    #[test]
    fn weights_and_nodes() {
        let ops = default_ops();
        assert!((ops.weights[18] - 8103.083927575384).abs() < 1e-8);
        assert_eq!(ops.weights[9], 1.0);
        let t18 = ops.nodes[18];
        assert!((t18 - 0.992081).abs() < 1e-6);
        assert!(t18 < 2.0 * PI / 6.0);
    }

    #[test]
    fn constant_column_is_flat() {
        let ops = default_ops();
        for i in 0..ops.tg.nrows() {
            assert_eq!(ops.tg[(i, 9)], Complex::new(FRAC_1_SQRT_2, 0.0));
            assert_eq!(ops.dtg[(i, 9)], Complex::new(0.0, 0.0));
        }
    }

    #[test]
    fn derivative_columns_are_scaled_copies() {
        let ops = default_ops();
        let w = ops.config().local_span();
        for (j, l) in frequencies(9).enumerate() {
            let f = I * (l as f64 * w);
            for i in 0..ops.tg.nrows() {
                let expect = ops.tg[(i, j)] * f;
                assert!((ops.dtg[(i, j)] - expect).norm() <= 1e-15 * expect.norm().max(1.0));
            }
        }
    }

    #[test]
    fn svd_reconstructs() {
        let ops = default_ops();
        let sigma = CMatrix::from_diagonal(&DVector::from_iterator(
            19,
            ops.s.iter().map(|&x| Complex::new(x, 0.0)),
        ));
        let rebuilt = &ops.u * sigma * ops.v.adjoint();
        let err = (&ops.g - rebuilt).norm();
        assert!(err <= 1e-12 * ops.s[0], "err = {err:e}");
        assert!(ops.s.windows(2).all(|w| w[0] >= w[1]));
        assert!(ops.s.iter().all(|&x| x > 0.0));
        assert!(ops.s[18] < 1e-8 * ops.s[0]);
    }

    #[test]
    fn deterministic() {
        assert_eq!(default_ops(), default_ops());
    }

    #[test]
    fn higher_order_operator() {
        let ops = default_ops();
        assert_eq!(ops.derivative_operator(1), ops.dtg);
        let d2 = ops.derivative_operator(2);
        let w = ops.config().local_span();
        let expect = ops.tg[(3, 0)] * (-(81.0) * w * w);
        assert!((d2[(3, 0)] - expect).norm() < 1e-12 * expect.norm());
    }

    #[test]
    fn svd_round_trip_and_rejection() {
        let ops = default_ops();
        let back = PrecomputedOperators::from_svd(
            ops.config(),
            ops.u.clone(),
            ops.s.clone(),
            ops.v.clone(),
        )
        .unwrap();
        assert_eq!(back, ops);
        let mut s = ops.s.clone();
        s[0] *= 1.01;
        assert!(
            PrecomputedOperators::from_svd(ops.config(), ops.u.clone(), s, ops.v.clone()).is_err()
        );
        let other = SpectralConfig::new(8, 1.0, 6.0, 6, 2.0).unwrap();
        assert!(PrecomputedOperators::from_svd(
            &other,
            ops.u.clone(),
            ops.s.clone(),
            ops.v.clone()
        )
        .is_err());
    }
}
