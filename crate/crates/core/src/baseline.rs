//! Full-interval Fourier extension with super-order Tikhonov regularization.
//!
//! Minimizes `||A v - y||_{L2}^2 + alpha ||R v||^2` over a single trigonometric
//! series on the whole interval, with `R = diag(e^{|l| pi / 2})`, and picks
//! `alpha` by the discrepancy principle `||A v_alpha - y|| = C delta`. The
//! `L2(a, b)` misfit is the sample sum weighted by `(b - a) / M`, so `alpha`
//! keeps the meaning it has for the continuous functional. The
//! regularized normal equations are formed and factored explicitly; their
//! `sqrt(eps)` accuracy ceiling is the behaviour this baseline is kept for.
//!
//! The solve runs in the standard-form variable `u = R v`, i.e. on
//! `(B^H B + alpha M / (b - a) I) u = B^H y` with `B = A R^{-1}`, so the exponential weights
//! never overflow. Columns with `||b_l||^2 < eps^2 alpha_lo` cannot move the
//! fit or its derivative at any admissible `alpha` and are held at zero.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Cholesky, DVector};

use crate::config::uniform_grid;
use crate::error::{Error, Result};
use crate::linalg::{cnorm2, CMatrix, Complex, I};
use crate::operators::{basis, fourier_matrix};

/// What [`m2_fit`] does when even `alpha_lo` leaves a residual above `C delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnreachableDiscrepancy {
    /// Report [`Error::AlphaBracket`].
    Error,
    /// Use `alpha_lo`, the closest the solver can get to the data.
    UseAlphaLo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct M2Config {
    /// Extension ratio.
    pub t: f64,
    /// Oversampling ratio; fixes the series length from the sample count.
    pub gamma: f64,
    /// Discrepancy constant, `> 1`.
    pub c: f64,
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    pub max_iter: usize,
    /// Relative tolerance on `|residual - C delta|`.
    pub rel_tol: f64,
    pub unreachable: UnreachableDiscrepancy,
}

impl Default for M2Config {
    fn default() -> Self {
        Self {
            t: 2.0,
            gamma: 2.0,
            c: 1.1,
            alpha_lo: 1e-16,
            alpha_hi: 1e4,
            max_iter: 60,
            rel_tol: 1e-2,
            unreachable: UnreachableDiscrepancy::Error,
        }
    }
}

impl M2Config {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason| Err(Error::InvalidParameter { name, reason });
        if !(self.t > 1.0) {
            return bad("T2", "must be > 1");
        }
        if !(self.gamma >= 1.0) {
            return bad("gamma2", "must be >= 1");
        }
        if !(self.c > 1.0) {
            return bad("C", "discrepancy constant must be > 1");
        }
        if !(self.alpha_lo > 0.0 && self.alpha_hi > self.alpha_lo && self.alpha_hi.is_finite()) {
            return bad("alpha_bracket", "need 0 < alpha_lo < alpha_hi < inf");
        }
        if !(self.rel_tol > 0.0) {
            return bad("rel_tol", "must be > 0");
        }
        Ok(())
    }

    /// Largest `n2` with `gamma (2 n2 + 1) <= samples`.
    pub fn n2(&self, samples: usize) -> usize {
        let terms = libm::floor(samples as f64 / self.gamma) as usize;
        terms.saturating_sub(1) / 2
    }
}

/// Sample-count dependent matrices of the baseline, reusable across data sets.
#[derive(Debug, Clone)]
pub struct M2Design {
    cfg: M2Config,
    samples: usize,
    a: f64,
    b_end: f64,
    /// `M / (b - a)`: converts `alpha` to the unweighted sample sum.
    penalty_scale: f64,
    n2: usize,
    /// Highest frequency kept in the solve.
    active: usize,
    period_points: usize,
    /// `A R^{-1}` restricted to the active band, `samples x (2 active + 1)`.
    b: CMatrix,
    /// Frequency-domain derivative factors `i l w` of the active band.
    diff: Vec<Complex<f64>>,
    rinv: Vec<f64>,
    gram: CMatrix,
}

impl M2Design {
    pub fn new(cfg: &M2Config, samples: usize, a: f64, b: f64) -> Result<Self> {
        cfg.validate()?;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter {
                name: "interval",
                reason: "endpoints must be finite with a < b",
            });
        }
        let n2 = cfg.n2(samples);
        if n2 < 1 || samples < 2 {
            return Err(Error::InvalidParameter {
                name: "samples",
                reason: "too few samples for a trigonometric series",
            });
        }
        let period_points = libm::ceil(cfg.t * samples as f64) as usize;
        let h = 2.0 * PI / period_points as f64;
        let nodes: Vec<f64> = (0..samples).map(|i| i as f64 * h).collect();
        let span = (samples - 1) as f64 * h;

        // ||b_l||^2 ~ samples e^{-|l| pi}
        let penalty_scale = samples as f64 / (b - a);
        let floor = f64::EPSILON * f64::EPSILON * cfg.alpha_lo * penalty_scale;
        let active = (1..=n2)
            .take_while(|&l| samples as f64 * libm::exp(-(l as f64) * PI) >= floor)
            .last()
            .unwrap_or(0)
            .max(1);
        let rinv: Vec<f64> = (-(active as i64)..=active as i64)
            .map(|l| libm::exp(-(l.unsigned_abs() as f64) * FRAC_PI_2))
            .collect();
        let design = fourier_matrix(&nodes, active, &rinv);
        let gram = gram_matrix(&nodes, active, &rinv);
        let diff = (-(active as i64)..=active as i64)
            .map(|l| I * (l as f64 * span))
            .collect();
        Ok(Self {
            cfg: *cfg,
            samples,
            a,
            b_end: b,
            penalty_scale,
            n2,
            active,
            period_points,
            b: design,
            diff,
            rinv,
            gram,
        })
    }

    pub fn config(&self) -> &M2Config {
        &self.cfg
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn active_band(&self) -> usize {
        self.active
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b_end)
    }

    /// Uniform sample grid of the design.
    pub fn grid(&self) -> Vec<f64> {
        uniform_grid(self.a, self.b_end, self.samples)
    }

    pub fn period_points(&self) -> usize {
        self.period_points
    }

    /// `B^H B` on the active band.
    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    /// `B^H y`.
    pub fn project(&self, y: &[f64]) -> Result<DVector<Complex<f64>>> {
        self.check_len(y)?;
        let cols = self.b.ncols();
        Ok(DVector::from_fn(cols, |j, _| {
            self.b
                .column(j)
                .iter()
                .zip(y)
                .map(|(z, &v)| z.conj() * v)
                .sum()
        }))
    }

    /// Standard-form solution `u` and data residual `||B u - y||_2` at `alpha`.
    pub fn solve(&self, y: &[f64], alpha: f64) -> Result<(DVector<Complex<f64>>, f64)> {
        let rhs = self.project(y)?;
        self.solve_projected(&rhs, y, alpha)
    }

    fn solve_projected(
        &self,
        rhs: &DVector<Complex<f64>>,
        y: &[f64],
        alpha: f64,
    ) -> Result<(DVector<Complex<f64>>, f64)> {
        let mut mat = self.gram.clone();
        let shift = alpha * self.penalty_scale;
        for k in 0..mat.nrows() {
            mat[(k, k)] += shift;
        }
        let chol = Cholesky::new(mat).ok_or(Error::NotPositiveDefinite { alpha })?;
        let u = chol.solve(rhs);
        let residual = self.residual(&u, y);
        Ok((u, residual))
    }

    fn residual(&self, u: &DVector<Complex<f64>>, y: &[f64]) -> f64 {
        let fitted = &self.b * u;
        let diff: Vec<Complex<f64>> = fitted.iter().zip(y).map(|(f, &v)| f - v).collect();
        cnorm2(&diff)
    }

    fn check_len(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.samples {
            return Err(Error::LengthMismatch {
                what: "baseline samples",
                expected: self.samples,
                actual: y.len(),
            });
        }
        Ok(())
    }

    /// Expands an active-band standard-form solution to coefficients on the full `2 n2 + 1` basis.
    fn expand(&self, u: &DVector<Complex<f64>>) -> Vec<Complex<f64>> {
        let mut coef = vec![Complex::new(0.0, 0.0); 2 * self.n2 + 1];
        let offset = self.n2 - self.active;
        for (j, (uj, r)) in u.iter().zip(&self.rinv).enumerate() {
            coef[offset + j] = uj * *r;
        }
        coef
    }
}

/// `B^H B` from the closed sums `sum_i e^{i d t_i}`, one per frequency gap `d`.
fn gram_matrix(nodes: &[f64], n: usize, rinv: &[f64]) -> CMatrix {
    let cols = 2 * n + 1;
    let kernel: Vec<Complex<f64>> = (0..2 * cols - 1)
        .map(|k| {
            let d = k as f64 - (cols - 1) as f64;
            nodes
                .iter()
                .map(|&t| Complex::new(libm::cos(d * t), libm::sin(d * t)))
                .sum()
        })
        .collect();
    CMatrix::from_fn(cols, cols, |j, k| {
        let lj = j as i64 - n as i64;
        let lk = k as i64 - n as i64;
        let mut v = kernel[k + cols - 1 - j];
        // phi_0 = 1/sqrt(2) instead of e^{0}
        let c0 = basis(0, 0.0).re;
        if lj == 0 {
            v *= c0;
        }
        if lk == 0 {
            v *= c0;
        }
        v * (rinv[j] * rinv[k])
    })
}

/// Regularized fit of the whole record.
#[derive(Debug, Clone, PartialEq)]
pub struct M2Fit {
    /// Coefficients `v` on frequencies `-n2..=n2`.
    pub coef: Vec<Complex<f64>>,
    pub alpha: f64,
    /// `||A v - y||_2`.
    pub residual: f64,
    /// True when the discrepancy level was out of reach and `alpha_lo` was used.
    pub alpha_clamped: bool,
}

/// Outcome of the discrepancy search.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSelection {
    pub alpha: f64,
    pub residual: f64,
    /// `(alpha, residual)` pairs in evaluation order.
    pub iterates: Vec<(f64, f64)>,
}

/// Bisection on `log alpha` for `||A v_alpha - y|| = C delta`.
///
/// Stops when the residual is within `rel_tol C delta` of the target or after
/// `max_iter` bisections. The residual must not decrease as `alpha` grows;
/// any violation beyond roundoff along the iterates is reported.
pub fn m2_select_alpha(design: &M2Design, y: &[f64], delta: f64) -> Result<AlphaSelection> {
    let cfg = design.cfg;
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            reason: "noise norm must be > 0",
        });
    }
    let rhs = design.project(y)?;
    let target = cfg.c * delta;
    let tol = cfg.rel_tol * target;
    let slack = 1e-12 * crate::linalg::norm2(y);
    let mut iterates = Vec::new();
    let eval = |alpha: f64, iterates: &mut Vec<(f64, f64)>| -> Result<f64> {
        let (_, res) = design.solve_projected(&rhs, y, alpha)?;
        for &(a, r) in iterates.iter() {
            let ordered = if a < alpha {
                r <= res + slack
            } else {
                res <= r + slack
            };
            if !ordered {
                let (previous, current) = if a < alpha { (r, res) } else { (res, r) };
                return Err(Error::NonMonotoneResidual { previous, current });
            }
        }
        iterates.push((alpha, res));
        Ok(res)
    };

    let (mut lo, mut hi) = (cfg.alpha_lo, cfg.alpha_hi);
    let res_lo = eval(lo, &mut iterates)?;
    if (res_lo - target).abs() <= tol {
        return Ok(AlphaSelection {
            alpha: lo,
            residual: res_lo,
            iterates,
        });
    }
    let res_hi = eval(hi, &mut iterates)?;
    if (res_hi - target).abs() <= tol {
        return Ok(AlphaSelection {
            alpha: hi,
            residual: res_hi,
            iterates,
        });
    }
    if !(res_lo < target && target < res_hi) {
        return Err(Error::AlphaBracket {
            target,
            residual_lo: res_lo,
            residual_hi: res_hi,
        });
    }
    let mut best = (lo, res_lo);
    for _ in 0..cfg.max_iter {
        let mid = libm::sqrt(lo) * libm::sqrt(hi);
        let res = eval(mid, &mut iterates)?;
        best = (mid, res);
        if (res - target).abs() <= tol {
            break;
        }
        if res < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(AlphaSelection {
        alpha: best.0,
        residual: best.1,
        iterates,
    })
}

/// Fit with `alpha` from the discrepancy principle; `delta` is the discrete
/// noise norm, e.g. `delta1 sqrt(M / 3)` for uniform noise.
pub fn m2_fit(design: &M2Design, y: &[f64], delta: f64) -> Result<M2Fit> {
    let (alpha, clamped) = match m2_select_alpha(design, y, delta) {
        Ok(sel) => (sel.alpha, false),
        Err(Error::AlphaBracket {
            target,
            residual_lo,
            ..
        }) if design.cfg.unreachable == UnreachableDiscrepancy::UseAlphaLo
            && residual_lo > target =>
        {
            (design.cfg.alpha_lo, true)
        }
        Err(e) => return Err(e),
    };
    m2_fit_at(design, y, alpha).map(|fit| M2Fit {
        alpha_clamped: clamped,
        ..fit
    })
}

/// Fit at a fixed `alpha`.
pub fn m2_fit_at(design: &M2Design, y: &[f64], alpha: f64) -> Result<M2Fit> {
    let (u, residual) = design.solve(y, alpha)?;
    Ok(M2Fit {
        coef: design.expand(&u),
        alpha,
        residual,
        alpha_clamped: false,
    })
}

/// Term-wise derivative of the fitted series on the design grid.
pub fn m2_derivative(fit: &M2Fit, design: &M2Design) -> Result<Vec<f64>> {
    if fit.coef.len() != 2 * design.n2 + 1 {
        return Err(Error::LengthMismatch {
            what: "baseline coefficients",
            expected: 2 * design.n2 + 1,
            actual: fit.coef.len(),
        });
    }
    let offset = design.n2 - design.active;
    let scale = 1.0 / (design.b_end - design.a);
    // b = A R^{-1}, so A v = B (R v) on the active band
    let weighted: Vec<Complex<f64>> = (0..design.b.ncols())
        .map(|j| fit.coef[offset + j] / design.rinv[j] * design.diff[j] * scale)
        .collect();
    Ok((0..design.samples)
        .map(|i| {
            weighted
                .iter()
                .enumerate()
                .map(|(j, w)| design.b[(i, j)] * w)
                .sum::<Complex<f64>>()
                .re
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::OnceLock;

    const M: usize = 1153;

    fn design() -> &'static M2Design {
        static D: OnceLock<M2Design> = OnceLock::new();
        D.get_or_init(|| M2Design::new(&M2Config::default(), M, -1.0, 1.0).unwrap())
    }

    fn noisy(f: fn(f64) -> f64, delta1: f64, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        design()
            .grid()
            .iter()
            .map(|&x| f(x) + rng.random_range(-delta1..=delta1))
            .collect()
    }

    fn delta(delta1: f64) -> f64 {
        delta1 * libm::sqrt(M as f64 / 3.0)
    }

    #[test]
    fn series_length_from_samples() {
        let d = design();
        assert_eq!(d.n2(), 287);
        assert_eq!(d.period_points(), 2306);
        assert!(d.active_band() >= 1 && d.active_band() <= d.n2());
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = M2Config {
            c: 1.0,
            ..M2Config::default()
        };
        assert!(M2Design::new(&cfg, M, -1.0, 1.0).is_err());
        let cfg = M2Config {
            alpha_lo: 1.0,
            alpha_hi: 0.5,
            ..M2Config::default()
        };
        assert!(cfg.validate().is_err());
        assert!(M2Design::new(&M2Config::default(), M, 1.0, 1.0).is_err());
    }

    #[test]
    fn huge_alpha_kills_coefficients() {
        let y = noisy(libm::exp, 1e-2, 1);
        let fit = m2_fit_at(design(), &y, 1e12).unwrap();
        assert!(cnorm2(&fit.coef) <= 1e-8 * norm2(&y));
    }

    #[test]
    fn zero_data_zero_coefficients() {
        let y = vec![0.0; M];
        for alpha in [1e-16, 1e-4, 1e4] {
            let fit = m2_fit_at(design(), &y, alpha).unwrap();
            assert!(fit.coef.iter().all(|c| c.norm() == 0.0));
        }
    }

    #[test]
    fn discrepancy_hit_for_exponential() {
        let y = noisy(libm::exp, 1e-2, 3);
        let d = delta(1e-2);
        let fit = m2_fit(design(), &y, d).unwrap();
        let target = 1.1 * d;
        assert!(!fit.alpha_clamped);
        assert!((fit.residual - target).abs() <= 1e-2 * target);
    }

    #[test]
    fn residual_at_alpha_lo_returns_alpha_lo() {
        let y = noisy(libm::exp, 1e-2, 4);
        let (_, res_lo) = design().solve(&y, 1e-16).unwrap();
        let sel = m2_select_alpha(design(), &y, res_lo / 1.1).unwrap();
        assert_eq!(sel.alpha, 1e-16);
    }

    #[test]
    fn unreachable_level_errors_or_clamps() {
        let y = noisy(libm::exp, 1e-2, 5);
        let err = m2_fit(design(), &y, 1e-20).unwrap_err();
        assert!(matches!(err, Error::AlphaBracket { .. }));
        let cfg = M2Config {
            unreachable: UnreachableDiscrepancy::UseAlphaLo,
            ..M2Config::default()
        };
        let clamped = M2Design::new(&cfg, M, -1.0, 1.0).unwrap();
        let fit = m2_fit(&clamped, &y, 1e-20).unwrap();
        assert!(fit.alpha_clamped);
        assert_eq!(fit.alpha, 1e-16);
        // above the data norm nothing can reach the level, clamp or not
        assert!(matches!(
            m2_fit(&clamped, &y, 10.0 * norm2(&y)),
            Err(Error::AlphaBracket { .. })
        ));
    }

    #[test]
    fn iterates_are_monotone_when_recomputed() {
        let y = noisy(libm::exp, 1e-3, 6);
        let sel = m2_select_alpha(design(), &y, delta(1e-3)).unwrap();
        let mut recomputed: Vec<(f64, f64)> = sel
            .iterates
            .iter()
            .map(|&(a, _)| (a, design().solve(&y, a).unwrap().1))
            .collect();
        recomputed.sort_by(|p, q| p.0.total_cmp(&q.0));
        for w in recomputed.windows(2) {
            assert!(w[0].1 <= w[1].1 + 1e-12 * norm2(&y));
        }
    }

    #[test]
    fn residual_and_penalty_monotone_on_grid() {
        let y = noisy(|x| libm::sin(3.0 * x) + x, 1e-3, 7);
        let mut prev: Option<(f64, f64)> = None;
        for k in 0..10 {
            let alpha = libm::pow(10.0, -14.0 + 2.0 * k as f64);
            let (u, res) = design().solve(&y, alpha).unwrap();
            // ||R v|| = ||u||
            let pen = u.norm();
            if let Some((r0, p0)) = prev {
                assert!(res >= r0 - 1e-12 * norm2(&y), "residual dropped at {alpha}");
                assert!(pen <= p0 * (1.0 + 1e-10), "penalty grew at {alpha}");
            }
            prev = Some((res, pen));
        }
    }

    #[test]
    fn normal_equation_gradient_small() {
        let y = noisy(libm::exp, 1e-3, 8);
        let d = design();
        for alpha in [1e-12, 1e-6, 1.0] {
            let (u, _) = d.solve(&y, alpha).unwrap();
            let rhs = d.project(&y).unwrap();
            let grad = d.gram() * &u + &u * Complex::new(alpha * d.penalty_scale, 0.0) - &rhs;
            assert!(
                grad.norm() <= 1e-8 * (rhs.norm() + 1.0),
                "alpha {alpha}: {}",
                grad.norm()
            );
        }
    }

    #[test]
    fn single_tone_derivative() {
        let d = design();
        let mut coef = vec![Complex::new(0.0, 0.0); 2 * d.n2() + 1];
        coef[d.n2() + 1] = Complex::new(0.7, -0.2);
        let fit = M2Fit {
            coef,
            alpha: 1.0,
            residual: 0.0,
            alpha_clamped: false,
        };
        let got = m2_derivative(&fit, d).unwrap();
        let h = 2.0 * PI / d.period_points() as f64;
        let span = (M - 1) as f64 * h;
        for (i, (g, x)) in got.iter().zip(d.grid()).enumerate() {
            let t = i as f64 * h;
            let z = Complex::new(0.7, -0.2) * I * Complex::new(libm::cos(t), libm::sin(t));
            let want = z.re * span / 2.0;
            assert!((g - want).abs() <= 1e-12, "x = {x}");
        }
    }

    #[test]
    fn zero_coefficients_zero_derivative() {
        let d = design();
        let fit = M2Fit {
            coef: vec![Complex::new(0.0, 0.0); 2 * d.n2() + 1],
            alpha: 1.0,
            residual: 0.0,
            alpha_clamped: false,
        };
        assert!(m2_derivative(&fit, d).unwrap().iter().all(|&v| v == 0.0));
        let short = M2Fit {
            coef: vec![],
            ..fit
        };
        assert!(m2_derivative(&short, d).is_err());
    }

    #[test]
    fn deterministic_selection() {
        let y = noisy(|x| libm::cos(10.0 * x), 1e-3, 9);
        let a = m2_fit(design(), &y, delta(1e-3)).unwrap();
        let b = m2_fit(design(), &y, delta(1e-3)).unwrap();
        assert_eq!(a.alpha.to_bits(), b.alpha.to_bits());
        assert_eq!(a, b);
    }

    #[test]
    fn closed_form_gram_matches_product() {
        let d = design();
        let direct = d.b.adjoint() * &d.b;
        let scale = direct.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((&direct - d.gram())
            .iter()
            .all(|z| z.norm() <= 1e-11 * scale));
    }

    #[test]
    fn inert_band_does_not_change_fit() {
        // augmented least squares over every frequency, no normal equations
        let d = design();
        let n2 = d.n2();
        let cols = 2 * n2 + 1;
        let h = 2.0 * PI / d.period_points() as f64;
        let nodes: Vec<f64> = (0..M).map(|i| i as f64 * h).collect();
        let rinv: Vec<f64> = (-(n2 as i64)..=n2 as i64)
            .map(|l| libm::exp(-(l.unsigned_abs() as f64) * FRAC_PI_2))
            .collect();
        let full = fourier_matrix(&nodes, n2, &rinv);
        let alpha = 1e-8;
        let root = libm::sqrt(alpha * d.penalty_scale);
        let aug = CMatrix::from_fn(M + cols, cols, |i, j| {
            if i < M {
                full[(i, j)]
            } else if i - M == j {
                Complex::new(root, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let y = noisy(libm::exp, 1e-4, 10);
        let rhs = DVector::from_fn(M + cols, |i, _| {
            Complex::new(if i < M { y[i] } else { 0.0 }, 0.0)
        });
        let qr = aug.qr();
        let qty = qr.q().adjoint() * rhs;
        let u_full = qr
            .r()
            .solve_upper_triangular(&qty.rows(0, cols).into_owned())
            .unwrap();
        let fitted_full = &full * &u_full;
        let (u, _) = d.solve(&y, alpha).unwrap();
        let fitted = &d.b * &u;
        let gap = (fitted_full - fitted).norm();
        assert!(gap <= 1e-9 * norm2(&y), "gap {gap}");
    }
}
