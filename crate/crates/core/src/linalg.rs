use alloc::vec::Vec;

pub use num_complex::Complex;

/// Dense complex matrix used for every Fourier operator.
pub type CMatrix = nalgebra::DMatrix<Complex<f64>>;

pub(crate) const I: Complex<f64> = Complex { re: 0.0, im: 1.0 };

pub(crate) fn norm2(v: &[f64]) -> f64 {
    // scaled to avoid overflow on large inputs
    let scale = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let ss: f64 = v.iter().map(|x| (x / scale) * (x / scale)).sum();
    scale * libm::sqrt(ss)
}

pub(crate) fn diff_norm2(a: &[f64], b: &[f64]) -> f64 {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm2(&d)
}

pub(crate) fn cnorm2(v: &[Complex<f64>]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// `z^q` for a non-negative integer power by repeated multiplication.
pub(crate) fn cpowi(z: Complex<f64>, q: u32) -> Complex<f64> {
    let mut acc = Complex::new(1.0, 0.0);
    for _ in 0..q {
        acc *= z;
    }
    acc
}

pub(crate) fn powi(x: f64, q: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..q {
        acc *= x;
    }
    acc
}

/// Thin SVD `a = u diag(s) v^H` by one-sided (Hestenes) Jacobi rotations.
///
/// Requires `nrows >= ncols`. Singular values come out sorted nonincreasing.
/// Column orthogonality is driven to working precision relative to each pair
/// of column norms, which keeps the left vectors orthonormal even for singular
/// values far below `eps * s[0]`. Returns `None` if the sweeps fail to
/// converge.
pub(crate) fn jacobi_svd(a: &CMatrix) -> Option<(CMatrix, Vec<f64>, CMatrix)> {
    const MAX_SWEEPS: usize = 80;
    let (rows, cols) = a.shape();
    if rows < cols {
        return None;
    }
    let mut work = a.clone();
    let mut v = CMatrix::identity(cols, cols);
    let tol = f64::EPSILON;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = work.column(p).iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = work.column(q).iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex<f64> = work
                    .column(p)
                    .iter()
                    .zip(work.column(q).iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g_abs = gamma.norm();
                if g_abs == 0.0 || g_abs <= tol * libm::sqrt(alpha) * libm::sqrt(beta) {
                    continue;
                }
                rotated = true;
                let phase = gamma / g_abs;
                let zeta = (beta - alpha) / (2.0 * g_abs);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + libm::sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + libm::sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                let rot = phase.conj();
                rotate(&mut work, p, q, c, s, rot);
                rotate(&mut v, p, q, c, s, rot);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }

    let norms: Vec<f64> = (0..cols)
        .map(|j| libm::sqrt(work.column(j).iter().map(|z| z.norm_sqr()).sum()))
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let u = CMatrix::from_fn(rows, cols, |i, k| {
        let j = order[k];
        if norms[j] > 0.0 {
            work[(i, j)] / norms[j]
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    let v_sorted = CMatrix::from_fn(cols, cols, |i, k| v[(i, order[k])]);
    let s = order.iter().map(|&j| norms[j]).collect();
    Some((u, s, v_sorted))
}

// x_p <- c x_p - s rot x_q,  x_q <- s x_p + c rot x_q
fn rotate(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, rot: Complex<f64>) {
    for i in 0..m.nrows() {
        let xp = m[(i, p)];
        let xq = m[(i, q)] * rot;
        m[(i, p)] = xp * c - xq * s;
        m[(i, q)] = xp * s + xq * c;
    }
}
