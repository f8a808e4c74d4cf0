use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};

/// Trigonometric interpolation of one period of samples onto a grid `factor`
/// times finer.
///
/// The input is treated as `L` equispaced samples of an `L`-periodic sequence.
/// The output holds the unique trigonometric interpolant of degree `L/2`
/// evaluated at `j L / (factor L)`; for even `L` the Nyquist coefficient is
/// split evenly between `+L/2` and `-L/2`, so the interpolant stays real.
/// Every `factor`-th output reproduces the input.
///
/// Cost is `O(L^2 + factor L^2 / 2)` through a direct transform, which is
/// cheap at the local grid sizes used here.
pub fn trig_upsample(values: &[f64], factor: usize) -> Result<Vec<f64>> {
    if factor == 0 {
        return Err(Error::InvalidParameter {
            name: "factor",
            reason: "must be at least 1",
        });
    }
    let len = values.len();
    if factor == 1 || len == 0 {
        return Ok(values.to_vec());
    }
    let out_len = factor * len;

    // cos/sin of 2 pi k / out_len; indices into it are reduced mod out_len
    let (cos_t, sin_t): (Vec<f64>, Vec<f64>) = (0..out_len)
        .map(|k| {
            let arg = 2.0 * PI * k as f64 / out_len as f64;
            (libm::cos(arg), libm::sin(arg))
        })
        .unzip();

    // forward DFT coefficients k = 0..=len/2 on the same table (stride = factor)
    let half = len / 2;
    let mut re = vec![0.0; half + 1];
    let mut im = vec![0.0; half + 1];
    for k in 0..=half {
        let (mut sr, mut si) = (0.0, 0.0);
        for (j, &x) in values.iter().enumerate() {
            let idx = (k * j % len) * factor;
            sr += x * cos_t[idx];
            si -= x * sin_t[idx];
        }
        re[k] = sr;
        im[k] = si;
    }

    let nyquist = len.is_multiple_of(2);
    let top = if nyquist { half - 1 } else { half };
    let scale = 1.0 / len as f64;
    let mut out = vec![0.0; out_len];
    for (p, o) in out.iter_mut().enumerate() {
        let mut acc = re[0];
        for k in 1..=top {
            let idx = k * p % out_len;
            acc += 2.0 * (re[k] * cos_t[idx] - im[k] * sin_t[idx]);
        }
        if nyquist {
            // halves at +len/2 and -len/2 combine into a cosine
            let idx = half * p % out_len;
            acc += re[half] * cos_t[idx];
        }
        *o = acc * scale;
    }
    // interpolation nodes are reproduced exactly by construction, up to roundoff
    Ok(out)
}
