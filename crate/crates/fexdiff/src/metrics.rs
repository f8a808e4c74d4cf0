use crate::error::{Error, Result};

/// Root-mean-square error relative to the root-mean-square of `exact`.
pub fn relative_error(approx: &[f64], exact: &[f64]) -> Result<f64> {
    if approx.len() != exact.len() {
        return Err(Error::Length(approx.len(), exact.len()));
    }
    let den: f64 = exact.iter().map(|e| e * e).sum();
    if den == 0.0 || exact.is_empty() {
        return Err(Error::ZeroReference);
    }
    let num: f64 = approx
        .iter()
        .zip(exact)
        .map(|(a, e)| (a - e) * (a - e))
        .sum();
    Ok((num / den).sqrt())
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    match n {
        0 => f64::NAN,
        _ if n % 2 == 1 => v[n / 2],
        _ => 0.5 * (v[n / 2 - 1] + v[n / 2]),
    }
}
