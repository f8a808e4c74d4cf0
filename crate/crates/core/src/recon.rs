use alloc::vec::Vec;

use crate::config::uniform_grid;
use crate::error::{Error, Result};
use crate::interp::trig_upsample;
use crate::linalg::{powi, CMatrix};
use crate::operators::PrecomputedOperators;
use crate::partition::{
    evaluate_real, PartitionLeaf, PartitionOptions, PartitionResult, Partitioner, SignalRecord,
};

/// Highest derivative order accepted by [`reconstruct_derivative_order`].
///
/// The factors `(l w)^q e^{-|l|}` grow quickly with `q`; beyond this the
/// amplified roundoff swamps any realistic signal.
pub const DEFAULT_MAX_ORDER: u32 = 4;

/// Values on the global grid reassembled from a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeResult {
    /// Global uniform grid.
    pub x: Vec<f64>,
    /// Derivative of the requested order at `x`.
    pub dvalues: Vec<f64>,
    /// Denoised function values, when requested.
    pub fvalues: Option<Vec<f64>>,
    pub leaves: Vec<PartitionLeaf>,
}

/// First derivative on the global grid from the accepted leaves.
pub fn reconstruct_derivative(
    part: &PartitionResult,
    ops: &PrecomputedOperators,
) -> Result<DerivativeResult> {
    reconstruct_derivative_order(part, ops, 1)
}

/// Order-`q` derivative, `1 <= q <= DEFAULT_MAX_ORDER`.
pub fn reconstruct_derivative_order(
    part: &PartitionResult,
    ops: &PrecomputedOperators,
    q: u32,
) -> Result<DerivativeResult> {
    reconstruct_derivative_order_capped(part, ops, q, DEFAULT_MAX_ORDER)
}

pub fn reconstruct_derivative_order_capped(
    part: &PartitionResult,
    ops: &PrecomputedOperators,
    q: u32,
    max_order: u32,
) -> Result<DerivativeResult> {
    if q < 1 {
        return Err(Error::InvalidParameter {
            name: "order",
            reason: "derivative order must be at least 1",
        });
    }
    if q > max_order {
        return Err(Error::InvalidParameter {
            name: "order",
            reason: "derivative order exceeds the configured cap",
        });
    }
    let owned;
    let mat = if q == 1 {
        &ops.dtg
    } else {
        owned = ops.derivative_operator(q);
        &owned
    };
    let width = part.b - part.a;
    let dvalues = assemble(part, ops, mat, |leaf| {
        // K / (b - a) with K = (b - a) / (b_j - a_j)
        let k = width / (leaf.b - leaf.a);
        powi(k / width, q)
    })?;
    Ok(DerivativeResult {
        x: uniform_grid(part.a, part.b, dvalues.len()),
        dvalues,
        fvalues: None,
        leaves: part.leaves.clone(),
    })
}

/// Denoised function values on the global grid.
pub fn reconstruct_function(
    part: &PartitionResult,
    ops: &PrecomputedOperators,
) -> Result<Vec<f64>> {
    assemble(part, ops, &ops.tg, |_| 1.0)
}

/// Partitions `signal` and reconstructs its first derivative.
pub fn differentiate(
    signal: &SignalRecord,
    ops: &PrecomputedOperators,
    opts: &PartitionOptions,
) -> Result<DerivativeResult> {
    let part = Partitioner::partition(signal, ops, opts)?;
    reconstruct_derivative(&part, ops)
}

/// Evaluates `mat * coef` per leaf, upsamples to the leaf's own resolution and
/// concatenates. Each leaf contributes every point but its last; the final
/// point of the last leaf closes the grid.
fn assemble<F>(
    part: &PartitionResult,
    ops: &PrecomputedOperators,
    mat: &CMatrix,
    scale: F,
) -> Result<Vec<f64>>
where
    F: Fn(&PartitionLeaf) -> f64,
{
    let cfg = ops.config();
    check_dyadic(part, cfg.r, cfg.m)?;
    let mut out = Vec::with_capacity(cfg.big_m);
    let mut tail = None;
    for leaf in &part.leaves {
        let stride = leaf.stride(cfg.m);
        let factor = scale(leaf);
        let coarse: Vec<f64> = evaluate_real(mat, &leaf.fit.coef)
            .into_iter()
            .map(|v| v * factor)
            .collect();
        let fine = trig_upsample(&coarse, stride)?;
        let span = stride * (cfg.m - 1);
        out.extend_from_slice(&fine[..span]);
        tail = Some(fine[span]);
    }
    if let Some(last) = tail {
        out.push(last);
    }
    Ok(out)
}

fn check_dyadic(part: &PartitionResult, r: u32, m: usize) -> Result<()> {
    let width = part.b - part.a;
    let tol = 1e-12 * width.abs().max(part.a.abs()).max(part.b.abs());
    let mut pos = part.a;
    let mut spanned = 0usize;
    for leaf in &part.leaves {
        let bad = Error::NonDyadicLeaf {
            a: leaf.a,
            b: leaf.b,
        };
        if leaf.depth > r {
            return Err(bad);
        }
        let expect = width / (1u64 << leaf.depth) as f64;
        if (leaf.a - pos).abs() > tol || (leaf.b - leaf.a - expect).abs() > tol {
            return Err(bad);
        }
        if leaf.nn != (1usize << (r - leaf.depth)) * (m - 1) + 1 {
            return Err(bad);
        }
        pos = leaf.b;
        spanned += leaf.nn - 1;
    }
    if part.leaves.is_empty() || (pos - part.b).abs() > tol || spanned != (1usize << r) * (m - 1) {
        return Err(Error::NonDyadicLeaf { a: part.a, b: pos });
    }
    Ok(())
}
