use std::fmt;
use std::str::FromStr;

use fexdiff_core::baseline::{m2_derivative, m2_fit, M2Design};
use fexdiff_core::{
    differentiate, PartitionLeaf, PartitionOptions, PrecomputedOperators, SignalRecord,
};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Adaptive piecewise Fourier extension.
    M1,
    /// Full-interval Tikhonov baseline.
    M2,
}

impl Method {
    pub fn id(self) -> &'static str {
        match self {
            Self::M1 => "m1",
            Self::M2 => "m2",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "m1" => Ok(Self::M1),
            "m2" => Ok(Self::M2),
            _ => Err(Error::UnknownMethod(s.to_string())),
        }
    }
}

/// First derivative from either method.
#[derive(Debug, Clone)]
pub struct MethodOutput {
    pub dvalues: Vec<f64>,
    /// M1 only.
    pub leaves: Vec<PartitionLeaf>,
    /// M2 only.
    pub alpha: Option<f64>,
    pub alpha_clamped: bool,
}

pub fn run_m1(
    signal: &SignalRecord,
    ops: &PrecomputedOperators,
    opts: &PartitionOptions,
) -> Result<MethodOutput> {
    let res = differentiate(signal, ops, opts)?;
    Ok(MethodOutput {
        dvalues: res.dvalues,
        leaves: res.leaves,
        alpha: None,
        alpha_clamped: false,
    })
}

/// Runs the baseline with the discrete noise norm `delta1 sqrt(M / 3)`.
pub fn run_m2(y: &[f64], delta1: f64, design: &M2Design) -> Result<MethodOutput> {
    let delta = delta1 * (y.len() as f64 / 3.0).sqrt();
    let fit = m2_fit(design, y, delta)?;
    Ok(MethodOutput {
        dvalues: m2_derivative(&fit, design)?,
        leaves: Vec::new(),
        alpha: Some(fit.alpha),
        alpha_clamped: fit.alpha_clamped,
    })
}
