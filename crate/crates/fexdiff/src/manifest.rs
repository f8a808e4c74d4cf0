//! Run manifest: every effective parameter of a run, echoed as JSON.

use fexdiff_core::baseline::{M2Config, UnreachableDiscrepancy};
use fexdiff_core::SpectralConfig;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub gamma: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub r: u32,
    pub rho: f64,
    pub m: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "M")]
    pub big_m: usize,
}

impl From<&SpectralConfig> for ConfigEcho {
    fn from(c: &SpectralConfig) -> Self {
        Self {
            n: c.n,
            gamma: c.gamma,
            t: c.t,
            r: c.r,
            rho: c.rho,
            m: c.m,
            l: c.l,
            big_m: c.big_m,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct M2Echo {
    #[serde(rename = "T2")]
    pub t: f64,
    pub gamma2: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    pub max_iter: usize,
    pub rel_tol: f64,
    pub clamp_to_alpha_lo: bool,
}

impl From<&M2Config> for M2Echo {
    fn from(c: &M2Config) -> Self {
        Self {
            t: c.t,
            gamma2: c.gamma,
            c: c.c,
            alpha_lo: c.alpha_lo,
            alpha_hi: c.alpha_hi,
            max_iter: c.max_iter,
            rel_tol: c.rel_tol,
            clamp_to_alpha_lo: c.unreachable == UnreachableDiscrepancy::UseAlphaLo,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: ConfigEcho,
    pub m2: M2Echo,
    pub floor_scale: f64,
    pub interval: [f64; 2],
    /// Command-specific parameters.
    pub run: serde_json::Value,
}

impl RunManifest {
    pub fn new(
        command: &str,
        cfg: &SpectralConfig,
        m2: &M2Config,
        floor_scale: f64,
        interval: [f64; 2],
        run: serde_json::Value,
    ) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config: cfg.into(),
            m2: m2.into(),
            floor_scale,
            interval,
            run,
        }
    }
}
