//! Binary cache of the operator SVD.
//!
//! Layout, all little endian: magic `FEXOPS01`, `n: u64`, `gamma: f64`,
//! `T: f64`, `k: u64`, then `s[k]`, `u` (`m x k`) and `v` (`(2n+1) x k`) in
//! column-major order with each entry as `re, im`. Everything else in
//! [`PrecomputedOperators`] is rebuilt from the configuration.

use std::path::Path;

use fexdiff_core::{CMatrix, Complex, PrecomputedOperators, SpectralConfig};

use crate::error::{io_err, Error, Result};

const MAGIC: &[u8; 8] = b"FEXOPS01";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Loaded,
    /// Missing or unusable; rebuilt and written back.
    Rebuilt,
}

pub fn encode(ops: &PrecomputedOperators) -> Vec<u8> {
    let cfg = ops.config();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(cfg.n as u64).to_le_bytes());
    out.extend_from_slice(&cfg.gamma.to_le_bytes());
    out.extend_from_slice(&cfg.t.to_le_bytes());
    out.extend_from_slice(&(ops.s.len() as u64).to_le_bytes());
    for s in &ops.s {
        out.extend_from_slice(&s.to_le_bytes());
    }
    for mat in [&ops.u, &ops.v] {
        for z in mat.iter() {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    out
}

struct Cursor<'a>(&'a [u8]);

impl Cursor<'_> {
    fn take8(&mut self) -> Option<[u8; 8]> {
        let (head, rest) = self.0.split_first_chunk::<8>()?;
        self.0 = rest;
        Some(*head)
    }

    fn f64(&mut self) -> Option<f64> {
        self.take8().map(f64::from_le_bytes)
    }

    fn u64(&mut self) -> Option<u64> {
        self.take8().map(u64::from_le_bytes)
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> Option<CMatrix> {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            data.push(Complex::new(self.f64()?, self.f64()?));
        }
        Some(CMatrix::from_vec(rows, cols, data))
    }
}

/// Decodes a cache for `cfg`; `None` when it belongs to another configuration or is malformed.
pub fn decode(bytes: &[u8], cfg: &SpectralConfig) -> Option<PrecomputedOperators> {
    let mut c = Cursor(bytes);
    if c.take8()? != *MAGIC {
        return None;
    }
    let (n, gamma, t) = (c.u64()?, c.f64()?, c.f64()?);
    if n != cfg.n as u64 || gamma.to_bits() != cfg.gamma.to_bits() || t.to_bits() != cfg.t.to_bits()
    {
        return None;
    }
    let k = usize::try_from(c.u64()?).ok()?;
    if k != cfg.m.min(2 * cfg.n + 1) {
        return None;
    }
    let s = (0..k).map(|_| c.f64()).collect::<Option<Vec<_>>>()?;
    let u = c.matrix(cfg.m, k)?;
    let v = c.matrix(2 * cfg.n + 1, k)?;
    if !c.0.is_empty() {
        return None;
    }
    PrecomputedOperators::from_svd(cfg, u, s, v).ok()
}

pub fn save(path: &Path, ops: &PrecomputedOperators) -> Result<()> {
    std::fs::write(path, encode(ops)).map_err(io_err(path))
}

/// Loads the cache at `path` if it matches `cfg`, otherwise builds and rewrites it.
pub fn load_or_build(
    path: &Path,
    cfg: &SpectralConfig,
) -> Result<(PrecomputedOperators, CacheStatus)> {
    if let Ok(bytes) = std::fs::read(path) {
        if let Some(ops) = decode(&bytes, cfg) {
            return Ok((ops, CacheStatus::Loaded));
        }
    }
    let ops = PrecomputedOperators::build(cfg).map_err(Error::from)?;
    save(path, &ops)?;
    Ok((ops, CacheStatus::Rebuilt))
}
