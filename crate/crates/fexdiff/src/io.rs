//! CSV sample input plus derivative and partition-trace output.
//!
//! Floats are written in Rust's shortest round-trip form (`{:?}`), so equal
//! values always produce equal bytes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use fexdiff_core::{PartitionLeaf, SpectralConfig};

use crate::error::{csv_err, io_err, Error, Result};

/// Samples read from disk, on a uniform grid of `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleInput {
    pub a: f64,
    pub b: f64,
    pub y: Vec<f64>,
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Nearest valid sample counts `2^r (m - 1) + 1` around `rows`, as `(below, above)`.
pub fn nearest_counts(rows: usize, m: usize) -> ((u32, usize), (u32, usize)) {
    let count = |r: u32| (1usize << r) * (m - 1) + 1;
    let mut r = 0;
    while r < 40 && count(r + 1) <= rows {
        r += 1;
    }
    ((r, count(r)), (r + 1, count(r + 1)))
}

pub fn check_count(rows: usize, cfg: &SpectralConfig) -> Result<()> {
    if rows == cfg.big_m {
        return Ok(());
    }
    let (below, above) = nearest_counts(rows, cfg.m);
    Err(Error::SampleCount {
        rows,
        m: cfg.m,
        below,
        above,
    })
}

/// Reads a `y` or `x,y` CSV with a header row.
///
/// With an `x` column the grid must be uniform; its endpoints give `[a, b]`
/// unless overridden, and an override that disagrees with `x` is an error.
/// Without one, both endpoints must be supplied.
pub fn read_samples(
    path: &Path,
    a: Option<f64>,
    b: Option<f64>,
    cfg: &SpectralConfig,
) -> Result<SampleInput> {
    let fmt_err = |message: String| Error::Format {
        path: path.to_path_buf(),
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err(path))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(csv_err(path))?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect();
    let has_x = match headers
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>()
        .as_slice()
    {
        ["x", "y"] => true,
        ["y"] => false,
        _ => {
            return Err(fmt_err(format!(
                "expected header `x,y` or `y`, found `{}`",
                headers.join(",")
            )))
        }
    };
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(csv_err(path))?;
        let parse = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| fmt_err(format!("row {}: `{s}` is not a finite number", line + 2)))
        };
        if has_x {
            xs.push(parse(&rec[0])?);
        }
        ys.push(parse(&rec[rec.len() - 1])?);
    }
    check_count(ys.len(), cfg)?;

    let (a, b) = if has_x {
        let (x0, x1) = (xs[0], xs[xs.len() - 1]);
        let span = x1 - x0;
        let h = span / (xs.len() - 1) as f64;
        if let Some(i) = xs
            .iter()
            .enumerate()
            .position(|(i, &x)| (x - (x0 + i as f64 * h)).abs() > 1e-9 * span.abs())
        {
            return Err(fmt_err(format!(
                "x is not uniformly spaced (row {})",
                i + 2
            )));
        }
        for (given, found, name) in [(a, x0, "a"), (b, x1, "b")] {
            if let Some(g) = given {
                if (g - found).abs() > 1e-9 * span.abs() {
                    return Err(fmt_err(format!(
                        "--{name} {g} disagrees with x column ({found})"
                    )));
                }
            }
        }
        (x0, x1)
    } else {
        match (a, b) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(fmt_err("a `y`-only file needs both --a and --b".into())),
        }
    };
    if a >= b {
        return Err(fmt_err(format!("interval [{a}, {b}] is empty")));
    }
    Ok(SampleInput { a, b, y: ys })
}

/// Writes named columns of equal length.
pub fn write_columns(path: &Path, columns: &[(&str, &[f64])]) -> Result<()> {
    let rows = columns.first().map_or(0, |c| c.1.len());
    if let Some(bad) = columns.iter().find(|c| c.1.len() != rows) {
        return Err(Error::Length(rows, bad.1.len()));
    }
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(columns.iter().map(|c| c.0))
        .map_err(csv_err(path))?;
    for i in 0..rows {
        w.write_record(columns.iter().map(|c| fmt_f64(c.1[i])))
            .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// One row per leaf: `a_j,b_j,depth,nn,k_used,residual,threshold`.
pub fn write_trace(path: &Path, leaves: &[PartitionLeaf]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record([
        "a_j",
        "b_j",
        "depth",
        "nn",
        "k_used",
        "residual",
        "threshold",
    ])
    .map_err(csv_err(path))?;
    for leaf in leaves {
        w.write_record([
            fmt_f64(leaf.a),
            fmt_f64(leaf.b),
            leaf.depth.to_string(),
            leaf.nn.to_string(),
            leaf.fit.k_used.to_string(),
            fmt_f64(leaf.full_residual),
            fmt_f64(leaf.threshold),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

pub fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    out.write_all(b"\n")
        .and_then(|_| out.flush())
        .map_err(io_err(path))
}
