//! Noise-level sweeps of both methods over the test functions.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use fexdiff_core::baseline::{M2Config, M2Design, UnreachableDiscrepancy};
use fexdiff_core::{PartitionOptions, PrecomputedOperators, SignalRecord, SpectralConfig};
use serde::{Deserialize, Serialize};

use crate::error::{csv_err, io_err, Error, Result};
use crate::functions::TestFunction;
use crate::io::{fmt_f64, write_columns, write_trace};
use crate::method::{run_m1, run_m2, Method};
use crate::metrics::{median, relative_error};
use crate::noise::add_noise;

/// Which cells get a derivative CSV and partition trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeOutput {
    All,
    FirstSeed,
    None,
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub functions: Vec<TestFunction>,
    pub methods: Vec<Method>,
    pub deltas: Vec<f64>,
    pub seeds: Vec<u64>,
    pub a: f64,
    pub b: f64,
    pub config: SpectralConfig,
    pub m2: M2Config,
    pub partition: PartitionOptions,
    pub derivatives: DerivativeOutput,
}

/// Both methods on all six functions at `delta1 = 1e-2..=1e-5`.
/// Seeds `1..=10` on `[-1, 1]` with `n = 9, gamma = 1, T = 6, r = 6, rho = 2`.
impl Default for BenchSpec {
    fn default() -> Self {
        Self {
            functions: TestFunction::ALL.to_vec(),
            methods: vec![Method::M1, Method::M2],
            deltas: vec![1e-2, 1e-3, 1e-4, 1e-5],
            seeds: (1..=10).collect(),
            a: -1.0,
            b: 1.0,
            config: SpectralConfig::new(9, 1.0, 6.0, 6, 2.0).expect("default config is valid"),
            m2: M2Config {
                unreachable: UnreachableDiscrepancy::UseAlphaLo,
                ..M2Config::default()
            },
            partition: PartitionOptions::default(),
            derivatives: DerivativeOutput::All,
        }
    }
}

impl BenchSpec {
    fn validate(&self) -> Result<()> {
        if self.functions.is_empty()
            || self.methods.is_empty()
            || self.deltas.is_empty()
            || self.seeds.is_empty()
        {
            return Err(Error::Invalid(
                "benchmark needs at least one function, method, noise level and seed".into(),
            ));
        }
        if let Some(d) = self.deltas.iter().find(|d| !(**d > 0.0 && d.is_finite())) {
            return Err(Error::Invalid(format!("noise level {d} must be positive")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub function: TestFunction,
    pub method: Method,
    pub delta1: f64,
    pub seed: u64,
    pub re: f64,
    pub leaf_count: Option<usize>,
    pub max_depth: Option<u32>,
    pub alpha: Option<f64>,
    pub alpha_clamped: Option<bool>,
    pub wall_time_ms: f64,
}

/// Derivative of one cell kept for plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct CellCurve {
    pub function: TestFunction,
    pub method: Method,
    pub delta1: f64,
    pub seed: u64,
    pub dfdx: Vec<f64>,
    pub exact: Vec<f64>,
    /// Interior leaf boundaries, M1 only.
    pub boundaries: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutcome {
    pub x: Vec<f64>,
    pub records: Vec<BenchRecord>,
    /// First seed of every `(function, method, delta1)`.
    pub curves: Vec<CellCurve>,
}

impl BenchOutcome {
    /// Median RE over seeds per `(function, method, delta1)`.
    pub fn medians(&self) -> BTreeMap<(TestFunction, Method, u64), (f64, f64)> {
        let mut groups: BTreeMap<(TestFunction, Method, u64), (f64, Vec<f64>)> = BTreeMap::new();
        for r in &self.records {
            groups
                .entry((r.function, r.method, r.delta1.to_bits()))
                .or_insert((r.delta1, Vec::new()))
                .1
                .push(r.re);
        }
        groups
            .into_iter()
            .map(|(k, (d, v))| (k, (d, median(&v))))
            .collect()
    }

    pub fn median_re(&self, f: TestFunction, method: Method, delta1: f64) -> Option<f64> {
        self.medians()
            .get(&(f, method, delta1.to_bits()))
            .map(|v| v.1)
    }
}

/// Runs every cell with the function outermost and the method innermost.
///
/// All methods in a cell see the same noisy samples; the noise stream depends
/// on the seed alone.
pub fn run_benchmark(spec: &BenchSpec, ops: &PrecomputedOperators) -> Result<BenchOutcome> {
    run_benchmark_with(spec, ops, |_, _| Ok(()))
}

/// [`run_benchmark`] with a per-cell callback receiving the record and full output.
pub fn run_benchmark_with(
    spec: &BenchSpec,
    ops: &PrecomputedOperators,
    mut on_cell: impl FnMut(&BenchRecord, &CellOutput) -> Result<()>,
) -> Result<BenchOutcome> {
    spec.validate()?;
    if ops.config() != &spec.config {
        return Err(Error::Invalid(
            "operators were built for a different configuration".into(),
        ));
    }
    let big_m = spec.config.big_m;
    let x = spec.config.grid(spec.a, spec.b);
    let design = if spec.methods.contains(&Method::M2) {
        Some(M2Design::new(&spec.m2, big_m, spec.a, spec.b)?)
    } else {
        None
    };

    let mut records = Vec::new();
    let mut curves = Vec::new();
    for &f in &spec.functions {
        let clean = f.sample(&x);
        let exact = f.sample_deriv(&x);
        for &delta1 in &spec.deltas {
            for (si, &seed) in spec.seeds.iter().enumerate() {
                let noisy = add_noise(&clean, delta1, seed);
                for &method in &spec.methods {
                    let start = Instant::now();
                    let out = match method {
                        Method::M1 => {
                            let signal = SignalRecord::new(spec.a, spec.b, noisy.clone(), delta1)?;
                            run_m1(&signal, ops, &spec.partition)?
                        }
                        Method::M2 => run_m2(
                            &noisy,
                            delta1,
                            design.as_ref().expect("built when m2 requested"),
                        )?,
                    };
                    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
                    let re = relative_error(&out.dvalues, &exact)?;
                    let is_m1 = method == Method::M1;
                    let record = BenchRecord {
                        function: f,
                        method,
                        delta1,
                        seed,
                        re,
                        leaf_count: is_m1.then_some(out.leaves.len()),
                        max_depth: is_m1
                            .then(|| out.leaves.iter().map(|l| l.depth).max().unwrap_or(0)),
                        alpha: out.alpha,
                        alpha_clamped: (!is_m1).then_some(out.alpha_clamped),
                        wall_time_ms,
                    };
                    let cell = CellOutput {
                        x: &x,
                        exact: &exact,
                        output: &out,
                        first_seed: si == 0,
                    };
                    on_cell(&record, &cell)?;
                    if si == 0 {
                        curves.push(CellCurve {
                            function: f,
                            method,
                            delta1,
                            seed,
                            dfdx: out.dvalues.clone(),
                            exact: exact.clone(),
                            boundaries: out.leaves.iter().skip(1).map(|l| l.a).collect(),
                        });
                    }
                    records.push(record);
                }
            }
        }
    }
    Ok(BenchOutcome { x, records, curves })
}

/// Everything one cell produced, borrowed for the duration of the callback.
pub struct CellOutput<'a> {
    pub x: &'a [f64],
    pub exact: &'a [f64],
    pub output: &'a crate::method::MethodOutput,
    pub first_seed: bool,
}

pub fn cell_stem(record: &BenchRecord) -> String {
    format!(
        "{}_{}_d{:e}_s{}",
        record.function, record.method, record.delta1, record.seed
    )
}

/// Runs the sweep and writes `summary.csv`, `timings.csv`, and per-cell
/// `derivatives/*.csv` and `traces/*.csv` under `outdir`.
///
/// `summary.csv` holds only seed-determined values, so repeated runs give
/// identical bytes; wall times go to `timings.csv`.
pub fn run_benchmark_to_dir(
    spec: &BenchSpec,
    ops: &PrecomputedOperators,
    outdir: &Path,
) -> Result<BenchOutcome> {
    let deriv_dir = outdir.join("derivatives");
    let trace_dir = outdir.join("traces");
    for dir in [outdir, &deriv_dir, &trace_dir] {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let outcome = run_benchmark_with(spec, ops, |record, cell| {
        let wanted = match spec.derivatives {
            DerivativeOutput::All => true,
            DerivativeOutput::FirstSeed => cell.first_seed,
            DerivativeOutput::None => false,
        };
        if !wanted {
            return Ok(());
        }
        let stem = cell_stem(record);
        let error: Vec<f64> = cell
            .output
            .dvalues
            .iter()
            .zip(cell.exact)
            .map(|(d, e)| d - e)
            .collect();
        write_columns(
            &deriv_dir.join(format!("{stem}.csv")),
            &[
                ("x", cell.x),
                ("dfdx", &cell.output.dvalues),
                ("exact", cell.exact),
                ("error", &error),
            ],
        )?;
        if record.method == Method::M1 {
            write_trace(&trace_dir.join(format!("{stem}.csv")), &cell.output.leaves)?;
        }
        Ok(())
    })?;
    write_summary(&outdir.join("summary.csv"), &outcome.records)?;
    write_timings(&outdir.join("timings.csv"), &outcome.records)?;
    Ok(outcome)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_summary(path: &Path, records: &[BenchRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record([
        "function",
        "method",
        "delta1",
        "seed",
        "re",
        "leaf_count",
        "max_depth",
        "alpha",
        "alpha_clamped",
    ])
    .map_err(csv_err(path))?;
    for r in records {
        w.write_record([
            r.function.to_string(),
            r.method.to_string(),
            fmt_f64(r.delta1),
            r.seed.to_string(),
            fmt_f64(r.re),
            opt(r.leaf_count),
            opt(r.max_depth),
            r.alpha.map(fmt_f64).unwrap_or_default(),
            opt(r.alpha_clamped),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

fn write_timings(path: &Path, records: &[BenchRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(["function", "method", "delta1", "seed", "wall_time_ms"])
        .map_err(csv_err(path))?;
    for r in records {
        w.write_record([
            r.function.to_string(),
            r.method.to_string(),
            fmt_f64(r.delta1),
            r.seed.to_string(),
            format!("{:.3}", r.wall_time_ms),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}
