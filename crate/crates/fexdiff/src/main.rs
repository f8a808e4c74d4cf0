use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fexdiff::bench::{run_benchmark_to_dir, BenchSpec, DerivativeOutput};
use fexdiff::cache::{load_or_build, save, CacheStatus};
use fexdiff::core::baseline::{m2_derivative, m2_fit, M2Config, M2Design, UnreachableDiscrepancy};
use fexdiff::core::{
    reconstruct_derivative_order, reconstruct_function, PartitionOptions, Partitioner,
    PrecomputedOperators, SignalRecord, SpectralConfig,
};
use fexdiff::functions::TestFunction;
use fexdiff::io::{read_samples, write_columns, write_json, write_trace};
use fexdiff::manifest::RunManifest;
use fexdiff::method::Method;
use fexdiff::plotdata::emit_plotdata;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "fexdiff",
    version,
    about = "Numerical differentiation of noisy samples by adaptive Fourier extension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// Highest frequency of the local series.
    #[arg(long, default_value_t = 9)]
    n: usize,
    /// Oversampling ratio.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Extension ratio.
    #[arg(long = "T", default_value_t = 6.0)]
    t: f64,
    /// Maximum bisection depth.
    #[arg(long, default_value_t = 6)]
    r: u32,
    /// Acceptance relaxation.
    #[arg(long, default_value_t = 2.0)]
    rho: f64,
    /// Operator cache; loaded when it matches the configuration, rewritten otherwise.
    #[arg(long)]
    cache: Option<PathBuf>,
}

impl ConfigArgs {
    fn config(&self) -> Result<SpectralConfig> {
        Ok(SpectralConfig::new(
            self.n, self.gamma, self.t, self.r, self.rho,
        )?)
    }

    fn operators(&self, cfg: &SpectralConfig) -> Result<PrecomputedOperators> {
        match &self.cache {
            Some(path) => {
                let (ops, status) = load_or_build(path, cfg)?;
                if status == CacheStatus::Rebuilt {
                    eprintln!("operator cache {} rebuilt", path.display());
                }
                Ok(ops)
            }
            None => Ok(PrecomputedOperators::build(cfg)?),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Differentiate samples read from a CSV file.
    Differentiate {
        /// CSV with header `x,y` or `y`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        /// Noise bound of the samples.
        #[arg(long)]
        delta1: f64,
        #[arg(long, default_value = "m1")]
        method: Method,
        /// Derivative order (m1 only beyond 1).
        #[arg(long, default_value_t = 1)]
        order: u32,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Sweep the test functions over noise levels and seeds.
    Benchmark {
        #[arg(long, value_delimiter = ',', default_value = "f1,f2,f3,f4,f5,f6")]
        functions: Vec<TestFunction>,
        #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-3,1e-4,1e-5")]
        deltas: Vec<f64>,
        /// Number of seeds, run as 1..=K.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, value_delimiter = ',', default_value = "m1,m2")]
        methods: Vec<Method>,
        #[arg(long)]
        outdir: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        derivatives: DerivativeOutput,
        /// Skip the panel TSV files.
        #[arg(long)]
        no_plotdata: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Build the operators and write them to a cache file.
    Precompute {
        #[arg(long)]
        cache: PathBuf,
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long = "T", default_value_t = 6.0)]
        t: f64,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Differentiate {
            input,
            a,
            b,
            delta1,
            method,
            order,
            out,
            config,
        } => differentiate(&input, a, b, delta1, method, order, &out, &config),
        Command::Benchmark {
            functions,
            deltas,
            seeds,
            methods,
            outdir,
            derivatives,
            no_plotdata,
            config,
        } => benchmark(
            functions,
            deltas,
            seeds,
            methods,
            &outdir,
            derivatives,
            !no_plotdata,
            &config,
        ),
        Command::Precompute { cache, n, gamma, t } => {
            let cfg = SpectralConfig::new(n, gamma, t, 0, 2.0)?;
            let ops = PrecomputedOperators::build(&cfg)?;
            save(&cache, &ops)?;
            eprintln!("wrote {} (m = {}, L = {})", cache.display(), cfg.m, cfg.l);
            Ok(())
        }
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

#[allow(clippy::too_many_arguments)]
fn differentiate(
    input: &Path,
    a: Option<f64>,
    b: Option<f64>,
    delta1: f64,
    method: Method,
    order: u32,
    out: &Path,
    args: &ConfigArgs,
) -> Result<()> {
    if !(delta1 >= 0.0 && delta1.is_finite()) {
        bail!("--delta1 must be a finite nonnegative number");
    }
    let cfg = args.config()?;
    let samples = read_samples(input, a, b, &cfg)?;
    let x = cfg.grid(samples.a, samples.b);
    let opts = PartitionOptions::default();
    let m2cfg = M2Config::default();
    let trace = out.with_extension("trace.csv");
    match method {
        Method::M1 => {
            let ops = args.operators(&cfg)?;
            let signal = SignalRecord::new(samples.a, samples.b, samples.y, delta1)?;
            let part = Partitioner::partition(&signal, &ops, &opts)?;
            let deriv = reconstruct_derivative_order(&part, &ops, order)?;
            let denoised = reconstruct_function(&part, &ops)?;
            write_columns(
                out,
                &[
                    ("x", &x),
                    ("dfdx", &deriv.dvalues),
                    ("f_denoised", &denoised),
                ],
            )?;
            write_trace(&trace, &part.leaves)?;
        }
        Method::M2 => {
            if order != 1 {
                bail!("m2 only provides the first derivative");
            }
            if delta1 == 0.0 {
                bail!("m2 needs a positive --delta1 for the discrepancy principle");
            }
            let design = M2Design::new(&m2cfg, samples.y.len(), samples.a, samples.b)?;
            let delta = delta1 * (samples.y.len() as f64 / 3.0).sqrt();
            let fit = m2_fit(&design, &samples.y, delta)?;
            let deriv = m2_derivative(&fit, &design)?;
            write_columns(out, &[("x", &x), ("dfdx", &deriv)])?;
        }
    }
    let manifest = RunManifest::new(
        "differentiate",
        &cfg,
        &m2cfg,
        opts.floor_scale,
        [samples.a, samples.b],
        json!({
            "input": input,
            "out": out,
            "trace": (method == Method::M1).then_some(&trace),
            "delta1": delta1,
            "method": method,
            "order": order,
        }),
    );
    write_json(&manifest_path(out), &manifest)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn benchmark(
    functions: Vec<TestFunction>,
    deltas: Vec<f64>,
    seeds: u64,
    methods: Vec<Method>,
    outdir: &Path,
    derivatives: DerivativeOutput,
    plotdata: bool,
    args: &ConfigArgs,
) -> Result<()> {
    let cfg = args.config()?;
    let spec = BenchSpec {
        functions,
        methods,
        deltas,
        seeds: (1..=seeds).collect(),
        config: cfg,
        derivatives,
        ..BenchSpec::default()
    };
    debug_assert_eq!(spec.m2.unreachable, UnreachableDiscrepancy::UseAlphaLo);
    let ops = args.operators(&cfg)?;
    let outcome = run_benchmark_to_dir(&spec, &ops, outdir).context("benchmark failed")?;
    if plotdata {
        emit_plotdata(&outcome, &outdir.join("plotdata"))?;
    }
    let manifest = RunManifest::new(
        "benchmark",
        &cfg,
        &spec.m2,
        spec.partition.floor_scale,
        [spec.a, spec.b],
        json!({
            "functions": spec.functions,
            "methods": spec.methods,
            "deltas": spec.deltas,
            "seeds": spec.seeds,
            "derivatives": spec.derivatives,
            "noise": "uniform on [-delta1, delta1], ChaCha8 seeded per seed",
        }),
    );
    write_json(&outdir.join("manifest.json"), &manifest)?;
    for ((f, method, _), (delta1, med)) in outcome.medians() {
        println!("{f}\t{method}\t{delta1:e}\t{med:.3e}");
    }
    Ok(())
}
