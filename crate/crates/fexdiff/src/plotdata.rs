//! Tab-separated plot data for the figure panels of a sweep.
//!
//! * `panel_b_<f>.tsv`: median RE against `delta1`, one row per method and level.
//! * `panel_c_<f>_d<delta1>.tsv`: exact derivative next to each method's estimate.
//! * `panel_d_<f>_<method>_d<delta1>.tsv`: pointwise error rows followed by
//!   one `boundary` row per interior leaf boundary.
//!
//! Panels c and d use the first seed of each cell.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::bench::BenchOutcome;
use crate::error::{io_err, Error, Result};
use crate::io::fmt_f64;

/// Writes all panels and returns the created paths in write order.
pub fn emit_plotdata(outcome: &BenchOutcome, outdir: &Path) -> Result<Vec<PathBuf>> {
    if outcome.records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    fs::create_dir_all(outdir).map_err(io_err(outdir))?;
    let mut written = Vec::new();
    let mut emit = |name: String, body: String| -> Result<()> {
        let path = outdir.join(name);
        fs::write(&path, body).map_err(io_err(&path))?;
        written.push(path);
        Ok(())
    };

    let mut panel_b: BTreeMap<_, String> = BTreeMap::new();
    for ((f, method, _), (delta1, med)) in outcome.medians() {
        let seeds = outcome
            .records
            .iter()
            .filter(|r| r.function == f && r.method == method && r.delta1 == delta1)
            .count();
        let body = panel_b
            .entry(f)
            .or_insert_with(|| "method\tdelta1\tmedian_re\tseeds\n".to_string());
        let _ = writeln!(
            body,
            "{method}\t{}\t{}\t{seeds}",
            fmt_f64(delta1),
            fmt_f64(med)
        );
    }
    for (f, body) in panel_b {
        emit(format!("panel_b_{f}.tsv"), body)?;
    }

    let mut panel_c: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for c in &outcome.curves {
        panel_c
            .entry((c.function, c.delta1.to_bits()))
            .or_default()
            .push(c);
    }
    for ((f, _), curves) in &panel_c {
        let mut body = String::from("x\texact");
        for c in curves {
            let _ = write!(body, "\t{}", c.method);
        }
        body.push('\n');
        for (i, x) in outcome.x.iter().enumerate() {
            let _ = write!(body, "{}\t{}", fmt_f64(*x), fmt_f64(curves[0].exact[i]));
            for c in curves {
                let _ = write!(body, "\t{}", fmt_f64(c.dfdx[i]));
            }
            body.push('\n');
        }
        emit(format!("panel_c_{f}_d{:e}.tsv", curves[0].delta1), body)?;
    }

    for c in &outcome.curves {
        let mut body = String::from("kind\tx\tvalue\n");
        for ((x, d), e) in outcome.x.iter().zip(&c.dfdx).zip(&c.exact) {
            let _ = writeln!(body, "error\t{}\t{}", fmt_f64(*x), fmt_f64((d - e).abs()));
        }
        for x in &c.boundaries {
            let _ = writeln!(body, "boundary\t{}\t", fmt_f64(*x));
        }
        emit(
            format!("panel_d_{}_{}_d{:e}.tsv", c.function, c.method, c.delta1),
            body,
        )?;
    }
    Ok(written)
}
