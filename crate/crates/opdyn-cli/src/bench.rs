//! Timing / relative-error harness: approx always, exact when the LCC fits
//! under the cutoff, relative errors when both are present.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use opdyn_core::opinions::{DistributionKind, DistributionSpec};
use opdyn_core::{approxim, exact_quantities, ApproxOptions, Error, Result};

use crate::commands::{load_lcc, parse_delta_mode};

/// One (graph, distribution) cell of the benchmark table.
///
/// JSON field order is fixed by declaration order; times are seconds of the
/// quantity computation only (loading and LCC extraction excluded).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub network: String,
    pub n: usize,
    pub m: usize,
    pub distribution: String,
    pub method: String,
    pub status: String,
    pub wall_time_secs: Option<f64>,
    pub internal_conflict: Option<f64>,
    pub disagreement: Option<f64>,
    pub polarization: Option<f64>,
    pub controversy: Option<f64>,
    pub dc_index: Option<f64>,
    /// Relative errors vs the exact row, in the order above (approx rows only).
    pub relative_errors: Option<[f64; 5]>,
}

impl BenchmarkRow {
    fn failed(network: &str, distribution: &str, method: &str, err: &Error) -> Self {
        BenchmarkRow {
            network: network.into(),
            n: 0,
            m: 0,
            distribution: distribution.into(),
            method: method.into(),
            status: format!("failed: {err}"),
            wall_time_secs: None,
            internal_conflict: None,
            disagreement: None,
            polarization: None,
            controversy: None,
            dc_index: None,
            relative_errors: None,
        }
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.6e}"),
        None => "---".into(),
    }
}

fn print_row(row: &BenchmarkRow) {
    println!(
        "{:<20} {:>8} {:>9} {:<12} {:<7} {:>10} {:>13} {:>13} {:>13} {:>13} {:>13}  {}",
        row.network,
        row.n,
        row.m,
        row.distribution,
        row.method,
        match row.wall_time_secs {
            Some(t) => format!("{t:.3}"),
            None => "---".into(),
        },
        fmt_opt(row.internal_conflict),
        fmt_opt(row.disagreement),
        fmt_opt(row.polarization),
        fmt_opt(row.controversy),
        fmt_opt(row.dc_index),
        match &row.relative_errors {
            Some(errs) => errs
                .iter()
                .map(|e| format!("{e:.2e}"))
                .collect::<Vec<_>>()
                .join(","),
            None => String::new(),
        }
    );
}

pub fn run(
    graphs: &[std::path::PathBuf],
    distributions: &str,
    epsilon: f64,
    exact_cutoff: usize,
    seed: u64,
    delta_mode: &str,
    output: Option<&Path>,
) -> Result<()> {
    let mode = parse_delta_mode(delta_mode)?;
    let kinds: Vec<DistributionKind> = distributions
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_>>()?;

    let mut rows: Vec<BenchmarkRow> = Vec::new();
    println!(
        "{:<20} {:>8} {:>9} {:<12} {:<7} {:>10} {:>13} {:>13} {:>13} {:>13} {:>13}  \
         rel_err(C_I,D,P,C,I_dc)",
        "network", "n'", "m'", "distribution", "method", "time_s", "C_I", "D", "P", "C", "I_dc",
    );

    for path in graphs {
        let network = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let lcc = match load_lcc(path, "auto") {
            Ok(v) => v.lcc,
            Err(err) => {
                // per-graph failures isolate: emit failed rows, keep going
                for kind in &kinds {
                    let row =
                        BenchmarkRow::failed(&network, &kind.to_string(), "approx", &err);
                    print_row(&row);
                    rows.push(row);
                }
                continue;
            }
        };

        for kind in &kinds {
            let spec = DistributionSpec {
                kind: *kind,
                x_min: 1.0,
                alpha: 2.5,
                seed,
            };
            let s = match opdyn_core::generate_opinions(lcc.n(), &spec) {
                Ok(s) => s,
                Err(err) => {
                    let row =
                        BenchmarkRow::failed(&network, &kind.to_string(), "approx", &err);
                    print_row(&row);
                    rows.push(row);
                    continue;
                }
            };

            let exact_row = if lcc.n() <= exact_cutoff {
                match exact_quantities(&lcc, &s) {
                    Ok(rep) => Some(rep),
                    Err(err) => {
                        let row =
                            BenchmarkRow::failed(&network, &kind.to_string(), "exact", &err);
                        print_row(&row);
                        rows.push(row);
                        None
                    }
                }
            } else {
                None
            };
            if let Some(rep) = &exact_row {
                let row = BenchmarkRow {
                    network: network.clone(),
                    n: lcc.n(),
                    m: lcc.m(),
                    distribution: kind.to_string(),
                    method: "exact".into(),
                    status: "ok".into(),
                    wall_time_secs: Some(rep.wall_time_secs),
                    internal_conflict: Some(rep.internal_conflict),
                    disagreement: Some(rep.disagreement),
                    polarization: Some(rep.polarization),
                    controversy: Some(rep.controversy),
                    dc_index: Some(rep.dc_index),
                    relative_errors: None,
                };
                print_row(&row);
                rows.push(row);
            }

            let opts = ApproxOptions {
                epsilon,
                mode,
                max_iterations: 10_000,
            };
            let started = Instant::now();
            match approxim(&lcc, &s, &opts) {
                Ok(rep) => {
                    let elapsed = started.elapsed().as_secs_f64();
                    let relative_errors = exact_row.as_ref().map(|ex| {
                        let rel = |exact: f64, approx: f64| {
                            if exact == 0.0 {
                                (approx - exact).abs()
                            } else {
                                (approx - exact).abs() / exact.abs()
                            }
                        };
                        [
                            rel(ex.internal_conflict, rep.internal_conflict),
                            rel(ex.disagreement, rep.disagreement),
                            rel(ex.polarization, rep.polarization),
                            rel(ex.controversy, rep.controversy),
                            rel(ex.dc_index, rep.dc_index),
                        ]
                    });
                    let row = BenchmarkRow {
                        network: network.clone(),
                        n: lcc.n(),
                        m: lcc.m(),
                        distribution: kind.to_string(),
                        method: "approx".into(),
                        status: "ok".into(),
                        wall_time_secs: Some(elapsed),
                        internal_conflict: Some(rep.internal_conflict),
                        disagreement: Some(rep.disagreement),
                        polarization: Some(rep.polarization),
                        controversy: Some(rep.controversy),
                        dc_index: Some(rep.dc_index),
                        relative_errors,
                    };
                    print_row(&row);
                    rows.push(row);
                }
                Err(err) => {
                    let row =
                        BenchmarkRow::failed(&network, &kind.to_string(), "approx", &err);
                    print_row(&row);
                    rows.push(row);
                }
            }
        }
    }

    if let Some(path) = output {
        let mut f = BufWriter::new(File::create(path)?);
        for row in &rows {
            let line =
                serde_json::to_string(row).map_err(|e| Error::Validation(e.to_string()))?;
            writeln!(f, "{line}")?;
        }
    }
    Ok(())
}
