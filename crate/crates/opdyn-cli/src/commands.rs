use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use opdyn_core::graph::Graph;
use opdyn_core::opinions::{DistributionKind, DistributionSpec};
use opdyn_core::solver::DeltaMode;
use opdyn_core::{
    approxim, enumerate_rooted_forests, exact_quantities, forest_matrix_dense, generate_opinions,
    load_edge_list, ApproxOptions, Error, IndexBase, QuantityReport, Result,
};

use crate::OpinionArgs;

pub fn parse_index_base(s: &str) -> Result<IndexBase> {
    match s {
        "auto" => Ok(IndexBase::Auto),
        "0" => Ok(IndexBase::Zero),
        "1" => Ok(IndexBase::One),
        other => Err(Error::Validation(format!(
            "index base must be auto, 0, or 1; got '{other}'"
        ))),
    }
}

pub fn parse_delta_mode(s: &str) -> Result<DeltaMode> {
    match s {
        "theoretical-delta" | "theoretical" => Ok(DeltaMode::TheoreticalDelta),
        "practical-tolerance" | "practical" => Ok(DeltaMode::PracticalTolerance),
        other => Err(Error::Validation(format!(
            "delta mode must be theoretical-delta or practical-tolerance; got '{other}'"
        ))),
    }
}

/// Loads a graph and reduces it to its largest connected component.
pub fn load_lcc(path: &Path, index_base: &str) -> Result<Loaded> {
    let base = parse_index_base(index_base)?;
    let (raw, report) = load_edge_list(path, base)?;
    if report.cleanup.self_loops_dropped > 0 {
        eprintln!(
            "warning: dropped {} self-loop(s)",
            report.cleanup.self_loops_dropped
        );
    }
    if report.cleanup.duplicates_dropped > 0 {
        eprintln!(
            "warning: collapsed {} duplicate edge(s), keeping first weight",
            report.cleanup.duplicates_dropped
        );
    }
    let raw_n = raw.n();
    let (lcc, map) = raw.largest_connected_component()?;
    Ok(Loaded {
        lcc,
        map,
        raw_n,
        id_map: report.id_map,
    })
}

pub struct Loaded {
    pub lcc: Graph,
    /// Compacted raw index -> LCC index.
    pub map: Vec<Option<u32>>,
    pub raw_n: usize,
    /// Original external id -> compacted raw index.
    pub id_map: Vec<(u64, u32)>,
}

impl Loaded {
    /// Two-column "old new" rows from original external ids to LCC indices.
    pub fn relabel_rows(&self) -> Vec<(u64, u32)> {
        self.id_map
            .iter()
            .filter_map(|&(orig, compact)| {
                self.map[compact as usize].map(|new| (orig, new))
            })
            .collect()
    }
}

fn read_opinion_file(path: &Path) -> Result<Vec<f64>> {
    let reader = BufReader::new(File::open(path)?);
    let mut values = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        values.push(t.parse::<f64>().map_err(|_| Error::Parse {
            line: idx + 1,
            message: format!("invalid opinion value '{t}'"),
        })?);
    }
    Ok(values)
}

/// Resolves opinions against the LCC: a file may carry either one value per
/// LCC node or one per raw node (relabeled through the LCC map).
pub fn resolve_opinions(
    args: &OpinionArgs,
    lcc: &Graph,
    map: &[Option<u32>],
    raw_n: usize,
) -> Result<Vec<f64>> {
    if let Some(path) = &args.opinions {
        let values = read_opinion_file(path)?;
        if values.len() == lcc.n() {
            return Ok(values);
        }
        if values.len() == raw_n {
            let mut out = vec![0.0; lcc.n()];
            for (old, new) in map.iter().enumerate() {
                if let Some(new) = new {
                    out[*new as usize] = values[old];
                }
            }
            return Ok(out);
        }
        return Err(Error::DimensionMismatch {
            expected: lcc.n(),
            actual: values.len(),
        });
    }
    let kind: DistributionKind = args
        .distribution
        .as_deref()
        .ok_or_else(|| Error::Validation("provide --opinions or --distribution".into()))?
        .parse()?;
    let spec = DistributionSpec {
        kind,
        x_min: args.x_min,
        alpha: args.alpha,
        seed: args.seed,
    };
    generate_opinions(lcc.n(), &spec)
}

#[allow(clippy::too_many_arguments)]
pub fn compute(
    graph: &Path,
    index_base: &str,
    opinions: &OpinionArgs,
    method: &str,
    epsilon: f64,
    delta_mode: &str,
    max_iters: usize,
    format: &str,
    output: Option<&Path>,
    debug: bool,
) -> Result<()> {
    let total = Instant::now();
    let loaded = load_lcc(graph, index_base)?;
    let (lcc, map, raw_n) = (loaded.lcc, loaded.map, loaded.raw_n);
    let s = resolve_opinions(opinions, &lcc, &map, raw_n)?;

    let report: QuantityReport = match method {
        "exact" => {
            let rep = exact_quantities(&lcc, &s)?;
            if debug {
                let z = opdyn_core::exact::dense_equilibrium(&lcc, &s)?;
                for (i, zi) in z.iter().enumerate() {
                    eprintln!("z[{i}] {zi:.17e}");
                }
            }
            rep
        }
        "approx" => {
            let opts = ApproxOptions {
                epsilon,
                mode: parse_delta_mode(delta_mode)?,
                max_iterations: max_iters,
            };
            let rep = approxim(&lcc, &s, &opts)?;
            if debug {
                eprintln!(
                    "internal_conflict_centered {:.17e}",
                    rep.internal_conflict_centered
                );
                eprintln!(
                    "solve_residuals {:.3e} {:.3e}",
                    rep.solve_opinion.final_residual, rep.solve_centered.final_residual
                );
            }
            rep.to_quantity_report(&lcc)
        }
        other => {
            return Err(Error::Validation(format!(
                "method must be exact or approx; got '{other}'"
            )))
        }
    };

    let rendered = match format {
        "text" => report.to_string(),
        "json" => serde_json::to_string_pretty(&report)
            .map_err(|e| Error::Validation(e.to_string()))?
            + "\n",
        other => {
            return Err(Error::Validation(format!(
                "format must be text or json; got '{other}'"
            )))
        }
    };
    print!("{rendered}");
    eprintln!("total_wall_secs {:.6}", total.elapsed().as_secs_f64());
    if let Some(path) = output {
        let mut f = BufWriter::new(File::create(path)?);
        f.write_all(rendered.as_bytes())?;
    }
    Ok(())
}

pub fn lcc(graph: &Path, index_base: &str, output: &Path, map_out: Option<&Path>) -> Result<()> {
    let loaded = load_lcc(graph, index_base)?;
    let mut f = BufWriter::new(File::create(output)?);
    for &(u, v, w) in loaded.lcc.edges() {
        if w == 1.0 {
            writeln!(f, "{u} {v}")?;
        } else {
            writeln!(f, "{u} {v} {w}")?;
        }
    }
    if let Some(path) = map_out {
        let mut f = BufWriter::new(File::create(path)?);
        for (old, new) in loaded.relabel_rows() {
            writeln!(f, "{old} {new}")?;
        }
    }
    eprintln!(
        "lcc: {} of {} nodes, {} edges",
        loaded.lcc.n(),
        loaded.raw_n,
        loaded.lcc.m()
    );
    Ok(())
}

pub fn gen_opinions(
    n: usize,
    distribution: &str,
    seed: u64,
    x_min: f64,
    alpha: f64,
    output: Option<&Path>,
) -> Result<()> {
    let kind: DistributionKind = distribution.parse()?;
    let spec = DistributionSpec {
        kind,
        x_min,
        alpha,
        seed,
    };
    let values = generate_opinions(n, &spec)?;
    let mut rendered = format!(
        "# kind={} x_min={} alpha={} seed={} n={}\n",
        kind, spec.x_min, spec.alpha, spec.seed, n
    );
    for v in &values {
        rendered.push_str(&format!("{v:.17e}\n"));
    }
    match output {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            f.write_all(rendered.as_bytes())?;
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

/// Random small graphs: the forest-matrix entries must match the census
/// ratios entrywise. Uses `sample_unnormalized` for weights so the check
/// covers non-unit weights too.
pub fn oracle(max_n: usize, trials: usize, seed: u64) -> Result<()> {
    use opdyn_core::synth::random_connected_graph;
    let mut worst = 0.0f64;
    for t in 0..trials {
        let n = 2 + (t % (max_n - 1));
        let weighted = t % 2 == 1;
        let g = random_connected_graph(
            n,
            n / 2 + t % 3,
            weighted.then_some((0.25, 4.0)),
            seed.wrapping_add(t as u64),
        );
        let census = enumerate_rooted_forests(&g)?;
        let fm = forest_matrix_dense(&g)?;
        for i in 0..n {
            for j in 0..n {
                let combinatorial = census.rooted_pair_weight[i][j] / census.total_weight;
                let algebraic = fm.omega[(i, j)];
                let rel = (combinatorial - algebraic).abs() / algebraic.abs();
                worst = worst.max(rel);
                if rel > 1e-9 {
                    return Err(Error::Validation(format!(
                        "oracle mismatch on trial {t}: omega[{i}][{j}] {algebraic} vs census {combinatorial}"
                    )));
                }
            }
        }
    }
    println!(
        "oracle: {trials} instances up to n = {max_n} agree (worst relative deviation {worst:.3e})"
    );
    Ok(())
}
