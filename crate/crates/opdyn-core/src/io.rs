//! Edge-list ingestion and the relabeling-map text format.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::Error;
use crate::graph::{CleanupStats, Graph};
use crate::Result;

/// How raw node ids are interpreted.
///
/// Ids are always compacted to `0..n`; the base only matters for validation
/// (`One` rejects a literal 0) and is auto-detected by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexBase {
    #[default]
    Auto,
    Zero,
    One,
}

#[derive(Debug, Clone)]
pub struct LoadReport {
    /// Sorted `(original id, compact id)` pairs.
    pub id_map: Vec<(u64, u32)>,
    pub cleanup: CleanupStats,
    pub detected_base: IndexBase,
}

/// Parses a whitespace-separated edge list: lines `u v [w]`, weight
/// defaulting to 1.0, `#`/`%` comment lines skipped. Duplicate undirected
/// edges keep the first weight; self-loops are dropped. Node ids may be
/// arbitrary non-negative integers and are compacted to `0..n` in sorted
/// order.
pub fn load_edge_list<P: AsRef<Path>>(path: P, base: IndexBase) -> Result<(Graph, LoadReport)> {
    let reader = BufReader::new(File::open(path)?);
    let mut raw_edges: Vec<(u64, u64, f64)> = Vec::new();
    let mut saw_zero = false;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let u = parse_id(tokens.next(), lineno)?;
        let v = parse_id(tokens.next(), lineno)?;
        let w = match tokens.next() {
            None => 1.0,
            Some(t) => t.parse::<f64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid weight '{t}'"),
            })?,
        };
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "expected 'u v [w]'".into(),
            });
        }
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::Validation(format!(
                "line {lineno}: non-positive weight {w}"
            )));
        }
        saw_zero |= u == 0 || v == 0;
        raw_edges.push((u, v, w));
    }

    let detected_base = match base {
        IndexBase::Auto => {
            if saw_zero {
                IndexBase::Zero
            } else {
                IndexBase::One
            }
        }
        b => b,
    };
    if detected_base == IndexBase::One && saw_zero {
        return Err(Error::Validation(
            "node id 0 present in a 1-indexed edge list".into(),
        ));
    }

    let mut ids = BTreeMap::new();
    for &(u, v, _) in &raw_edges {
        ids.entry(u).or_insert(0u32);
        ids.entry(v).or_insert(0u32);
    }
    for (next, (_, slot)) in ids.iter_mut().enumerate() {
        *slot = next as u32;
    }
    let n = ids.len();
    let compacted = raw_edges
        .iter()
        .map(|&(u, v, w)| (ids[&u] as usize, ids[&v] as usize, w));
    let (graph, cleanup) = Graph::from_edges(n, compacted)?;
    Ok((
        graph,
        LoadReport {
            id_map: ids.into_iter().collect(),
            cleanup,
            detected_base,
        },
    ))
}

fn parse_id(token: Option<&str>, line: usize) -> Result<u64> {
    let t = token.ok_or(Error::Parse {
        line,
        message: "expected 'u v [w]'".into(),
    })?;
    t.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("invalid node id '{t}'"),
    })
}

/// Writes a relabeling map as two-column text "old new", one pair per line.
pub fn write_relabel_map<W: Write>(mut out: W, map: &[Option<u32>]) -> Result<()> {
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            writeln!(out, "{old} {new}")?;
        }
    }
    Ok(())
}
