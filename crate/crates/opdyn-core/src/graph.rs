//! Weighted undirected simple graph in compressed sparse adjacency form.
//!
//! The Laplacian `L = D - A` and the weighted incidence map `W^{1/2} B` are
//! never materialized; both are applied as streaming kernels over the
//! adjacency and edge arrays.

use std::collections::HashSet;

use crate::error::Error;
use crate::Result;

/// Immutable weighted undirected simple graph.
///
/// Edges are stored once with `u < v`; the adjacency arrays hold both
/// directions. All weights are strictly positive.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32, f64)>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    nbr_weights: Vec<f64>,
    degrees: Vec<f64>,
    w_min: f64,
    w_max: f64,
}

/// What was dropped while making the input simple.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CleanupStats {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

impl Graph {
    /// Builds a simple graph from raw edges on nodes `0..n`.
    ///
    /// Self-loops are dropped and duplicate undirected edges keep the first
    /// weight seen; both are counted in the returned [`CleanupStats`].
    pub fn from_edges<I>(n: usize, raw: I) -> Result<(Self, CleanupStats)>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut stats = CleanupStats::default();
        let mut seen = HashSet::new();
        let mut edges: Vec<(u32, u32, f64)> = Vec::new();
        for (u, v, w) in raw {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) has non-positive weight {w}"
                )));
            }
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if !seen.insert((a, b)) {
                stats.duplicates_dropped += 1;
                continue;
            }
            edges.push((a as u32, b as u32, w));
        }
        edges.sort_unstable_by_key(|e| (e.0, e.1));

        let mut deg_count = vec![0usize; n];
        for &(u, v, _) in &edges {
            deg_count[u as usize] += 1;
            deg_count[v as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + deg_count[i];
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0u32; 2 * edges.len()];
        let mut nbr_weights = vec![0.0f64; 2 * edges.len()];
        for &(u, v, w) in &edges {
            neighbors[cursor[u as usize]] = v;
            nbr_weights[cursor[u as usize]] = w;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            nbr_weights[cursor[v as usize]] = w;
            cursor[v as usize] += 1;
        }
        let mut degrees = vec![0.0f64; n];
        for i in 0..n {
            degrees[i] = nbr_weights[offsets[i]..offsets[i + 1]].iter().sum();
        }
        let (mut w_min, mut w_max) = (f64::INFINITY, 0.0f64);
        for &(_, _, w) in &edges {
            w_min = w_min.min(w);
            w_max = w_max.max(w);
        }
        if edges.is_empty() {
            // extremes default to 1 so the spectral bounds stay finite
            w_min = 1.0;
            w_max = 1.0;
        }
        Ok((
            Graph {
                n,
                edges,
                offsets,
                neighbors,
                nbr_weights,
                degrees,
                w_min,
                w_max,
            },
            stats,
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn w_min(&self) -> f64 {
        self.w_min
    }

    pub fn w_max(&self) -> f64 {
        self.w_max
    }

    /// Weighted degree of node `i`.
    pub fn degree(&self, i: usize) -> f64 {
        self.degrees[i]
    }

    /// Edges as `(u, v, w)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(u32, u32, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[i]..self.offsets[i + 1];
        self.neighbors[range.clone()]
            .iter()
            .zip(&self.nbr_weights[range])
            .map(|(&j, &w)| (j as usize, w))
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// Applies the Laplacian: `(Lx)_i = d_i x_i - sum_{j ~ i} w_ij x_j`.
    pub fn laplacian_apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let mut out = vec![0.0; self.n];
        for i in 0..self.n {
            let mut acc = self.degrees[i] * x[i];
            for k in self.offsets[i]..self.offsets[i + 1] {
                acc -= self.nbr_weights[k] * x[self.neighbors[k] as usize];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Applies `W^{1/2} B`: one value per edge, `sqrt(w) * (x_head - x_tail)`
    /// with head = smaller node id. Satisfies `||W^{1/2} B x||^2 = x^T L x`.
    pub fn incidence_weighted_apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        Ok(self
            .edges
            .iter()
            .map(|&(u, v, w)| w.sqrt() * (x[u as usize] - x[v as usize]))
            .collect())
    }

    /// `x^T L x` accumulated over edges; exact up to rounding and never negative.
    pub fn laplacian_quadratic_form(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        Ok(self
            .edges
            .iter()
            .map(|&(u, v, w)| {
                let d = x[u as usize] - x[v as usize];
                w * d * d
            })
            .sum())
    }

    /// Rigorous upper bound on the largest Laplacian eigenvalue.
    ///
    /// Both `n * w_max` and the Gershgorin bound `2 * d_max` are valid upper
    /// bounds for the spectrum of `L`; the minimum of the two is used so the
    /// derived solver tolerances stay implementable on large sparse graphs.
    pub fn lambda_max_bound(&self) -> f64 {
        let d_max = self.degrees.iter().cloned().fold(0.0f64, f64::max);
        (self.n as f64 * self.w_max).min(2.0 * d_max)
    }

    /// Component label per node, labels ordered by first occurrence.
    fn components(&self) -> (usize, Vec<u32>) {
        let mut label = vec![u32::MAX; self.n];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(i) = stack.pop() {
                for (j, _) in self.neighbors(i) {
                    if label[j] == u32::MAX {
                        label[j] = count;
                        stack.push(j);
                    }
                }
            }
            count += 1;
        }
        (count as usize, label)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().0 == 1
    }

    /// Induced subgraph on the largest connected component, nodes relabeled
    /// `0..n'` in increasing old-id order. Returns the old-to-new id map.
    ///
    /// Ties between equal-size components break toward the component holding
    /// the smallest node id, so the result is deterministic.
    pub fn largest_connected_component(&self) -> Result<(Graph, Vec<Option<u32>>)> {
        if self.n == 0 {
            return Err(Error::Validation("empty graph".into()));
        }
        let (count, label) = self.components();
        let mut sizes = vec![0usize; count];
        for &c in &label {
            sizes[c as usize] += 1;
        }
        // first occurrence order means the earliest label wins ties
        let best = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap() as u32;
        let mut map = vec![None; self.n];
        let mut next = 0u32;
        for i in 0..self.n {
            if label[i] == best {
                map[i] = Some(next);
                next += 1;
            }
        }
        let sub_edges: Vec<(usize, usize, f64)> = self
            .edges
            .iter()
            .filter_map(|&(u, v, w)| {
                match (map[u as usize], map[v as usize]) {
                    (Some(a), Some(b)) => Some((a as usize, b as usize, w)),
                    _ => None,
                }
            })
            .collect();
        let (sub, _) = Graph::from_edges(next as usize, sub_edges)?;
        Ok((sub, map))
    }
}
