//! Brute-force spanning-rooted-forest census for tiny graphs.
//!
//! A spanning rooted forest is an acyclic spanning subgraph with one marked
//! root per tree (an isolated node is a tree). The weight of a forest is the
//! product of its edge weights, so with unit weights the census degenerates
//! to counting. The census validates the combinatorial meaning of the forest
//! matrix: `omega_ij = eps(Gamma_ij) / eps(Gamma)`.

use crate::error::Error;
use crate::graph::Graph;
use crate::Result;

/// Enumeration is exponential in the edge count; refuse anything bigger.
pub const ENUMERATION_CAP: usize = 10;

/// Exact census of spanning rooted forests.
#[derive(Debug, Clone)]
pub struct ForestCensus {
    /// `eps(Gamma)`: total weight over all spanning rooted forests.
    pub total_weight: f64,
    /// `eps(Gamma_ij)`: weight of forests where `j` lies in the tree rooted
    /// at `i`; row-stochastic at the combinatorial level.
    pub rooted_pair_weight: Vec<Vec<f64>>,
    /// Integer counts when every edge has unit weight.
    pub total_count: Option<u128>,
    pub rooted_pair_count: Option<Vec<Vec<u128>>>,
}

struct Enumerator<'g> {
    g: &'g Graph,
    parent: Vec<usize>,
    size: Vec<usize>,
    total: f64,
    pair: Vec<Vec<f64>>,
    total_count: u128,
    pair_count: Vec<Vec<u128>>,
    unit: bool,
}

impl<'g> Enumerator<'g> {
    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    /// Recurses over acyclic edge subsets; union-find state is rolled back
    /// on return, so no path compression.
    fn recurse(&mut self, edge_idx: usize, weight: f64) {
        let edges = self.g.edges();
        if edge_idx == edges.len() {
            self.account(weight);
            return;
        }
        // skip this edge
        self.recurse(edge_idx + 1, weight);
        // take it when it joins two distinct trees
        let (u, v, w) = edges[edge_idx];
        let ru = self.find(u as usize);
        let rv = self.find(v as usize);
        if ru != rv {
            let (big, small) = if self.size[ru] >= self.size[rv] {
                (ru, rv)
            } else {
                (rv, ru)
            };
            self.parent[small] = big;
            self.size[big] += self.size[small];
            self.recurse(edge_idx + 1, weight * w);
            self.size[big] -= self.size[small];
            self.parent[small] = small;
        }
    }

    /// One acyclic subset = one spanning forest; every choice of one root per
    /// tree yields a distinct rooted forest of the same weight.
    fn account(&mut self, weight: f64) {
        let n = self.g.n();
        let roots: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        let mut rootings = 1.0f64;
        let mut rootings_count = 1u128;
        for (i, &root) in roots.iter().enumerate() {
            if root == i {
                rootings *= self.size[i] as f64;
                rootings_count *= self.size[i] as u128;
            }
        }
        self.total += weight * rootings;
        if self.unit {
            self.total_count += rootings_count;
        }
        // pair contribution: i, j share a tree and that tree is rooted at i,
        // so the factor for i's tree is fixed and the others root freely
        for i in 0..n {
            let others = rootings / self.size[roots[i]] as f64;
            let others_count = rootings_count / self.size[roots[i]] as u128;
            for j in 0..n {
                if roots[j] == roots[i] {
                    self.pair[i][j] += weight * others;
                    if self.unit {
                        self.pair_count[i][j] += others_count;
                    }
                }
            }
        }
    }
}

/// Exhaustively enumerates spanning rooted forests (`n <= 10`).
pub fn enumerate_rooted_forests(g: &Graph) -> Result<ForestCensus> {
    let n = g.n();
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if n == 0 {
        return Err(Error::Validation("empty graph".into()));
    }
    let unit = g.edges().iter().all(|&(_, _, w)| w == 1.0);
    let mut e = Enumerator {
        g,
        parent: (0..n).collect(),
        size: vec![1; n],
        total: 0.0,
        pair: vec![vec![0.0; n]; n],
        total_count: 0,
        pair_count: vec![vec![0; n]; n],
        unit,
    };
    e.recurse(0, 1.0);
    Ok(ForestCensus {
        total_weight: e.total,
        rooted_pair_weight: e.pair,
        total_count: unit.then_some(e.total_count),
        rooted_pair_count: unit.then(|| e.pair_count.clone()),
    })
}
