//! Deterministic synthetic graphs for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Unit-weight path on `n` nodes.
pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1.0)))
        .expect("path edges are valid")
        .0
}

/// Connected random graph: a random attachment tree plus `extra_edges`
/// random non-duplicate edges. Weights are drawn uniformly from
/// `weight_range` when given, else all 1.0.
pub fn random_connected_graph(
    n: usize,
    extra_edges: usize,
    weight_range: Option<(f64, f64)>,
    seed: u64,
) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight = |rng: &mut ChaCha8Rng| match weight_range {
        Some((lo, hi)) => rng.gen_range(lo..=hi),
        None => 1.0,
    };
    let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(n - 1 + extra_edges);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let w = weight(&mut rng);
        edges.push((u, v, w));
    }
    let mut attempts = 0;
    let mut added = 0;
    while added < extra_edges && attempts < extra_edges * 20 {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let w = weight(&mut rng);
        edges.push((u, v, w));
        added += 1;
    }
    // duplicates collapse inside from_edges; connectivity comes from the tree
    Graph::from_edges(n, edges).expect("synthetic edges are valid").0
}
