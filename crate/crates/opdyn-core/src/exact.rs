//! Ground-truth dense path: the forest matrix `(I + L)^{-1}` and the five
//! quantities via quadratic forms of the equilibrium vector `z`.

use std::time::Instant;

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::Error;
use crate::graph::Graph;
use crate::report::{Method, QuantityReport};
use crate::Result;

/// Largest `n` the dense path accepts.
pub const DENSE_GUARD: usize = 20_000;

/// Dense forest matrix `Omega = (I + L)^{-1}`.
///
/// Symmetric positive definite, doubly stochastic, and entrywise positive on
/// connected graphs.
#[derive(Debug, Clone)]
pub struct ForestMatrix {
    pub omega: DMatrix<f64>,
}

fn shifted_laplacian_dense(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = 1.0 + g.degree(i);
    }
    for &(u, v, w) in g.edges() {
        m[(u as usize, v as usize)] = -w;
        m[(v as usize, u as usize)] = -w;
    }
    m
}

fn guard(g: &Graph) -> Result<()> {
    if g.n() > DENSE_GUARD {
        return Err(Error::DenseGuard {
            n: g.n(),
            guard: DENSE_GUARD,
        });
    }
    Ok(())
}

fn cholesky(g: &Graph) -> Result<Cholesky<f64, nalgebra::Dyn>> {
    Cholesky::new(shifted_laplacian_dense(g)).ok_or_else(|| {
        Error::Validation("dense factorization of I + L failed; matrix not SPD".into())
    })
}

/// Materializes `(I + L)^{-1}` via dense symmetric factorization.
pub fn forest_matrix_dense(g: &Graph) -> Result<ForestMatrix> {
    guard(g)?;
    let chol = cholesky(g)?;
    Ok(ForestMatrix {
        omega: chol.inverse(),
    })
}

/// Equilibrium `z = (I + L)^{-1} s` without materializing the inverse.
pub fn dense_equilibrium(g: &Graph, s: &[f64]) -> Result<Vec<f64>> {
    guard(g)?;
    if s.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: s.len(),
        });
    }
    let chol = cholesky(g)?;
    let z = chol.solve(&DVector::from_column_slice(s));
    Ok(z.as_slice().to_vec())
}

pub(crate) fn validate_opinions(g: &Graph, s: &[f64]) -> Result<()> {
    if s.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: s.len(),
        });
    }
    if s.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
        return Err(Error::Validation(
            "internal opinions must lie in [0, 1]".into(),
        ));
    }
    Ok(())
}

/// Computes all five quantities from `z = (I + L)^{-1} s` (dense solve).
///
/// `dc_index` is `D + C`; the independent route `s^T z` is cross-checked to
/// 1e-10 relative and reported as `dc_index_inner`.
pub fn exact_quantities(g: &Graph, s: &[f64]) -> Result<QuantityReport> {
    validate_opinions(g, s)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let started = Instant::now();
    let z = dense_equilibrium(g, s)?;
    let n = g.n() as f64;

    let lz = g.laplacian_apply(&z)?;
    let internal_conflict: f64 = lz.iter().map(|v| v * v).sum();
    let disagreement = g.laplacian_quadratic_form(&z)?;
    let mean = z.iter().sum::<f64>() / n;
    let polarization: f64 = z.iter().map(|v| (v - mean) * (v - mean)).sum();
    let controversy: f64 = z.iter().map(|v| v * v).sum();
    let dc_index = disagreement + controversy;
    let dc_index_inner: f64 = s.iter().zip(&z).map(|(a, b)| a * b).sum();

    let scale = dc_index.abs().max(dc_index_inner.abs());
    if scale > 0.0 && (dc_index - dc_index_inner).abs() > 1e-10 * scale {
        return Err(Error::Validation(format!(
            "dc-index cross-check failed: D + C = {dc_index:.17e}, s^T z = {dc_index_inner:.17e}"
        )));
    }

    Ok(QuantityReport {
        method: Method::Exact,
        n: g.n(),
        m: g.m(),
        epsilon: None,
        internal_conflict,
        disagreement,
        polarization,
        controversy,
        dc_index,
        dc_index_inner,
        delta_effective: None,
        delta_clamped: None,
        solver_iterations: None,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1, 1.0)))
            .unwrap()
            .0
    }

    #[test]
    fn single_node_forest_matrix_is_identity() {
        let (g, _) = Graph::from_edges(1, std::iter::empty()).unwrap();
        let fm = forest_matrix_dense(&g).unwrap();
        assert_eq!(fm.omega.nrows(), 1);
        assert!((fm.omega[(0, 0)] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_node_path_forest_matrix() {
        let g = path(2);
        let fm = forest_matrix_dense(&g).unwrap();
        let expect = [[2.0 / 3.0, 1.0 / 3.0], [1.0 / 3.0, 2.0 / 3.0]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                assert!((fm.omega[(i, j)] - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn p5_forest_matrix_matches_rationals_over_55() {
        let g = path(5);
        let fm = forest_matrix_dense(&g).unwrap();
        let expect = [
            [34.0, 13.0, 5.0, 2.0, 1.0],
            [13.0, 26.0, 10.0, 4.0, 2.0],
            [5.0, 10.0, 25.0, 10.0, 5.0],
            [2.0, 4.0, 10.0, 26.0, 13.0],
            [1.0, 2.0, 5.0, 13.0, 34.0],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let want = entry / 55.0;
                assert!(
                    (fm.omega[(i, j)] - want).abs() <= 1e-12 * want,
                    "omega[{i}][{j}] = {} != {want}",
                    fm.omega[(i, j)]
                );
            }
        }
    }

    #[test]
    fn consensus_input_collapses_quantities() {
        let g = path(6);
        let c = 0.42;
        let rep = exact_quantities(&g, &[c; 6]).unwrap();
        assert!(rep.internal_conflict.abs() < 1e-20);
        assert!(rep.disagreement.abs() < 1e-20);
        assert!(rep.polarization.abs() < 1e-20);
        assert!((rep.controversy - 6.0 * c * c).abs() < 1e-12);
        assert!((rep.dc_index - 6.0 * c * c).abs() < 1e-12);
    }

    #[test]
    fn two_node_path_quantities() {
        let g = path(2);
        let rep = exact_quantities(&g, &[1.0, 0.0]).unwrap();
        assert!((rep.internal_conflict - 2.0 / 9.0).abs() < 1e-14);
        assert!((rep.disagreement - 1.0 / 9.0).abs() < 1e-14);
        assert!((rep.polarization - 1.0 / 18.0).abs() < 1e-14);
        assert!((rep.controversy - 5.0 / 9.0).abs() < 1e-14);
        assert!((rep.dc_index - 2.0 / 3.0).abs() < 1e-14);
        assert!((rep.dc_index_inner - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn p5_first_basis_vector_equilibrium() {
        let g = path(5);
        let z = dense_equilibrium(&g, &[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let want = [34.0, 13.0, 5.0, 2.0, 1.0].map(|v| v / 55.0);
        for (zi, wi) in z.iter().zip(want) {
            assert!((zi - wi).abs() < 1e-13);
        }
    }

    #[test]
    fn disconnected_graph_refused() {
        let (g, _) = Graph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(matches!(
            exact_quantities(&g, &[0.1, 0.2, 0.3, 0.4]),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn opinions_outside_unit_interval_rejected() {
        let g = path(2);
        assert!(exact_quantities(&g, &[1.2, 0.0]).is_err());
        assert!(exact_quantities(&g, &[-0.1, 0.0]).is_err());
    }
}
