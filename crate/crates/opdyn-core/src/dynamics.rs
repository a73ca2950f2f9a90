//! Iterative Friedkin-Johnsen opinion updates.
//!
//! Synchronous sweeps from `z^0 = s`:
//! `z_i <- (s_i + sum_{j ~ i} w_ij z_j) / (1 + d_i)`.
//! The fixed point is the equilibrium `z = (I + L)^{-1} s`, which makes the
//! iteration an independent dynamical oracle for the linear-algebra paths.

use crate::error::Error;
use crate::exact::validate_opinions;
use crate::graph::Graph;
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub struct TrajectoryStats {
    pub iterations: usize,
    /// Max-norm of the last update step.
    pub final_change: f64,
}

/// Runs the synchronous update until the max-norm step change drops below
/// `tol`, calling `on_step(iteration, step_change)` after each sweep.
pub fn fj_iterate_traced<F>(
    g: &Graph,
    s: &[f64],
    tol: f64,
    max_steps: usize,
    mut on_step: F,
) -> Result<(Vec<f64>, TrajectoryStats)>
where
    F: FnMut(usize, f64),
{
    validate_opinions(g, s)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Validation(format!("tol must be positive, got {tol}")));
    }
    let n = g.n();
    let mut z = s.to_vec();
    let mut next = vec![0.0; n];
    for step in 1..=max_steps {
        let mut change = 0.0f64;
        for i in 0..n {
            let mut acc = s[i];
            for (j, w) in g.neighbors(i) {
                acc += w * z[j];
            }
            let v = acc / (1.0 + g.degree(i));
            change = change.max((v - z[i]).abs());
            next[i] = v;
        }
        std::mem::swap(&mut z, &mut next);
        on_step(step, change);
        if change < tol {
            return Ok((
                z,
                TrajectoryStats {
                    iterations: step,
                    final_change: change,
                },
            ));
        }
    }
    Err(Error::Convergence {
        iterations: max_steps,
        residual: f64::NAN,
        threshold: tol,
        stagnated: false,
        achieved_delta: f64::NAN,
        best_iterate: z,
    })
}

/// [`fj_iterate_traced`] without the trajectory callback.
pub fn fj_iterate(
    g: &Graph,
    s: &[f64],
    tol: f64,
    max_steps: usize,
) -> Result<(Vec<f64>, TrajectoryStats)> {
    fj_iterate_traced(g, s, tol, max_steps, |_, _| {})
}
