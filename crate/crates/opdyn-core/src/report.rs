//! Flat result record shared by the exact and approximate paths.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Approx,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => write!(f, "exact"),
            Method::Approx => write!(f, "approx"),
        }
    }
}

/// The five quantities plus method metadata.
///
/// Serializes to JSON with this fixed field order; [`fmt::Display`] emits the
/// same fields as `key value` lines.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantityReport {
    pub method: Method,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub internal_conflict: f64,
    pub disagreement: f64,
    pub polarization: f64,
    pub controversy: f64,
    pub dc_index: f64,
    /// Independent route: `s^T z`. Equals `dc_index` up to tolerance.
    pub dc_index_inner: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_effective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_clamped: Option<bool>,
    /// Iterations per solve (two entries for the approximate path).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver_iterations: Option<Vec<usize>>,
    /// Quantity computation only; excludes I/O and LCC extraction.
    pub wall_time_secs: f64,
}

impl fmt::Display for QuantityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "method {}", self.method)?;
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "m {}", self.m)?;
        if let Some(eps) = self.epsilon {
            writeln!(f, "epsilon {eps:e}")?;
        }
        writeln!(f, "internal_conflict {:.17e}", self.internal_conflict)?;
        writeln!(f, "disagreement {:.17e}", self.disagreement)?;
        writeln!(f, "polarization {:.17e}", self.polarization)?;
        writeln!(f, "controversy {:.17e}", self.controversy)?;
        writeln!(f, "dc_index {:.17e}", self.dc_index)?;
        writeln!(f, "dc_index_inner {:.17e}", self.dc_index_inner)?;
        if let Some(d) = self.delta_effective {
            writeln!(f, "delta_effective {d:e}")?;
        }
        if let Some(c) = self.delta_clamped {
            writeln!(f, "delta_clamped {c}")?;
        }
        if let Some(iters) = &self.solver_iterations {
            let joined: Vec<String> = iters.iter().map(|i| i.to_string()).collect();
            writeln!(f, "solver_iterations {}", joined.join(","))?;
        }
        writeln!(f, "wall_time_secs {:.6}", self.wall_time_secs)
    }
}
