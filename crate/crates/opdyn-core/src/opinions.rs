//! Seeded generators for internal-opinion vectors.
//!
//! Three distributions: uniform on [0,1]; exponential (density `e^{x_min} e^{-x}`,
//! samples >= x_min); and power-law (density `(alpha-1) x_min^{alpha-1} x^{-alpha}`).
//! Exponential and power-law samples are normalized into [0,1] by dividing by
//! the maximum observed value, so the maximum opinion is exactly 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistributionKind {
    Uniform,
    Exponential,
    PowerLaw,
}

impl std::fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistributionKind::Uniform => write!(f, "uniform"),
            DistributionKind::Exponential => write!(f, "exponential"),
            DistributionKind::PowerLaw => write!(f, "power-law"),
        }
    }
}

impl std::str::FromStr for DistributionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(DistributionKind::Uniform),
            "exponential" => Ok(DistributionKind::Exponential),
            "power-law" | "powerlaw" => Ok(DistributionKind::PowerLaw),
            other => Err(Error::Validation(format!("unknown distribution '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DistributionSpec {
    pub kind: DistributionKind,
    /// Lower cutoff for exponential and power-law sampling.
    pub x_min: f64,
    /// Power-law exponent.
    pub alpha: f64,
    pub seed: u64,
}

impl DistributionSpec {
    pub fn new(kind: DistributionKind, seed: u64) -> Self {
        DistributionSpec {
            kind,
            x_min: 1.0,
            alpha: 2.5,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.x_min.is_nan() || self.x_min <= 0.0 {
            return Err(Error::Validation(format!(
                "x_min must be positive, got {}",
                self.x_min
            )));
        }
        if self.kind == DistributionKind::PowerLaw && (self.alpha.is_nan() || self.alpha <= 1.0) {
            return Err(Error::Validation(format!(
                "power-law exponent must exceed 1, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Inverse-CDF samples before normalization (used directly by the
/// distribution checks). Uniform samples are already in [0,1].
pub fn sample_unnormalized(n: usize, spec: &DistributionSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::Validation("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let samples = (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            match spec.kind {
                DistributionKind::Uniform => u,
                // x = x_min - ln(1 - u)
                DistributionKind::Exponential => spec.x_min - (1.0 - u).ln(),
                // x = x_min * (1 - u)^{-1/(alpha - 1)}
                DistributionKind::PowerLaw => {
                    spec.x_min * (1.0 - u).powf(-1.0 / (spec.alpha - 1.0))
                }
            }
        })
        .collect();
    Ok(samples)
}

/// Generates `n` internal opinions in [0,1].
pub fn generate_opinions(n: usize, spec: &DistributionSpec) -> Result<Vec<f64>> {
    let mut samples = sample_unnormalized(n, spec)?;
    if spec.kind != DistributionKind::Uniform {
        let max = samples.iter().cloned().fold(0.0f64, f64::max);
        for v in &mut samples {
            *v /= max;
        }
    }
    Ok(samples)
}
