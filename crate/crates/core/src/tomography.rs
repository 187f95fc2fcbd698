//! Measurement simulation and Bloch-vector reconstruction.
//!
//! Each of the n+1 commuting sets is measured in its joint eigenbasis; the
//! outcome probabilities are the single-set marginals p(z) = ⟨z|ρ|z⟩, which
//! the closed-form table reproduces exactly. The estimator inverts the
//! parameterisation θ_{i,k} = E[z_k] linearly from outcome frequencies, with
//! plug-in multinomial standard errors. No projection back onto the physical
//! state set is performed: θ̂ is reported as-is.

use serde::{Deserialize, Serialize};

use crate::csco::{eigenbasis_ordered, CscoBasis};
use crate::error::Error;
use crate::numerics::inner;
use crate::rng::Rng;
use crate::state::{BlochState, DensityMatrix};
use crate::Result;

/// Outcome probabilities ⟨z|ρ|z⟩ for one commuting set, ordered like the
/// outcome alphabet.
fn set_probabilities(rho: &DensityMatrix, b: &CscoBasis, i: usize) -> Result<Vec<f64>> {
    let basis = eigenbasis_ordered(&b.sets[i - 1], &b.alphabet)?;
    Ok((0..b.dim)
        .map(|k| {
            let v = basis.column(k);
            inner(&v, &rho.matrix.apply(&v)).re
        })
        .collect())
}

/// Outcome counts per basis: `counts[i][k]` is how often outcome tuple k was
/// observed when measuring commuting set i+1; each row sums to `shots`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub dim: usize,
    pub shots: u64,
    pub counts: Vec<Vec<u64>>,
}

/// Draw `shots` outcomes per basis from the exact projector probabilities.
/// Deterministic per seed; per-basis substreams keep the draws independent.
pub fn simulate_counts(
    rho: &DensityMatrix,
    b: &CscoBasis,
    shots: u64,
    seed: u64,
) -> Result<MeasurementRecord> {
    if shots == 0 {
        return Err(Error::BadInput("shots must be >= 1".into()));
    }
    let n = b.dim;
    if rho.dim() != n {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: n,
        });
    }
    let mut counts = Vec::with_capacity(n + 1);
    for i in 1..=n + 1 {
        let probs = set_probabilities(rho, b, i)?;
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::BadInput(format!(
                "basis {i} probabilities sum to {total}, not 1"
            )));
        }
        for (k, &p) in probs.iter().enumerate() {
            if p < -1e-10 {
                return Err(Error::NegativeProbability { basis: i, value: p });
            }
            let _ = k;
        }
        let clipped: Vec<f64> = probs.iter().map(|p| p.max(0.0)).collect();
        let mut rng = Rng::substream(seed, i as u64);
        let mut row = vec![0u64; n];
        for _ in 0..shots {
            row[rng.discrete(&clipped)] += 1;
        }
        counts.push(row);
    }
    Ok(MeasurementRecord {
        dim: n,
        shots,
        counts,
    })
}

/// Linear-inversion estimate with per-component standard errors.
#[derive(Debug, Clone, Serialize)]
pub struct BlochEstimate {
    pub state: BlochState,
    /// plug-in multinomial standard error per θ component, same layout as θ
    pub std_errors: Vec<f64>,
    pub shots: u64,
}

/// θ̂_{i,k} = Σ_z ẑ_k·freq(z) per commuting set; the estimator is the
/// empirical version of θ_j = Tr(ρ O_j) and is linear in the frequencies.
pub fn estimate_bloch(r: &MeasurementRecord, b: &CscoBasis) -> Result<BlochEstimate> {
    let n = b.dim;
    if r.dim != n {
        return Err(Error::DimMismatch {
            left: r.dim,
            right: n,
        });
    }
    if r.shots == 0 || r.counts.len() != n + 1 {
        return Err(Error::EmptyRecord);
    }
    let w = n - 1;
    let shots = r.shots as f64;
    let mut theta = vec![0.0; n * n - 1];
    let mut std_errors = vec![0.0; n * n - 1];
    for (i, row) in r.counts.iter().enumerate() {
        if row.len() != n || row.iter().sum::<u64>() != r.shots {
            return Err(Error::EmptyRecord);
        }
        let freqs: Vec<f64> = row.iter().map(|&c| c as f64 / shots).collect();
        for k in 0..w {
            let zs: Vec<f64> = (0..n).map(|m| b.alphabet.tuples[m][k]).collect();
            let mean: f64 = zs.iter().zip(&freqs).map(|(z, f)| z * f).sum();
            let second: f64 = zs.iter().zip(&freqs).map(|(z, f)| z * z * f).sum();
            theta[i * w + k] = mean;
            // multinomial plug-in: Var(θ̂) = (E[z²] − E[z]²)/shots
            std_errors[i * w + k] = ((second - mean * mean).max(0.0) / shots).sqrt();
        }
    }
    Ok(BlochEstimate {
        state: BlochState { dim: n, theta },
        std_errors,
        shots: r.shots,
    })
}
