//! Bloch-vector parameterisation of density matrices in a commuting-operator
//! basis, random state generation, probability coordinates and Hamiltonian
//! expectation values.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::csco::CscoBasis;
use crate::error::Error;
use crate::mub::MubFamily;
use crate::numerics::{frobenius_inner, hermitian_eig, ComplexMatrix};
use crate::rng::Rng;
use crate::Result;

/// Real (n²−1)-vector of expectation values θ_j = Tr(ρ O_j), partitioned
/// into n+1 blocks of n−1 components, one per commuting set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochState {
    pub dim: usize,
    pub theta: Vec<f64>,
}

impl BlochState {
    pub fn zero(dim: usize) -> Self {
        BlochState {
            dim,
            theta: vec![0.0; dim * dim - 1],
        }
    }

    pub fn new(dim: usize, theta: Vec<f64>) -> Result<Self> {
        if theta.len() != dim * dim - 1 {
            return Err(Error::DimMismatch {
                left: theta.len(),
                right: dim * dim - 1,
            });
        }
        Ok(BlochState { dim, theta })
    }

    /// Block for commuting set i (1-based), length n−1.
    pub fn block(&self, i: usize) -> &[f64] {
        let w = self.dim - 1;
        &self.theta[(i - 1) * w..i * w]
    }

    pub fn norm_sq(&self) -> f64 {
        self.theta.iter().map(|t| t * t).sum()
    }
}

/// A density matrix; Hermitian with unit trace. Positivity is checked on
/// demand, not enforced by the type: Bloch-ball sweeps intentionally build
/// non-positive candidates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityMatrix {
    pub matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(hermitian_eig(&self.matrix)?.values[0])
    }
}

/// ρ together with its minimum eigenvalue; the ball constraint alone does
/// not guarantee positivity for n ≥ 3, so callers get the flag and decide.
#[derive(Debug, Clone)]
pub struct BlochDensity {
    pub rho: DensityMatrix,
    pub min_eigenvalue: f64,
}

/// ρ(θ) = (1/n)(I + Σ_j θ_j O_j).
pub fn density_from_bloch(s: &BlochState, b: &CscoBasis) -> Result<BlochDensity> {
    if s.dim != b.dim {
        return Err(Error::DimMismatch {
            left: s.dim,
            right: b.dim,
        });
    }
    let n = s.dim;
    let limit = n as f64 - 1.0;
    if s.norm_sq() > limit + 1e-12 {
        return Err(Error::BallViolation {
            norm_sq: s.norm_sq(),
            limit,
        });
    }
    let mut m = ComplexMatrix::identity(n);
    for (j, op) in b.operators().enumerate() {
        let t = s.theta[j];
        if t == 0.0 {
            continue;
        }
        m = m.add(&op.scale_re(t));
    }
    let rho = DensityMatrix {
        matrix: m.scale_re(1.0 / n as f64),
    };
    let min_eigenvalue = rho.min_eigenvalue()?;
    Ok(BlochDensity {
        rho,
        min_eigenvalue,
    })
}

/// θ_j = Tr(ρ O_j); the imaginary residue must stay below 1e-12 and is
/// discarded after the check.
pub fn bloch_from_density(rho: &DensityMatrix, b: &CscoBasis) -> Result<BlochState> {
    if rho.dim() != b.dim {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: b.dim,
        });
    }
    let herm_dev = rho.matrix.hermiticity_deviation();
    if herm_dev > 1e-10 {
        return Err(Error::NonHermitianInput { residue: herm_dev });
    }
    let mut theta = Vec::with_capacity(b.dim * b.dim - 1);
    for op in b.operators() {
        // Tr(rho O) with O Hermitian: Tr(O† rho)
        let t = frobenius_inner(op, &rho.matrix)?;
        if t.im.abs() > 1e-12 {
            return Err(Error::NonHermitianInput { residue: t.im.abs() });
        }
        theta.push(t.re);
    }
    BlochState::new(b.dim, theta)
}

/// Tr ρ².
pub fn purity(rho: &DensityMatrix) -> f64 {
    frobenius_inner(&rho.matrix, &rho.matrix)
        .expect("same matrix")
        .re
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Pure,
    Mixed,
}

/// Seeded random state: Haar-random pure state, or a Hilbert–Schmidt mixed
/// state ρ = GG†/Tr(GG†) with complex standard-normal G.
pub fn random_state(n: usize, kind: StateKind, seed: u64) -> DensityMatrix {
    let mut rng = Rng::new(seed);
    match kind {
        StateKind::Pure => {
            let mut v: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gaussian(), rng.gaussian()))
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in v.iter_mut() {
                *z /= norm;
            }
            let mut m = ComplexMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = v[i] * v[j].conj();
                }
            }
            DensityMatrix { matrix: m }
        }
        StateKind::Mixed => {
            let mut g = ComplexMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    g[(i, j)] = Complex64::new(rng.gaussian(), rng.gaussian());
                }
            }
            let gg = g.mul(&g.dagger());
            let tr = gg.trace().re;
            DensityMatrix {
                matrix: gg.scale_re(1.0 / tr),
            }
        }
    }
}

/// Expectation values p = Tr(ρ Π) of all n(n+1) MUB projectors, grouped by
/// basis; each group of n sums to one.
pub fn probability_coordinates(
    s: &BlochState,
    b: &CscoBasis,
    f: &MubFamily,
) -> Result<Vec<f64>> {
    if s.dim != f.dim() || s.dim != b.dim {
        return Err(Error::DimMismatch {
            left: s.dim,
            right: f.dim(),
        });
    }
    let n = s.dim;
    let rho = density_from_bloch(s, b)?.rho;
    let mut p = Vec::with_capacity(n * (n + 1));
    for i in 1..=n + 1 {
        let basis = f.basis(i)?;
        for m in 0..n {
            let v = basis.column(m);
            // <v|rho|v>
            let rv = rho.matrix.apply(&v);
            let val: Complex64 = v.iter().zip(&rv).map(|(a, b)| a.conj() * b).sum();
            p.push(val.re);
        }
    }
    Ok(p)
}

/// h₀ + Σ_k h_k θ_{set,k} — the expectation of H = h₀I + Σ h_k O_{set,k}.
pub fn hamiltonian_expectation(h: &[f64], s: &BlochState, set: usize) -> Result<f64> {
    let n = s.dim;
    if h.len() != n {
        return Err(Error::DimMismatch {
            left: h.len(),
            right: n,
        });
    }
    if set < 1 || set > n + 1 {
        return Err(Error::IndexOutOfRange {
            index: set,
            max: n + 1,
        });
    }
    let block = s.block(set);
    Ok(h[0] + h[1..].iter().zip(block).map(|(c, t)| c * t).sum::<f64>())
}
