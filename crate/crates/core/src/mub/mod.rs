//! Complete sets of mutually unbiased bases.
//!
//! Each supported dimension class has its own construction behind the
//! [`MubConstruction`] trait; constructions are registered by name in a
//! [`MubRegistry`] and selected at runtime, either explicitly or by asking
//! which construction supports a given dimension.

mod dim4;
mod odd_prime;
mod pauli;

use num_complex::Complex64;

use crate::error::Error;
use crate::numerics::{inner, ComplexMatrix};
use crate::tol::TOL;
use crate::Result;

pub use dim4::Spin32Fixture;
pub use odd_prime::WoottersFields;
pub use pauli::PauliBases;

/// A complete set of n+1 mutually unbiased bases.
///
/// `bases[0]` is the canonical (computational) basis; the columns of each
/// basis matrix are the basis vectors. The unitary attached to basis i
/// (1-based) is the adjoint of the basis matrix, so conjugating a diagonal
/// operator by it produces an operator diagonal in that basis.
#[derive(Debug, Clone)]
pub struct MubFamily {
    dim: usize,
    bases: Vec<ComplexMatrix>,
    construction: &'static str,
}

impl MubFamily {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of bases, always dim + 1.
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Basis i, 1-based as in `basis_unitary`.
    pub fn basis(&self, i: usize) -> Result<&ComplexMatrix> {
        if i < 1 || i > self.bases.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.bases.len(),
            });
        }
        Ok(&self.bases[i - 1])
    }

    pub fn bases(&self) -> &[ComplexMatrix] {
        &self.bases
    }

    /// Name of the construction that produced this family.
    pub fn construction(&self) -> &'static str {
        self.construction
    }
}

/// U_i for basis i (1-based): the unitary whose adjoint conjugation takes the
/// diagonal commuting set to the i-th one. U_1 is the identity.
pub fn basis_unitary(f: &MubFamily, i: usize) -> Result<ComplexMatrix> {
    Ok(f.basis(i)?.dagger())
}

/// One construction of a complete MUB set for some class of dimensions.
pub trait MubConstruction: Sync {
    fn name(&self) -> &'static str;
    fn supports(&self, dim: usize) -> bool;
    /// The n+1 basis matrices, canonical basis first.
    fn build(&self, dim: usize) -> Result<Vec<ComplexMatrix>>;
}

/// Name-indexed collection of MUB constructions.
pub struct MubRegistry {
    builders: Vec<Box<dyn MubConstruction>>,
}

impl MubRegistry {
    /// Registry with the built-in constructions: `pauli` (n = 2),
    /// `wootters-fields` (odd primes ≤ 13), `spin32-fixture` (n = 4).
    pub fn standard() -> Self {
        MubRegistry {
            builders: vec![
                Box::new(PauliBases),
                Box::new(WoottersFields),
                Box::new(Spin32Fixture),
            ],
        }
    }

    pub fn register(&mut self, builder: Box<dyn MubConstruction>) {
        self.builders.push(builder);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.builders.iter().map(|b| b.name()).collect()
    }

    pub fn by_name(&self, name: &str) -> Option<&dyn MubConstruction> {
        self.builders
            .iter()
            .find(|b| b.name() == name)
            .map(|b| b.as_ref())
    }

    pub fn for_dim(&self, dim: usize) -> Option<&dyn MubConstruction> {
        self.builders
            .iter()
            .find(|b| b.supports(dim))
            .map(|b| b.as_ref())
    }

    pub fn build(&self, dim: usize) -> Result<MubFamily> {
        let builder = self
            .for_dim(dim)
            .ok_or(Error::UnsupportedDimension { dim })?;
        let bases = builder.build(dim)?;
        debug_assert_eq!(bases.len(), dim + 1);
        Ok(MubFamily {
            dim,
            bases,
            construction: builder.name(),
        })
    }
}

/// Build the complete MUB family for n ∈ {2} ∪ {odd primes ≤ 13} ∪ {4}.
pub fn build_mub(dim: usize) -> Result<MubFamily> {
    MubRegistry::standard().build(dim)
}

/// Max over all cross-basis column pairs of | |⟨u|v⟩|² − 1/n |.
pub fn verify_unbiased(f: &MubFamily) -> f64 {
    let n = f.dim;
    let mut worst: f64 = 0.0;
    for a in 0..f.bases.len() {
        for b in a + 1..f.bases.len() {
            for u in 0..n {
                let uc = f.bases[a].column(u);
                for v in 0..n {
                    let ov = inner(&uc, &f.bases[b].column(v)).norm_sqr();
                    worst = worst.max((ov - 1.0 / n as f64).abs());
                }
            }
        }
    }
    worst
}

/// A set of unit vectors considered up to global phase and ordering.
#[derive(Debug, Clone)]
pub struct RaySet {
    dim: usize,
    rays: Vec<Vec<Complex64>>,
}

impl RaySet {
    pub fn from_columns(m: &ComplexMatrix) -> Self {
        RaySet {
            dim: m.dim(),
            rays: (0..m.dim()).map(|j| m.column(j)).collect(),
        }
    }

    pub fn from_vectors(dim: usize, rays: Vec<Vec<Complex64>>) -> Self {
        RaySet { dim, rays }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Complex64>] {
        &self.rays
    }

    /// Max |overlap|² deficit under greedy maximum-overlap assignment.
    /// Zero (to tolerance) iff the two sets are equal as unordered rays.
    pub fn residual(&self, other: &RaySet) -> f64 {
        let mut used = vec![false; other.rays.len()];
        let mut worst: f64 = 0.0;
        for u in &self.rays {
            let mut best = -1.0;
            let mut best_j = usize::MAX;
            for (j, v) in other.rays.iter().enumerate() {
                if used[j] {
                    continue;
                }
                let ov = inner(u, v).norm_sqr();
                if ov > best {
                    best = ov;
                    best_j = j;
                }
            }
            used[best_j] = true;
            worst = worst.max(1.0 - best);
        }
        worst
    }

    pub fn matches(&self, other: &RaySet) -> bool {
        self.residual(other) <= TOL.ray_match
    }
}

/// Residual of one-axis twisting from basis 2 towards basis `target` (1-based):
/// the diagonal phases e^{−i m² t} with m = j..−j applied to basis-2 rays,
/// compared as a ray set.
pub fn twist_residual(f: &MubFamily, t: f64, target: usize) -> Result<f64> {
    if f.dim != 3 {
        return Err(Error::UnsupportedDimension { dim: f.dim });
    }
    let src = f.basis(2)?;
    let tgt = RaySet::from_columns(f.basis(target)?);
    let j = (f.dim as f64 - 1.0) / 2.0;
    let twisted: Vec<Vec<Complex64>> = (0..f.dim)
        .map(|col| {
            src.column(col)
                .iter()
                .enumerate()
                .map(|(row, z)| {
                    let m = j - row as f64;
                    z * Complex64::new(0.0, -m * m * t).exp()
                })
                .collect()
        })
        .collect();
    Ok(RaySet::from_vectors(f.dim, twisted).residual(&tgt))
}

/// Result of the spin-1 one-axis-twisting consistency check.
#[derive(Debug, Clone, Copy)]
pub struct TwistCheck {
    pub ok: bool,
    /// Residual mapping basis 2 to basis 3 at t = 2π/3.
    pub residual_third: f64,
    /// Residual mapping basis 2 to basis 4 at t = 4π/3.
    pub residual_fourth: f64,
}

/// Checks that e^{−i m² t} maps basis 2 to basis 3 at t = 2π/3 and to
/// basis 4 at t = 4π/3. Spin-1 (n = 3) only.
pub fn twist_map_check(f: &MubFamily) -> Result<TwistCheck> {
    let third = twist_residual(f, 2.0 * std::f64::consts::PI / 3.0, 3)?;
    let fourth = twist_residual(f, 4.0 * std::f64::consts::PI / 3.0, 4)?;
    Ok(TwistCheck {
        ok: third <= TOL.ray_match && fourth <= TOL.ray_match,
        residual_third: third,
        residual_fourth: fourth,
    })
}
