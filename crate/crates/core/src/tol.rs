//! Central tolerance configuration.
//!
//! Every numerical threshold used by the crate lives here so that property
//! tests and the acceptance suite pin against one source of truth.

/// Tolerances used across the crate. `Default` gives the canonical values.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Hermiticity check on inputs: max entry of |M - M†|.
    pub hermitian: f64,
    /// Eigendecomposition reconstruction residual, relative to max(1, ‖M‖_F).
    pub eig_residual: f64,
    /// Unitarity and orthonormality deviations.
    pub unitarity: f64,
    /// MUB unbiasedness deficit on squared overlaps.
    pub unbiased: f64,
    /// Ray-set matching on |overlap|² deficit.
    pub ray_match: f64,
    /// Relative gap under which eigenvalues are clustered as degenerate.
    pub degeneracy_gap: f64,
    /// Span projection residual between generated and fixture operator sets.
    pub span_residual: f64,
    /// Table normalisation and exact linear identities.
    pub exact: f64,
    /// Polytope boundary band: |margin| below this is "boundary".
    pub boundary: f64,
    /// Simplex LP pivot tolerance.
    pub lp_pivot: f64,
    /// Support-probe certification gap.
    pub lp_gap: f64,
    /// Margenau–Hill vs Fourier deviation bound.
    pub oracle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermitian: 1e-10,
            eig_residual: 1e-9,
            unitarity: 1e-10,
            unbiased: 1e-10,
            ray_match: 1e-10,
            degeneracy_gap: 1e-9,
            span_residual: 1e-9,
            exact: 1e-12,
            boundary: 1e-12,
            lp_pivot: 1e-9,
            lp_gap: 1e-7,
            oracle: 1e-8,
        }
    }
}

impl Tolerances {
    pub const fn default_const() -> Self {
        Tolerances {
            hermitian: 1e-10,
            eig_residual: 1e-9,
            unitarity: 1e-10,
            unbiased: 1e-10,
            ray_match: 1e-10,
            degeneracy_gap: 1e-9,
            span_residual: 1e-9,
            exact: 1e-12,
            boundary: 1e-12,
            lp_pivot: 1e-9,
            lp_gap: 1e-7,
            oracle: 1e-8,
        }
    }
}

/// The canonical tolerance set.
pub const TOL: Tolerances = Tolerances::default_const();
