//! Complete sets of commuting operators attached to a MUB family.
//!
//! The diagonal set consists of the rank-k tensor operators τ^k_0 built from
//! Clebsch–Gordan coefficients; the other n sets are obtained by conjugating
//! the diagonal set with the inter-basis unitaries. The published spin-1 and
//! spin-3/2 matrices are available verbatim as fixtures.

pub mod fixtures;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::mub::{basis_unitary, build_mub, MubFamily, RaySet};
use crate::numerics::{frobenius_inner, hermitian_eig, inner, ComplexMatrix};
use crate::tol::TOL;
use crate::Result;

/// The n simultaneous-eigenvalue tuples shared by one commuting set, ordered
/// by canonical basis index (m = j .. −j).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OutcomeAlphabet {
    pub dim: usize,
    pub tuples: Vec<Vec<f64>>,
}

impl OutcomeAlphabet {
    /// Max deviation from the identities Σ_z z = 0, z·z = n−1, z·z' = −1.
    pub fn identity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for k in 0..n - 1 {
            let s: f64 = self.tuples.iter().map(|z| z[k]).sum();
            dev = dev.max(s.abs());
        }
        for (a, za) in self.tuples.iter().enumerate() {
            for (b, zb) in self.tuples.iter().enumerate() {
                let dot: f64 = za.iter().zip(zb).map(|(x, y)| x * y).sum();
                let target = if a == b { n as f64 - 1.0 } else { -1.0 };
                dev = dev.max((dot - target).abs());
            }
        }
        dev
    }
}

/// Diagonal irreducible tensor operator τ^k_0 for spin j.
#[derive(Debug, Clone)]
pub struct TensorOperator {
    /// Twice the spin, so half-integers are exact.
    pub j2: i64,
    pub k: i64,
    pub matrix: ComplexMatrix,
}

/// The n+1 commuting sets of n−1 orthonormal Hermitian operators plus the
/// shared outcome alphabet. Set 1 is diagonal in the canonical basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CscoBasis {
    pub dim: usize,
    pub sets: Vec<Vec<ComplexMatrix>>,
    pub alphabet: OutcomeAlphabet,
}

impl CscoBasis {
    fn from_sets(dim: usize, sets: Vec<Vec<ComplexMatrix>>) -> Self {
        let tuples = (0..dim)
            .map(|m| sets[0].iter().map(|op| op[(m, m)].re).collect())
            .collect();
        CscoBasis {
            dim,
            sets,
            alphabet: OutcomeAlphabet { dim, tuples },
        }
    }

    pub fn operators(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.sets.iter().flatten()
    }
}

/// The shared outcome alphabet of a basis.
pub fn outcome_alphabet(b: &CscoBasis) -> &OutcomeAlphabet {
    &b.alphabet
}

// --- Clebsch-Gordan -------------------------------------------------------

const MAX_FACT: usize = 41;

fn factorials() -> [f64; MAX_FACT] {
    let mut f = [1.0; MAX_FACT];
    for i in 1..MAX_FACT {
        f[i] = f[i - 1] * i as f64;
    }
    f
}

/// Racah's closed sum for C(j1 j2 j3; m1 m2 m3), arguments doubled so that
/// half-integers are exact. Condon–Shortley convention.
fn clebsch_gordan_doubled(
    j1: i64,
    j2: i64,
    j3: i64,
    m1: i64,
    m2: i64,
    m3: i64,
) -> f64 {
    if m1 + m2 != m3 {
        return 0.0;
    }
    let fact = factorials();
    let f = |doubled: i64| -> f64 {
        debug_assert!(doubled % 2 == 0 && doubled >= 0);
        fact[(doubled / 2) as usize]
    };
    // triangle condition
    if j3 < (j1 - j2).abs() || j3 > j1 + j2 {
        return 0.0;
    }
    let delta = f(j1 + j2 - j3) * f(j1 - j2 + j3) * f(-j1 + j2 + j3) / f(j1 + j2 + j3 + 2);
    let pref = ((j3 + 1) as f64 * delta
        * f(j1 + m1)
        * f(j1 - m1)
        * f(j2 + m2)
        * f(j2 - m2)
        * f(j3 + m3)
        * f(j3 - m3))
        .sqrt();
    // sum index t in units of 1 (doubled value 2t)
    let t_min_d = 0i64.max(-(j3 - j2 + m1)).max(-(j3 - j1 - m2));
    let t_max_d = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut sum = 0.0;
    let mut t_d = t_min_d;
    while t_d <= t_max_d {
        let sign = if (t_d / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let denom = f(t_d)
            * f(j1 + j2 - j3 - t_d)
            * f(j1 - m1 - t_d)
            * f(j2 + m2 - t_d)
            * f(j3 - j2 + m1 + t_d)
            * f(j3 - j1 - m2 + t_d);
        sum += sign / denom;
        t_d += 2;
    }
    pref * sum
}

fn doubled(x: f64) -> Option<i64> {
    let d = 2.0 * x;
    let r = d.round();
    if (d - r).abs() < 1e-9 {
        Some(r as i64)
    } else {
        None
    }
}

/// C(j k j; m 0 m) under the Condon–Shortley convention.
pub fn clebsch_gordan_q0(j: f64, k: i64, m: f64) -> Result<f64> {
    let err = || Error::InvalidQuantumNumbers { j, k, m };
    let j2 = doubled(j).ok_or_else(err)?;
    let m2 = doubled(m).ok_or_else(err)?;
    if j2 < 0 || k < 1 || k > j2 || m2.abs() > j2 || (j2 - m2) % 2 != 0 {
        return Err(err());
    }
    Ok(clebsch_gordan_doubled(j2, 2 * k, j2, m2, 0, m2))
}

/// τ^k_0 for spin j: diagonal with entries √(2k+1)·C(j k j; m 0 m) at
/// position indexed by m = j .. −j. Tr(τ^k_0 τ^{k'}_0) = (2j+1) δ_{kk'}.
pub fn tensor_diag(j: f64, k: i64) -> Result<TensorOperator> {
    let j2 = doubled(j).ok_or(Error::InvalidQuantumNumbers { j, k, m: 0.0 })?;
    if k < 1 || k > j2 {
        return Err(Error::InvalidQuantumNumbers { j, k, m: 0.0 });
    }
    let n = (j2 + 1) as usize;
    let scale = (2.0 * k as f64 + 1.0).sqrt();
    let mut diag = Vec::with_capacity(n);
    for row in 0..n {
        let m = j - row as f64;
        diag.push(scale * clebsch_gordan_q0(j, k, m)?);
    }
    Ok(TensorOperator {
        j2,
        k,
        matrix: ComplexMatrix::diagonal(&diag),
    })
}

// --- construction ---------------------------------------------------------

/// Generated CSCO for a supported dimension: diagonal tensor operators plus
/// their conjugates under the MUB unitaries.
pub fn build_csco(n: usize) -> Result<CscoBasis> {
    build_csco_from(&build_mub(n)?)
}

/// Same, from an already-built MUB family.
pub fn build_csco_from(f: &MubFamily) -> Result<CscoBasis> {
    let n = f.dim();
    let j = (n as f64 - 1.0) / 2.0;
    let diag: Vec<ComplexMatrix> = (1..n as i64)
        .map(|k| tensor_diag(j, k).map(|t| t.matrix))
        .collect::<Result<_>>()?;
    let mut sets = vec![diag.clone()];
    for i in 2..=n + 1 {
        let u = basis_unitary(f, i)?;
        let ud = u.dagger();
        sets.push(diag.iter().map(|d| ud.mul(d).mul(&u)).collect());
    }
    Ok(CscoBasis::from_sets(n, sets))
}

/// The published operator matrices, verbatim, for n ∈ {2, 3, 4}.
pub fn reference_fixture(n: usize) -> Result<CscoBasis> {
    let sets = match n {
        2 => fixtures::pauli_sets(),
        3 => fixtures::spin1_sets(),
        4 => fixtures::spin32_sets(),
        _ => return Err(Error::UnsupportedDimension { dim: n }),
    };
    Ok(CscoBasis::from_sets(n, sets))
}

// --- joint eigenbases -----------------------------------------------------

/// Common eigenbasis of a family of commuting Hermitian operators, by
/// sequential diagonalisation with degenerate-subspace refinement. Returns
/// the basis (columns) and the eigenvalue tuple of each column.
pub fn joint_eigenbasis(ops: &[ComplexMatrix]) -> Result<(ComplexMatrix, Vec<Vec<f64>>)> {
    let n = ops
        .first()
        .map(|o| o.dim())
        .ok_or_else(|| Error::BadInput("no operators given".into()))?;
    // blocks of columns spanning current simultaneous eigenspaces
    let id = ComplexMatrix::identity(n);
    let mut blocks: Vec<Vec<Vec<Complex64>>> = vec![(0..n).map(|j| id.column(j)).collect()];
    for op in ops {
        let mut refined = Vec::new();
        for block in &blocks {
            let d = block.len();
            if d == 1 {
                refined.push(block.clone());
                continue;
            }
            // restrict op to the block and diagonalise
            let mut w = ComplexMatrix::zeros(d);
            for a in 0..d {
                let ov = op.apply(&block[a]);
                for b in 0..d {
                    w[(b, a)] = inner(&block[b], &ov);
                }
            }
            let eig = hermitian_eig(&w)?;
            let cols: Vec<Vec<Complex64>> = (0..d)
                .map(|c| {
                    let wc = eig.vectors.column(c);
                    let mut v = vec![Complex64::new(0.0, 0.0); n];
                    for (a, basis_vec) in block.iter().enumerate() {
                        for i in 0..n {
                            v[i] += basis_vec[i] * wc[a];
                        }
                    }
                    v
                })
                .collect();
            // split by eigenvalue clusters
            let scale = eig.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let mut start = 0;
            for c in 1..=d {
                if c == d || (eig.values[c] - eig.values[c - 1]).abs() > TOL.degeneracy_gap * scale.max(1.0) * 10.0
                {
                    refined.push(cols[start..c].to_vec());
                    start = c;
                }
            }
        }
        blocks = refined;
    }
    if blocks.iter().any(|b| b.len() != 1) {
        return Err(Error::BadInput(
            "operators do not define a non-degenerate joint eigenbasis".into(),
        ));
    }
    let mut basis = ComplexMatrix::zeros(n);
    let mut tuples = Vec::with_capacity(n);
    for (c, block) in blocks.iter().enumerate() {
        let v = &block[0];
        basis.set_column(c, v);
        tuples.push(ops.iter().map(|op| inner(v, &op.apply(v)).re).collect());
    }
    Ok((basis, tuples))
}

/// Joint eigenbasis with columns reordered so that column m carries the
/// eigenvalue tuple `alphabet.tuples[m]`.
pub fn eigenbasis_ordered(
    ops: &[ComplexMatrix],
    alphabet: &OutcomeAlphabet,
) -> Result<ComplexMatrix> {
    let (basis, tuples) = joint_eigenbasis(ops)?;
    let n = basis.dim();
    let mut ordered = ComplexMatrix::zeros(n);
    let mut used = vec![false; n];
    for m in 0..n {
        let target = &alphabet.tuples[m];
        let mut best = f64::INFINITY;
        let mut best_c = usize::MAX;
        for (c, t) in tuples.iter().enumerate() {
            if used[c] {
                continue;
            }
            let d = t
                .iter()
                .zip(target)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            if d < best {
                best = d;
                best_c = c;
            }
        }
        if best > 1e-6 {
            return Err(Error::BadInput(format!(
                "eigenvalue tuple mismatch against alphabet (deviation {best:e})"
            )));
        }
        used[best_c] = true;
        ordered.set_column(m, &basis.column(best_c));
    }
    Ok(ordered)
}

// --- validation -----------------------------------------------------------

/// Outcome of `validate_csco`.
#[derive(Debug, Clone, Serialize)]
pub struct CscoValidation {
    pub max_orthonormality_dev: f64,
    pub max_trace_dev: f64,
    pub max_commutator_norm: f64,
    pub max_ray_mismatch: f64,
    /// Ascending eigenvalues per set, per operator.
    pub spectra: Vec<Vec<Vec<f64>>>,
    pub pass: bool,
}

/// Checks orthonormality Tr(O_i O_j) = n·δ_ij, tracelessness, intra-set
/// commutators, and that each set's joint eigenbasis matches the MUB family
/// as a ray set. Passes iff every deviation is below 1e-9.
pub fn validate_csco(b: &CscoBasis, f: &MubFamily) -> Result<CscoValidation> {
    if b.dim != f.dim() {
        return Err(Error::DimMismatch {
            left: b.dim,
            right: f.dim(),
        });
    }
    let n = b.dim as f64;
    let ops: Vec<&ComplexMatrix> = b.operators().collect();

    let mut ortho_dev: f64 = 0.0;
    let mut trace_dev: f64 = 0.0;
    for (i, a) in ops.iter().enumerate() {
        trace_dev = trace_dev.max(a.trace().norm());
        for (j, c) in ops.iter().enumerate() {
            let t = frobenius_inner(a, c)?;
            let target = if i == j { n } else { 0.0 };
            ortho_dev = ortho_dev.max((t - Complex64::new(target, 0.0)).norm());
        }
    }

    let mut comm_norm: f64 = 0.0;
    for set in &b.sets {
        for a in set {
            for c in set {
                comm_norm = comm_norm.max(a.commutator(c).frobenius_norm());
            }
        }
    }

    let mut ray_mismatch: f64 = 0.0;
    let mut spectra = Vec::new();
    for (si, set) in b.sets.iter().enumerate() {
        let (basis, _) = joint_eigenbasis(set)?;
        let mub_rays = RaySet::from_columns(f.basis(si + 1)?);
        ray_mismatch = ray_mismatch.max(RaySet::from_columns(&basis).residual(&mub_rays));
        let mut set_spectra = Vec::new();
        for op in set {
            set_spectra.push(hermitian_eig(op)?.values);
        }
        spectra.push(set_spectra);
    }

    let limit = 1e-9;
    Ok(CscoValidation {
        max_orthonormality_dev: ortho_dev,
        max_trace_dev: trace_dev,
        max_commutator_norm: comm_norm,
        max_ray_mismatch: ray_mismatch,
        spectra,
        pass: ortho_dev < limit && trace_dev < limit && comm_norm < limit && ray_mismatch < limit,
    })
}

/// Max residual of projecting each fixture operator of set i onto the span
/// of the generated set i (sets aligned by index). Small iff the two bases
/// generate the same commuting-set subspaces.
pub fn span_residual(generated: &CscoBasis, fixture: &CscoBasis) -> Result<f64> {
    if generated.dim != fixture.dim {
        return Err(Error::DimMismatch {
            left: generated.dim,
            right: fixture.dim,
        });
    }
    let n = generated.dim as f64;
    let mut worst: f64 = 0.0;
    for (gset, fset) in generated.sets.iter().zip(&fixture.sets) {
        for fop in fset {
            // orthonormal basis of the span: gset (already trace-orthogonal, norm √n)
            let mut residual = fop.clone();
            for gop in gset {
                let coeff = frobenius_inner(gop, fop)? / n;
                residual = residual.sub(&gop.scale(coeff));
            }
            worst = worst.max(residual.frobenius_norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: build all coupled states |j3 m3> in the product
    // basis |j1 m1>|j2 m2> from the stretched state downwards, using lowering
    // operators and Condon-Shortley orthogonalisation. CG coefficients are
    // read off as expansion coefficients.
    fn cg_oracle(j1: f64, j2: f64, j3: f64, m1: f64, m2: f64, m3: f64) -> f64 {
        let d1 = (2.0 * j1 + 1.0).round() as usize;
        let d2 = (2.0 * j2 + 1.0).round() as usize;
        let dim = d1 * d2;
        let idx = |a: usize, b: usize| a * d2 + b;
        let mval = |j: f64, a: usize| j - a as f64;
        // lowering: J-|j m> = sqrt(j(j+1) - m(m-1)) |j m-1>
        let lower = |state: &[f64]| -> Vec<f64> {
            let mut out = vec![0.0; dim];
            for a in 0..d1 {
                for b in 0..d2 {
                    let amp = state[idx(a, b)];
                    if amp == 0.0 {
                        continue;
                    }
                    let (ma, mb) = (mval(j1, a), mval(j2, b));
                    if a + 1 < d1 {
                        out[idx(a + 1, b)] += amp * (j1 * (j1 + 1.0) - ma * (ma - 1.0)).sqrt();
                    }
                    if b + 1 < d2 {
                        out[idx(a, b + 1)] += amp * (j2 * (j2 + 1.0) - mb * (mb - 1.0)).sqrt();
                    }
                }
            }
            out
        };
        let normalise = |v: &mut Vec<f64>| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in v.iter_mut() {
                *x /= n;
            }
        };
        // coupled states keyed by (j3_index, m_level); build highest-j ladder
        // then orthogonalise at each m to get the lower-j heads.
        let jmax = j1 + j2;
        let jmin = (j1 - j2).abs();
        let mut heads: Vec<(f64, Vec<Vec<f64>>)> = Vec::new(); // (j, states for m=j..)
        let mut jcur = jmax;
        while jcur >= jmin - 1e-9 {
            let mut head = vec![0.0; dim];
            if (jcur - jmax).abs() < 1e-9 {
                head[idx(0, 0)] = 1.0; // stretched state
            } else {
                // orthogonal complement at m = jcur of all higher-j states
                // within the m = jcur subspace, which is 1-dimensional here
                let mut cands: Vec<usize> = Vec::new();
                for a in 0..d1 {
                    for b in 0..d2 {
                        if (mval(j1, a) + mval(j2, b) - jcur).abs() < 1e-9 {
                            cands.push(idx(a, b));
                        }
                    }
                }
                // start from an arbitrary vector in the subspace, project out
                let mut v = vec![0.0; dim];
                v[cands[0]] = 1.0;
                for (jh, states) in &heads {
                    let level = (jh - jcur).round() as usize;
                    let s = &states[level];
                    let ov: f64 = v.iter().zip(s).map(|(x, y)| x * y).sum();
                    for (x, y) in v.iter_mut().zip(s) {
                        *x -= ov * y;
                    }
                }
                normalise(&mut v);
                // Condon-Shortley: coefficient with maximal m1 is positive
                let lead = cands
                    .iter()
                    .copied()
                    .min_by_key(|&i| i / d2)
                    .unwrap();
                if v[lead] < 0.0 {
                    for x in v.iter_mut() {
                        *x = -*x;
                    }
                }
                head = v;
            }
            // ladder down
            let levels = (2.0 * jcur + 1.0).round() as usize;
            let mut states = vec![head];
            for _ in 1..levels {
                let mut nxt = lower(states.last().unwrap());
                normalise(&mut nxt);
                states.push(nxt);
            }
            heads.push((jcur, states));
            jcur -= 1.0;
        }
        // read off the coefficient
        let (_, states) = heads
            .iter()
            .find(|(jh, _)| (jh - j3).abs() < 1e-9)
            .expect("j3 out of range");
        let level = (j3 - m3).round() as usize;
        let a = (j1 - m1).round() as usize;
        let b = (j2 - m2).round() as usize;
        states[level][idx(a, b)]
    }

    #[test]
    fn cg_against_ladder_oracle() {
        for (j, kmax) in [(0.5, 1), (1.0, 2), (1.5, 3), (2.0, 4), (3.0, 6)] {
            for k in 1..=kmax {
                let mut m = j;
                while m >= -j - 1e-9 {
                    let got = clebsch_gordan_q0(j, k, m).unwrap();
                    let want = cg_oracle(j, k as f64, j, m, 0.0, m);
                    assert!(
                        (got - want).abs() < 1e-10,
                        "C({j},{k},{j};{m},0,{m}): got {got}, oracle {want}"
                    );
                    m -= 1.0;
                }
            }
        }
    }

    #[test]
    fn cg_known_values() {
        // tau^1_0 = sqrt(3/2) J_z at j=1 forces C(111;101) = 1/sqrt(2)
        let c = clebsch_gordan_q0(1.0, 1, 1.0).unwrap();
        assert!((c - 1.0 / 2f64.sqrt()).abs() < 1e-14);
        assert!(clebsch_gordan_q0(1.0, 1, 0.0).unwrap().abs() < 1e-15);
        // invalid quantum numbers
        assert!(clebsch_gordan_q0(1.0, 3, 0.0).is_err());
        assert!(clebsch_gordan_q0(1.0, 1, 0.4).is_err());
        assert!(clebsch_gordan_q0(1.5, 0, 0.5).is_err());
    }

    #[test]
    fn tensor_diag_matches_fixture_diagonals() {
        // (1,1) -> alpha_1, (1,2) -> alpha_2
        let a1 = tensor_diag(1.0, 1).unwrap().matrix;
        let a2 = tensor_diag(1.0, 2).unwrap().matrix;
        let spin1 = fixtures::spin1_sets();
        assert!(a1.sub(&spin1[0][0]).max_abs_entry() < 1e-12);
        assert!(a2.sub(&spin1[0][1]).max_abs_entry() < 1e-12);
        // (3/2, 1) -> beta_1
        let b1 = tensor_diag(1.5, 1).unwrap().matrix;
        let spin32 = fixtures::spin32_sets();
        assert!(b1.sub(&spin32[0][0]).max_abs_entry() < 1e-12);
    }

    #[test]
    fn tensor_diag_orthonormality() {
        for n in [2usize, 3, 4, 5, 7] {
            let j = (n as f64 - 1.0) / 2.0;
            let taus: Vec<_> = (1..n as i64)
                .map(|k| tensor_diag(j, k).unwrap().matrix)
                .collect();
            for (a, ta) in taus.iter().enumerate() {
                assert!(ta.trace().norm() < 1e-12);
                for (b, tb) in taus.iter().enumerate() {
                    let t = frobenius_inner(ta, tb).unwrap().re;
                    let target = if a == b { n as f64 } else { 0.0 };
                    assert!((t - target).abs() < 1e-10, "n={n} ({a},{b}) {t}");
                }
            }
        }
    }

    #[test]
    fn generated_csco_valid() {
        for n in [2usize, 3, 5, 7, 4] {
            let f = build_mub(n).unwrap();
            let b = build_csco_from(&f).unwrap();
            assert_eq!(b.sets.len(), n + 1);
            assert!(b.sets.iter().all(|s| s.len() == n - 1));
            let report = validate_csco(&b, &f).unwrap();
            assert!(report.pass, "n={n}: {report:?}");
        }
    }

    #[test]
    fn alphabet_identities() {
        for n in [2usize, 3, 4, 5, 7] {
            let b = build_csco(n).unwrap();
            assert!(
                b.alphabet.identity_deviation() < 1e-10,
                "alphabet identities fail at n={n}"
            );
        }
    }

    #[test]
    fn reference_alphabets() {
        let b3 = reference_fixture(3).unwrap();
        let expect3 = [
            [(1.5f64).sqrt(), (0.5f64).sqrt()],
            [0.0, -2.0 / 2f64.sqrt()],
            [-(1.5f64).sqrt(), (0.5f64).sqrt()],
        ];
        for (m, z) in expect3.iter().enumerate() {
            for (k, v) in z.iter().enumerate() {
                assert!((b3.alphabet.tuples[m][k] - v).abs() < 1e-12);
            }
        }
        let b4 = reference_fixture(4).unwrap();
        let q = (9.0f64 / 5.0).sqrt();
        let r = 1.0 / 5f64.sqrt();
        let expect4 = [
            [q, 1.0, r],
            [r, -1.0, -q],
            [-r, -1.0, q],
            [-q, 1.0, -r],
        ];
        for (m, z) in expect4.iter().enumerate() {
            for (k, v) in z.iter().enumerate() {
                assert!((b4.alphabet.tuples[m][k] - v).abs() < 1e-12);
            }
        }
        let b2 = reference_fixture(2).unwrap();
        assert_eq!(b2.alphabet.tuples, vec![vec![1.0], vec![-1.0]]);
    }

    #[test]
    fn fixtures_validate_against_mubs() {
        for n in [2usize, 3, 4] {
            let f = build_mub(n).unwrap();
            let b = reference_fixture(n).unwrap();
            let report = validate_csco(&b, &f).unwrap();
            assert!(report.pass, "fixture n={n}: {report:?}");
        }
    }

    #[test]
    fn corrupted_fixture_fails_commutation() {
        let mut b = reference_fixture(3).unwrap();
        let f = build_mub(3).unwrap();
        b.sets[1][0] = b.sets[2][0].clone(); // alpha_3 replaced by alpha_5
        let report = validate_csco(&b, &f);
        // either the joint eigenbasis no longer exists or the report fails
        match report {
            Ok(r) => assert!(!r.pass),
            Err(_) => {}
        }
    }

    #[test]
    fn generated_and_fixture_spans_agree() {
        for n in [2usize, 3, 4] {
            let gen = build_csco(n).unwrap();
            let fix = reference_fixture(n).unwrap();
            let r = span_residual(&gen, &fix).unwrap();
            assert!(r < 1e-9, "span residual {r} at n={n}");
        }
    }

    #[test]
    fn cross_set_trace_orthogonality() {
        for n in [2usize, 3, 4, 5] {
            let b = build_csco(n).unwrap();
            for (i, si) in b.sets.iter().enumerate() {
                for (j, sj) in b.sets.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    for a in si {
                        for c in sj {
                            let t = frobenius_inner(a, c).unwrap().norm();
                            assert!(t < 1e-10, "cross-set trace {t} at n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn csco_json_round_trip() {
        let b = reference_fixture(3).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        let back: CscoBasis = serde_json::from_str(&s).unwrap();
        assert_eq!(back.dim, 3);
        assert_eq!(back.alphabet, b.alphabet);
        assert_eq!(back.sets[1][0], b.sets[1][0]);
    }
}
