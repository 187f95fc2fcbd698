//! Hermitian eigendecomposition for small dense complex matrices.
//!
//! Householder reduction to complex Hermitian tridiagonal form, a diagonal
//! phase similarity making the subdiagonal real, then implicit-shift QL on
//! the real tridiagonal with the rotations accumulated into the complex
//! transformation matrix.

use num_complex::Complex64;

use crate::error::Error;
use crate::numerics::{inner, ComplexMatrix};
use crate::tol::TOL;
use crate::Result;

const MAX_QL_SWEEPS: usize = 64;

/// Eigenvalues ascending; `vectors` holds the corresponding unit
/// eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    /// ‖V Λ V† − M‖_F for the given source matrix.
    pub fn reconstruction_residual(&self, m: &ComplexMatrix) -> f64 {
        let n = m.dim();
        let mut rec = ComplexMatrix::zeros(n);
        for k in 0..n {
            let v = self.vectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    rec[(i, j)] += v[i] * v[j].conj() * self.values[k];
                }
            }
        }
        rec.sub(m).frobenius_norm()
    }
}

/// Eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenSystem> {
    let dev = m.hermiticity_deviation();
    if dev > TOL.hermitian {
        return Err(Error::NotHermitian {
            deviation: dev,
            tolerance: TOL.hermitian,
        });
    }
    let n = m.dim();
    // symmetrise so roundoff in the input cannot leak into the iteration
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }

    let mut q = ComplexMatrix::identity(n);
    householder_tridiagonalise(&mut a, &mut q);

    // absorb subdiagonal phases: T = D T_real D† with D diagonal unitary
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n]; // e[i] couples i and i+1; e[n-1] unused
    let mut phase = Complex64::new(1.0, 0.0);
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n {
        d[i] = a[(i, i)].re;
        phases[i] = phase;
        if i + 1 < n {
            let sub = a[(i + 1, i)];
            e[i] = sub.norm();
            if e[i] > 0.0 {
                phase *= sub / e[i];
            }
        }
    }
    for (j, ph) in phases.iter().enumerate() {
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }

    ql_implicit(&mut d, &mut e, &mut q)?;
    sort_ascending(&mut d, &mut q);

    Ok(EigenSystem {
        values: d,
        vectors: q,
    })
}

/// e^{isM} for Hermitian M, via the spectral decomposition.
pub fn unitary_exp(m: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for k in 0..n {
        let ph = Complex64::new(0.0, s * eig.values[k]).exp();
        let v = eig.vectors.column(k);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += v[i] * v[j].conj() * ph;
            }
        }
    }
    Ok(out)
}

fn householder_tridiagonalise(a: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let n = a.dim();
    for k in 0..n.saturating_sub(2) {
        // reflect column k below the subdiagonal onto the subdiagonal entry
        let x: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let ph = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -ph * norm;
        let mut u = x.clone();
        u[0] -= alpha;
        let unorm2: f64 = u.iter().map(|z| z.norm_sqr()).sum();
        if unorm2 < f64::MIN_POSITIVE {
            continue;
        }
        let beta = 2.0 / unorm2;

        // A := P A P with P = I − beta·u u† acting on rows/cols k+1..
        // w = beta·A u restricted to the trailing block
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (jj, uj) in u.iter().enumerate() {
                s += a[(i, k + 1 + jj)] * uj;
            }
            w[i] = s * beta;
        }
        // column update: A := A − w u† (on columns k+1..)
        for i in 0..n {
            for (jj, uj) in u.iter().enumerate() {
                let t = w[i] * uj.conj();
                a[(i, k + 1 + jj)] -= t;
            }
        }
        // row update: A := A − u v† where v = beta·A† u (A now partially updated)
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (ii, ui) in u.iter().enumerate() {
                s += a[(k + 1 + ii, j)].conj() * ui;
            }
            v[j] = s * beta;
        }
        for (ii, ui) in u.iter().enumerate() {
            for j in 0..n {
                let t = ui * v[j].conj();
                a[(k + 1 + ii, j)] -= t;
            }
        }
        // Q := Q P (columns k+1..)
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (jj, uj) in u.iter().enumerate() {
                s += q[(i, k + 1 + jj)] * uj;
            }
            s *= beta;
            for (jj, uj) in u.iter().enumerate() {
                let t = s * uj.conj();
                q[(i, k + 1 + jj)] -= t;
            }
        }
    }
}

/// Implicit-shift QL on a real symmetric tridiagonal (d, e), rotations
/// accumulated into the complex columns of z.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut ComplexMatrix) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_SWEEPS {
                return Err(Error::NoConvergence {
                    iterations: MAX_QL_SWEEPS,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let f = z[(k, i + 1)];
                    z[(k, i + 1)] = z[(k, i)] * s + f * c;
                    z[(k, i)] = z[(k, i)] * c - f * s;
                }
            }
            if r == 0.0 && i > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn sort_ascending(d: &mut [f64], z: &mut ComplexMatrix) {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let cols: Vec<Vec<Complex64>> = order.iter().map(|&k| z.column(k)).collect();
    d.copy_from_slice(&vals);
    for (j, col) in cols.iter().enumerate() {
        z.set_column(j, col);
    }
}

/// Gram-matrix deviation from identity, max entry.
pub fn gram_deviation(v: &ComplexMatrix) -> f64 {
    let n = v.dim();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let g = inner(&v.column(i), &v.column(j));
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((g - Complex64::new(target, 0.0)).norm());
        }
    }
    dev
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0])
    }

    fn random_hermitian(n: usize, rng: &mut Rng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(rng.gaussian(), 0.0);
            for j in i + 1..n {
                let z = Complex64::new(rng.gaussian(), rng.gaussian());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn diagonal_spectrum() {
        let z = ComplexMatrix::diagonal(&[1.0, -1.0]);
        let eig = hermitian_eig(&z).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_x_spectrum() {
        let eig = hermitian_eig(&pauli_x()).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
        // eigenvectors are (1, ∓1)/√2 up to phase
        for k in 0..2 {
            let v = eig.vectors.column(k);
            assert!((v[0].norm() - 1.0 / 2f64.sqrt()).abs() < 1e-12);
            assert!((v[1].norm() - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = pauli_x();
        m[(0, 1)] = Complex64::new(2.0, 0.0);
        assert!(matches!(
            hermitian_eig(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = Rng::new(1234);
        for n in [2usize, 3, 4, 5, 7, 8, 12, 16] {
            for _ in 0..20 {
                let m = random_hermitian(n, &mut rng);
                let eig = hermitian_eig(&m).unwrap();
                let scale = m.frobenius_norm().max(1.0);
                assert!(
                    eig.reconstruction_residual(&m) <= 1e-9 * scale,
                    "residual too large at n={n}"
                );
                assert!(gram_deviation(&eig.vectors) < 1e-10);
                for k in 1..n {
                    assert!(eig.values[k] >= eig.values[k - 1]);
                }
            }
        }
    }

    #[test]
    fn degenerate_matrix() {
        // alpha_2 = diag(1, -2, 1)/sqrt(2): doubly degenerate eigenvalue
        let s = 1.0 / 2f64.sqrt();
        let m = ComplexMatrix::diagonal(&[s, -2.0 * s, s]);
        let eig = hermitian_eig(&m).unwrap();
        assert!((eig.values[0] + 2.0 * s).abs() < 1e-12);
        assert!((eig.values[1] - s).abs() < 1e-12);
        assert!((eig.values[2] - s).abs() < 1e-12);
        assert!(gram_deviation(&eig.vectors) < 1e-12);
    }

    #[test]
    fn exp_pauli_x_pi() {
        let u = unitary_exp(&pauli_x(), std::f64::consts::PI).unwrap();
        let target = ComplexMatrix::identity(2).scale_re(-1.0);
        assert!(u.sub(&target).max_abs_entry() < 1e-12);
    }

    #[test]
    fn exp_zero_is_identity() {
        let mut rng = Rng::new(5);
        let m = random_hermitian(4, &mut rng);
        let u = unitary_exp(&m, 0.0).unwrap();
        assert!(u.sub(&ComplexMatrix::identity(4)).max_abs_entry() < 1e-12);
    }

    #[test]
    fn exp_pauli_z_matches_euler_form() {
        let z = ComplexMatrix::diagonal(&[1.0, -1.0]);
        let t = 0.731;
        let u = unitary_exp(&z, t).unwrap();
        // I cos t + i sigma_z sin t
        let target = ComplexMatrix::from_entries(
            2,
            vec![
                Complex64::new(t.cos(), t.sin()),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(t.cos(), -t.sin()),
            ],
        );
        assert!(u.sub(&target).max_abs_entry() < 1e-14);
    }

    #[test]
    fn exp_inverse_pairs() {
        let mut rng = Rng::new(99);
        for _ in 0..10 {
            let m = random_hermitian(5, &mut rng);
            let s = rng.uniform_in(-3.0, 3.0);
            let u = unitary_exp(&m, s).unwrap();
            let uinv = unitary_exp(&m, -s).unwrap();
            assert!(u.mul(&uinv).sub(&ComplexMatrix::identity(5)).max_abs_entry() < 1e-10);
            assert!(u.unitarity_deviation() < 1e-10);
        }
    }
}
