//! Wootters–Fields MUBs for odd prime dimensions.
//!
//! Basis a (a = 0..n−1) has vectors with components ω^{a k² + m k}/√n,
//! ω = e^{2πi/n}. For n = 3 the exponent labels are ordered (0, 2, 1) so
//! that bases 2, 3, 4 coincide, as ray sets, with the columns of the
//! adjoints of the standard spin-1 inter-basis unitaries.

use num_complex::Complex64;

use crate::error::Error;
use crate::mub::MubConstruction;
use crate::numerics::ComplexMatrix;
use crate::Result;

const SUPPORTED: [usize; 5] = [3, 5, 7, 11, 13];

pub struct WoottersFields;

impl MubConstruction for WoottersFields {
    fn name(&self) -> &'static str {
        "wootters-fields"
    }

    fn supports(&self, dim: usize) -> bool {
        SUPPORTED.contains(&dim)
    }

    fn build(&self, dim: usize) -> Result<Vec<ComplexMatrix>> {
        if !self.supports(dim) {
            return Err(Error::UnsupportedDimension { dim });
        }
        let n = dim;
        let mut bases = vec![ComplexMatrix::identity(n)];
        let order: Vec<usize> = if n == 3 {
            vec![0, 2, 1]
        } else {
            (0..n).collect()
        };
        for &a in &order {
            let mut b = ComplexMatrix::zeros(n);
            for m in 0..n {
                for k in 0..n {
                    // exponent mod n keeps the phase argument small
                    let exp = (a * k * k + m * k) % n;
                    let phase = 2.0 * std::f64::consts::PI * exp as f64 / n as f64;
                    b[(k, m)] = Complex64::new(0.0, phase).exp() / (n as f64).sqrt();
                }
            }
            bases.push(b);
        }
        Ok(bases)
    }
}
