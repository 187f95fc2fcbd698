//! Qubit MUBs: the eigenbases of sigma_z, sigma_x, sigma_y.

use num_complex::Complex64;

use crate::error::Error;
use crate::numerics::ComplexMatrix;
use crate::mub::MubConstruction;
use crate::Result;

pub struct PauliBases;

impl MubConstruction for PauliBases {
    fn name(&self) -> &'static str {
        "pauli"
    }

    fn supports(&self, dim: usize) -> bool {
        dim == 2
    }

    fn build(&self, dim: usize) -> Result<Vec<ComplexMatrix>> {
        if dim != 2 {
            return Err(Error::UnsupportedDimension { dim });
        }
        let s = 1.0 / 2f64.sqrt();
        let x_basis = ComplexMatrix::from_real(2, &[s, s, s, -s]);
        let y_basis = ComplexMatrix::from_entries(
            2,
            vec![
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(0.0, s),
                Complex64::new(0.0, -s),
            ],
        );
        Ok(vec![ComplexMatrix::identity(2), x_basis, y_basis])
    }
}
