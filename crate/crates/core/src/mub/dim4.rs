//! n = 4 MUBs from the spin-3/2 operator fixture.
//!
//! GF(4) arithmetic is not implemented; the five bases are the joint
//! eigenbases of the published spin-3/2 commuting triples, with columns
//! ordered so that column m carries the m-th outcome tuple of the shared
//! alphabet.

use crate::csco::{eigenbasis_ordered, fixtures, OutcomeAlphabet};
use crate::error::Error;
use crate::mub::MubConstruction;
use crate::numerics::ComplexMatrix;
use crate::Result;

pub struct Spin32Fixture;

impl MubConstruction for Spin32Fixture {
    fn name(&self) -> &'static str {
        "spin32-fixture"
    }

    fn supports(&self, dim: usize) -> bool {
        dim == 4
    }

    fn build(&self, dim: usize) -> Result<Vec<ComplexMatrix>> {
        if dim != 4 {
            return Err(Error::UnsupportedDimension { dim });
        }
        let sets = fixtures::spin32_sets();
        let alphabet = OutcomeAlphabet {
            dim: 4,
            tuples: (0..4)
                .map(|m| sets[0].iter().map(|op| op[(m, m)].re).collect())
                .collect(),
        };
        let mut bases = vec![ComplexMatrix::identity(4)];
        for set in &sets[1..] {
            bases.push(eigenbasis_ordered(set, &alphabet)?);
        }
        Ok(bases)
    }
}
