//! Exact integer linear algebra: Smith normal form, kernels, preimages and
//! invariant factors of lattice quotients.

mod integer;
mod invariants;
mod lattice;
mod matrix;
mod smith;
pub(crate) mod sparse;

use thiserror::Error;

pub use integer::Integer;
pub use invariants::{exponent, AbelianInvariants, Exponent};
pub use lattice::{
    cokernel_invariants, contains_lattice, free_homology, image_basis, kernel, quotient_invariants,
    same_lattice, solve_preimage, ColumnEchelon,
};
pub use matrix::IntMatrix;
pub use smith::{elementary_divisors, rank, smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("column {column} of the right-hand side is not in the integer column span")]
    NoSolution { column: usize },
    #[error("column {column} of the sublattice is not contained in the ambient lattice")]
    SublatticeViolation { column: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
}
