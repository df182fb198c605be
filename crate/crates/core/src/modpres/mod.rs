//! Presented `Z[G]`-modules, free chain complexes over `Z[G]`, lattice
//! complexes and cochain complexes of presented abelian groups.

mod cochain;
mod complex;
mod presentation;

pub use cochain::PresentedCochainComplex;
pub use complex::{dual_complex, tensor_complex, FreeChainComplex, LatticeComplex};
pub(crate) use presentation::ActionTable;
pub use presentation::{free_actions, ModulePresentation, Violation};
