//! Finite T0 spaces as posets: cores, collapses, qc-reductions, strong
//! asphericity, and the simplicial and algebraic tools used to certify them.

pub mod algebra;
pub mod aspherical;
pub mod certificate;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod generate;
pub mod iso;
pub mod poset;
pub mod qc;
pub mod reduction;
pub mod search;

pub use algebra::{GroupPresentation, HomologySummary, IntegerMatrix};
pub use certificate::{Certificate, Verdict};
pub use complex::{CollapseSequence, FreePair, SimplicialComplex};
pub use error::{Error, Result};
pub use poset::{FiniteSpace, Mask, Subspace};
pub use reduction::{MoveKind, ReductionMove, ReductionTrace};
pub use search::{Budget, SearchOutcome, DEFAULT_BUDGET};
