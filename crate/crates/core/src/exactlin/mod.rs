//! Exact linear algebra over the rationals and prime fields.

mod field;
mod flag;
pub(crate) mod matrix;
mod subspace;
mod symplectic;

pub use field::{Field, FieldKind, Scalar, MAX_PRIME};
pub use flag::PartialFlag;
pub use matrix::Matrix;
pub use subspace::Subspace;
pub use symplectic::SymplecticForm;
