pub mod error;
pub mod exactlin;

pub use error::{Error, Result};
pub use exactlin::{Field, FieldKind, Matrix, PartialFlag, Scalar, Subspace, SymplecticForm};
pub mod weyl;
pub mod profile;
pub mod schubert;
pub mod conormal;
pub mod orbital;
pub mod oracle;
