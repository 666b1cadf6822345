//! Exact computations for finite-dimensional bound quiver algebras.

pub mod dualnum;
pub mod endo;
pub mod error;
pub mod format;
pub mod gproj;
pub mod homol;
pub mod linalg;
pub mod modcat;
pub mod qalg;
pub mod scenario;
pub mod sgcat;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar};
pub use qalg::{Algebra, NakayamaSpec, PathWord, Quiver, RelationElement};
