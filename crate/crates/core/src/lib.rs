//! Exact construction and verification of the basic polynomial invariants
//! of the reflection groups `[3,4,3]` (order 1152) and `[3,3,5]` (order
//! 14400) acting on `R[x0, x1, x2, x3]`.

pub mod driver;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod klein;
pub mod linalg;
pub mod listed;
pub mod matrix;
pub mod mpoly;
pub mod numfield;
pub mod rational;
pub mod reynolds;
pub mod routes;
pub mod tensor;

pub use error::{Error, Result};
pub use matrix::{Matrix2, Matrix4};
pub use mpoly::{MPoly, Monomial, Space};
pub use numfield::{FieldElement, Rational};
