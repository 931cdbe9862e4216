//! Weighted-l1 algebras given by structure constants, their projective tensor
//! squares, symmetric approximate diagonals, and derivation-type maps into
//! finite-dimensional bimodules.
//!
//! Everything is generic over [`Scalar`], which is implemented for exact
//! [`Rational`] arithmetic and for `f64`.

pub mod algebra;
pub mod bimodule;
pub mod derivations;
pub mod diagonals;
pub mod element;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod map;
pub mod scalar;
pub mod tensor;
pub mod witness;

pub use algebra::{AlgebraPresentation, DirectSum};
pub use bimodule::BimodulePresentation;
pub use element::{Element, SpaceId};
pub use error::{Error, Result};
pub use group::GroupTable;
pub use map::LinearMap;
pub use scalar::{Rational, Scalar, ScalarMode};
pub use tensor::Tensor2;
