//! Exact homological invariants of perfect complexes over finite products of
//! zero-dimensional monomial algebras, plus the combinatorics of finite
//! prime posets used to classify resolving subcategories.

pub mod algebra;
pub mod classify;
pub mod complex;
pub mod error;
pub mod ext;
pub mod field;
pub mod gen;
pub mod homology;
pub mod invariants;
pub mod koszul;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod spectrum;
pub mod verify;

pub use algebra::{LocalAlgebra, PrimeSite, ProductRing, RingElement};
pub use complex::{ChainMap, FreeComplex, LocalComplex, Triangle};
pub use error::{Error, Result};
pub use ext::ExtInt;
pub use homology::HomologyProfile;
