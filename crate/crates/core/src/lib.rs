//! Exact-arithmetic toolkit for triangular matrix categories.
//!
//! Given two finite K-linear categories 𝒯 and 𝒰 (typically path categories
//! of quivers with relations) and a bimodule M over 𝒰 ⊗ 𝒯ᵒᵖ, this crate
//! constructs the triangular matrix category Λ = [𝒯 0; M 𝒰], computes its
//! radical, realizes the equivalence between Λ-modules and comma-category
//! triples (A, f, B), the adjoint pair (𝔽, 𝔾), projectives, and the duality
//! square, and ships the quiver applications: splitting torsion pairs,
//! one-point extensions, and Hom/Ext¹ matrix categories.
//!
//! All arithmetic is exact (arbitrary-precision rationals or prime fields);
//! every construction is deterministic, and the structural theorems are
//! available as machine-checkable property suites (see [`suites`]).

pub mod algebra;
pub mod apps;
pub mod bimodule;
pub mod category;
pub mod comma;
pub mod duality;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod json;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod suites;
pub mod trimat;

pub use algebra::FiniteAlgebra;
pub use bimodule::Bimodule;
pub use category::{FormalSumObject, LinearCategory};
pub use comma::{ModuleTriple, TripleMorphism};
pub use error::Error;
pub use field::{Field, Scalar};
pub use linalg::{LinearMap, VectorSpace};
pub use module::{FiniteModule, NatTransform};
pub use quiver::QuiverPresentation;
pub use trimat::LambdaCategory;
