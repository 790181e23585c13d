//! Exact computation with finite-dimensional Hopf algebras, module
//! coalgebras and their twistings, crossed coproducts, twisted 2-cocycles,
//! equivalences of twistings and Hopf-Galois coextensions.
//!
//! Every structure is a bundle of structure-constant matrices over ℚ or
//! 𝔽_p, and every identity is checked by exact matrix equality.

pub mod catalog;
pub mod cocycle;
pub mod crossed;
pub mod doc;
pub mod equivalence;
pub mod error;
pub mod expr;
pub mod galois;
pub mod hopf;
pub mod linalg;
pub mod linmap;
pub mod modcoalg;
pub mod report;
pub mod scalar;
pub mod space;
pub mod suite;
pub mod twisting;
pub mod wiring;

pub use error::{Error, Result};
pub use hopf::{Algebra, Coalgebra, Convolution, HopfAlgebra};
pub use linmap::LinMap;
pub use modcoalg::{ModuleCoalgebra, QuotientBase, RelHopfModule, Side};
pub use report::CheckReport;
pub use scalar::{FieldSpec, Scalar};
pub use space::Space;
pub use wiring::Wiring;
