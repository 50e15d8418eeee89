//! Quiver Hecke (KLR) algebras of simply-laced graphs: exact normal forms,
//! the faithful polynomial representation, characters of divided-power
//! projectives, the bilinear form on the Grothendieck group, and graded
//! dimensions of quotients by two-sided ideals.

pub mod algebra;
pub mod checks;
pub mod element;
pub mod error;
pub mod gdim;
pub mod graph;
pub mod grothendieck;
pub mod laurent;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod quotients;
pub mod seq;

pub use algebra::{GeneratorWord, KlrAlgebra, Token};
pub use element::{BasisKey, Degree, KlrElement};
pub use error::{KlrError, Result};
pub use gdim::GradedDim;
pub use graph::{CartanGraph, Vertex};
pub use laurent::LaurentPoly;
pub use perm::Permutation;
pub use seq::{DividedSequence, Sequence, Weight};
pub use poly::{MPoly, Orientation, PolyRep, PolyVector};
