//! Matching fields for Grassmannians and partial flag varieties, with the
//! machinery needed to decide when they cut out toric degenerations: exact
//! linear algebra and linear programming, polyhedral geometry, Groebner and
//! SAGBI bases, Newton-Okounkov bodies, matroid subdivisions of
//! hypersimplices, algebraic matroids, and tope fields. All arithmetic is
//! exact (arbitrary-precision rationals); every operation is deterministic.

pub mod error;
pub mod linalg;
pub mod lp;
pub mod matching_field;
pub mod matroid;
pub mod pluecker;
pub mod poly;
pub mod polyhedra;
pub mod tope;

pub use error::{Error, Limits};
