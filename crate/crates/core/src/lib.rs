//! Stanley–Reisner rings of simplicial complexes: generalized complete
//! intersections, linear resolutions of powers and finite local
//! cohomology, decided combinatorially and checked against exact
//! homological oracles.

pub mod classify;
pub mod complex;
pub mod crossval;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod homology;
pub mod ideal;
pub mod io;
pub mod oracles;
pub mod symmetry;

pub use complex::{Face, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use graph::{Graph, PathMode};
pub use homology::FieldSpec;
pub use ideal::{Monomial, MonomialIdeal, SignedDegree};
