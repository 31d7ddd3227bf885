//! Exact computations for three-dimensional hypersurface singularities given by
//! (quasihomogeneous) polynomials in `t, z, x, y`.
//!
//! The pipeline goes from a textual polynomial ([`polyexpr`]) through Newton
//! polyhedron tests ([`lattice`]), weight detection and discrepancies
//! ([`quasihom`]), weighted projective reduction ([`wps`]) to complement-index
//! arithmetic ([`complements`]). [`rotation`] enumerates pivot monomials of a
//! rotating weight plane and [`catalog`] batch-verifies a dataset of
//! classification rows.

pub mod catalog;
pub mod complements;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod polyexpr;
pub mod quasihom;
pub mod rational;
pub mod rotation;
pub mod wps;

pub use error::{Error, Result};
pub use rational::Q;
