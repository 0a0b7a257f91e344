//! Steklov eigenvalues of finite graphs with boundary, with upper bounds for
//! subgraphs of Cayley graphs of groups with polynomial growth.
//!
//! The pipeline: enumerate balls in a Cayley graph ([`cayley`]), induce a
//! graph with boundary from a finite vertex subset ([`graph`]), compute its
//! Dirichlet-to-Neumann spectrum ([`steklov`]), and compare σ₁ against the
//! volume, isoperimetric and test-function bounds ([`bounds`]).

pub mod bounds;
pub mod cayley;
pub mod error;
pub mod families;
pub mod fmt;
pub mod graph;
pub mod linalg;
pub mod par;
pub mod steklov;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{GraphWithBoundary, InducedSubsetSpec, Vertex};
pub use par::Execution;
