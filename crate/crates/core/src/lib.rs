//! Exact-arithmetic star-complement toolkit.
//!
//! * [`graph`]: simple graphs, constructions, graph6 and canonical forms.
//! * [`exactla`]: rational matrices, characteristic and minimal polynomials,
//!   eigenvalue multiplicities and the resolvent form `xᵀ(μI − A)⁻¹y`.
//! * [`starset`]: star-set certificates, exhaustive search and eigenspaces.
//! * [`extender`]: maximal graphs with a prescribed star complement.
//! * [`multipartite`]: closed forms for the star complement `K_s ∇ tK_1`.

pub mod exactla;
pub mod extender;
pub mod graph;
pub mod multipartite;
mod parallel;
pub mod starset;

pub use exactla::{Matrix, Polynomial, Rational};
pub use graph::Graph;
