//! Exact computations with quantum tangent spaces of cominuscule quantum
//! flag manifolds and the dual braiding map on their tensor squares.
//!
//! All arithmetic is over the rational function field Q(q); nothing is
//! floating point.

pub mod cartan;
pub mod linalg;
pub mod scalar;
pub mod uqg;
pub mod tangent;
pub mod sigma;
pub mod claims;
