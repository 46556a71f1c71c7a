//! Exact computation of algebraic periods for homology models of surface
//! homeomorphisms.
//!
//! The crate works entirely at the level of the map induced on first
//! homology (plus the Euler-characteristic data fixed by the surface kind).
//! From such a model it computes Lefschetz numbers of iterates, their
//! periodic expansion (Dold coefficients), the set of algebraic periods and
//! the minimal set of Lefschetz periods. It also builds explicit integer
//! models realizing any finite set of algebraic periods, manipulates
//! Lefschetz zeta functions written as products of binomials, and counts
//! the partition census of periodic mapping classes.
//!
//! All arithmetic is exact and uses arbitrary-precision integers; the only
//! floating-point value in the crate is the Hardy–Ramanujan estimate in
//! [`census`].

pub mod arith;
pub mod census;
pub mod error;
pub mod lefschetz;
pub mod matrix;
pub mod poly;
pub mod realize;
pub mod zeta;

pub use arith::{DoldClass, LefschetzSequence};
pub use error::{Error, Result};
pub use lefschetz::{HomologyModel, SurfaceKind};
pub use matrix::{IntMatrix, SymplecticForm};
pub use poly::IntPolynomial;
pub use realize::{ReversingMode, SurfaceModel, TargetSet};
pub use zeta::{PowerSeries, ZetaFactorization};
