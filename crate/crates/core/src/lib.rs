//! Integral cohomology rings of complex projective towers.
//!
//! * [`poly`]: exact sparse polynomials in degree-2 generators.
//! * [`tower`]: quotient presentations from tower data, normal forms,
//!   graded bases, Poincaré polynomials and duality pairings.
//! * [`chern`]: Chern classes of Whitney sums and line-bundle twists.
//! * [`iso`]: verification and bounded search for graded ring isomorphisms.
//! * [`catalog`]: named tower families and classification sweeps.
//! * [`json`]: the `cpt/1` JSON formats.

pub mod cache;
pub mod catalog;
pub mod chern;
pub mod cli;
pub mod error;
pub mod iso;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod tower;

/// Tool version, recorded in reports and cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use error::{CatalogError, ChernError, FormatError, IsoError, PolyError, TowerError};
pub use matrix::IntMatrix;
pub use poly::{Monomial, Poly};
pub use tower::{PoincarePoly, RingPresentation, Stage, TowerSpec};
