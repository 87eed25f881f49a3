//! Exact computation of Atiyah cocycles and classes for Lie pairs and
//! infinitesimal ideal systems.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, coefficient
//! functions on charts are polynomials, and every verdict is decided by exact
//! linear algebra (with Fredholm certificates for negative answers).
//!
//! Module map:
//! - [`rat`], [`poly`], [`matrix`], [`linalg`], [`parse`]: the arithmetic
//!   substrate.
//! - [`liepair`]: Lie pairs over a point — Bott representation, extensions,
//!   Atiyah cocycle, Chevalley-Eilenberg differential, exact vanishing
//!   decision.
//! - [`chart`]: Lie algebroids with polynomial coefficients over a coordinate
//!   chart — infinitesimal-ideal-system checks, Atiyah cocycles of flat
//!   partial connections, basic connections, the anchor chain map, and
//!   coordinate fibrations.
//! - [`catalog`]: deterministic example generators and the exhaustive
//!   nonvanishing search.
//! - [`report`]: canonical (byte-stable) report construction.

pub mod catalog;
pub mod chart;
pub mod linalg;
pub mod liepair;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod report;

pub use matrix::Mat;
pub use poly::Poly;
pub use rat::Rat;
