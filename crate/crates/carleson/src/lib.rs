//! Computational toolkit for Beurling-Carleson sets on the unit circle:
//! gauge norms in their four comparable forms, grating and corona
//! decompositions of atomic measures, singular-inner-function diagnostics,
//! generators for the standard sharpness constructions, and the radial
//! machinery for boundary blow-up solutions of `Delta u = u^p (u > 0)`.

pub mod bcnorm;
pub mod circle;
pub mod corona;
pub mod error;
pub mod gauge;
pub mod generators;
pub mod inner;
pub mod pde;
pub mod quad;
pub mod report;
pub mod roberts;
pub mod suites;

pub use circle::{Angle, Arc, AtomicMeasure, ClosedSet, DyadicArc};
pub use error::{Error, Result};
pub use gauge::{Gauge, PhiDyadicGrid};
pub use report::{Class, Estimate};
