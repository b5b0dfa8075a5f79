//! Numerical radius computation with certified enclosures, an Orlicz
//! function engine, and evaluators for a catalog of numerical-radius
//! inequalities on dense complex matrices.

pub mod bounds;
pub mod enclosure;
pub mod eigmax;
pub mod matrix;
pub mod orlicz;
pub mod radius;

pub use bounds::{evaluate_bound, BoundError, BoundId, BoundParams, BoundReport, Verdict};
pub use enclosure::CertifiedValue;
pub use matrix::{ComplexMatrix, HermitianEig, MatrixError};
pub use orlicz::{FactorPair, OrliczError, OrliczFunction};
pub use radius::{numerical_radius, range_boundary_samples, RadiusError};
