//! Exact-arithmetic toric geometry engine: integer lattice algebra,
//! polyhedral cones and fans, singularity classification, divisor class
//! and Picard groups, nef and Mori cones, and local flip models built from
//! single ray relations. Everything is computed over arbitrary-precision
//! integers and rationals; no floating point anywhere.

pub mod builders;
pub mod cone;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod flip;
#[allow(clippy::needless_range_loop)] // pivot loops index two rows at once
pub mod matrix;
pub mod nef;
pub mod report;
pub mod scenario;
pub mod singularity;
pub mod suite;

pub use error::{Result, ToricError};
