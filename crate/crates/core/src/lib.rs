//! Visual angle metric of the upper half-plane.
//!
//! The crate evaluates `v(a, b) = sup { ∠(a, x, b) : x ∈ ℝ }` for points of the
//! upper half-plane in closed form, together with the construction points of the
//! underlying geometry, a brute-force oracle, and the quasiconformal distortion
//! functions that bound how the metric changes under quasiregular maps.

// `!(x > 0.0)` style guards reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod distortion;
pub mod error;
pub mod geom;
pub mod hyperbolic;
pub mod sampling;
pub mod visual_angle;

pub use error::{Error, Result};
pub use geom::{Circle, ComplexPoint, ExtPoint, RealPoint};
pub use hyperbolic::{Geodesic, GeodesicData, HalfPlanePair};
