//! Max-plus convexity on `ℝ^n` with a strictly positive unit `u`.
//!
//! The crate covers the lattice/norm kernel ([`riesz`]), the parametrized
//! geodesics of the Hilbert affine metric ([`geodesic`]), max-plus polytopes
//! ([`hull`]), Hausdorff-metric operators on compact sets ([`hyperspace`]),
//! best-approximation and fixed-point search ([`approx`]), and a deterministic
//! SVG renderer for planar figures ([`render`]).

pub mod approx;
pub mod cli;
pub mod error;
pub mod geodesic;
pub mod hull;
pub mod hyperspace;
pub mod io;
pub mod render;
pub mod riesz;
pub mod verify;

pub use error::{Error, Result};
pub use geodesic::GeodesicSpan;
pub use hull::{Membership, Nearest, Polytope};
pub use hyperspace::CompactSet;
pub use riesz::{Metric, Point, SpaceCtx};
