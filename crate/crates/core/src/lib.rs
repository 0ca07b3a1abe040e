//! Exact diameter (farthest pair) of planar point sets.
//!
//! The pipeline discards points that cannot take part in the farthest pair
//! before doing any quadratic work:
//!
//! 1. one pass finds the bounding box and the (up to four) extremal points,
//!    and everything strictly inside their quadrilateral is dropped;
//! 2. the remaining points are swept once through eight pseudo-angular
//!    sectors around the box center, each sector keeping the point closest
//!    to its box corner; points strictly inside the fan of triangles spanned
//!    by those points are dropped, and a second pass rechecks the kept points
//!    against the final polygon;
//! 3. survivors are scattered into a `k x k` grid, cell pairs whose largest
//!    possible distance is below the best guaranteed one are pruned, and the
//!    rest are compared point by point.
//!
//! [`oracle::brute_force_diameter`] is the quadratic reference used in tests
//! and benchmarks; [`generators`] produces the seeded benchmark datasets.

pub mod bench;
pub mod diameter;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod grid;
pub mod oracle;
pub mod pointfile;
pub mod polar;

pub use diameter::{default_k, diameter, DiameterResult, DiameterStats, PipelineConfig};
pub use error::{Error, Result};
pub use generators::{generate, DatasetSpec, Distribution};
pub use geometry::{Aabb, Point};
pub use oracle::brute_force_diameter;
