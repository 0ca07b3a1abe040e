//! Quadratic all-pairs reference.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{squared_distance, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Farthest {
    pub distance: f64,
    /// Exact maximum of `squared_distance`, before the square root.
    pub distance2: f64,
    pub pair: (Point, Point),
}

/// Compares every pair `i < j` and keeps the first maximum in that scan
/// order. Deliberately the plain double loop; do not optimize.
pub fn brute_force_diameter(points: &[Point]) -> Result<Farthest> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let mut best = squared_distance(points[0], points[1]);
    let mut pair = (0, 1);
    for i in 0..points.len() - 1 {
        for j in i + 1..points.len() {
            let d = squared_distance(points[i], points[j]);
            if best < d {
                best = d;
                pair = (i, j);
            }
        }
    }
    Ok(Farthest {
        distance: best.sqrt(),
        distance2: best,
        pair: (points[pair.0], points[pair.1]),
    })
}
