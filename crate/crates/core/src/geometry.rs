//! Planar primitives shared by every phase of the pipeline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

/// Squared Euclidean distance. Every comparison in the crate works on this
/// value; the square root is taken once, when a result is reported.
#[inline]
pub fn squared_distance(a: Point, b: Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aabb {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Aabb {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        debug_assert!(x_min <= x_max && y_min <= y_max);
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    /// Tight box around `points`, `None` when empty.
    pub fn from_points(points: &[Point]) -> Option<Self> {
        let (first, rest) = points.split_first()?;
        let mut b = Self::new(first.x, first.x, first.y, first.y);
        for p in rest {
            b.x_min = b.x_min.min(p.x);
            b.x_max = b.x_max.max(p.x);
            b.y_min = b.y_min.min(p.y);
            b.y_max = b.y_max.max(p.y);
        }
        Some(b)
    }

    /// Average of the four corners.
    #[inline]
    pub fn center(&self) -> Point {
        Point::new(
            (self.x_min + self.x_max) / 2.0,
            (self.y_min + self.y_max) / 2.0,
        )
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    #[inline]
    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    #[inline]
    pub fn is_degenerate(&self) -> bool {
        !(self.width() > 0.0 && self.height() > 0.0)
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    /// Corners in counter-clockwise order starting at `(x_max, y_max)`.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x_max, self.y_max),
            Point::new(self.x_min, self.y_max),
            Point::new(self.x_min, self.y_min),
            Point::new(self.x_max, self.y_min),
        ]
    }

    /// Precomputed frame for pseudo-angle and corner queries.
    pub fn frame(&self) -> Result<Frame> {
        if self.is_degenerate() {
            return Err(Error::DegenerateAabb);
        }
        Ok(Frame {
            aabb: *self,
            center: self.center(),
            half_w: self.width() / 2.0,
            half_h: self.height() / 2.0,
        })
    }
}

/// An oriented line through `base` with direction `dir`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedEdge {
    pub base: Point,
    pub dir: Point,
}

impl OrientedEdge {
    #[inline]
    pub fn new(base: Point, dir: Point) -> Self {
        debug_assert!(dir.x != 0.0 || dir.y != 0.0, "zero edge direction");
        Self { base, dir }
    }

    /// Edge running from `a` to `b`.
    #[inline]
    pub fn through(a: Point, b: Point) -> Self {
        Self::new(a, Point::new(b.x - a.x, b.y - a.y))
    }
}

/// `dir ∧ (p - base)`: positive iff `p` is strictly left of the edge.
#[inline]
pub fn outer_product(edge: &OrientedEdge, p: Point) -> f64 {
    edge.dir.x * (p.y - edge.base.y) - edge.dir.y * (p.x - edge.base.x)
}

// (3 + 16 eps) * eps with eps = 2^-53: forward error bound of the 2x2 determinant.
const ORIENT_ERR_BOUND: f64 = (3.0 + 16.0 * f64::EPSILON / 2.0) * (f64::EPSILON / 2.0);

/// True only when `p` is certainly strictly left of `a -> b` despite
/// rounding. Points whose sign is in doubt report `false`, so callers that
/// eliminate on `true` only ever drop points that are genuinely inside.
#[inline]
pub fn definitely_left(a: Point, b: Point, p: Point) -> bool {
    let vx = b.x - a.x;
    let vy = b.y - a.y;
    let wx = p.x - a.x;
    let wy = p.y - a.y;
    let left = vx * wy;
    let right = vy * wx;
    let det = left - right;
    det > ORIENT_ERR_BOUND * (left.abs() + right.abs())
}

/// True when `p` is certainly in the open triangle `a, b, c` (given CCW).
#[inline]
pub fn strictly_inside_triangle(a: Point, b: Point, c: Point, p: Point) -> bool {
    definitely_left(a, b, p) && definitely_left(b, c, p) && definitely_left(c, a, p)
}

/// Pseudo-angle in `[0, 8)` of the ray from the box center towards `p`.
///
/// Unlike the polar angle it is uniform along the box perimeter: 0 is the
/// right-edge midpoint, 1 the top-right corner, 2 the top midpoint and so on
/// counter-clockwise, so `floor` of it is the sector index.
pub fn pseudo_angle(aabb: &Aabb, p: Point) -> Result<f64> {
    Ok(aabb.frame()?.pseudo_angle(p))
}

/// Corner of the box in the same quadrant (around the center) as `p`.
/// Points on an axis through the center go to the `+x` / `+y` side.
pub fn nearest_corner(aabb: &Aabb, p: Point) -> Result<Point> {
    Ok(aabb.frame()?.nearest_corner(p))
}

/// A non-degenerate box with its center and half extents cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    aabb: Aabb,
    center: Point,
    half_w: f64,
    half_h: f64,
}

impl Frame {
    #[inline]
    pub fn aabb(&self) -> &Aabb {
        &self.aabb
    }

    #[inline]
    pub fn center(&self) -> Point {
        self.center
    }

    #[inline]
    pub fn pseudo_angle(&self, p: Point) -> f64 {
        let u = (p.x - self.center.x) / self.half_w;
        let v = (p.y - self.center.y) / self.half_h;
        if u == 0.0 && v == 0.0 {
            return 0.0;
        }
        if u >= v.abs() {
            if v >= 0.0 {
                v / u
            } else {
                let phi = 8.0 + v / u;
                // 8 - tiny rounds up to 8; that ray is the 0 ray.
                if phi >= 8.0 {
                    0.0
                } else {
                    phi
                }
            }
        } else if v > u.abs() {
            2.0 - u / v
        } else if -u >= v.abs() {
            4.0 + v / u
        } else {
            6.0 - u / v
        }
    }

    /// Sector index `floor(pseudo_angle)`, always in `0..8`.
    #[inline]
    pub fn sector_of(&self, phi: f64) -> usize {
        (phi as usize).min(7)
    }

    #[inline]
    pub fn nearest_corner(&self, p: Point) -> Point {
        Point::new(
            if p.x >= self.center.x {
                self.aabb.x_max
            } else {
                self.aabb.x_min
            },
            if p.y >= self.center.y {
                self.aabb.y_max
            } else {
                self.aabb.y_min
            },
        )
    }

    /// Offset from the center to the box boundary point at pseudo-angle
    /// `phi`; inverse of [`Frame::pseudo_angle`] along the perimeter.
    pub fn boundary_offset(&self, phi: f64) -> Point {
        let phi = phi.rem_euclid(8.0);
        let (u, v) = if phi < 1.0 {
            (1.0, phi)
        } else if phi < 3.0 {
            (2.0 - phi, 1.0)
        } else if phi < 5.0 {
            (-1.0, 4.0 - phi)
        } else if phi < 7.0 {
            (phi - 6.0, -1.0)
        } else {
            (1.0, phi - 8.0)
        };
        Point::new(u * self.half_w, v * self.half_h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn square10() -> Aabb {
        Aabb::new(0.0, 10.0, 0.0, 10.0)
    }

    #[test]
    fn squared_distance_examples() {
        let o = Point::new(0.0, 0.0);
        assert_eq!(squared_distance(o, o), 0.0);
        assert_eq!(squared_distance(o, Point::new(3.0, 4.0)), 25.0);
        assert_eq!(
            squared_distance(Point::new(1.5, -2.0), Point::new(-0.5, 1.0)),
            13.0
        );
    }

    #[test]
    fn outer_product_examples() {
        let e = OrientedEdge::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        assert_eq!(outer_product(&e, Point::new(0.0, 1.0)), 1.0);
        assert_eq!(outer_product(&e, Point::new(5.0, 0.0)), 0.0);
        let e = OrientedEdge::new(Point::new(1.0, 1.0), Point::new(2.0, 2.0));
        assert_eq!(outer_product(&e, Point::new(3.0, 1.0)), -4.0);
    }

    #[test]
    fn pseudo_angle_examples() {
        let b = Aabb::new(-3.0, 5.0, 2.0, 4.0);
        let c = b.center();
        assert_eq!(
            pseudo_angle(&b, Point::new(c.x + b.width() / 2.0, c.y)).unwrap(),
            0.0
        );
        assert_eq!(pseudo_angle(&b, Point::new(b.x_max, b.y_max)).unwrap(), 1.0);
        // u = 1, v = -0.5
        let p = Point::new(b.x_max, c.y - 0.25 * b.height());
        assert_eq!(pseudo_angle(&b, p).unwrap(), 7.5);
        assert_eq!(pseudo_angle(&b, c).unwrap(), 0.0);
    }

    #[test]
    fn pseudo_angle_marks_on_square() {
        let b = square10();
        let marks = [
            (10.0, 5.0, 0.0),
            (10.0, 10.0, 1.0),
            (5.0, 10.0, 2.0),
            (0.0, 10.0, 3.0),
            (0.0, 5.0, 4.0),
            (0.0, 0.0, 5.0),
            (5.0, 0.0, 6.0),
            (10.0, 0.0, 7.0),
        ];
        for (x, y, phi) in marks {
            assert_eq!(
                pseudo_angle(&b, Point::new(x, y)).unwrap(),
                phi,
                "({x},{y})"
            );
        }
    }

    #[test]
    fn degenerate_box_is_rejected() {
        let b = Aabb::new(0.0, 0.0, 0.0, 1.0);
        assert!(matches!(
            pseudo_angle(&b, Point::new(0.0, 0.5)),
            Err(Error::DegenerateAabb)
        ));
        assert!(matches!(
            nearest_corner(&b, Point::new(0.0, 0.5)),
            Err(Error::DegenerateAabb)
        ));
    }

    #[test]
    fn nearest_corner_examples() {
        let b = square10();
        assert_eq!(
            nearest_corner(&b, Point::new(9.0, 8.0)).unwrap(),
            Point::new(10.0, 10.0)
        );
        assert_eq!(
            nearest_corner(&b, Point::new(2.0, 3.0)).unwrap(),
            Point::new(0.0, 0.0)
        );
        assert_eq!(
            nearest_corner(&b, Point::new(5.0, 9.0)).unwrap(),
            Point::new(10.0, 10.0)
        );
    }

    #[test]
    fn boundary_offset_inverts_pseudo_angle() {
        let f = Aabb::new(0.0, 4.0, 0.0, 2.0).frame().unwrap();
        for i in 0..80 {
            let phi = i as f64 / 10.0;
            let o = f.boundary_offset(phi);
            let p = Point::new(f.center().x + o.x, f.center().y + o.y);
            assert!((f.pseudo_angle(p) - phi).abs() < 1e-12, "phi {phi}");
        }
    }

    /// Boundary point of `b` at perimeter parameter `t` in `[0, 8)`,
    /// written out independently of [`Frame::boundary_offset`].
    fn perimeter_point(b: &Aabb, t: f64) -> Point {
        let c = b.center();
        let (hw, hh) = (b.width() / 2.0, b.height() / 2.0);
        match t {
            t if t < 1.0 => Point::new(b.x_max, c.y + t * hh),
            t if t < 3.0 => Point::new(c.x + (2.0 - t) * hw, b.y_max),
            t if t < 5.0 => Point::new(b.x_min, c.y + (4.0 - t) * hh),
            t if t < 7.0 => Point::new(c.x + (t - 6.0) * hw, b.y_min),
            t => Point::new(b.x_max, c.y + (t - 8.0) * hh),
        }
    }

    /// Sector from the exact polar angle, mapped through the positions of
    /// the eight perimeter marks. Returns `None` within `tol` of a mark.
    fn exact_sector(b: &Aabb, p: Point, tol: f64) -> Option<usize> {
        let c = b.center();
        let theta = (p.y - c.y).atan2(p.x - c.x).rem_euclid(2.0 * PI);
        let corner = (b.height() / 2.0).atan2(b.width() / 2.0);
        let marks = [
            0.0,
            corner,
            PI / 2.0,
            PI - corner,
            PI,
            PI + corner,
            1.5 * PI,
            2.0 * PI - corner,
            2.0 * PI,
        ];
        if marks.iter().any(|m| (theta - m).abs() < tol) {
            return None;
        }
        Some(marks[1..].iter().filter(|&&m| m <= theta).count())
    }

    fn aabb_strategy() -> impl Strategy<Value = Aabb> {
        (
            -100.0..100.0f64,
            -100.0..100.0f64,
            0.01..50.0f64,
            0.01..50.0f64,
        )
            .prop_map(|(x, y, w, h)| Aabb::new(x, x + w, y, y + h))
    }

    #[test]
    fn sector_matches_exact_angle_on_random_boxes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x0 = rng.random_range(-50.0..50.0);
            let y0 = rng.random_range(-50.0..50.0);
            let b = Aabb::new(
                x0,
                x0 + rng.random_range(0.1..20.0),
                y0,
                y0 + rng.random_range(0.1..20.0),
            );
            let f = b.frame().unwrap();
            let mut checked = 0;
            for _ in 0..10_000 {
                let p = Point::new(
                    rng.random_range(b.x_min..b.x_max),
                    rng.random_range(b.y_min..b.y_max),
                );
                if let Some(expected) = exact_sector(&b, p, 1e-9) {
                    assert_eq!(f.sector_of(f.pseudo_angle(p)), expected, "{p:?} in {b:?}");
                    checked += 1;
                }
            }
            assert!(checked > 9_900);
        }
    }

    proptest! {
        #[test]
        fn squared_distance_is_symmetric(
            ax in -1e6..1e6f64, ay in -1e6..1e6f64, bx in -1e6..1e6f64, by in -1e6..1e6f64,
        ) {
            let (a, b) = (Point::new(ax, ay), Point::new(bx, by));
            prop_assert_eq!(squared_distance(a, b), squared_distance(b, a));
        }

        #[test]
        fn pseudo_angle_increases_along_ccw_walk(
            b in aabb_strategy(),
            mut ts in prop::collection::vec(0.0..8.0f64, 2..64),
        ) {
            ts.sort_by(f64::total_cmp);
            ts.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
            let f = b.frame().unwrap();
            let phis: Vec<f64> = ts.iter().map(|&t| f.pseudo_angle(perimeter_point(&b, t))).collect();
            for (w, t) in phis.windows(2).zip(ts.windows(2)) {
                // the walk may wrap 8 -> 0 only right at the end
                if t[1] < 8.0 - 1e-9 {
                    prop_assert!(w[0] < w[1], "t {:?} phi {:?}", t, w);
                }
            }
        }

        #[test]
        fn outer_product_sign_matches_determinant(
            ax in -1e3..1e3f64, ay in -1e3..1e3f64,
            bx in -1e3..1e3f64, by in -1e3..1e3f64,
            px in -1e3..1e3f64, py in -1e3..1e3f64,
        ) {
            prop_assume!(ax != bx || ay != by);
            let (a, b, p) = (Point::new(ax, ay), Point::new(bx, by), Point::new(px, py));
            // | ax ay 1 |
            // | bx by 1 |  expanded along the last column
            // | px py 1 |
            let det = (bx * py - by * px) - (ax * py - ay * px) + (ax * by - ay * bx);
            let f = outer_product(&OrientedEdge::through(a, b), p);
            let scale = 1e-9 * (1.0 + f.abs().max(det.abs()));
            if det.abs() > scale {
                prop_assert_eq!(f > 0.0, det > 0.0);
            }
            if definitely_left(a, b, p) {
                prop_assert!(det > 0.0 || det.abs() <= scale);
            }
        }

        #[test]
        fn nearest_corner_minimizes_distance(
            b in aabb_strategy(), s in 0.0..1.0f64, t in 0.0..1.0f64,
        ) {
            let p = Point::new(b.x_min + s * b.width(), b.y_min + t * b.height());
            let c = b.center();
            prop_assume!(p.x != c.x && p.y != c.y);
            let corner = nearest_corner(&b, p).unwrap();
            let best = b.corners().iter().map(|&q| squared_distance(p, q)).fold(f64::INFINITY, f64::min);
            prop_assert_eq!(squared_distance(p, corner), best);
        }
    }
}
