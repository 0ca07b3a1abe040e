//! Linear-time elimination: extremal quadrilateral, eight-sector sweep and
//! the recheck against the final sector polygon.
//!
//! Every elimination here is decided by [`strictly_inside_triangle`] on a
//! triangle `(center, a, b)` whose corners all lie in the convex hull of the
//! input. A point strictly inside such a triangle is an interior point of the
//! hull and can never be an endpoint of the farthest pair. Points whose
//! classification is in doubt under rounding are kept.

use crate::error::{Error, Result};
use crate::geometry::{
    definitely_left, squared_distance, strictly_inside_triangle, Aabb, Frame, OrientedEdge, Point,
};

pub const SECTOR_COUNT: usize = 8;

/// Convex polygon through the first-encountered extremal points, CCW,
/// starting from the lowest one. Holds 1 to 4 distinct vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialPolygon {
    vertices: Vec<Point>,
}

impl InitialPolygon {
    /// Builds the polygon from the bottom, right, top and left extremal
    /// points (in that order), dropping repeated neighbours.
    pub fn from_extremals(bottom: Point, right: Point, top: Point, left: Point) -> Self {
        let mut vertices: Vec<Point> = Vec::with_capacity(4);
        for p in [bottom, right, top, left] {
            if vertices.last() != Some(&p) {
                vertices.push(p);
            }
        }
        while vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Whether the polygon can enclose area (three or more vertices).
    pub fn is_proper(&self) -> bool {
        self.vertices.len() >= 3
    }

    pub fn edges(&self) -> impl Iterator<Item = OrientedEdge> + '_ {
        let n = self.vertices.len();
        (0..if n >= 2 { n } else { 0 })
            .map(move |i| OrientedEdge::through(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Certainly in the open interior. Always false for fewer than 3 vertices.
    #[inline]
    pub fn strictly_contains(&self, p: Point) -> bool {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return false;
        }
        (0..n).all(|i| definitely_left(v[i], v[(i + 1) % n], p))
    }
}

/// One pass: tight bounding box plus the initial polygon.
pub fn compute_aabb_and_extremals(points: &[Point]) -> Result<(Aabb, InitialPolygon)> {
    let first = *points.first().ok_or(Error::EmptyInput)?;
    let (mut left, mut right, mut bottom, mut top) = (first, first, first, first);
    for &p in &points[1..] {
        if p.x < left.x {
            left = p;
        }
        if p.x > right.x {
            right = p;
        }
        if p.y < bottom.y {
            bottom = p;
        }
        if p.y > top.y {
            top = p;
        }
    }
    let aabb = Aabb::new(left.x, right.x, bottom.y, top.y);
    Ok((
        aabb,
        InitialPolygon::from_extremals(bottom, right, top, left),
    ))
}

/// Drops the points that are strictly inside `poly`. With fewer than three
/// vertices everything passes.
pub fn initial_polygon_filter(points: &[Point], poly: &InitialPolygon) -> Vec<Point> {
    if !poly.is_proper() {
        return points.to_vec();
    }
    points
        .iter()
        .copied()
        .filter(|&p| !poly.strictly_contains(p))
        .collect()
}

/// Starting `R_min` for `sector`: where the ray from the box center along
/// the sector's middle axis leaves `poly`, pulled inward until it is
/// certainly inside so later eliminations stay within the hull.
pub fn initial_r_min(aabb: &Aabb, poly: &InitialPolygon, sector: usize) -> Result<Point> {
    let frame = aabb.frame()?;
    if !poly.is_proper() {
        return Err(Error::DegeneratePolygon);
    }
    if sector >= SECTOR_COUNT {
        return Err(Error::InvalidArgument(format!(
            "sector index {sector} out of range"
        )));
    }
    initial_r_min_in(&frame, poly, sector)
}

fn initial_r_min_in(frame: &Frame, poly: &InitialPolygon, sector: usize) -> Result<Point> {
    let c = frame.center();
    if !poly.strictly_contains(c) {
        return Err(Error::CenterOutsidePolygon);
    }
    let d = frame.boundary_offset(sector as f64 + 0.5);
    let mut exit = f64::INFINITY;
    for edge in poly.edges() {
        let denom = edge.dir.x * d.y - edge.dir.y * d.x;
        if denom < 0.0 {
            let f_c = edge.dir.x * (c.y - edge.base.y) - edge.dir.y * (c.x - edge.base.x);
            exit = exit.min(-f_c / denom);
        }
    }
    if !exit.is_finite() {
        return Err(Error::CenterOutsidePolygon);
    }
    let mut shrink = 1e-12;
    while shrink < 1.0 {
        let t = exit * (1.0 - shrink);
        let q = Point::new(c.x + t * d.x, c.y + t * d.y);
        if poly.strictly_contains(q) {
            return Ok(q);
        }
        shrink *= 16.0;
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    pub index: usize,
    pub r_min_point: Point,
    /// Squared distance from `r_min_point` to its quadrant corner.
    pub r_min_dist2: f64,
    pub r_min_phi: f64,
    pub kept: Vec<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Polar,
    Recheck,
}

/// Why a point was dropped: it lies strictly inside `(center, chord.0, chord.1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub point: Point,
    pub chord: (Point, Point),
    pub center: Point,
    pub phase: Phase,
}

pub trait WitnessSink {
    fn record(&mut self, witness: Witness);
}

impl WitnessSink for () {
    #[inline]
    fn record(&mut self, _: Witness) {}
}

impl WitnessSink for Vec<Witness> {
    fn record(&mut self, witness: Witness) {
        self.push(witness);
    }
}

#[derive(Debug, Clone)]
pub struct PolarState {
    frame: Frame,
    initial: InitialPolygon,
    initial_r_min: [Point; SECTOR_COUNT],
    sectors: [Sector; SECTOR_COUNT],
    eliminated_count: usize,
}

impl PolarState {
    /// Empty sweep state seeded with the initial `R_min` points. Needs a
    /// non-degenerate box and a polygon strictly containing the box center.
    pub fn new(aabb: &Aabb, initial: InitialPolygon) -> Result<Self> {
        let frame = aabb.frame()?;
        if !initial.is_proper() {
            return Err(Error::DegeneratePolygon);
        }
        let mut seeds = [Point::default(); SECTOR_COUNT];
        for (i, seed) in seeds.iter_mut().enumerate() {
            *seed = initial_r_min_in(&frame, &initial, i)?;
        }
        let sectors = std::array::from_fn(|i| {
            let p = seeds[i];
            Sector {
                index: i,
                r_min_point: p,
                r_min_dist2: squared_distance(p, frame.nearest_corner(p)),
                r_min_phi: frame.pseudo_angle(p),
                kept: Vec::new(),
            }
        });
        Ok(Self {
            frame,
            initial,
            initial_r_min: seeds,
            sectors,
            eliminated_count: 0,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn initial(&self) -> &InitialPolygon {
        &self.initial
    }

    /// The `R_min` points the sweep started from (not input points).
    pub fn initial_r_min(&self) -> &[Point; SECTOR_COUNT] {
        &self.initial_r_min
    }

    pub fn sectors(&self) -> &[Sector; SECTOR_COUNT] {
        &self.sectors
    }

    pub fn eliminated_count(&self) -> usize {
        self.eliminated_count
    }

    pub fn kept_count(&self) -> usize {
        self.sectors.iter().map(|s| s.kept.len()).sum()
    }

    /// Current elimination polygon, one vertex per sector.
    pub fn r_min_polygon(&self) -> [Point; SECTOR_COUNT] {
        std::array::from_fn(|i| self.sectors[i].r_min_point)
    }

    /// Feeds one point through the sweep. Returns whether it was kept.
    pub fn insert<S: WitnessSink>(&mut self, p: Point, sink: &mut S) -> bool {
        let phi = self.frame.pseudo_angle(p);
        let i = self.frame.sector_of(phi);
        let d2 = squared_distance(p, self.frame.nearest_corner(p));
        if d2 < self.sectors[i].r_min_dist2 {
            let s = &mut self.sectors[i];
            s.r_min_point = p;
            s.r_min_dist2 = d2;
            s.r_min_phi = phi;
            s.kept.push(p);
            return true;
        }
        let here = self.sectors[i].r_min_point;
        let (a, b) = if phi < self.sectors[i].r_min_phi {
            (
                self.sectors[(i + SECTOR_COUNT - 1) % SECTOR_COUNT].r_min_point,
                here,
            )
        } else {
            (here, self.sectors[(i + 1) % SECTOR_COUNT].r_min_point)
        };
        let c = self.frame.center();
        if strictly_inside_triangle(c, a, b, p) {
            self.eliminated_count += 1;
            sink.record(Witness {
                point: p,
                chord: (a, b),
                center: c,
                phase: Phase::Polar,
            });
            false
        } else {
            self.sectors[i].kept.push(p);
            true
        }
    }
}

/// Sweeps `survivors` (in order) through the eight sectors.
pub fn polar_divide(survivors: &[Point], aabb: &Aabb, poly: &InitialPolygon) -> Result<PolarState> {
    polar_divide_with(survivors, aabb, poly, &mut ())
}

pub fn polar_divide_with<S: WitnessSink>(
    survivors: &[Point],
    aabb: &Aabb,
    poly: &InitialPolygon,
    sink: &mut S,
) -> Result<PolarState> {
    let mut state = PolarState::new(aabb, poly.clone())?;
    for &p in survivors {
        state.insert(p, sink);
    }
    Ok(state)
}

/// Vertices of the recheck polygon: initial polygon vertices and final
/// `R_min` points sorted by pseudo-angle, one vertex per angle (the one
/// farthest from the center).
pub fn union_polygon(state: &PolarState) -> Vec<(f64, Point)> {
    let frame = &state.frame;
    let c = frame.center();
    let mut verts: Vec<(f64, Point)> = state
        .initial
        .vertices()
        .iter()
        .map(|&p| (frame.pseudo_angle(p), p))
        .chain(state.sectors.iter().map(|s| (s.r_min_phi, s.r_min_point)))
        .collect();
    verts.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| squared_distance(b.1, c).total_cmp(&squared_distance(a.1, c)))
    });
    verts.dedup_by(|later, earlier| later.0 == earlier.0);
    verts
}

/// Second pass over every kept point against the final polygon.
/// Output is in sector order, kept order within a sector.
pub fn recheck(state: &PolarState) -> Vec<Point> {
    recheck_with(state, &mut ())
}

pub fn recheck_with<S: WitnessSink>(state: &PolarState, sink: &mut S) -> Vec<Point> {
    let verts = union_polygon(state);
    let kept = state.sectors.iter().flat_map(|s| s.kept.iter().copied());
    if verts.len() < 3 {
        return kept.collect();
    }
    let frame = &state.frame;
    let c = frame.center();
    let n = verts.len();
    let mut out = Vec::with_capacity(state.kept_count());
    for p in kept {
        let phi = frame.pseudo_angle(p);
        let hi = verts.partition_point(|v| v.0 <= phi);
        let (a, b) = if hi == 0 || hi == n {
            (verts[n - 1].1, verts[0].1)
        } else {
            (verts[hi - 1].1, verts[hi].1)
        };
        if strictly_inside_triangle(c, a, b, p) {
            sink.record(Witness {
                point: p,
                chord: (a, b),
                center: c,
                phase: Phase::Recheck,
            });
        } else {
            out.push(p);
        }
    }
    out
}
