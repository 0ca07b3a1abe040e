//! The full pipeline: bounding box, initial polygon, polar sweep, recheck,
//! grid pruning and the final pairwise maximum.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{squared_distance, Point};
use crate::grid::{build_grid, max_over_pairs, prune_pairs};
use crate::polar::{self, compute_aabb_and_extremals, initial_polygon_filter, PolarState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PipelineConfig {
    /// Grid cells per axis; `None` picks [`default_k`] from the survivor count.
    pub k: Option<usize>,
}

impl PipelineConfig {
    /// Fixed; the sweep always uses eight sectors.
    pub const SECTOR_COUNT: usize = polar::SECTOR_COUNT;

    pub fn with_k(k: usize) -> Self {
        Self { k: Some(k) }
    }
}

/// Point counts after each elimination stage plus grid statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct DiameterStats {
    pub n_input: usize,
    pub n_after_initial_polygon: usize,
    pub n_after_polar: usize,
    pub n_after_recheck: usize,
    pub nonempty_cells: usize,
    pub pairs_total: usize,
    pub pairs_surviving: usize,
    /// 0 when the grid stage did not run (zero-width or zero-height input).
    pub k_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiameterResult {
    pub distance: f64,
    /// Maximum squared distance; `distance` is its square root.
    pub distance2: f64,
    pub pair: (Point, Point),
    pub stats: DiameterStats,
}

/// Wall-clock milliseconds spent in each stage.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PhaseTimes {
    pub aabb_ms: f64,
    pub initial_polygon_ms: f64,
    pub polar_ms: f64,
    pub recheck_ms: f64,
    pub grid_ms: f64,
    pub prune_ms: f64,
    pub max_ms: f64,
}

impl PhaseTimes {
    pub fn total_ms(&self) -> f64 {
        self.aabb_ms
            + self.initial_polygon_ms
            + self.polar_ms
            + self.recheck_ms
            + self.grid_ms
            + self.prune_ms
            + self.max_ms
    }
}

/// Grid size used when the caller gives none: about four survivors per
/// cell row, clamped to `2..=256`.
pub fn default_k(n_survivors: usize) -> usize {
    ((n_survivors as f64 / 4.0).sqrt().ceil() as usize).clamp(2, 256)
}

/// Exact diameter of `points`.
pub fn diameter(points: &[Point], config: &PipelineConfig) -> Result<DiameterResult> {
    diameter_timed(points, config).map(|(result, _)| result)
}

struct Stopwatch(Instant);

impl Stopwatch {
    fn lap(&mut self) -> f64 {
        let now = Instant::now();
        let ms = now.duration_since(self.0).as_secs_f64() * 1e3;
        self.0 = now;
        ms
    }
}

/// [`diameter`] plus a per-stage timing breakdown.
pub fn diameter_timed(
    points: &[Point],
    config: &PipelineConfig,
) -> Result<(DiameterResult, PhaseTimes)> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    if let Some(index) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    if config.k == Some(0) {
        return Err(Error::InvalidArgument(
            "grid size k must be at least 1".into(),
        ));
    }

    let mut times = PhaseTimes::default();
    let mut watch = Stopwatch(Instant::now());
    let n = points.len();

    let (aabb, poly) = compute_aabb_and_extremals(points)?;
    times.aabb_ms = watch.lap();

    if aabb.is_degenerate() {
        return Ok((axis_spread(points, aabb.width() > 0.0), times));
    }

    let after_initial = initial_polygon_filter(points, &poly);
    times.initial_polygon_ms = watch.lap();
    let n_after_initial_polygon = after_initial.len();

    // Without a polygon strictly around the box center the sweep has no
    // safe triangles; everything left goes straight to the grid.
    let (n_after_polar, survivors) = match PolarState::new(&aabb, poly) {
        Ok(mut state) => {
            for &p in &after_initial {
                state.insert(p, &mut ());
            }
            times.polar_ms = watch.lap();
            let kept = state.kept_count();
            let survivors = polar::recheck(&state);
            times.recheck_ms = watch.lap();
            (kept, survivors)
        }
        Err(_) => {
            watch.lap();
            (n_after_initial_polygon, after_initial)
        }
    };

    let k = config.k.unwrap_or_else(|| default_k(survivors.len()));
    let grid = build_grid(&survivors, &aabb, k)?;
    times.grid_ms = watch.lap();
    let pairs = prune_pairs(&grid);
    times.prune_ms = watch.lap();
    let (distance2, p, q) =
        max_over_pairs(&grid, &pairs).expect("hull vertices always survive, so >= 2 points remain");
    times.max_ms = watch.lap();

    let result = DiameterResult {
        distance: distance2.sqrt(),
        distance2,
        pair: (p, q),
        stats: DiameterStats {
            n_input: n,
            n_after_initial_polygon,
            n_after_polar,
            n_after_recheck: survivors.len(),
            nonempty_cells: grid.nonempty_cells(),
            pairs_total: grid.pair_count(),
            pairs_surviving: pairs.len(),
            k_used: k,
        },
    };
    Ok((result, times))
}

/// All points share an x or a y coordinate: the farthest pair is the two
/// extremes along the other axis.
fn axis_spread(points: &[Point], along_x: bool) -> DiameterResult {
    let key = |p: &Point| if along_x { p.x } else { p.y };
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in &points[1..] {
        if key(p) < key(&lo) {
            lo = *p;
        }
        if key(p) > key(&hi) {
            hi = *p;
        }
    }
    if lo == hi {
        // every point coincides
        hi = points[1];
    }
    let distance2 = squared_distance(lo, hi);
    let n = points.len();
    DiameterResult {
        distance: distance2.sqrt(),
        distance2,
        pair: (lo, hi),
        stats: DiameterStats {
            n_input: n,
            n_after_initial_polygon: n,
            n_after_polar: n,
            n_after_recheck: n,
            ..Default::default()
        },
    }
}
