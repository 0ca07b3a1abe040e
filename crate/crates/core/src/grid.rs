//! Uniform `k x k` grid over the bounding box with cell-pair distance bounds.

use crate::error::{Error, Result};
use crate::geometry::{squared_distance, Aabb, Point};

/// Relative widening of cell extents used when pruning, so that a point
/// landing one cell off through rounding of its index can never cause the
/// pair holding the farthest points to be dropped.
const PRUNE_PAD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub row: usize,
    pub col: usize,
    start: usize,
    end: usize,
}

#[derive(Debug, Clone)]
pub struct Grid {
    k: usize,
    dx: f64,
    dy: f64,
    origin: Point,
    pad_x: f64,
    pad_y: f64,
    /// Nonempty cells, sorted by index.
    cells: Vec<Cell>,
    /// Points grouped by cell, input order within a cell.
    points: Vec<Point>,
}

/// Squared lower and upper bounds on the distance between any point of
/// cell `i` and any point of cell `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellPair {
    pub i: usize,
    pub j: usize,
    pub d_min2: f64,
    pub d_max2: f64,
}

impl Grid {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn nonempty_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// Number of unordered nonempty-cell pairs, self pairs included.
    pub fn pair_count(&self) -> usize {
        let m = self.cells.len();
        m * (m + 1) / 2
    }

    pub fn cell_points(&self, cell: &Cell) -> &[Point] {
        &self.points[cell.start..cell.end]
    }

    /// Points of cell `index`, `None` when that cell is empty.
    pub fn cell(&self, index: usize) -> Option<&[Point]> {
        self.cells
            .binary_search_by_key(&index, |c| c.index)
            .ok()
            .map(|s| self.cell_points(&self.cells[s]))
    }

    /// `(row, col)` of the cell holding `p`, clamped into the grid.
    #[inline]
    pub fn locate(&self, p: Point) -> (usize, usize) {
        let last = self.k - 1;
        let row = (((p.y - self.origin.y) / self.dy) as usize).min(last);
        let col = (((p.x - self.origin.x) / self.dx) as usize).min(last);
        (row, col)
    }

    #[inline]
    fn row_col(&self, index: usize) -> (usize, usize) {
        (index / self.k, index % self.k)
    }

    fn deltas(&self, i: usize, j: usize) -> (usize, usize) {
        let (ri, ci) = self.row_col(i);
        let (rj, cj) = self.row_col(j);
        (ci.abs_diff(cj), ri.abs_diff(rj))
    }

    fn padded_bounds(&self, dc: usize, dr: usize) -> (f64, f64) {
        let gap_x = (dc.saturating_sub(1) as f64 * self.dx - 2.0 * self.pad_x).max(0.0);
        let gap_y = (dr.saturating_sub(1) as f64 * self.dy - 2.0 * self.pad_y).max(0.0);
        let span_x = (dc + 1) as f64 * self.dx + 2.0 * self.pad_x;
        let span_y = (dr + 1) as f64 * self.dy + 2.0 * self.pad_y;
        (
            gap_x * gap_x + gap_y * gap_y,
            span_x * span_x + span_y * span_y,
        )
    }
}

/// Scatters `points` into a `k x k` grid over `aabb`. Points on the max
/// edges go to the last row/column.
pub fn build_grid(points: &[Point], aabb: &Aabb, k: usize) -> Result<Grid> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "grid size k must be at least 1".into(),
        ));
    }
    if aabb.is_degenerate() {
        return Err(Error::DegenerateAabb);
    }
    let (w, h) = (aabb.width(), aabb.height());
    let mut grid = Grid {
        k,
        dx: w / k as f64,
        dy: h / k as f64,
        origin: Point::new(aabb.x_min, aabb.y_min),
        pad_x: PRUNE_PAD * w,
        pad_y: PRUNE_PAD * h,
        cells: Vec::new(),
        points: Vec::with_capacity(points.len()),
    };
    let mut keyed: Vec<(usize, Point)> = points
        .iter()
        .map(|&p| {
            let (row, col) = grid.locate(p);
            (row * k + col, p)
        })
        .collect();
    // stable: input order is preserved inside each cell
    keyed.sort_by_key(|&(index, _)| index);
    for (index, p) in keyed {
        if grid.cells.last().map(|c| c.index) != Some(index) {
            let start = grid.points.len();
            grid.cells.push(Cell {
                index,
                row: index / k,
                col: index % k,
                start,
                end: start,
            });
        }
        grid.points.push(p);
        grid.cells.last_mut().expect("cell just pushed").end += 1;
    }
    Ok(grid)
}

/// Exact lattice bounds for cells `i` and `j`, from their index deltas.
pub fn cell_pair_bounds(grid: &Grid, i: usize, j: usize) -> CellPair {
    let (i, j) = (i.min(j), i.max(j));
    let (dc, dr) = grid.deltas(i, j);
    let gap_x = dc.saturating_sub(1) as f64 * grid.dx;
    let gap_y = dr.saturating_sub(1) as f64 * grid.dy;
    let span_x = (dc + 1) as f64 * grid.dx;
    let span_y = (dr + 1) as f64 * grid.dy;
    CellPair {
        i,
        j,
        d_min2: gap_x * gap_x + gap_y * gap_y,
        d_max2: span_x * span_x + span_y * span_y,
    }
}

/// Largest lower bound over all nonempty cell pairs (self pairs included),
/// on the padded cells used for pruning.
pub fn guaranteed_lower_bound2(grid: &Grid) -> f64 {
    let cells = &grid.cells;
    let mut best = 0.0f64;
    for (a, ca) in cells.iter().enumerate() {
        for cb in &cells[a..] {
            let (d_min2, _) = grid.padded_bounds(ca.col.abs_diff(cb.col), ca.row.abs_diff(cb.row));
            best = best.max(d_min2);
        }
    }
    best
}

/// Nonempty cell pairs that can still hold the farthest pair: those whose
/// largest possible distance is not below the largest guaranteed one.
pub fn prune_pairs(grid: &Grid) -> Vec<CellPair> {
    let threshold = guaranteed_lower_bound2(grid);
    let cells = &grid.cells;
    let mut out = Vec::new();
    for (a, ca) in cells.iter().enumerate() {
        for cb in &cells[a..] {
            let (_, d_max2) = grid.padded_bounds(ca.col.abs_diff(cb.col), ca.row.abs_diff(cb.row));
            if d_max2 >= threshold {
                out.push(cell_pair_bounds(grid, ca.index, cb.index));
            }
        }
    }
    out
}

/// Farthest pair among the point pairs drawn from `pairs`: cross pairs for
/// distinct cells, unordered pairs inside a cell for self pairs. The first
/// maximum in scan order wins. `None` if `pairs` holds no two points.
pub fn max_over_pairs(grid: &Grid, pairs: &[CellPair]) -> Option<(f64, Point, Point)> {
    let mut best: Option<(f64, Point, Point)> = None;
    let mut consider = |d2: f64, p: Point, q: Point| match best {
        Some((b, _, _)) if d2 <= b => {}
        _ => best = Some((d2, p, q)),
    };
    for pair in pairs {
        let (Some(a), Some(b)) = (grid.cell(pair.i), grid.cell(pair.j)) else {
            continue;
        };
        if pair.i == pair.j {
            for (n, &p) in a.iter().enumerate() {
                for &q in &a[n + 1..] {
                    consider(squared_distance(p, q), p, q);
                }
            }
        } else {
            for &p in a {
                for &q in b {
                    consider(squared_distance(p, q), p, q);
                }
            }
        }
    }
    best
}
