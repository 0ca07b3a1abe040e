//! Point files: UTF-8 CSV with an `x,y` header and one point per line.
//!
//! Coordinates are written with Rust's shortest round-trip formatting, so
//! reading a written file gives back the identical `f64` values.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::Point;

pub const HEADER: &str = "x,y";

pub fn write_points<W: Write>(mut w: W, points: &[Point]) -> Result<()> {
    writeln!(w, "{HEADER}")?;
    for p in points {
        writeln!(w, "{},{}", p.x, p.y)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_points_file(path: impl AsRef<Path>, points: &[Point]) -> Result<()> {
    write_points(BufWriter::new(File::create(path)?), points)
}

/// Parses a point file. Blank lines are skipped; line numbers in errors
/// are 1-based and count the header.
pub fn read_points<R: BufRead>(r: R) -> Result<Vec<Point>> {
    let mut lines = r.lines();
    match lines.next().transpose()? {
        Some(h) if h.trim_start_matches('\u{feff}').trim() == HEADER => {}
        Some(h) => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header `{HEADER}`, found `{}`", h.trim()),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: format!("missing header `{HEADER}`"),
            })
        }
    }
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        points.push(parse_line(line).map_err(|message| Error::Parse {
            line: line_no,
            message,
        })?);
    }
    Ok(points)
}

pub fn read_points_file(path: impl AsRef<Path>) -> Result<Vec<Point>> {
    read_points(BufReader::new(File::open(path)?))
}

fn parse_line(line: &str) -> std::result::Result<Point, String> {
    let mut fields = line.split(',');
    let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
        return Err(format!(
            "expected two comma-separated values, found `{line}`"
        ));
    };
    let coord = |s: &str| {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| format!("`{}` is not a number", s.trim()))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("`{}` is not finite", s.trim()))
        }
    };
    Ok(Point::new(coord(x)?, coord(y)?))
}
