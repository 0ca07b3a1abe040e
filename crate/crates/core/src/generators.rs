//! Seeded benchmark datasets.
//!
//! Random distributions draw from `ChaCha8Rng::seed_from_u64(seed)`, one
//! generator per call, so a spec always yields the same points.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    UniformEllipse,
    UniformRect,
    Gauss,
    Halton,
    GaussRing,
}

impl Distribution {
    pub const ALL: [Distribution; 5] = [
        Distribution::UniformEllipse,
        Distribution::UniformRect,
        Distribution::Gauss,
        Distribution::Halton,
        Distribution::GaussRing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::UniformEllipse => "uniform_ellipse",
            Distribution::UniformRect => "uniform_rect",
            Distribution::Gauss => "gauss",
            Distribution::Halton => "halton",
            Distribution::GaussRing => "gauss_ring",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown distribution `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DatasetParams {
    /// Rectangle width / ellipse semi-major axis.
    pub a: f64,
    /// Rectangle height / ellipse semi-minor axis.
    pub b: f64,
    /// Standard deviation for `gauss` and `gauss_ring`.
    pub sigma: f64,
}

impl Default for DatasetParams {
    fn default() -> Self {
        Self {
            a: 1.0,
            b: 1.0,
            sigma: 0.2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub distribution: Distribution,
    pub n: usize,
    pub params: DatasetParams,
    /// Ignored by `halton`.
    pub seed: u64,
}

impl DatasetSpec {
    pub fn new(distribution: Distribution, n: usize, seed: u64) -> Self {
        Self {
            distribution,
            n,
            params: DatasetParams::default(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if !(p.a > 0.0 && p.a.is_finite() && p.b > 0.0 && p.b.is_finite()) {
            return Err(Error::InvalidSpec("a and b must be positive".into()));
        }
        let uses_sigma = matches!(
            self.distribution,
            Distribution::Gauss | Distribution::GaussRing
        );
        if uses_sigma && !(p.sigma > 0.0 && p.sigma.is_finite()) {
            return Err(Error::InvalidSpec("sigma must be positive".into()));
        }
        Ok(())
    }
}

/// Radical inverse of `k` in base `p` as the exact fraction
/// `(numerator, p^digits)`.
pub fn halton_ratio(p: u64, k: u64) -> (u64, u64) {
    debug_assert!(p >= 2);
    let (mut num, mut den, mut rest) = (0u64, 1u64, k);
    while rest > 0 {
        num = num * p + rest % p;
        den *= p;
        rest /= p;
    }
    (num, den)
}

/// Element `k` (from 1) of the Halton sequence with prime base `p`.
pub fn halton_element(p: u64, k: u64) -> f64 {
    let (num, den) = halton_ratio(p, k);
    num as f64 / den as f64
}

pub fn generate(spec: &DatasetSpec) -> Result<Vec<Point>> {
    spec.validate()?;
    let DatasetParams { a, b, sigma } = spec.params;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let points = match spec.distribution {
        Distribution::UniformRect => (0..n)
            .map(|_| Point::new(a * rng.random::<f64>(), b * rng.random::<f64>()))
            .collect(),
        Distribution::UniformEllipse => {
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let x = rng.random_range(-a..a);
                let y = rng.random_range(-b..b);
                if (x / a).powi(2) + (y / b).powi(2) <= 1.0 {
                    out.push(Point::new(x, y));
                }
            }
            out
        }
        Distribution::Gauss => {
            let normal = normal(sigma)?;
            (0..n)
                .map(|_| Point::new(normal.sample(&mut rng), normal.sample(&mut rng)))
                .collect()
        }
        Distribution::Halton => (1..=n as u64)
            .map(|k| Point::new(a * halton_element(2, k), b * halton_element(3, k)))
            .collect(),
        Distribution::GaussRing => {
            let normal = normal(sigma)?;
            (0..n)
                .map(|_| {
                    let theta = rng.random_range(0.0..TAU);
                    let eps = ring_scale(&mut rng, &normal);
                    ring_point(a, b, eps, theta)
                })
                .collect()
        }
    };
    Ok(points)
}

/// `0.5 + 0.5 * sign * |N(0, sigma)|`, redrawn while negative.
fn ring_scale<R: Rng>(rng: &mut R, normal: &Normal<f64>) -> f64 {
    loop {
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let g = normal.sample(rng).abs();
        let eps = 0.5 + 0.5 * sign * g;
        if eps >= 0.0 {
            return eps;
        }
    }
}

#[inline]
fn ring_point(a: f64, b: f64, eps: f64, theta: f64) -> Point {
    Point::new(a * eps * theta.cos(), b * eps * theta.sin())
}

fn normal(sigma: f64) -> Result<Normal<f64>> {
    Normal::new(0.0, sigma).map_err(|e| Error::InvalidSpec(e.to_string()))
}
