//! Timing harness: speed against the brute-force reference and grid-size
//! sweeps, with fixed-schema CSV output.
//!
//! Every timing is the median over repeats of one full [`diameter`] call on
//! an already generated dataset.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::diameter::{diameter, diameter_timed, DiameterStats, PhaseTimes, PipelineConfig};
use crate::error::{Error, Result};
use crate::generators::{generate, DatasetParams, DatasetSpec, Distribution};
use crate::geometry::Point;
use crate::oracle::brute_force_diameter;

pub const DEFAULT_BF_CAP: usize = 100_000;

/// Median of `samples`; the mean of the middle two for even counts.
pub fn median(samples: &[f64]) -> f64 {
    assert!(!samples.is_empty(), "median of no samples");
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

pub fn time_ms<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub distributions: Vec<Distribution>,
    pub sizes: Vec<usize>,
    pub repeats: usize,
    /// Repeats for the brute-force runs.
    pub bf_repeats: usize,
    /// Brute force runs only for `n <= bf_cap`.
    pub bf_cap: usize,
    pub k: Option<usize>,
    pub seed: u64,
    pub params: DatasetParams,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            distributions: Distribution::ALL.to_vec(),
            sizes: vec![1_000, 10_000, 100_000],
            repeats: 5,
            bf_repeats: 1,
            bf_cap: DEFAULT_BF_CAP,
            k: None,
            seed: 42,
            params: DatasetParams::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub distribution: Distribution,
    pub n: usize,
    pub k_used: usize,
    /// Median wall time of the whole pipeline.
    pub wall_time_ms: f64,
    /// Breakdown of the run whose wall time was the median (or closest).
    pub phase_times_ms: PhaseTimes,
    pub stats: DiameterStats,
    pub distance: f64,
    pub distance2: f64,
    pub bf_time_ms: Option<f64>,
    pub bf_distance2: Option<f64>,
}

impl BenchRecord {
    pub fn speedup(&self) -> Option<f64> {
        self.bf_time_ms.map(|bf| bf / self.wall_time_ms)
    }

    /// `None` when brute force did not run.
    pub fn matches_brute_force(&self) -> Option<bool> {
        self.bf_distance2.map(|d2| d2 == self.distance2)
    }
}

/// Times the pipeline `repeats` times on `points`.
pub fn time_pipeline(
    points: &[Point],
    config: &PipelineConfig,
    repeats: usize,
) -> Result<(crate::DiameterResult, f64, PhaseTimes)> {
    if repeats == 0 {
        return Err(Error::InvalidArgument("repeats must be at least 1".into()));
    }
    let mut runs = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let (out, ms) = time_ms(|| diameter_timed(points, config));
        let (result, phases) = out?;
        runs.push((result, ms, phases));
    }
    let wall: Vec<f64> = runs.iter().map(|r| r.1).collect();
    let med = median(&wall);
    let (result, _, phases) = runs
        .iter()
        .min_by(|a, b| (a.1 - med).abs().total_cmp(&(b.1 - med).abs()))
        .copied()
        .expect("repeats >= 1");
    Ok((result, med, phases))
}

pub fn bench_one(
    points: &[Point],
    distribution: Distribution,
    cfg: &BenchConfig,
) -> Result<BenchRecord> {
    let pipeline = PipelineConfig { k: cfg.k };
    let (result, wall, phases) = time_pipeline(points, &pipeline, cfg.repeats)?;
    let (bf_time_ms, bf_distance2) = if points.len() <= cfg.bf_cap && cfg.bf_repeats > 0 {
        let mut times = Vec::with_capacity(cfg.bf_repeats);
        let mut d2 = 0.0;
        for _ in 0..cfg.bf_repeats {
            let (out, ms) = time_ms(|| brute_force_diameter(points));
            d2 = out?.distance2;
            times.push(ms);
        }
        (Some(median(&times)), Some(d2))
    } else {
        (None, None)
    };
    Ok(BenchRecord {
        distribution,
        n: points.len(),
        k_used: result.stats.k_used,
        wall_time_ms: wall,
        phase_times_ms: phases,
        stats: result.stats,
        distance: result.distance,
        distance2: result.distance2,
        bf_time_ms,
        bf_distance2,
    })
}

/// One record per `(distribution, n)`; `on_record` sees each as it lands.
pub fn run_bench(
    cfg: &BenchConfig,
    mut on_record: impl FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>> {
    if cfg.repeats == 0 {
        return Err(Error::InvalidArgument("repeats must be at least 1".into()));
    }
    let mut out = Vec::new();
    for &distribution in &cfg.distributions {
        for &n in &cfg.sizes {
            let spec = DatasetSpec {
                distribution,
                n,
                params: cfg.params,
                seed: cfg.seed,
            };
            let points = generate(&spec)?;
            let record = bench_one(&points, distribution, cfg)?;
            on_record(&record);
            out.push(record);
        }
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct BenchRow {
    distribution: &'static str,
    n: usize,
    k_used: usize,
    time_ms: f64,
    bf_time_ms: Option<f64>,
    speedup: Option<f64>,
    survivors_polar: usize,
    survivors_recheck: usize,
    nonempty_cells: usize,
}

pub const BENCH_HEADER: [&str; 9] = [
    "distribution",
    "n",
    "k_used",
    "time_ms",
    "bf_time_ms",
    "speedup",
    "survivors_polar",
    "survivors_recheck",
    "nonempty_cells",
];

pub fn write_bench_csv<W: Write>(w: W, records: &[BenchRecord]) -> Result<()> {
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    csv.write_record(BENCH_HEADER)?;
    for r in records {
        csv.serialize(BenchRow {
            distribution: r.distribution.name(),
            n: r.n,
            k_used: r.k_used,
            time_ms: r.wall_time_ms,
            bf_time_ms: r.bf_time_ms,
            speedup: r.speedup(),
            survivors_polar: r.stats.n_after_polar,
            survivors_recheck: r.stats.n_after_recheck,
            nonempty_cells: r.stats.nonempty_cells,
        })?;
    }
    csv.flush()?;
    Ok(())
}

/// For each `n`, the distribution with the smallest median time.
pub fn fastest_by_size(records: &[BenchRecord]) -> Vec<(usize, Distribution)> {
    let mut sizes: Vec<usize> = records.iter().map(|r| r.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .filter_map(|n| {
            records
                .iter()
                .filter(|r| r.n == n)
                .min_by(|a, b| a.wall_time_ms.total_cmp(&b.wall_time_ms))
                .map(|r| (n, r.distribution))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub k: usize,
    pub time_ms: f64,
    pub distance: f64,
    pub nonempty_cells: usize,
    pub pairs_surviving: usize,
    pub best: bool,
}

pub const SWEEP_HEADER: [&str; 6] = [
    "k",
    "time_ms",
    "distance",
    "nonempty_cells",
    "pairs_surviving",
    "best",
];

/// Times the pipeline at every `k` on the same `points`; the fastest row is
/// marked `best`. Repeats go round-robin over the `k` values, so slow
/// stretches of machine noise spread across all of them.
pub fn run_sweep(points: &[Point], k_values: &[usize], repeats: usize) -> Result<Vec<SweepRow>> {
    if k_values.is_empty() {
        return Err(Error::InvalidArgument("no grid sizes to sweep".into()));
    }
    if let Some(&k) = k_values.iter().find(|&&k| k == 0) {
        return Err(Error::InvalidArgument(format!(
            "grid size {k} is not positive"
        )));
    }
    if repeats == 0 {
        return Err(Error::InvalidArgument("repeats must be at least 1".into()));
    }
    // warmup
    diameter(points, &PipelineConfig::with_k(k_values[0]))?;
    let mut samples = vec![Vec::with_capacity(repeats); k_values.len()];
    let mut results = Vec::with_capacity(k_values.len());
    for round in 0..repeats {
        for (i, &k) in k_values.iter().enumerate() {
            let (out, ms) = time_ms(|| diameter(points, &PipelineConfig::with_k(k)));
            let result = out?;
            samples[i].push(ms);
            if round == 0 {
                results.push(result);
            }
        }
    }
    let mut rows: Vec<SweepRow> = k_values
        .iter()
        .zip(&samples)
        .zip(&results)
        .map(|((&k, times), result)| SweepRow {
            k,
            time_ms: median(times),
            distance: result.distance,
            nonempty_cells: result.stats.nonempty_cells,
            pairs_surviving: result.stats.pairs_surviving,
            best: false,
        })
        .collect();
    let best = rows
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.time_ms.total_cmp(&b.1.time_ms))
        .map(|(i, _)| i)
        .expect("k_values is not empty");
    rows[best].best = true;
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(w: W, rows: &[SweepRow]) -> Result<()> {
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    csv.write_record(SWEEP_HEADER)?;
    for r in rows {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}
