use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use maxdist::bench::{self, BenchConfig, DEFAULT_BF_CAP};
use maxdist::generators::{DatasetParams, DatasetSpec, Distribution};
use maxdist::oracle::Farthest;
use maxdist::pointfile;
use maxdist::{brute_force_diameter, diameter, generate, DiameterResult, PipelineConfig, Point};

#[derive(Parser, Debug)]
#[command(name = "maxdist", version, about = "Exact diameter of 2D point sets")]
struct Cli {
    /// Seed for the random dataset generators.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Output file (standard output when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated dataset as a point file.
    Generate {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Compute the diameter of a point file.
    Diameter {
        input: PathBuf,
        /// Grid cells per axis (automatic when omitted).
        #[arg(short)]
        k: Option<usize>,
    },
    /// Compute the diameter of a point file by brute force.
    Oracle { input: PathBuf },
    /// Time the pipeline against brute force; writes CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = Distribution::ALL.map(|d| d.to_string()))]
        dists: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [1_000usize, 10_000, 100_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        /// Brute-force repeats (defaults to --repeats).
        #[arg(long)]
        bf_repeats: Option<usize>,
        /// Largest N for which brute force runs.
        #[arg(long, default_value_t = DEFAULT_BF_CAP)]
        bf_cap: usize,
        #[arg(short)]
        k: Option<usize>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Time the pipeline over several grid sizes on one dataset; writes CSV.
    Sweep {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 4, 8, 16, 32, 64, 128])]
        k_values: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

#[derive(Args, Debug)]
struct DataArgs {
    /// uniform_ellipse, uniform_rect, gauss, halton or gauss_ring.
    #[arg(long)]
    dist: Distribution,
    #[arg(short, long)]
    n: usize,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Width / semi-major axis.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Height / semi-minor axis.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Standard deviation for gauss and gauss_ring.
    #[arg(long, default_value_t = 0.2)]
    sigma: f64,
}

impl From<&ParamArgs> for DatasetParams {
    fn from(p: &ParamArgs) -> Self {
        DatasetParams {
            a: p.a,
            b: p.b,
            sigma: p.sigma,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_input(path: &Path) -> Result<Vec<Point>> {
    pointfile::read_points_file(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Generate { data } => {
            let spec = DatasetSpec {
                distribution: data.dist,
                n: data.n,
                params: (&data.params).into(),
                seed: cli.seed,
            };
            let points = generate(&spec)?;
            pointfile::write_points(output(out)?, &points)?;
        }
        Command::Diameter { input, k } => {
            let points = read_input(input)?;
            let result = diameter(&points, &PipelineConfig { k: *k })?;
            report_diameter(output(out)?, &result, cli.json)?;
        }
        Command::Oracle { input } => {
            let points = read_input(input)?;
            let result = brute_force_diameter(&points)?;
            report_oracle(output(out)?, &result, cli.json)?;
        }
        Command::Bench {
            dists,
            sizes,
            repeats,
            bf_repeats,
            bf_cap,
            k,
            params,
        } => {
            let distributions = dists
                .iter()
                .map(|d| d.parse())
                .collect::<Result<Vec<Distribution>, _>>()?;
            let cfg = BenchConfig {
                distributions,
                sizes: sizes.clone(),
                repeats: *repeats,
                bf_repeats: bf_repeats.unwrap_or(*repeats),
                bf_cap: *bf_cap,
                k: *k,
                seed: cli.seed,
                params: params.into(),
            };
            let records = bench::run_bench(&cfg, |r| {
                eprintln!(
                    "{:>16} n={:<9} k={:<4} {:>10.3} ms{}",
                    r.distribution.name(),
                    r.n,
                    r.k_used,
                    r.wall_time_ms,
                    r.speedup()
                        .map(|s| format!("  speedup {s:.1}x"))
                        .unwrap_or_default()
                );
            })?;
            if let Some(r) = records
                .iter()
                .find(|r| r.matches_brute_force() == Some(false))
            {
                anyhow::bail!(
                    "{} n={}: pipeline distance {} differs from brute force",
                    r.distribution,
                    r.n,
                    r.distance
                );
            }
            for (n, fastest) in bench::fastest_by_size(&records) {
                let note = if fastest == Distribution::GaussRing {
                    "as expected"
                } else {
                    "gauss_ring was not the fastest"
                };
                eprintln!("note: n={n}: fastest distribution {fastest} ({note})");
            }
            if cli.json {
                serde_json::to_writer_pretty(output(out)?, &records)?;
            } else {
                bench::write_bench_csv(output(out)?, &records)?;
            }
        }
        Command::Sweep {
            data,
            k_values,
            repeats,
        } => {
            let spec = DatasetSpec {
                distribution: data.dist,
                n: data.n,
                params: (&data.params).into(),
                seed: cli.seed,
            };
            let points = generate(&spec)?;
            let rows = bench::run_sweep(&points, k_values, *repeats)?;
            if let Some(best) = rows.iter().find(|r| r.best) {
                eprintln!("best k = {} ({:.3} ms)", best.k, best.time_ms);
            }
            if cli.json {
                serde_json::to_writer_pretty(output(out)?, &rows)?;
            } else {
                bench::write_sweep_csv(output(out)?, &rows)?;
            }
        }
    }
    Ok(())
}

fn fmt_point(p: &Point) -> String {
    format!("({}, {})", p.x, p.y)
}

fn report_diameter(mut w: impl Write, r: &DiameterResult, json: bool) -> Result<()> {
    if json {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
        return Ok(());
    }
    let s = &r.stats;
    writeln!(w, "distance: {}", r.distance)?;
    writeln!(w, "pair: {} {}", fmt_point(&r.pair.0), fmt_point(&r.pair.1))?;
    writeln!(w, "n_input: {}", s.n_input)?;
    writeln!(w, "n_after_initial_polygon: {}", s.n_after_initial_polygon)?;
    writeln!(w, "n_after_polar: {}", s.n_after_polar)?;
    writeln!(w, "n_after_recheck: {}", s.n_after_recheck)?;
    writeln!(w, "k_used: {}", s.k_used)?;
    writeln!(w, "nonempty_cells: {}", s.nonempty_cells)?;
    writeln!(w, "pairs_total: {}", s.pairs_total)?;
    writeln!(w, "pairs_surviving: {}", s.pairs_surviving)?;
    w.flush()?;
    Ok(())
}

fn report_oracle(mut w: impl Write, r: &Farthest, json: bool) -> Result<()> {
    if json {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
    } else {
        writeln!(w, "distance: {}", r.distance)?;
        writeln!(w, "pair: {} {}", fmt_point(&r.pair.0), fmt_point(&r.pair.1))?;
    }
    w.flush()?;
    Ok(())
}
