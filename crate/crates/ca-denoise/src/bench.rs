//! Benchmark harness: density sweeps averaged over many seeded runs, with a
//! stable CSV report.
//!
//! For every (image, density, filter) combination the harness corrupts the
//! reference with seeds `seed_base`, `seed_base + 1`, ..., restores it, and
//! scores the result against the clean reference. The automaton's iteration
//! count comes from the *injected* density (the level is known here, so
//! nothing is estimated); the median baseline always runs a single pass.
//!
//! Every report column except `mean_wall_time_ms` is reproducible bit-for-bit
//! from the inputs and seeds. Wall time covers the restoration call only —
//! corruption, scoring and I/O are excluded.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use crate::baseline::median_filter_3x3;
use crate::ca::{denoise, DenoiseConfig};
use crate::error::{Error, Result};
use crate::grid::GrayImage;
use crate::metrics::quality;
use crate::noise::{add_salt_pepper, iterations_for, NoiseSpec};

/// Restoration filters the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    /// The cellular-automaton rule.
    Ca,
    /// The plain 3x3 median filter.
    Smf,
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FilterKind::Ca => "ca",
            FilterKind::Smf => "smf",
        })
    }
}

impl FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ca" => Ok(FilterKind::Ca),
            "smf" => Ok(FilterKind::Smf),
            other => Err(Error::invalid(format!(
                "unknown filter '{other}' (expected 'ca' or 'smf')"
            ))),
        }
    }
}

/// Sweep parameters shared by all images in one benchmark invocation.
#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    /// Noise densities to sweep, in report order.
    pub densities: Vec<f64>,
    /// Independent corruption runs per combination.
    pub runs: u32,
    /// Seed of the first run; run k uses `seed_base + k`.
    pub seed_base: u64,
    /// Filters to evaluate, in report order.
    pub filters: Vec<FilterKind>,
}

impl BenchmarkConfig {
    /// The standard sweep: densities 0.1 through 0.9, both filters.
    pub fn standard(runs: u32, seed_base: u64) -> Self {
        Self {
            densities: (1..=9).map(|n| n as f64 / 10.0).collect(),
            runs,
            seed_base,
            filters: vec![FilterKind::Ca, FilterKind::Smf],
        }
    }

    fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::invalid("benchmark needs at least one run"));
        }
        if self.densities.is_empty() {
            return Err(Error::invalid("benchmark needs at least one density"));
        }
        if self.filters.is_empty() {
            return Err(Error::invalid("benchmark needs at least one filter"));
        }
        for &d in &self.densities {
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::invalid(format!(
                    "noise density must be in [0, 1], got {d}"
                )));
            }
        }
        Ok(())
    }
}

/// One aggregated line of the report: a single (image, density, filter)
/// combination averaged over all runs.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub image_name: String,
    pub density: f64,
    pub filter: FilterKind,
    pub runs: u32,
    pub iterations_used: u32,
    pub mean_psnr_db: f64,
    pub mean_ssim: f64,
    pub mean_wall_time_ms: f64,
    pub seed_base: u64,
}

/// Column header of the CSV report.
pub const CSV_HEADER: &str =
    "image,density,filter,runs,iterations,mean_psnr_db,mean_ssim,mean_wall_time_ms,seed_base";

/// Runs the full sweep over every (image, density, filter) combination, in
/// that nesting order.
pub fn run_benchmark(
    references: &[(String, GrayImage)],
    cfg: &BenchmarkConfig,
) -> Result<Vec<BenchmarkRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for (name, reference) in references {
        for &density in &cfg.densities {
            for &filter in &cfg.filters {
                rows.push(run_combination(name, reference, density, filter, cfg)?);
            }
        }
    }
    Ok(rows)
}

fn run_combination(
    name: &str,
    reference: &GrayImage,
    density: f64,
    filter: FilterKind,
    cfg: &BenchmarkConfig,
) -> Result<BenchmarkRow> {
    let iterations = match filter {
        FilterKind::Ca => iterations_for(density),
        FilterKind::Smf => 1,
    };
    let denoise_cfg = DenoiseConfig::fixed(iterations);
    let mut psnr_sum = 0.0;
    let mut ssim_sum = 0.0;
    let mut wall = std::time::Duration::ZERO;
    for k in 0..cfg.runs {
        let spec = NoiseSpec::new(density, 0.5, cfg.seed_base.wrapping_add(u64::from(k)))?;
        let noisy = add_salt_pepper(reference, &spec);
        let start = Instant::now();
        let restored = match filter {
            FilterKind::Ca => denoise(&noisy, &denoise_cfg),
            FilterKind::Smf => median_filter_3x3(&noisy),
        };
        wall += start.elapsed();
        let q = quality(reference, &restored)?;
        psnr_sum += q.psnr_db;
        ssim_sum += q.ssim;
    }
    let runs = f64::from(cfg.runs);
    Ok(BenchmarkRow {
        image_name: name.to_string(),
        density,
        filter,
        runs: cfg.runs,
        iterations_used: iterations,
        mean_psnr_db: psnr_sum / runs,
        mean_ssim: ssim_sum / runs,
        mean_wall_time_ms: wall.as_secs_f64() * 1000.0 / runs,
        seed_base: cfg.seed_base,
    })
}

/// Serializes rows under the fixed [`CSV_HEADER`]. Infinite PSNR means are
/// written as the string `inf`.
pub fn write_csv<W: std::io::Write>(writer: W, rows: &[BenchmarkRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER.split(','))
        .map_err(csv_error)?;
    for row in rows {
        w.write_record(&[
            row.image_name.clone(),
            format!("{}", row.density),
            row.filter.to_string(),
            row.runs.to_string(),
            row.iterations_used.to_string(),
            format!("{:.4}", row.mean_psnr_db),
            format!("{:.4}", row.mean_ssim),
            format!("{:.3}", row.mean_wall_time_ms),
            row.seed_base.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the report to a file; on failure the partial file is removed.
pub fn write_csv_file(path: impl AsRef<Path>, rows: &[BenchmarkRow]) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::from(e).with_path(path))?;
    if let Err(e) = write_csv(file, rows) {
        let _ = std::fs::remove_file(path);
        return Err(e.with_path(path));
    }
    Ok(())
}

fn csv_error(err: csv::Error) -> Error {
    match err.into_kind() {
        csv::ErrorKind::Io(e) => Error::from(e),
        other => Error::invalid(format!("csv serialization failed: {other:?}")),
    }
}
