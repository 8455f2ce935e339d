//! The cellular-automaton denoising rule.
//!
//! The image is treated as a 2D automaton whose cells hold 8-bit intensities.
//! A cell is classified as corrupted exactly when it sits at an extreme of
//! the dynamic range (0 or 255) — the only values salt-and-pepper noise can
//! produce. Each synchronous step rewrites every corrupted cell from its
//! 8-cell Moore neighborhood:
//!
//! * neighbors equal to 0 or 255 are discarded as noise carriers;
//! * the cell takes the rounded mean of the surviving neighbors;
//! * when every neighbor is extreme there is nothing to average and the cell
//!   is set to 255.
//!
//! Cells strictly inside the range are never touched, so image detail away
//! from the noise is preserved bit-for-bit. All new states are computed from
//! the previous grid before any is committed (double buffering), which makes
//! the result independent of traversal order and lets [`step`] split the
//! output across worker threads with no change in output.
//!
//! Heavier noise needs more passes: noise at n% gets n/10 + 1 steps (see
//! [`iterations_for`](crate::noise::iterations_for)), either from a caller
//! supplied density or from the automatic estimate.

use rayon::prelude::*;

use crate::grid::{GrayImage, NeighborhoodSample};
use crate::noise::{estimate_noise_density, iterations_for};

/// Smallest cell state; pepper noise and the zero boundary sit here.
pub const MIN_STATE: u8 = 0;

/// Largest cell state; salt noise sits here.
pub const MAX_STATE: u8 = 255;

/// Iteration budget for [`denoise`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iterations {
    /// Estimate the noise density of the input, then run
    /// `iterations_for(estimate)` steps.
    Auto,
    /// Run exactly this many steps. Zero steps returns the input unchanged.
    Fixed(u32),
}

/// Configuration for [`denoise`] and [`transition`].
///
/// The state thresholds are fixed at 0 and 255 for 8-bit images; the
/// accessors exist so reports can state them explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenoiseConfig {
    iterations: Iterations,
    min_state: u8,
    max_state: u8,
}

impl DenoiseConfig {
    /// Self-adapting configuration: iteration count derived from the input's
    /// estimated noise density.
    pub fn auto() -> Self {
        Self {
            iterations: Iterations::Auto,
            min_state: MIN_STATE,
            max_state: MAX_STATE,
        }
    }

    /// Fixed iteration count, bypassing density estimation.
    pub fn fixed(iterations: u32) -> Self {
        Self {
            iterations: Iterations::Fixed(iterations),
            ..Self::auto()
        }
    }

    pub fn iterations(&self) -> Iterations {
        self.iterations
    }

    pub fn min_state(&self) -> u8 {
        self.min_state
    }

    pub fn max_state(&self) -> u8 {
        self.max_state
    }
}

impl Default for DenoiseConfig {
    fn default() -> Self {
        Self::auto()
    }
}

/// True iff `value` is an extreme of the dynamic range, i.e. a possible
/// salt-and-pepper impulse.
#[inline]
pub fn is_noisy(value: u8) -> bool {
    value == MIN_STATE || value == MAX_STATE
}

/// Replacement value for a corrupted cell, computed from its neighborhood.
///
/// Discards every 0 and 255 in the sample and returns the mean of the
/// survivors, rounded to the nearest integer (ties away from zero). When all
/// 8 neighbors are extreme the result is 255. The result is therefore either
/// 255 or a value in [1, 254].
pub fn repair(sample: &NeighborhoodSample) -> u8 {
    let mut sum: u32 = 0;
    let mut count: u32 = 0;
    for &v in sample.values() {
        if !is_noisy(v) {
            sum += u32::from(v);
            count += 1;
        }
    }
    if count == 0 {
        MAX_STATE
    } else {
        rounded_mean(sum, count)
    }
}

/// Nearest-integer mean of `count` non-negative values summing to `sum`,
/// ties rounded up (away from zero).
#[inline]
fn rounded_mean(sum: u32, count: u32) -> u8 {
    ((2 * sum + count) / (2 * count)) as u8
}

/// Next state of the cell at `(i, j)`.
///
/// Cells strictly between the state thresholds are kept unchanged; extreme
/// cells are rewritten via [`repair`].
pub fn transition(img: &GrayImage, i: usize, j: usize, cfg: &DenoiseConfig) -> u8 {
    let v = img.get(i, j);
    if cfg.min_state < v && v < cfg.max_state {
        v
    } else {
        repair(&img.moore_sample(i, j))
    }
}

/// One synchronous step of the automaton.
///
/// Every output pixel is [`transition`] evaluated on the *input* grid, so the
/// update is order-independent; the row partitioning across worker threads is
/// bit-identical to a sequential scan. The input is not modified.
pub fn step(img: &GrayImage, cfg: &DenoiseConfig) -> GrayImage {
    let mut out = img.clone();
    step_into(img, cfg, &mut out);
    out
}

fn step_into(src: &GrayImage, cfg: &DenoiseConfig, dst: &mut GrayImage) {
    let width = src.width();
    dst.as_raw_mut()
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(i, row)| {
            for (j, out) in row.iter_mut().enumerate() {
                *out = transition(src, i, j, cfg);
            }
        });
}

/// Number of steps [`denoise`] will run for this input and configuration.
///
/// `Auto` resolves through the noise-density estimate of the input image,
/// measured once before the first step.
pub fn resolved_iterations(img: &GrayImage, cfg: &DenoiseConfig) -> u32 {
    match cfg.iterations {
        Iterations::Fixed(n) => n,
        Iterations::Auto => iterations_for(estimate_noise_density(img)),
    }
}

/// Runs the automaton for the configured number of steps and returns the
/// restored image.
pub fn denoise(img: &GrayImage, cfg: &DenoiseConfig) -> GrayImage {
    let steps = resolved_iterations(img, cfg);
    let mut cur = img.clone();
    let mut next = img.clone();
    for _ in 0..steps {
        step_into(&cur, cfg, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}
