//! Salt-and-pepper corruption and noise-density estimation.
//!
//! Corruption is seeded and fully reproducible: the generator is ChaCha8
//! (`rand_chacha::ChaCha8Rng`), a portable stream cipher RNG whose output is
//! identical across platforms for a given seed. Pixels are visited in
//! row-major order, each independently corrupted with probability `density`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ca::{MAX_STATE, MIN_STATE};
use crate::error::{Error, Result};
use crate::grid::GrayImage;

/// Human-readable identity of the corruption RNG, for report metadata.
pub const RNG_IDENTITY: &str = "chacha8";

/// Parameters for salt-and-pepper corruption.
///
/// `density` is the per-pixel corruption probability; `salt_fraction` is the
/// share of corrupted pixels set to 255 (the rest become 0). Both live in
/// [0, 1]. Use [`NoiseSpec::new`] to get validation; the fields are public
/// for literal construction when the values are known good.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub density: f64,
    pub salt_fraction: f64,
    pub seed: u64,
}

impl NoiseSpec {
    /// Validated constructor; rejects densities or salt fractions outside [0, 1].
    pub fn new(density: f64, salt_fraction: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::invalid(format!(
                "noise density must be in [0, 1], got {density}"
            )));
        }
        if !(0.0..=1.0).contains(&salt_fraction) {
            return Err(Error::invalid(format!(
                "salt fraction must be in [0, 1], got {salt_fraction}"
            )));
        }
        Ok(Self {
            density,
            salt_fraction,
            seed,
        })
    }

    /// Symmetric salt/pepper split (the common benchmark setting).
    pub fn symmetric(density: f64, seed: u64) -> Result<Self> {
        Self::new(density, 0.5, seed)
    }
}

/// Corrupts an image with salt-and-pepper noise.
///
/// Every pixel is independently hit with probability `spec.density`; a hit
/// pixel becomes 255 with probability `spec.salt_fraction` and 0 otherwise.
/// Unhit pixels are copied through unchanged. The output is a pure function
/// of `(img, spec)`, so reruns with the same seed are bit-identical.
pub fn add_salt_pepper(img: &GrayImage, spec: &NoiseSpec) -> GrayImage {
    debug_assert!((0.0..=1.0).contains(&spec.density));
    debug_assert!((0.0..=1.0).contains(&spec.salt_fraction));
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = img.clone();
    for p in out.as_raw_mut() {
        if rng.gen::<f64>() < spec.density {
            *p = if rng.gen::<f64>() < spec.salt_fraction {
                MAX_STATE
            } else {
                MIN_STATE
            };
        }
    }
    out
}

/// Rough noise-density estimate: the fraction of pixels sitting at the
/// extremes 0 or 255.
///
/// Exact on images whose clean content avoids pure black and white;
/// overestimates otherwise. Callers that know better can pass an explicit
/// density to [`iterations_for`] instead.
pub fn estimate_noise_density(img: &GrayImage) -> f64 {
    let extremes = img
        .as_raw()
        .iter()
        .filter(|&&v| v == MIN_STATE || v == MAX_STATE)
        .count();
    extremes as f64 / img.pixel_count() as f64
}

/// Iteration budget for a given noise density: `floor(density * 100 / 10) + 1`.
///
/// Noise at n% gets n/10 + 1 passes, so the work grows linearly with the
/// noise level. Densities outside [0, 1] are clamped; the result is always in
/// [1, 11].
pub fn iterations_for(density: f64) -> u32 {
    let d = density.clamp(0.0, 1.0);
    ((d * 100.0 / 10.0).floor() as u32 + 1).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scene(w: usize, h: usize) -> GrayImage {
        // mid-range values only, so corrupted pixels are exactly the extremes
        GrayImage::from_fn(w, h, |i, j| (40 + (i * 7 + j * 13) % 170) as u8)
    }

    #[test]
    fn zero_density_is_identity() {
        let img = scene(17, 9);
        let spec = NoiseSpec::new(0.0, 0.5, 123).unwrap();
        assert_eq!(add_salt_pepper(&img, &spec), img);
    }

    #[test]
    fn full_density_corrupts_everything() {
        let img = scene(17, 9);
        let spec = NoiseSpec::new(1.0, 0.5, 123).unwrap();
        let noisy = add_salt_pepper(&img, &spec);
        assert!(noisy.as_raw().iter().all(|&v| v == 0 || v == 255));
    }

    #[test]
    fn corrupted_count_tracks_binomial_expectation() {
        // 256x256 at density 0.3: expectation 19660.8, stddev ~117.3.
        let img = GrayImage::filled(256, 256, 128);
        let spec = NoiseSpec::new(0.3, 0.5, 2024).unwrap();
        let noisy = add_salt_pepper(&img, &spec);
        let extremes = noisy
            .as_raw()
            .iter()
            .filter(|&&v| v == 0 || v == 255)
            .count() as f64;
        let expected = 0.3 * 65536.0;
        let four_sigma = 4.0 * (65536.0_f64 * 0.3 * 0.7).sqrt();
        assert!(
            (extremes - expected).abs() <= four_sigma,
            "corrupted count {extremes} outside {expected} +- {four_sigma:.1}"
        );
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let img = scene(31, 23);
        let spec = NoiseSpec::new(0.4, 0.3, 777).unwrap();
        assert_eq!(add_salt_pepper(&img, &spec), add_salt_pepper(&img, &spec));
    }

    #[test]
    fn estimate_no_extremes() {
        assert_eq!(estimate_noise_density(&scene(8, 8)), 0.0);
    }

    #[test]
    fn estimate_all_extremes() {
        assert_eq!(estimate_noise_density(&GrayImage::filled(5, 4, 0)), 1.0);
    }

    #[test]
    fn estimate_half_extremes() {
        let img = GrayImage::new(2, 2, vec![0, 100, 255, 100]).unwrap();
        assert_eq!(estimate_noise_density(&img), 0.5);
    }

    #[test]
    fn iteration_budget_examples() {
        assert_eq!(iterations_for(0.0), 1);
        assert_eq!(iterations_for(0.9), 10);
        assert_eq!(iterations_for(0.35), 4);
        assert_eq!(iterations_for(1.0), 11);
    }

    #[test]
    fn spec_validation() {
        assert!(NoiseSpec::new(1.1, 0.5, 0).is_err());
        assert!(NoiseSpec::new(0.5, -0.1, 0).is_err());
        assert!(NoiseSpec::new(0.5, 0.5, 0).is_ok());
    }

    proptest! {
        #[test]
        fn corruption_only_writes_extremes(density in 0.0f64..=1.0, seed in any::<u64>()) {
            let img = scene(13, 11);
            let spec = NoiseSpec::new(density, 0.5, seed).unwrap();
            let noisy = add_salt_pepper(&img, &spec);
            for (a, b) in img.as_raw().iter().zip(noisy.as_raw()) {
                prop_assert!(a == b || *b == 0 || *b == 255);
            }
        }

        #[test]
        fn iteration_budget_is_monotone_and_bounded(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(iterations_for(lo) <= iterations_for(hi));
            prop_assert!((1..=11).contains(&iterations_for(a)));
        }
    }
}
