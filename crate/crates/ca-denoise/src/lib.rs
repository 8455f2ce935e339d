//! Salt-and-pepper noise removal for grayscale images using a
//! cellular-automaton averaging rule.
//!
//! The image is evolved as a 2D automaton: pixels at the extremes of the
//! dynamic range (0 or 255) are the impulse-noise suspects, and each
//! synchronous step replaces every suspect with the mean of its non-extreme
//! Moore neighbors. Pixels strictly inside the range are never touched, so
//! unlike a blanket median filter the rule preserves clean detail exactly.
//! The number of steps grows with the noise level — n% noise gets n/10 + 1
//! steps — and can be derived automatically from the fraction of extreme
//! pixels in the input.
//!
//! # Quick start
//!
//! ```
//! use ca_denoise::ca::{denoise, DenoiseConfig};
//! use ca_denoise::metrics::quality;
//! use ca_denoise::noise::{add_salt_pepper, NoiseSpec};
//! use ca_denoise::synth::test_scene;
//!
//! let clean = test_scene(64, 64);
//! let noisy = add_salt_pepper(&clean, &NoiseSpec::symmetric(0.3, 42).unwrap());
//! let restored = denoise(&noisy, &DenoiseConfig::auto());
//!
//! let before = quality(&clean, &noisy).unwrap();
//! let after = quality(&clean, &restored).unwrap();
//! assert!(after.psnr_db > before.psnr_db + 10.0);
//! ```
//!
//! # Examples directory
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example add_noise        # seeded corruption + density estimate
//! cargo run --example denoise_pipeline # corrupt -> restore -> score
//! cargo run --example quality_metrics  # PSNR / SSIM behavior
//! cargo run --example median_baseline  # automaton vs 3x3 median sweep
//! cargo run --example evolution_trace  # per-step view of the automaton
//! cargo run --example benchmark_sweep  # CSV report generation
//! cargo run --example image_io        # PGM / PNG round-trips
//! ```
//!
//! A thin `ca-denoise` binary wraps the same library calls for shell use
//! (`add-noise`, `denoise`, `metrics`, `benchmark` subcommands).
//!
//! # Determinism
//!
//! Noise injection uses ChaCha8 seeded from a user-supplied 64-bit seed and
//! is bit-reproducible across platforms. The automaton step is a pure
//! function of the input grid; its internal row-parallelism cannot change the
//! result.

pub mod baseline;
pub mod bench;
pub mod ca;
pub mod error;
pub mod grid;
pub mod io;
pub mod metrics;
pub mod noise;
pub mod synth;

pub use error::{Error, Result};
pub use grid::{GrayImage, NeighborhoodSample};
