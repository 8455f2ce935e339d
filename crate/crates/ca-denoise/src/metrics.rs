//! Full-reference quality metrics: PSNR and SSIM.
//!
//! PSNR is `10 * log10(255^2 / MSE)`; identical images report
//! `f64::INFINITY`, which serializes as the string `inf`.
//!
//! SSIM follows the standard single-scale definition: 11x11 Gaussian windows
//! (sigma 1.5), stabilizers `C1 = (0.01 * 255)^2` and `C2 = (0.03 * 255)^2`,
//! and the luminance/contrast/structure product in its usual collapsed form.
//! Only windows lying fully inside the image are evaluated (no padding); the
//! score is their mean. Images smaller than the window fall back to a single
//! global-statistics window with uniform weights.

use crate::error::{Error, Result};
use crate::grid::GrayImage;

const PEAK_SQ: f64 = 255.0 * 255.0;

/// SSIM window side length.
pub const SSIM_WINDOW: usize = 11;
const SSIM_RADIUS: usize = SSIM_WINDOW / 2;
const SSIM_SIGMA: f64 = 1.5;
const C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
const C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

/// PSNR and SSIM for a reference/restored pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    /// Peak signal-to-noise ratio in decibels; `f64::INFINITY` for identical
    /// images.
    pub psnr_db: f64,
    /// Mean structural similarity in [-1, 1]; 1 means identical.
    pub ssim: f64,
}

/// Peak signal-to-noise ratio between two images of equal dimensions.
pub fn psnr(reference: &GrayImage, restored: &GrayImage) -> Result<f64> {
    check_dims(reference, restored)?;
    let sq_err: u64 = reference
        .as_raw()
        .iter()
        .zip(restored.as_raw())
        .map(|(&a, &b)| {
            let d = i64::from(a) - i64::from(b);
            (d * d) as u64
        })
        .sum();
    if sq_err == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sq_err as f64 / reference.pixel_count() as f64;
    Ok(10.0 * (PEAK_SQ / mse).log10())
}

/// Mean structural similarity between two images of equal dimensions.
pub fn ssim(reference: &GrayImage, restored: &GrayImage) -> Result<f64> {
    check_dims(reference, restored)?;
    let w = reference.width();
    let h = reference.height();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Ok(ssim_global(reference, restored));
    }
    Ok(ssim_windowed(reference, restored))
}

/// Both metrics in one call.
pub fn quality(reference: &GrayImage, restored: &GrayImage) -> Result<QualityReport> {
    Ok(QualityReport {
        psnr_db: psnr(reference, restored)?,
        ssim: ssim(reference, restored)?,
    })
}

fn check_dims(a: &GrayImage, b: &GrayImage) -> Result<()> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ));
    }
    Ok(())
}

fn ssim_term(mu_x: f64, mu_y: f64, var_x: f64, var_y: f64, cov: f64) -> f64 {
    ((2.0 * mu_x * mu_y + C1) * (2.0 * cov + C2))
        / ((mu_x * mu_x + mu_y * mu_y + C1) * (var_x + var_y + C2))
}

fn ssim_global(a: &GrayImage, b: &GrayImage) -> f64 {
    let n = a.pixel_count() as f64;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&pa, &pb) in a.as_raw().iter().zip(b.as_raw()) {
        let x = f64::from(pa);
        let y = f64::from(pb);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    let mu_x = sx / n;
    let mu_y = sy / n;
    let var_x = sxx / n - mu_x * mu_x;
    let var_y = syy / n - mu_y * mu_y;
    let cov = sxy / n - mu_x * mu_y;
    ssim_term(mu_x, mu_y, var_x, var_y, cov)
}

/// Normalized 1D Gaussian tap weights for the 11x11 window.
fn gaussian_kernel() -> [f64; SSIM_WINDOW] {
    let mut g = [0.0; SSIM_WINDOW];
    let denom = 2.0 * SSIM_SIGMA * SSIM_SIGMA;
    let mut sum = 0.0;
    for (k, tap) in g.iter_mut().enumerate() {
        let d = k as f64 - SSIM_RADIUS as f64;
        *tap = (-d * d / denom).exp();
        sum += *tap;
    }
    for tap in &mut g {
        *tap /= sum;
    }
    g
}

/// Separable valid-region Gaussian filter: output is (h - 10) x (w - 10).
fn gaussian_valid(map: &[f64], w: usize, h: usize, g: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let vw = w - (SSIM_WINDOW - 1);
    let vh = h - (SSIM_WINDOW - 1);
    let mut rows = vec![0.0; h * vw];
    for i in 0..h {
        let src = &map[i * w..(i + 1) * w];
        let dst = &mut rows[i * vw..(i + 1) * vw];
        for (jc, out) in dst.iter_mut().enumerate() {
            let mut s = 0.0;
            for (u, gu) in g.iter().enumerate() {
                s += gu * src[jc + u];
            }
            *out = s;
        }
    }
    let mut out = vec![0.0; vh * vw];
    for ic in 0..vh {
        for j in 0..vw {
            let mut s = 0.0;
            for (u, gu) in g.iter().enumerate() {
                s += gu * rows[(ic + u) * vw + j];
            }
            out[ic * vw + j] = s;
        }
    }
    out
}

pub(crate) fn ssim_windowed(a: &GrayImage, b: &GrayImage) -> f64 {
    let w = a.width();
    let h = a.height();
    let n = w * h;
    let g = gaussian_kernel();

    let mut x = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut xx = vec![0.0; n];
    let mut yy = vec![0.0; n];
    let mut xy = vec![0.0; n];
    for (k, (&pa, &pb)) in a.as_raw().iter().zip(b.as_raw()).enumerate() {
        let vx = f64::from(pa);
        let vy = f64::from(pb);
        x[k] = vx;
        y[k] = vy;
        xx[k] = vx * vx;
        yy[k] = vy * vy;
        xy[k] = vx * vy;
    }

    let mu_x = gaussian_valid(&x, w, h, &g);
    let mu_y = gaussian_valid(&y, w, h, &g);
    let m_xx = gaussian_valid(&xx, w, h, &g);
    let m_yy = gaussian_valid(&yy, w, h, &g);
    let m_xy = gaussian_valid(&xy, w, h, &g);

    let mut sum = 0.0;
    for k in 0..mu_x.len() {
        let var_x = m_xx[k] - mu_x[k] * mu_x[k];
        let var_y = m_yy[k] - mu_y[k] * mu_y[k];
        let cov = m_xy[k] - mu_x[k] * mu_y[k];
        sum += ssim_term(mu_x[k], mu_y[k], var_x, var_y, cov);
    }
    sum / mu_x.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn img(w: usize, h: usize, f: impl FnMut(usize, usize) -> u8) -> GrayImage {
        GrayImage::from_fn(w, h, f)
    }

    #[test]
    fn psnr_identical_is_infinite() {
        let a = img(16, 16, |i, j| (i * 16 + j) as u8);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
    }

    #[test]
    fn psnr_maximal_error_is_zero_db() {
        let a = GrayImage::filled(8, 8, 0);
        let b = GrayImage::filled(8, 8, 255);
        assert_eq!(psnr(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn psnr_quarter_mse() {
        // one pixel off by 1 in a 2x2 image: MSE = 0.25
        let a = GrayImage::new(2, 2, vec![10, 10, 10, 10]).unwrap();
        let b = GrayImage::new(2, 2, vec![11, 10, 10, 10]).unwrap();
        let got = psnr(&a, &b).unwrap();
        assert!((got - 54.15140352195873).abs() < 1e-9, "got {got}");
    }

    #[test]
    fn psnr_rejects_dimension_mismatch() {
        let a = GrayImage::filled(4, 4, 0);
        let b = GrayImage::filled(4, 5, 0);
        assert!(matches!(psnr(&a, &b), Err(Error::DimensionMismatch(..))));
        assert!(matches!(ssim(&a, &b), Err(Error::DimensionMismatch(..))));
    }

    #[test]
    fn ssim_identical_is_exactly_one() {
        // windowed path
        let a = img(20, 14, |i, j| (i * 37 + j * 11) as u8);
        assert_eq!(ssim(&a, &a).unwrap(), 1.0);
        // global fallback path
        let b = img(7, 5, |i, j| (i * 50 + j * 3) as u8);
        assert_eq!(ssim(&b, &b).unwrap(), 1.0);
    }

    #[test]
    fn ssim_opposite_constants_near_zero() {
        // global fallback: ((0+C1)(0+C2)) / ((255^2+C1)(0+C2)) = C1 / (65025 + C1)
        let a = GrayImage::filled(8, 8, 0);
        let b = GrayImage::filled(8, 8, 255);
        let got = ssim(&a, &b).unwrap();
        assert!((got - 9.999000099990003e-5).abs() < 1e-12, "got {got}");
        // windowed path gives the same value (every window identical)
        let a = GrayImage::filled(16, 16, 0);
        let b = GrayImage::filled(16, 16, 255);
        let got = ssim(&a, &b).unwrap();
        assert!((got - 9.999000099990003e-5).abs() < 1e-9, "got {got}");
    }

    #[test]
    fn ssim_pure_luminance_shift() {
        // constant 100 vs constant 120, windowed: variance terms vanish
        let a = GrayImage::filled(16, 16, 100);
        let b = GrayImage::filled(16, 16, 120);
        let got = ssim(&a, &b).unwrap();
        assert!((got - 0.9836109249983688).abs() < 1e-9, "got {got}");
    }

    fn arb_pair() -> impl Strategy<Value = (GrayImage, GrayImage)> {
        (1usize..=24, 1usize..=24).prop_flat_map(|(w, h)| {
            (
                proptest::collection::vec(any::<u8>(), w * h),
                proptest::collection::vec(any::<u8>(), w * h),
            )
                .prop_map(move |(pa, pb)| {
                    (
                        GrayImage::new(w, h, pa).unwrap(),
                        GrayImage::new(w, h, pb).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn metrics_are_symmetric((a, b) in arb_pair()) {
            prop_assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
            prop_assert_eq!(ssim(&a, &b).unwrap(), ssim(&b, &a).unwrap());
        }

        #[test]
        fn ssim_stays_in_range((a, b) in arb_pair()) {
            // small slop for floating-point rounding of the exact [-1, 1] bound
            let v = ssim(&a, &b).unwrap();
            prop_assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&v), "ssim {} out of range", v);
        }

        #[test]
        fn psnr_decreases_as_error_grows(w in 1usize..=16, h in 1usize..=16, v in 1u8..=127) {
            let a = GrayImage::filled(w, h, 128);
            let closer = GrayImage::filled(w, h, 128 - v / 2);
            let farther = GrayImage::filled(w, h, 128 - v);
            prop_assert!(psnr(&a, &farther).unwrap() < psnr(&a, &closer).unwrap());
        }
    }
}
