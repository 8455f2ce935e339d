//! Synthetic sample images for the examples and tests.

use crate::grid::GrayImage;

/// A deterministic grayscale test scene: a smooth diagonal gradient with a
/// few disks and bars on top.
///
/// All intensities stay in [1, 254], so any 0/255 pixel seen afterwards was
/// put there by noise injection — handy when exercising the density
/// estimator. Panics if either dimension is zero.
pub fn test_scene(width: usize, height: usize) -> GrayImage {
    let w = width as f64;
    let h = height as f64;
    GrayImage::from_fn(width, height, |i, j| {
        let x = j as f64 / w;
        let y = i as f64 / h;
        let mut v = 40.0 + 150.0 * (0.5 * x + 0.5 * y);
        // disks of differing brightness
        for (cx, cy, r, level) in [
            (0.3, 0.3, 0.16, 220.0),
            (0.72, 0.42, 0.12, 70.0),
            (0.5, 0.78, 0.1, 160.0),
        ] {
            let dx = x - cx;
            let dy = y - cy;
            if dx * dx + dy * dy < r * r {
                v = level;
            }
        }
        // thin vertical bars, the kind of detail a blanket filter smears
        if (x * 20.0).fract() < 0.08 && y > 0.55 && y < 0.95 {
            v = 230.0;
        }
        (v.round() as i64).clamp(1, 254) as u8
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scene_avoids_the_extremes() {
        let img = test_scene(128, 96);
        assert!(img.as_raw().iter().all(|&v| (1..=254).contains(&v)));
    }

    #[test]
    fn scene_is_deterministic() {
        assert_eq!(test_scene(64, 64), test_scene(64, 64));
    }
}
