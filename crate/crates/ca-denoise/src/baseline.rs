//! Plain 3x3 median filter, the classical comparison baseline.

use rayon::prelude::*;

use crate::grid::GrayImage;

/// Single-pass 3x3 median filter.
///
/// Every output pixel is the median (5th smallest) of the 9-cell window
/// centered on it — center included, unlike the automaton's 8-neighbor
/// sample. Offsets outside the image contribute 0. The filter is applied to
/// every pixel unconditionally, which is exactly why it smears detail that
/// the automaton leaves alone.
pub fn median_filter_3x3(img: &GrayImage) -> GrayImage {
    let width = img.width();
    let mut out = img.clone();
    out.as_raw_mut()
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(i, row)| {
            for (j, dst) in row.iter_mut().enumerate() {
                let mut window = [0u8; 9];
                let mut k = 0;
                for di in -1..=1isize {
                    for dj in -1..=1isize {
                        window[k] = img.get_or_zero(i, j, di, dj);
                        k += 1;
                    }
                }
                window.sort_unstable();
                *dst = window[4];
            }
        });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_region_keeps_center() {
        let img = GrayImage::filled(3, 3, 77);
        assert_eq!(median_filter_3x3(&img).get(1, 1), 77);
    }

    #[test]
    fn five_zeros_win_the_window() {
        // center window holds {0,0,0,0,0,255,255,255,255} -> median 0
        let img = GrayImage::new(3, 3, vec![0, 0, 0, 0, 0, 255, 255, 255, 255]).unwrap();
        assert_eq!(median_filter_3x3(&img).get(1, 1), 0);
    }

    #[test]
    fn center_of_ramp_is_middle_value() {
        let img = GrayImage::new(3, 3, vec![10, 20, 30, 40, 50, 60, 70, 80, 90]).unwrap();
        assert_eq!(median_filter_3x3(&img).get(1, 1), 50);
    }

    #[test]
    fn borders_feel_the_zero_boundary() {
        // corner window has 5 zero-boundary cells, so the median is 0
        let img = GrayImage::filled(3, 3, 200);
        assert_eq!(median_filter_3x3(&img).get(0, 0), 0);
    }

    proptest! {
        #[test]
        fn output_values_come_from_the_window(
            px in proptest::collection::vec(any::<u8>(), 25)
        ) {
            let img = GrayImage::new(5, 5, px).unwrap();
            let out = median_filter_3x3(&img);
            for i in 0..5 {
                for j in 0..5 {
                    let v = out.get(i, j);
                    let mut found = false;
                    for di in -1..=1isize {
                        for dj in -1..=1isize {
                            found |= img.get_or_zero(i, j, di, dj) == v;
                        }
                    }
                    prop_assert!(found, "output {} not in window at ({}, {})", v, i, j);
                }
            }
        }
    }
}
