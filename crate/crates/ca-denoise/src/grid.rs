//! Image grid and Moore-neighborhood extraction.
//!
//! [`GrayImage`] is the lattice every filter in this crate operates on: a
//! rectangular, row-major grid of 8-bit intensities. Cells outside the grid
//! are treated as holding intensity 0 (zero boundary), so every pixel —
//! corners included — has a full 8-cell Moore neighborhood.

use crate::error::{Error, Result};

/// A rectangular grayscale image with 8-bit pixels in row-major order.
///
/// Immutable after construction; all filters produce new images. Dimensions
/// are always at least 1x1 and the pixel buffer length always equals
/// `width * height`.
#[derive(Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl std::fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GrayImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("pixels", &format_args!("[{} bytes]", self.pixels.len()))
            .finish()
    }
}

impl GrayImage {
    /// Builds an image from a row-major pixel buffer.
    ///
    /// Fails if either dimension is zero or the buffer length does not match
    /// `width * height`.
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        let expected = width
            .checked_mul(height)
            .ok_or_else(|| Error::invalid(format!("image size {width}x{height} overflows")))?;
        if pixels.len() != expected {
            return Err(Error::PixelCountMismatch {
                width,
                height,
                len: pixels.len(),
                expected,
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Constant image. Panics if either dimension is zero.
    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        assert!(width >= 1 && height >= 1, "dimensions must be at least 1x1");
        Self {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    /// Builds an image by evaluating `f(row, column)` for every pixel.
    /// Panics if either dimension is zero.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        assert!(width >= 1 && height >= 1, "dimensions must be at least 1x1");
        let mut pixels = Vec::with_capacity(width * height);
        for i in 0..height {
            for j in 0..width {
                pixels.push(f(i, j));
            }
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Total pixel count (`width * height`).
    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    /// Intensity at row `i`, column `j`.
    ///
    /// Out-of-range indices are a programming error and panic.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        assert!(
            i < self.height && j < self.width,
            "pixel ({i}, {j}) out of range for {}x{} image",
            self.width,
            self.height
        );
        self.pixels[i * self.width + j]
    }

    /// Neighbor intensity at `(i + di, j + dj)`, or 0 when the offset falls
    /// outside the image (zero boundary).
    #[inline]
    pub(crate) fn get_or_zero(&self, i: usize, j: usize, di: isize, dj: isize) -> u8 {
        let ni = i as isize + di;
        let nj = j as isize + dj;
        if ni < 0 || nj < 0 || ni >= self.height as isize || nj >= self.width as isize {
            0
        } else {
            self.pixels[ni as usize * self.width + nj as usize]
        }
    }

    /// The 8 Moore neighbors of `(i, j)` as a sorted sample.
    ///
    /// The center pixel is excluded. Offsets outside the image contribute
    /// intensity 0, so corner and edge pixels still yield 8 values.
    pub fn moore_sample(&self, i: usize, j: usize) -> NeighborhoodSample {
        assert!(
            i < self.height && j < self.width,
            "pixel ({i}, {j}) out of range for {}x{} image",
            self.width,
            self.height
        );
        let mut values = [0u8; 8];
        let mut k = 0;
        for di in -1..=1isize {
            for dj in -1..=1isize {
                if di == 0 && dj == 0 {
                    continue;
                }
                values[k] = self.get_or_zero(i, j, di, dj);
                k += 1;
            }
        }
        NeighborhoodSample::new(values)
    }

    /// Row-major pixel buffer.
    pub fn as_raw(&self) -> &[u8] {
        &self.pixels
    }

    /// Consumes the image, returning its pixel buffer.
    pub fn into_raw(self) -> Vec<u8> {
        self.pixels
    }

    /// One image row as a slice.
    pub fn row(&self, i: usize) -> &[u8] {
        assert!(i < self.height, "row {i} out of range");
        &self.pixels[i * self.width..(i + 1) * self.width]
    }

    pub(crate) fn as_raw_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }
}

/// The 8 Moore-neighbor intensities of a pixel, sorted ascending.
///
/// Produced by [`GrayImage::moore_sample`]; the center pixel is never part of
/// the sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborhoodSample {
    values: [u8; 8],
}

impl NeighborhoodSample {
    /// Builds a sample from 8 neighbor values in any order.
    pub fn new(mut values: [u8; 8]) -> Self {
        values.sort_unstable();
        Self { values }
    }

    /// The neighbor values in ascending order.
    pub fn values(&self) -> &[u8; 8] {
        &self.values
    }

    /// Smallest neighbor value.
    pub fn min_value(&self) -> u8 {
        self.values[0]
    }

    /// Largest neighbor value.
    pub fn max_value(&self) -> u8 {
        self.values[7]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn get_single_pixel() {
        let img = GrayImage::new(1, 1, vec![42]).unwrap();
        assert_eq!(img.get(0, 0), 42);
    }

    #[test]
    fn get_row_major_layout() {
        let img = GrayImage::new(2, 2, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(img.get(1, 0), 3);
    }

    #[test]
    fn get_constant_image() {
        let img = GrayImage::filled(3, 3, 0);
        assert_eq!(img.get(2, 2), 0);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            GrayImage::new(0, 3, vec![]),
            Err(Error::EmptyImage)
        ));
        assert!(matches!(
            GrayImage::new(2, 2, vec![1, 2, 3]),
            Err(Error::PixelCountMismatch { .. })
        ));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn get_out_of_range_panics() {
        GrayImage::filled(2, 2, 0).get(2, 0);
    }

    #[test]
    fn moore_sample_constant_interior() {
        let img = GrayImage::filled(3, 3, 100);
        let s = img.moore_sample(1, 1);
        assert_eq!(s.values(), &[100; 8]);
        assert_eq!(s.min_value(), 100);
        assert_eq!(s.max_value(), 100);
    }

    #[test]
    fn moore_sample_single_pixel_is_all_boundary() {
        let img = GrayImage::new(1, 1, vec![7]).unwrap();
        assert_eq!(img.moore_sample(0, 0).values(), &[0; 8]);
    }

    #[test]
    fn moore_sample_corner_mixes_boundary_and_pixels() {
        let img = GrayImage::new(3, 3, vec![10, 20, 30, 40, 50, 60, 70, 80, 90]).unwrap();
        // Neighbors of (0,0): five offsets fall outside, plus 20, 40, 50.
        assert_eq!(img.moore_sample(0, 0).values(), &[0, 0, 0, 0, 0, 20, 40, 50]);
    }

    fn arb_image() -> impl Strategy<Value = GrayImage> {
        (1usize..=12, 1usize..=12).prop_flat_map(|(w, h)| {
            proptest::collection::vec(any::<u8>(), w * h)
                .prop_map(move |px| GrayImage::new(w, h, px).unwrap())
        })
    }

    proptest! {
        #[test]
        fn moore_sample_is_sorted_with_8_values(img in arb_image(), i_r in 0usize..12, j_r in 0usize..12) {
            let i = i_r % img.height();
            let j = j_r % img.width();
            let s = img.moore_sample(i, j);
            prop_assert!(s.values().windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(s.min_value(), s.values()[0]);
            prop_assert_eq!(s.max_value(), s.values()[7]);
        }

        #[test]
        fn moore_sample_interior_matches_stored_neighbors(img in arb_image(), i_r in 0usize..12, j_r in 0usize..12) {
            prop_assume!(img.width() >= 3 && img.height() >= 3);
            let i = 1 + i_r % (img.height() - 2);
            let j = 1 + j_r % (img.width() - 2);
            let mut expected: Vec<u8> = Vec::new();
            for di in -1..=1isize {
                for dj in -1..=1isize {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    expected.push(img.get((i as isize + di) as usize, (j as isize + dj) as usize));
                }
            }
            expected.sort_unstable();
            let sample = img.moore_sample(i, j);
            prop_assert_eq!(sample.values().as_slice(), expected.as_slice());
        }
    }
}
