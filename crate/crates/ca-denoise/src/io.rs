//! Image file I/O: binary PGM (P5) and 8-bit PNG.
//!
//! PGM is the canonical lossless interchange format here — the pixel payload
//! round-trips byte-for-byte. PNG (8-bit grayscale or RGB) is supported for
//! convenience. Lossy formats are rejected outright: decoding a JPEG would
//! silently corrupt the impulse-noise model the filters rely on.

use std::fs;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::GrayImage;

/// A decoded image file: single-channel, or three color planes.
#[derive(Debug, Clone, PartialEq)]
pub enum ImageData {
    Gray(GrayImage),
    Rgb(RgbPlanes),
}

impl ImageData {
    pub fn width(&self) -> usize {
        match self {
            ImageData::Gray(g) => g.width(),
            ImageData::Rgb(p) => p.r.width(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            ImageData::Gray(g) => g.height(),
            ImageData::Rgb(p) => p.r.height(),
        }
    }
}

/// An RGB image stored as three equally sized grayscale planes, so every
/// single-channel operation can be applied per channel.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbPlanes {
    pub r: GrayImage,
    pub g: GrayImage,
    pub b: GrayImage,
}

impl RgbPlanes {
    /// Bundles three planes, rejecting mismatched dimensions.
    pub fn new(r: GrayImage, g: GrayImage, b: GrayImage) -> Result<Self> {
        for plane in [&g, &b] {
            if plane.width() != r.width() || plane.height() != r.height() {
                return Err(Error::DimensionMismatch(
                    r.width(),
                    r.height(),
                    plane.width(),
                    plane.height(),
                ));
            }
        }
        Ok(Self { r, g, b })
    }

    pub fn width(&self) -> usize {
        self.r.width()
    }

    pub fn height(&self) -> usize {
        self.r.height()
    }

    /// Rec. 601 luma conversion: `0.299 R + 0.587 G + 0.114 B`, rounded.
    pub fn to_grayscale(&self) -> GrayImage {
        let px = self
            .r
            .as_raw()
            .iter()
            .zip(self.g.as_raw())
            .zip(self.b.as_raw())
            .map(|((&r, &g), &b)| {
                let y = 0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b);
                y.round() as u8
            })
            .collect();
        GrayImage::new(self.width(), self.height(), px).expect("planes share dimensions")
    }

    fn interleave(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.width() * self.height() * 3);
        for ((&r, &g), &b) in self
            .r
            .as_raw()
            .iter()
            .zip(self.g.as_raw())
            .zip(self.b.as_raw())
        {
            out.extend_from_slice(&[r, g, b]);
        }
        out
    }
}

/// Recognized file formats, chosen by extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Pgm,
    Png,
}

fn format_for(path: &Path) -> Result<Format> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .unwrap_or_default();
    match ext.as_str() {
        "pgm" | "pnm" => Ok(Format::Pgm),
        "png" => Ok(Format::Png),
        "jpg" | "jpeg" => Err(Error::unsupported(
            "JPEG is lossy and would corrupt impulse noise; use PGM or PNG",
        )),
        other => Err(Error::unsupported(format!(
            "unrecognized extension '{other}'; supported: .pgm, .png"
        ))),
    }
}

/// Loads a PGM or PNG file as grayscale or RGB, decided by its content.
pub fn load_image(path: impl AsRef<Path>) -> Result<ImageData> {
    let path = path.as_ref();
    let result = match format_for(path)? {
        Format::Pgm => {
            let bytes = fs::read(path).map_err(|e| Error::from(e))?;
            read_pgm(&bytes).map(ImageData::Gray)
        }
        Format::Png => load_png(path),
    };
    result.map_err(|e| e.with_path(path))
}

/// Loads an image that must be single-channel grayscale.
pub fn load_gray(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    match load_image(path)? {
        ImageData::Gray(g) => Ok(g),
        ImageData::Rgb(_) => Err(Error::unsupported(
            "expected a grayscale image; convert RGB input first (e.g. denoise --grayscale)",
        )
        .with_path(path)),
    }
}

/// Saves grayscale or RGB data in the format implied by the extension.
///
/// PGM can only hold a single channel; saving RGB data as `.pgm` is an error.
pub fn save_image(path: impl AsRef<Path>, img: &ImageData) -> Result<()> {
    let path = path.as_ref();
    let result = match (format_for(path)?, img) {
        (Format::Pgm, ImageData::Gray(g)) => {
            let mut file = fs::File::create(path).map_err(Error::from)?;
            write_pgm(&mut file, g)
        }
        (Format::Pgm, ImageData::Rgb(_)) => Err(Error::unsupported(
            "PGM holds a single channel; save RGB data as .png",
        )),
        (Format::Png, data) => save_png(path, data),
    };
    result.map_err(|e| e.with_path(path))
}

/// Parses a binary PGM (magic `P5`, maxval 255) from memory.
///
/// Header whitespace and `#` comments are accepted anywhere before the
/// payload; the payload is the `width * height` bytes following the single
/// whitespace byte after the maxval token. Trailing bytes are ignored.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur.token()?;
    if magic != b"P5" {
        return Err(Error::malformed(format!(
            "expected binary PGM magic 'P5', found {:?}",
            String::from_utf8_lossy(&magic)
        )));
    }
    let width = cur.number()?;
    let height = cur.number()?;
    let maxval = cur.number()?;
    if width == 0 || height == 0 {
        return Err(Error::malformed("PGM dimensions must be at least 1x1"));
    }
    if maxval != 255 {
        return Err(Error::malformed(format!(
            "only maxval 255 is supported, found {maxval}"
        )));
    }
    cur.single_whitespace()?;
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::malformed("PGM dimensions overflow"))?;
    let rest = &cur.bytes[cur.pos..];
    if rest.len() < expected {
        return Err(Error::malformed(format!(
            "PGM payload truncated: need {expected} bytes, found {}",
            rest.len()
        )));
    }
    GrayImage::new(width, height, rest[..expected].to_vec())
}

/// Writes a binary PGM with the canonical `P5\n<w> <h>\n255\n` header.
pub fn write_pgm<W: Write>(writer: &mut W, img: &GrayImage) -> Result<()> {
    write!(writer, "P5\n{} {}\n255\n", img.width(), img.height())?;
    writer.write_all(img.as_raw())?;
    Ok(())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn token(&mut self) -> Result<Vec<u8>> {
        self.skip_ws_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::malformed("unexpected end of PGM header"));
        }
        Ok(self.bytes[start..self.pos].to_vec())
    }

    fn number(&mut self) -> Result<usize> {
        let tok = self.token()?;
        std::str::from_utf8(&tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                Error::malformed(format!(
                    "bad numeric field {:?} in PGM header",
                    String::from_utf8_lossy(&tok)
                ))
            })
    }

    fn single_whitespace(&mut self) -> Result<()> {
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_whitespace() => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(Error::malformed(
                "PGM header must end with a whitespace byte before the payload",
            )),
        }
    }
}

fn load_png(path: &Path) -> Result<ImageData> {
    let file = fs::File::open(path).map_err(Error::from)?;
    let decoded = image::load(BufReader::new(file), image::ImageFormat::Png)
        .map_err(map_image_error)?;
    match decoded {
        image::DynamicImage::ImageLuma8(img) => {
            let (w, h) = (img.width() as usize, img.height() as usize);
            Ok(ImageData::Gray(GrayImage::new(w, h, img.into_raw())?))
        }
        image::DynamicImage::ImageRgb8(img) => {
            let (w, h) = (img.width() as usize, img.height() as usize);
            let raw = img.into_raw();
            let mut planes = [
                Vec::with_capacity(w * h),
                Vec::with_capacity(w * h),
                Vec::with_capacity(w * h),
            ];
            for px in raw.chunks_exact(3) {
                planes[0].push(px[0]);
                planes[1].push(px[1]);
                planes[2].push(px[2]);
            }
            let [r, g, b] = planes;
            Ok(ImageData::Rgb(RgbPlanes::new(
                GrayImage::new(w, h, r)?,
                GrayImage::new(w, h, g)?,
                GrayImage::new(w, h, b)?,
            )?))
        }
        other => Err(Error::unsupported(format!(
            "PNG must be 8-bit grayscale or RGB, found {:?}",
            other.color()
        ))),
    }
}

fn save_png(path: &Path, img: &ImageData) -> Result<()> {
    let (buf, w, h, color): (Vec<u8>, u32, u32, image::ExtendedColorType) = match img {
        ImageData::Gray(g) => (
            g.as_raw().to_vec(),
            g.width() as u32,
            g.height() as u32,
            image::ExtendedColorType::L8,
        ),
        ImageData::Rgb(p) => (
            p.interleave(),
            p.width() as u32,
            p.height() as u32,
            image::ExtendedColorType::Rgb8,
        ),
    };
    image::save_buffer_with_format(path, &buf, w, h, color, image::ImageFormat::Png)
        .map_err(map_image_error)
}

fn map_image_error(err: image::ImageError) -> Error {
    match err {
        image::ImageError::IoError(e) => Error::from(e),
        other => Error::malformed(other.to_string()),
    }
}

/// Reads back any supported file and returns only the pixel payload of the
/// first/only channel — handy for byte-level comparisons in tests.
pub fn read_pgm_file(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::from(e).with_path(path))?;
    read_pgm(&bytes).map_err(|e| e.with_path(path))
}
