//! Image loading and the two preprocessing steps every extractor relies on:
//! resizing to the canonical raster size and BT.601 grayscale conversion.

use std::path::Path;

use crate::error::{Error, Result};

/// 8-bit RGB pixel grid, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbRaster {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

/// 8-bit single-channel pixel grid, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayRaster {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::EmptyImage {
            width: width as u32,
            height: height as u32,
        });
    }
    if width * height != len {
        return Err(Error::ShapeMismatch {
            expected: width * height,
            found: len,
        });
    }
    Ok(())
}

impl RgbRaster {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self> {
        Self::new(width, height, vec![rgb; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> [u8; 3]) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }

    /// One color plane (0 = R, 1 = G, 2 = B) as a row-major intensity buffer.
    pub fn channel(&self, k: usize) -> Vec<u8> {
        self.pixels.iter().map(|p| p[k]).collect()
    }
}

impl GrayRaster {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self { width, height, pixels })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Exact 90° counterclockwise rotation; a `w×h` raster becomes `h×w`.
    pub fn rotate90(&self) -> GrayRaster {
        let (w, h) = (self.width, self.height);
        let mut out = Vec::with_capacity(w * h);
        // new[r][c] = old[c][w-1-r]
        for r in 0..w {
            for c in 0..h {
                out.push(self.pixels[c * w + (w - 1 - r)]);
            }
        }
        GrayRaster {
            width: h,
            height: w,
            pixels: out,
        }
    }
}

/// Decodes a PNG or JPEG file. Transparent pixels are composited over white.
pub fn load_image(path: impl AsRef<Path>) -> Result<RgbRaster> {
    let path = path.as_ref();
    let decode_err = |reason: String| Error::ImageDecode {
        path: path.to_path_buf(),
        reason,
    };
    let reader = image::ImageReader::open(path)
        .map_err(|e| decode_err(e.to_string()))?
        .with_guessed_format()
        .map_err(|e| decode_err(e.to_string()))?;
    match reader.format() {
        Some(image::ImageFormat::Png) | Some(image::ImageFormat::Jpeg) => {}
        Some(other) => return Err(decode_err(format!("unsupported format {other:?}"))),
        None => return Err(decode_err("unrecognized file format".into())),
    }
    let decoded = reader.decode().map_err(|e| decode_err(e.to_string()))?;
    let (width, height) = (decoded.width(), decoded.height());
    if width == 0 || height == 0 {
        return Err(Error::EmptyImage { width, height });
    }
    let rgba = decoded.to_rgba8();
    let pixels = rgba
        .pixels()
        .map(|p| {
            let [r, g, b, a] = p.0;
            [over_white(r, a), over_white(g, a), over_white(b, a)]
        })
        .collect();
    RgbRaster::new(width as usize, height as usize, pixels)
}

#[inline]
fn over_white(c: u8, alpha: u8) -> u8 {
    let (c, a) = (c as u32, alpha as u32);
    ((c * a + 255 * (255 - a) + 127) / 255) as u8
}

/// Bilinear resize with pixel-center alignment and clamped borders.
pub fn resize(raster: &RgbRaster, target_width: usize, target_height: usize) -> Result<RgbRaster> {
    if target_width == 0 || target_height == 0 {
        return Err(Error::EmptyImage {
            width: target_width as u32,
            height: target_height as u32,
        });
    }
    if raster.width == target_width && raster.height == target_height {
        return Ok(raster.clone());
    }
    let xs = sample_axis(raster.width, target_width);
    let ys = sample_axis(raster.height, target_height);
    let mut pixels = Vec::with_capacity(target_width * target_height);
    for &(y0, y1, fy) in &ys {
        let row0 = &raster.pixels[y0 * raster.width..(y0 + 1) * raster.width];
        let row1 = &raster.pixels[y1 * raster.width..(y1 + 1) * raster.width];
        for &(x0, x1, fx) in &xs {
            let mut px = [0u8; 3];
            for (k, out) in px.iter_mut().enumerate() {
                let top = row0[x0][k] as f64 * (1.0 - fx) + row0[x1][k] as f64 * fx;
                let bottom = row1[x0][k] as f64 * (1.0 - fx) + row1[x1][k] as f64 * fx;
                let v = top * (1.0 - fy) + bottom * fy;
                *out = (v + 0.5).floor().clamp(0.0, 255.0) as u8;
            }
            pixels.push(px);
        }
    }
    RgbRaster::new(target_width, target_height, pixels)
}

/// Source neighbours and blend weight for every destination index along one axis.
fn sample_axis(src: usize, dst: usize) -> Vec<(usize, usize, f64)> {
    let scale = src as f64 / dst as f64;
    let last = (src - 1) as f64;
    (0..dst)
        .map(|i| {
            let s = ((i as f64 + 0.5) * scale - 0.5).clamp(0.0, last);
            let i0 = s.floor() as usize;
            let i1 = (i0 + 1).min(src - 1);
            (i0, i1, s - i0 as f64)
        })
        .collect()
}

/// BT.601 luma, rounded half up: `(299 R + 587 G + 114 B + 500) / 1000`.
pub fn luma(rgb: [u8; 3]) -> u8 {
    let [r, g, b] = rgb.map(u32::from);
    ((299 * r + 587 * g + 114 * b + 500) / 1000) as u8
}

pub fn to_grayscale(raster: &RgbRaster) -> GrayRaster {
    GrayRaster {
        width: raster.width,
        height: raster.height,
        pixels: raster.pixels.iter().map(|&p| luma(p)).collect(),
    }
}
