//! Steerable first-derivative-of-Gaussian texture descriptor.
//!
//! The grayscale raster is convolved once with each basis kernel (`Gx`,
//! `Gy`); the response at any orientation θ is `cos θ · Rx + sin θ · Ry`.
//! The descriptor is the mean and population standard deviation of the
//! response magnitude at 0°, 45°, −45° and 90°, in that order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imaging::GrayRaster;

pub const TEXTURE_DIMS: usize = 8;

/// Orientations (degrees) in descriptor order.
pub const ORIENTATIONS: [f64; 4] = [0.0, 45.0, -45.0, 90.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TextureParams {
    pub sigma: f64,
    pub radius: usize,
}

impl Default for TextureParams {
    fn default() -> Self {
        Self { sigma: 1.0, radius: 3 }
    }
}

/// Square `(2r+1)²` kernel, row-major, indexed by offsets in `-r..=r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    pub radius: usize,
    pub values: Vec<f64>,
}

impl Kernel {
    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn at(&self, dx: isize, dy: isize) -> f64 {
        let r = self.radius as isize;
        let side = self.side();
        self.values[(dy + r) as usize * side + (dx + r) as usize]
    }
}

fn check_params(sigma: f64, radius: usize) -> Result<()> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::Kernel(format!("sigma must be positive, got {sigma}")));
    }
    if radius == 0 {
        return Err(Error::Kernel("radius must be at least 1".into()));
    }
    Ok(())
}

/// 1-D factors of the separable basis: `Gx(x, y) = d(x)·g(y)`,
/// with `g(t) = exp(-t²/2σ²)` and `d(t) = -t/(2πσ⁴)·g(t)`.
struct Separable {
    gauss: Vec<f64>,
    deriv: Vec<f64>,
}

impl Separable {
    fn new(sigma: f64, radius: usize) -> Self {
        let s2 = sigma * sigma;
        let norm = 1.0 / (2.0 * std::f64::consts::PI * s2 * s2);
        let gauss: Vec<f64> = (0..=radius).map(|t| (-((t * t) as f64) / (2.0 * s2)).exp()).collect();
        let deriv = gauss.iter().enumerate().map(|(t, g)| -(t as f64) * norm * g).collect();
        Self { gauss, deriv }
    }
}

/// Sampled first partial derivatives of the 2-D Gaussian.
pub fn gaussian_derivative_kernels(sigma: f64, radius: usize) -> Result<(Kernel, Kernel)> {
    check_params(sigma, radius)?;
    let side = 2 * radius + 1;
    let r = radius as isize;
    let s2 = sigma * sigma;
    let norm = 1.0 / (2.0 * std::f64::consts::PI * s2 * s2);
    let mut gx = Vec::with_capacity(side * side);
    let mut gy = Vec::with_capacity(side * side);
    for y in -r..=r {
        for x in -r..=r {
            let e = (-((x * x + y * y) as f64) / (2.0 * s2)).exp();
            gx.push(-(x as f64) * norm * e);
            gy.push(-(y as f64) * norm * e);
        }
    }
    Ok((Kernel { radius, values: gx }, Kernel { radius, values: gy }))
}

/// Real-valued response map with the raster's dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientedResponse {
    pub orientation: f64,
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

/// The two basis responses `gray ∗ Gx` and `gray ∗ Gy`.
#[derive(Debug, Clone)]
pub struct BasisResponses {
    pub width: usize,
    pub height: usize,
    pub rx: Vec<f64>,
    pub ry: Vec<f64>,
}

/// cos/sin of an angle in degrees, exact on multiples of 45°.
fn direction(theta_deg: f64) -> (f64, f64) {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let t = theta_deg.rem_euclid(360.0);
    match t {
        0.0 => (1.0, 0.0),
        45.0 => (half, half),
        90.0 => (0.0, 1.0),
        135.0 => (-half, half),
        180.0 => (-1.0, 0.0),
        225.0 => (-half, -half),
        270.0 => (0.0, -1.0),
        315.0 => (half, -half),
        _ => {
            let rad = theta_deg.to_radians();
            (rad.cos(), rad.sin())
        }
    }
}

impl BasisResponses {
    pub fn compute(gray: &GrayRaster, params: TextureParams) -> Result<Self> {
        check_params(params.sigma, params.radius)?;
        let (w, h) = (gray.width(), gray.height());
        let src: Vec<f64> = gray.pixels().iter().map(|&v| v as f64).collect();
        let sep = Separable::new(params.sigma, params.radius);
        // Gx = d(x)·g(y): derivative along rows, smoothing along columns.
        let (rx, ry) = rayon::join(
            || {
                let tmp = convolve_rows(&src, w, h, &sep.deriv, true);
                convolve_cols(&tmp, w, h, &sep.gauss, false)
            },
            || {
                let tmp = convolve_rows(&src, w, h, &sep.gauss, false);
                convolve_cols(&tmp, w, h, &sep.deriv, true)
            },
        );
        Ok(Self {
            width: w,
            height: h,
            rx,
            ry,
        })
    }

    pub fn steer(&self, theta_deg: f64) -> OrientedResponse {
        let (c, s) = direction(theta_deg);
        let values = self.rx.iter().zip(&self.ry).map(|(&x, &y)| c * x + s * y).collect();
        OrientedResponse {
            orientation: theta_deg,
            width: self.width,
            height: self.height,
            values,
        }
    }
}

// 1-D convolution with replicate padding. `half[t]` holds the tap at offset
// ±t; odd taps satisfy k(-t) = -k(t), even taps k(-t) = k(t). Pairs are
// combined before weighting so constant input gives an exact zero for odd
// kernels.
#[inline]
fn tap_sum(get: impl Fn(isize) -> f64, half: &[f64], odd: bool) -> f64 {
    let mut acc = if odd { 0.0 } else { half[0] * get(0) };
    for (t, &k) in half.iter().enumerate().skip(1) {
        let t = t as isize;
        // true convolution: Σ f(x-u) k(u)
        let (before, after) = (get(-t), get(t));
        acc += if odd {
            k * (before - after)
        } else {
            k * (before + after)
        };
    }
    acc
}

fn convolve_rows(src: &[f64], w: usize, h: usize, half: &[f64], odd: bool) -> Vec<f64> {
    let mut out = vec![0.0; w * h];
    let last = w as isize - 1;
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..w {
            let xi = x as isize;
            out[y * w + x] = tap_sum(|u| row[(xi + u).clamp(0, last) as usize], half, odd);
        }
    }
    out
}

fn convolve_cols(src: &[f64], w: usize, h: usize, half: &[f64], odd: bool) -> Vec<f64> {
    let mut out = vec![0.0; w * h];
    let last = h as isize - 1;
    for y in 0..h {
        let yi = y as isize;
        for x in 0..w {
            out[y * w + x] = tap_sum(|u| src[(yi + u).clamp(0, last) as usize * w + x], half, odd);
        }
    }
    out
}

pub fn steer_response(gray: &GrayRaster, theta_deg: f64, params: TextureParams) -> Result<OrientedResponse> {
    Ok(BasisResponses::compute(gray, params)?.steer(theta_deg))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TextureFeature {
    /// `[μ(0°), σ(0°), μ(45°), σ(45°), μ(−45°), σ(−45°), μ(90°), σ(90°)]`
    pub values: [f64; TEXTURE_DIMS],
}

impl TextureFeature {
    pub fn to_vec(&self) -> Vec<f64> {
        self.values.to_vec()
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let values: [f64; TEXTURE_DIMS] = values.try_into().map_err(|_| Error::ShapeMismatch {
            expected: TEXTURE_DIMS,
            found: values.len(),
        })?;
        Ok(Self { values })
    }

    pub fn mean(&self, orientation_index: usize) -> f64 {
        self.values[2 * orientation_index]
    }

    pub fn std(&self, orientation_index: usize) -> f64 {
        self.values[2 * orientation_index + 1]
    }
}

/// Mean and population standard deviation of `|response|` (two-pass).
pub fn magnitude_stats(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().map(|v| v.abs()).sum::<f64>() / n;
    let var = values
        .iter()
        .map(|v| {
            let d = v.abs() - mean;
            d * d
        })
        .sum::<f64>()
        / n;
    (mean, var.sqrt())
}

pub fn extract_texture(gray: &GrayRaster, params: TextureParams) -> Result<TextureFeature> {
    let basis = BasisResponses::compute(gray, params)?;
    let mut values = [0.0; TEXTURE_DIMS];
    for (i, &theta) in ORIENTATIONS.iter().enumerate() {
        let (mean, std) = magnitude_stats(&basis.steer(theta).values);
        values[2 * i] = mean;
        values[2 * i + 1] = std;
    }
    Ok(TextureFeature { values })
}
