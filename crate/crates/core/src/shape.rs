//! Pseudo-Zernike shape descriptor.
//!
//! The raster is mapped onto the unit disk inscribed in it (center at
//! `((w-1)/2, (h-1)/2)`, y axis pointing up) and projected onto the
//! pseudo-Zernike basis function `V_{n,m}`. The descriptor is the amplitude
//! and phase of that moment for the image and for its 90° rotation.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imaging::GrayRaster;

pub const SHAPE_DIMS: usize = 4;

/// Moments with a modulus at or below this are treated as zero (phase 0).
pub const ZERO_MOMENT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeConfig {
    pub order: u32,
    pub repetition: i32,
}

impl Default for ShapeConfig {
    fn default() -> Self {
        Self {
            order: 4,
            repetition: 2,
        }
    }
}

impl ShapeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.repetition.unsigned_abs() > self.order {
            return Err(Error::Moment {
                order: self.order,
                repetition: self.repetition,
            });
        }
        Ok(())
    }
}

/// Coefficients of `R_{n,m}(ρ) = Σ_s c_s ρ^{n-s}`, `s = 0..=n-|m|`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPolynomial {
    order: u32,
    coeffs: Vec<f64>,
}

impl RadialPolynomial {
    pub fn new(config: ShapeConfig) -> Result<Self> {
        config.validate()?;
        let n = config.order as u64;
        let m = config.repetition.unsigned_abs() as u64;
        let coeffs = (0..=n - m)
            .map(|s| {
                // (2n+1-s)! / (n+m+1-s)! as a falling product
                let num: f64 = (n + m + 2 - s..=2 * n + 1 - s).map(|v| v as f64).product();
                let den = factorial(s) * factorial(n - m - s);
                let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
                sign * num / den
            })
            .collect();
        Ok(Self {
            order: config.order,
            coeffs,
        })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation; the lowest power is `ρ^{|m|}`.
    pub fn eval(&self, rho: f64) -> f64 {
        let lowest = self.order as i32 - (self.coeffs.len() as i32 - 1);
        let mut acc = 0.0;
        for &c in &self.coeffs {
            acc = acc * rho + c;
        }
        acc * rho.powi(lowest)
    }
}

fn factorial(k: u64) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// Complex pseudo-Zernike moment of a real-valued intensity grid.
///
/// `values` are row-major intensities, already scaled to the caller's
/// range (the raster entry point uses `[0, 1]`).
pub fn moment_of_values(values: &[f64], width: usize, height: usize, config: ShapeConfig) -> Result<Complex64> {
    if values.len() != width * height {
        return Err(Error::ShapeMismatch {
            expected: width * height,
            found: values.len(),
        });
    }
    let radial = RadialPolynomial::new(config)?;
    let m = config.repetition as f64;
    let cx = (width as f64 - 1.0) / 2.0;
    let cy = (height as f64 - 1.0) / 2.0;
    let radius = width.min(height) as f64 / 2.0;
    let area = 1.0 / (radius * radius);

    let mut sum = Complex64::new(0.0, 0.0);
    for row in 0..height {
        let y = (cy - row as f64) / radius;
        for col in 0..width {
            let x = (col as f64 - cx) / radius;
            let rho = x.hypot(y);
            if rho > 1.0 {
                continue;
            }
            let f = values[row * width + col];
            if f == 0.0 {
                continue;
            }
            let phi = y.atan2(x);
            let r = radial.eval(rho);
            sum += Complex64::from_polar(f * r, -m * phi);
        }
    }
    Ok(sum * ((config.order as f64 + 1.0) / PI * area))
}

pub fn pseudo_zernike_moment(gray: &GrayRaster, config: ShapeConfig) -> Result<Complex64> {
    let values: Vec<f64> = gray.pixels().iter().map(|&v| v as f64 / 255.0).collect();
    moment_of_values(&values, gray.width(), gray.height(), config)
}

/// `(|z|, arg z)` with the phase folded into `[0, 2π)` and `arg(0) = 0`.
pub fn amplitude_phase(z: Complex64) -> (f64, f64) {
    let amp = z.norm();
    if amp <= ZERO_MOMENT {
        return (0.0, 0.0);
    }
    let phase = z.arg().rem_euclid(TAU);
    (amp, if phase >= TAU { 0.0 } else { phase })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeFeature {
    pub amplitude_h: f64,
    pub phase_h: f64,
    pub amplitude_v: f64,
    pub phase_v: f64,
}

impl ShapeFeature {
    pub fn to_vec(&self) -> Vec<f64> {
        vec![self.amplitude_h, self.phase_h, self.amplitude_v, self.phase_v]
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        match values {
            &[amplitude_h, phase_h, amplitude_v, phase_v] => Ok(Self {
                amplitude_h,
                phase_h,
                amplitude_v,
                phase_v,
            }),
            _ => Err(Error::ShapeMismatch {
                expected: SHAPE_DIMS,
                found: values.len(),
            }),
        }
    }
}

pub fn extract_shape(gray: &GrayRaster, config: ShapeConfig) -> Result<ShapeFeature> {
    let zh = pseudo_zernike_moment(gray, config)?;
    let zv = pseudo_zernike_moment(&gray.rotate90(), config)?;
    let (amplitude_h, phase_h) = amplitude_phase(zh);
    let (amplitude_v, phase_v) = amplitude_phase(zv);
    Ok(ShapeFeature {
        amplitude_h,
        phase_h,
        amplitude_v,
        phase_v,
    })
}
