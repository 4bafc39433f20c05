//! Brute-force reference implementations and fixtures shared by the
//! integration tests and the acceptance suite. Nothing here calls into the
//! library's numeric code.
#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use logoclass::imaging::{GrayRaster, RgbRaster};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rgb(rng: &mut ChaCha8Rng, width: usize, height: usize) -> RgbRaster {
    RgbRaster::from_fn(width, height, |_, _| [rng.gen(), rng.gen(), rng.gen()]).unwrap()
}

pub fn random_gray(rng: &mut ChaCha8Rng, width: usize, height: usize) -> GrayRaster {
    GrayRaster::from_fn(width, height, |_, _| rng.gen()).unwrap()
}

/// Sum of a few Gaussian blobs, square, values in 0..=255.
pub fn smooth_gray(rng: &mut ChaCha8Rng, size: usize) -> GrayRaster {
    let blobs: Vec<(f64, f64, f64, f64)> = (0..rng.gen_range(2..=4))
        .map(|_| {
            (
                rng.gen_range(0.2..0.8) * size as f64,
                rng.gen_range(0.2..0.8) * size as f64,
                rng.gen_range(0.08..0.25) * size as f64,
                rng.gen_range(60.0..200.0),
            )
        })
        .collect();
    GrayRaster::from_fn(size, size, |x, y| {
        let v: f64 = blobs
            .iter()
            .map(|&(cx, cy, s, a)| {
                let d2 = (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2);
                a * (-d2 / (2.0 * s * s)).exp()
            })
            .sum();
        v.min(255.0).round() as u8
    })
    .unwrap()
}

// ---- color ----

/// 48 values for a 2×4 grid: per-partition channel means then channel
/// percentages, accumulated pixel by pixel in u64.
pub fn color_oracle(raster: &RgbRaster) -> Vec<f64> {
    let (w, h) = (raster.width(), raster.height());
    assert!(w % 4 == 0 && h % 2 == 0);
    let (bw, bh) = (w / 4, h / 2);
    let mut sums = [[0u64; 3]; 8];
    for y in 0..h {
        for x in 0..w {
            let p = (y / bh) * 4 + x / bw;
            let px = raster.get(x, y);
            for k in 0..3 {
                sums[p][k] += px[k] as u64;
            }
        }
    }
    let n = (bw * bh) as f64;
    let mut means = Vec::with_capacity(24);
    let mut pcts = Vec::with_capacity(24);
    for s in &sums {
        let m: Vec<f64> = s.iter().map(|&v| v as f64 / n).collect();
        let total: u64 = s.iter().sum();
        for &v in s {
            pcts.push(if total == 0 {
                100.0 / 3.0
            } else {
                100.0 * v as f64 / total as f64
            });
        }
        means.extend(m);
    }
    means.extend(pcts);
    means
}

/// Mean of a block using a widened integer accumulator.
pub fn block_mean_oracle(values: &[u8]) -> f64 {
    let sum: u128 = values.iter().map(|&v| v as u128).sum();
    sum as f64 / values.len() as f64
}

// ---- imaging ----

/// 4×4 → 2×2 with centers aligned: each output is the rounded-half-up mean
/// of its 2×2 source quad.
pub fn halve_4x4_oracle(src: &[[u8; 4]; 4]) -> [[u8; 2]; 2] {
    let mut out = [[0u8; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            let s: u32 = (0..2)
                .flat_map(|dy| (0..2).map(move |dx| (dy, dx)))
                .map(|(dy, dx)| src[2 * r + dy][2 * c + dx] as u32)
                .sum();
            *v = ((s + 2) / 4) as u8;
        }
    }
    out
}

// ---- texture ----

/// `Gx(x, y) = -x / (2πσ⁴) · exp(-(x² + y²) / 2σ²)`; y grows downward.
pub fn gx_pointwise(x: f64, y: f64, sigma: f64) -> f64 {
    -x / (2.0 * PI * sigma.powi(4)) * (-(x * x + y * y) / (2.0 * sigma * sigma)).exp()
}

pub fn gy_pointwise(x: f64, y: f64, sigma: f64) -> f64 {
    gx_pointwise(y, x, sigma)
}

/// Direct 2-D convolution with replicate padding, four nested loops.
pub fn convolve_oracle(gray: &GrayRaster, kernel: impl Fn(f64, f64) -> f64, radius: usize) -> Vec<f64> {
    let (w, h) = (gray.width() as isize, gray.height() as isize);
    let r = radius as isize;
    let mut out = Vec::with_capacity((w * h) as usize);
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for v in -r..=r {
                for u in -r..=r {
                    let sx = (x - u).clamp(0, w - 1) as usize;
                    let sy = (y - v).clamp(0, h - 1) as usize;
                    acc += gray.get(sx, sy) as f64 * kernel(u as f64, v as f64);
                }
            }
            out.push(acc);
        }
    }
    out
}

pub fn steered_oracle(gray: &GrayRaster, theta_deg: f64, sigma: f64, radius: usize) -> Vec<f64> {
    let t = theta_deg.to_radians();
    let (c, s) = (t.cos(), t.sin());
    convolve_oracle(
        gray,
        |x, y| c * gx_pointwise(x, y, sigma) + s * gy_pointwise(x, y, sigma),
        radius,
    )
}

/// Mean and population std of |response| at 0, 45, -45, 90 degrees.
pub fn texture_oracle(gray: &GrayRaster, sigma: f64, radius: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(8);
    for theta in [0.0, 45.0, -45.0, 90.0] {
        let mags: Vec<f64> = steered_oracle(gray, theta, sigma, radius)
            .iter()
            .map(|v| v.abs())
            .collect();
        let n = mags.len() as f64;
        let mean = mags.iter().sum::<f64>() / n;
        let var = mags.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / n;
        out.push(mean);
        out.push(var.sqrt());
    }
    out
}

// ---- shape ----

fn fact(k: u64) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// `R_{n,m}(ρ) = Σ_s (-1)^s (2n+1-s)! / (s! (n+|m|+1-s)! (n-|m|-s)!) ρ^{n-s}`.
pub fn radial_oracle(n: u32, m: i32, rho: f64) -> f64 {
    let (n, m) = (n as u64, m.unsigned_abs() as u64);
    (0..=n - m)
        .map(|s| {
            let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
            sign * fact(2 * n + 1 - s) / (fact(s) * fact(n + m + 1 - s) * fact(n - m - s)) * rho.powi((n - s) as i32)
        })
        .sum()
}

/// Pseudo-Zernike moment over the inscribed disk, as (re, im).
pub fn zernike_oracle(values: &[f64], width: usize, height: usize, n: u32, m: i32) -> (f64, f64) {
    let radius = width.min(height) as f64 / 2.0;
    let (cx, cy) = ((width as f64 - 1.0) / 2.0, (height as f64 - 1.0) / 2.0);
    let (mut re, mut im) = (0.0, 0.0);
    for row in 0..height {
        for col in 0..width {
            let x = (col as f64 - cx) / radius;
            let y = (cy - row as f64) / radius;
            let rho = (x * x + y * y).sqrt();
            if rho > 1.0 {
                continue;
            }
            let phi = y.atan2(x);
            let f = values[row * width + col] * radial_oracle(n, m, rho);
            re += f * (m as f64 * phi).cos();
            im -= f * (m as f64 * phi).sin();
        }
    }
    let scale = (n as f64 + 1.0) / PI / (radius * radius);
    (re * scale, im * scale)
}

// ---- fusion / classifier / evaluation ----

pub fn column_max_oracle(rows: &[Vec<f64>]) -> Vec<f64> {
    let cols = rows[0].len();
    (0..cols)
        .map(|j| rows.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max))
        .collect()
}

/// Euclidean distance with Kahan-compensated summation.
pub fn distance_oracle(a: &[f64], b: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for (x, y) in a.iter().zip(b) {
        let term = (x - y) * (x - y) - comp;
        let t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    sum.sqrt()
}

pub struct NnAudit {
    pub index: usize,
    pub distance: f64,
    /// Every reference index at the minimum distance.
    pub tied: Vec<usize>,
}

/// Exhaustive scan; the lowest index wins ties.
pub fn nn_oracle(references: &[Vec<f64>], query: &[f64]) -> NnAudit {
    let d: Vec<f64> = references.iter().map(|r| distance_oracle(r, query)).collect();
    let best = d.iter().cloned().fold(f64::INFINITY, f64::min);
    let tied: Vec<usize> = (0..d.len()).filter(|&i| d[i] == best).collect();
    NnAudit {
        index: tied[0],
        distance: best,
        tied,
    }
}

pub fn confusion_oracle<L: std::hash::Hash + Eq + Clone>(truth: &[L], predicted: &[L]) -> HashMap<(L, L), u64> {
    let mut tally = HashMap::new();
    for (t, p) in truth.iter().zip(predicted) {
        *tally.entry((t.clone(), p.clone())).or_insert(0) += 1;
    }
    tally
}

// ---- published result rows ----

/// (combination, train-test label, accuracy, precision, recall, F) as printed
/// in the original result tables, six rows per combination.
pub const REFERENCE_ROWS: [(&str, &str, f64, f64, f64, f64); 42] = [
    ("c", "20-80", 55.29, 41.86, 42.88, 42.36),
    ("c", "30-40", 54.52, 41.21, 42.16, 41.68),
    ("c", "50-50", 52.30, 39.07, 40.28, 39.67),
    ("c", "60-40", 51.29, 39.18, 40.29, 39.73),
    ("c", "70-30", 48.16, 37.70, 38.67, 38.18),
    ("c", "80-20", 42.39, 33.77, 33.95, 33.86),
    ("t", "20-80", 53.19, 39.46, 39.52, 39.49),
    ("t", "30-40", 53.16, 41.15, 41.49, 41.32),
    ("t", "50-50", 53.26, 40.90, 41.18, 41.04),
    ("t", "60-40", 52.32, 40.92, 41.37, 41.15),
    ("t", "70-30", 51.39, 41.80, 42.47, 42.13),
    ("t", "80-20", 47.75, 40.34, 40.55, 40.45),
    ("s", "20-80", 54.48, 33.58, 33.15, 33.37),
    ("s", "30-40", 55.28, 33.49, 33.18, 33.34),
    ("s", "50-50", 56.07, 33.15, 33.04, 33.09),
    ("s", "60-40", 56.96, 34.82, 33.92, 34.36),
    ("s", "70-30", 58.09, 36.14, 34.58, 35.34),
    ("s", "80-20", 57.41, 34.36, 33.93, 34.14),
    ("c+t", "20-80", 56.81, 41.87, 43.10, 42.48),
    ("c+t", "30-40", 55.74, 42.28, 43.14, 42.71),
    ("c+t", "50-50", 55.54, 43.17, 43.77, 43.47),
    ("c+t", "60-40", 52.40, 40.80, 41.66, 41.23),
    ("c+t", "70-30", 48.81, 38.81, 39.54, 39.17),
    ("c+t", "80-20", 42.06, 34.05, 34.16, 34.11),
    ("c+s", "20-80", 56.06, 42.03, 43.22, 42.62),
    ("c+s", "30-40", 54.92, 40.81, 41.82, 41.31),
    ("c+s", "50-50", 53.12, 39.94, 40.93, 40.43),
    ("c+s", "60-40", 52.04, 40.00, 40.89, 40.44),
    ("c+s", "70-30", 48.86, 39.00, 39.71, 39.35),
    ("c+s", "80-20", 43.58, 35.69, 35.75, 35.72),
    ("t+s", "20-80", 54.00, 40.53, 40.47, 40.50),
    ("t+s", "30-40", 54.49, 42.12, 42.54, 42.33),
    ("t+s", "50-50", 54.61, 42.54, 42.94, 42.74),
    ("t+s", "60-40", 53.43, 42.78, 43.53, 43.15),
    ("t+s", "70-30", 51.64, 42.94, 44.07, 43.50),
    ("t+s", "80-20", 47.88, 41.13, 42.19, 41.65),
    ("c+t+s", "20-80", 63.01, 44.99, 43.62, 44.29),
    ("c+t+s", "30-40", 62.85, 47.39, 44.82, 46.07),
    ("c+t+s", "50-50", 62.52, 51.12, 44.79, 47.75),
    ("c+t+s", "60-40", 59.69, 45.62, 43.48, 44.52),
    ("c+t+s", "70-30", 56.02, 46.96, 42.51, 44.62),
    ("c+t+s", "80-20", 48.98, 40.47, 36.92, 38.62),
];
