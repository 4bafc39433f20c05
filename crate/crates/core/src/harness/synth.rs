//! Seeded synthetic logo corpus.
//!
//! * TEXT: rows of dark stroke glyphs on a light ground.
//! * SYMBOL: one large filled disk, ring or polygon in red, green or blue.
//! * BOTH: a smaller primitive on the left, glyph rows on the right.

use std::f64::consts::TAU;
use std::path::Path;

use image::{ImageFormat, Rgb, RgbImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::corpus::{scan_corpus, CorpusManifest};
use crate::error::{Error, Result};
use crate::label::LogoClass;

fn subclasses(class: LogoClass) -> &'static [&'static str] {
    match class {
        LogoClass::Both => &["university", "sports"],
        LogoClass::Text => &["brands", "media"],
        LogoClass::Symbol => &["banks", "cars"],
    }
}

pub fn generate_synthetic_corpus(out_root: &Path, per_class: usize, seed: u64) -> Result<CorpusManifest> {
    if per_class < 2 {
        return Err(Error::config(
            "per_class",
            format!("must be at least 2, got {per_class}"),
        ));
    }
    for (k, class) in LogoClass::ALL.into_iter().enumerate() {
        let subs = subclasses(class);
        for i in 0..per_class {
            let stream = ((k as u64) << 32) | i as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let img = draw_logo(class, &mut rng);
            let dir = out_root.join(class.name()).join(subs[i % subs.len()]);
            std::fs::create_dir_all(&dir)?;
            let path = dir.join(format!("{}_{i:04}.png", class.name().to_ascii_lowercase()));
            img.save_with_format(&path, ImageFormat::Png)
                .map_err(|e| Error::from(std::io::Error::other(e)).at(&path))?;
        }
    }
    scan_corpus(out_root)
}

fn draw_logo(class: LogoClass, rng: &mut ChaCha8Rng) -> RgbImage {
    let w = rng.gen_range(190..=240);
    let h = rng.gen_range(150..=210);
    let bg = light_ground(rng);
    let mut img = RgbImage::from_pixel(w, h, Rgb(bg));
    let (wf, hf) = (w as f64, h as f64);
    match class {
        LogoClass::Text => {
            let ink = dark_ink(rng);
            let rows = rng.gen_range(2..=3);
            glyph_rows(&mut img, rng, (0.06 * wf, 0.12 * hf, 0.94 * wf, 0.88 * hf), rows, ink);
        }
        LogoClass::Symbol => {
            let color = saturated(rng);
            let size = hf.min(wf) * rng.gen_range(0.72..0.9);
            let cx = wf / 2.0 + rng.gen_range(-0.05..0.05) * wf;
            let cy = hf / 2.0 + rng.gen_range(-0.05..0.05) * hf;
            primitive(&mut img, rng, cx, cy, size / 2.0, color);
        }
        LogoClass::Both => {
            // symbol on the left, text on the right
            let color = saturated(rng);
            let ink = dark_ink(rng);
            let r = hf.min(wf * 0.4) * rng.gen_range(0.3..0.38);
            let cx = 0.06 * wf + r;
            primitive(&mut img, rng, cx, hf / 2.0, r, color);
            let left = cx + r + 0.05 * wf;
            let rows = rng.gen_range(1..=2);
            glyph_rows(&mut img, rng, (left, 0.3 * hf, 0.95 * wf, 0.7 * hf), rows, ink);
        }
    }
    img
}

fn light_ground(rng: &mut ChaCha8Rng) -> [u8; 3] {
    let base = rng.gen_range(232..=255u8);
    [0, 1, 2].map(|_| base.saturating_sub(rng.gen_range(0..=8)))
}

fn dark_ink(rng: &mut ChaCha8Rng) -> [u8; 3] {
    let base = rng.gen_range(0..=50u8);
    [0, 1, 2].map(|_| base + rng.gen_range(0..=20))
}

/// Fully saturated red, green or blue, value in [0.75, 1].
fn saturated(rng: &mut ChaCha8Rng) -> [u8; 3] {
    let hue = (2 * rng.gen_range(0..3)) as f64;
    let v = rng.gen_range(0.75..=1.0) * 255.0;
    let x = v * (1.0 - ((hue % 2.0) - 1.0).abs());
    let (r, g, b) = match hue as u32 {
        0 => (v, x, 0.0),
        1 => (x, v, 0.0),
        2 => (0.0, v, x),
        3 => (0.0, x, v),
        4 => (x, 0.0, v),
        _ => (v, 0.0, x),
    };
    [r, g, b].map(|c| c.round() as u8)
}

fn fill(img: &mut RgbImage, x0: f64, y0: f64, x1: f64, y1: f64, color: [u8; 3], inside: impl Fn(f64, f64) -> bool) {
    let (w, h) = img.dimensions();
    let xs = (x0.floor().max(0.0) as u32)..(x1.ceil().min(w as f64) as u32);
    let ys = (y0.floor().max(0.0) as u32)..(y1.ceil().min(h as f64) as u32);
    for y in ys {
        for x in xs.clone() {
            if inside(x as f64 + 0.5, y as f64 + 0.5) {
                img.put_pixel(x, y, Rgb(color));
            }
        }
    }
}

fn rect(img: &mut RgbImage, x0: f64, y0: f64, x1: f64, y1: f64, color: [u8; 3]) {
    fill(img, x0, y0, x1, y1, color, |_, _| true);
}

fn primitive(img: &mut RgbImage, rng: &mut ChaCha8Rng, cx: f64, cy: f64, r: f64, color: [u8; 3]) {
    let bbox = (cx - r, cy - r, cx + r, cy + r);
    match rng.gen_range(0..3) {
        0 => fill(img, bbox.0, bbox.1, bbox.2, bbox.3, color, |x, y| {
            (x - cx).powi(2) + (y - cy).powi(2) <= r * r
        }),
        1 => {
            let inner = r * rng.gen_range(0.45..0.65);
            fill(img, bbox.0, bbox.1, bbox.2, bbox.3, color, |x, y| {
                let d2 = (x - cx).powi(2) + (y - cy).powi(2);
                d2 <= r * r && d2 >= inner * inner
            })
        }
        _ => {
            let sides = rng.gen_range(3..=8);
            let rot = rng.gen_range(0.0..TAU);
            let verts: Vec<(f64, f64)> = (0..sides)
                .map(|k| {
                    let a = rot + TAU * k as f64 / sides as f64;
                    (cx + r * a.cos(), cy + r * a.sin())
                })
                .collect();
            fill(img, bbox.0, bbox.1, bbox.2, bbox.3, color, |x, y| {
                point_in_polygon(&verts, x, y)
            });
        }
    }
}

fn point_in_polygon(verts: &[(f64, f64)], x: f64, y: f64) -> bool {
    let mut inside = false;
    let mut j = verts.len() - 1;
    for i in 0..verts.len() {
        let (xi, yi) = verts[i];
        let (xj, yj) = verts[j];
        if (yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Lays out `rows` lines of glyphs inside `area = (x0, y0, x1, y1)`.
fn glyph_rows(img: &mut RgbImage, rng: &mut ChaCha8Rng, area: (f64, f64, f64, f64), rows: u32, ink: [u8; 3]) {
    let (x0, y0, x1, y1) = area;
    let band = (y1 - y0) / rows as f64;
    let glyph_h = (band * 0.7).min(34.0);
    for row in 0..rows {
        let top = y0 + band * row as f64 + (band - glyph_h) / 2.0;
        let mut x = x0;
        loop {
            let gw = glyph_h * rng.gen_range(0.45..0.7);
            if x + gw > x1 {
                break;
            }
            glyph(img, rng, x, top, gw, glyph_h, ink);
            x += gw + glyph_h * rng.gen_range(0.15..0.3);
            if rng.gen_bool(0.12) {
                x += glyph_h * 0.5; // word gap
            }
        }
    }
}

fn glyph(img: &mut RgbImage, rng: &mut ChaCha8Rng, x: f64, y: f64, w: f64, h: f64, ink: [u8; 3]) {
    let stroke = (h * 0.16).max(2.0);
    // vertical stems
    if rng.gen_bool(0.8) {
        rect(img, x, y, x + stroke, y + h, ink);
    }
    if rng.gen_bool(0.5) {
        rect(img, x + w - stroke, y, x + w, y + h, ink);
    }
    // horizontal bars at top / middle / bottom
    for frac in [0.0, 0.5, 1.0] {
        if rng.gen_bool(0.45) {
            let yy = y + frac * (h - stroke);
            rect(img, x, yy, x + w, yy + stroke, ink);
        }
    }
}
