//! Feature-level fusion: column max-normalization fitted on training rows,
//! and concatenation of the color, texture and shape blocks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::color::{ColorFeature, COLOR_DIMS};
use crate::error::{Error, Result};
use crate::shape::{ShapeFeature, SHAPE_DIMS};
use crate::texture::{TextureFeature, TEXTURE_DIMS};

/// One of the seven non-empty subsets of {color, texture, shape}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Combo {
    C,
    T,
    S,
    CT,
    CS,
    TS,
    CTS,
}

impl Combo {
    pub const ALL: [Combo; 7] = [
        Combo::C,
        Combo::T,
        Combo::S,
        Combo::CT,
        Combo::CS,
        Combo::TS,
        Combo::CTS,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Combo::C => "c",
            Combo::T => "t",
            Combo::S => "s",
            Combo::CT => "c+t",
            Combo::CS => "c+s",
            Combo::TS => "t+s",
            Combo::CTS => "c+t+s",
        }
    }

    /// `(color, texture, shape)` membership.
    pub fn members(self) -> (bool, bool, bool) {
        match self {
            Combo::C => (true, false, false),
            Combo::T => (false, true, false),
            Combo::S => (false, false, true),
            Combo::CT => (true, true, false),
            Combo::CS => (true, false, true),
            Combo::TS => (false, true, true),
            Combo::CTS => (true, true, true),
        }
    }

    pub fn dims(self) -> usize {
        let (c, t, s) = self.members();
        c as usize * COLOR_DIMS + t as usize * TEXTURE_DIMS + s as usize * SHAPE_DIMS
    }
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Combo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Combo::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::config("combos", format!("unknown combination {s:?}")))
    }
}

impl Serialize for Combo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Combo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dense row-major matrix of non-negative feature values.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    cols: usize,
    data: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(cols: usize) -> Self {
        Self { cols, data: Vec::new() }
    }

    pub fn from_rows<R: AsRef<[f64]>>(cols: usize, rows: impl IntoIterator<Item = R>) -> Result<Self> {
        let mut m = Self::new(cols);
        for r in rows {
            m.push_row(r.as_ref())?;
        }
        Ok(m)
    }

    pub fn push_row(&mut self, row: &[f64]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.data.extend_from_slice(row);
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.data.len().checked_div(self.cols).unwrap_or(0)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.cols.max(1))
    }

    /// Side-by-side concatenation of matrices with equal row counts.
    pub fn hconcat(parts: &[&FeatureMatrix]) -> Result<Self> {
        let rows = parts.first().map_or(0, |p| p.rows());
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::new(cols);
        for p in parts {
            if p.rows() != rows {
                return Err(Error::ShapeMismatch {
                    expected: rows,
                    found: p.rows(),
                });
            }
        }
        for i in 0..rows {
            for p in parts {
                out.data.extend_from_slice(p.row(i));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationParams {
    pub column_maxima: Vec<f64>,
}

pub fn fit_normalizer(train: &FeatureMatrix) -> Result<NormalizationParams> {
    if train.rows() == 0 {
        return Err(Error::EmptyDataset("cannot fit normalizer on zero rows".into()));
    }
    let mut maxima = vec![f64::NEG_INFINITY; train.cols()];
    for row in train.iter_rows() {
        for (m, &v) in maxima.iter_mut().zip(row) {
            *m = m.max(v);
        }
    }
    Ok(NormalizationParams { column_maxima: maxima })
}

/// Divides every column by its training maximum. Zero-max columns map to 0;
/// test values above the training maximum are left above 1.
pub fn apply_normalizer(matrix: &FeatureMatrix, params: &NormalizationParams) -> Result<FeatureMatrix> {
    if matrix.cols() != params.column_maxima.len() {
        return Err(Error::ShapeMismatch {
            expected: params.column_maxima.len(),
            found: matrix.cols(),
        });
    }
    let mut data = matrix.data.clone();
    if matrix.cols() > 0 {
        for row in data.chunks_exact_mut(matrix.cols()) {
            for (v, &m) in row.iter_mut().zip(&params.column_maxima) {
                *v = if m == 0.0 { 0.0 } else { *v / m };
            }
        }
    }
    Ok(FeatureMatrix {
        cols: matrix.cols(),
        data,
    })
}

/// Concatenates the supplied feature blocks in color ‖ texture ‖ shape order.
/// Exactly the blocks named by `combo` must be present.
pub fn fuse(
    color: Option<&ColorFeature>,
    texture: Option<&TextureFeature>,
    shape: Option<&ShapeFeature>,
    combo: Combo,
) -> Result<Vec<f64>> {
    let wanted = combo.members();
    let given = (color.is_some(), texture.is_some(), shape.is_some());
    if wanted != given {
        let describe = |(c, t, s): (bool, bool, bool)| {
            [(c, "color"), (t, "texture"), (s, "shape")]
                .iter()
                .filter(|(p, _)| *p)
                .map(|(_, n)| *n)
                .collect::<Vec<_>>()
                .join("+")
        };
        return Err(Error::ComboMismatch {
            combo: combo.name().into(),
            reason: format!("requires [{}] but got [{}]", describe(wanted), describe(given)),
        });
    }
    let mut row = Vec::with_capacity(combo.dims());
    if let Some(c) = color {
        row.extend(c.to_vec());
    }
    if let Some(t) = texture {
        row.extend_from_slice(&t.values);
    }
    if let Some(s) = shape {
        row.extend(s.to_vec());
    }
    Ok(row)
}
