//! 48-dimensional color descriptor.
//!
//! Each RGB plane is cut into eight equal blocks. The descriptor holds the
//! 24 block means (partition-major, channel-minor) followed by the 24
//! per-partition channel percentages in the same order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imaging::RgbRaster;

pub const PARTITIONS: usize = 8;
pub const COLOR_DIMS: usize = 2 * 3 * PARTITIONS;

/// Block layout used to split a channel into [`PARTITIONS`] pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionGrid {
    pub rows: usize,
    pub cols: usize,
}

impl Default for PartitionGrid {
    fn default() -> Self {
        Self { rows: 2, cols: 4 }
    }
}

impl PartitionGrid {
    pub fn blocks(&self) -> usize {
        self.rows * self.cols
    }
}

/// A rectangular block of one channel, copied out of the source plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelBlock<T> {
    /// Top-left pixel as (row, column).
    pub origin: (usize, usize),
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<T>,
}

/// Splits a row-major channel into `grid.rows × grid.cols` blocks, returned
/// in row-major block order.
pub fn partition_channel<T: Copy>(
    channel: &[T],
    width: usize,
    height: usize,
    grid: PartitionGrid,
) -> Result<Vec<PixelBlock<T>>> {
    if channel.len() != width * height {
        return Err(Error::ShapeMismatch {
            expected: width * height,
            found: channel.len(),
        });
    }
    if grid.rows == 0
        || grid.cols == 0
        || width == 0
        || height == 0
        || !width.is_multiple_of(grid.cols)
        || !height.is_multiple_of(grid.rows)
    {
        return Err(Error::Partition {
            width,
            height,
            rows: grid.rows,
            cols: grid.cols,
        });
    }
    let (bh, bw) = (height / grid.rows, width / grid.cols);
    let mut blocks = Vec::with_capacity(grid.blocks());
    for br in 0..grid.rows {
        for bc in 0..grid.cols {
            let (r0, c0) = (br * bh, bc * bw);
            let mut values = Vec::with_capacity(bh * bw);
            for r in r0..r0 + bh {
                values.extend_from_slice(&channel[r * width + c0..r * width + c0 + bw]);
            }
            blocks.push(PixelBlock {
                origin: (r0, c0),
                rows: bh,
                cols: bw,
                values,
            });
        }
    }
    Ok(blocks)
}

pub fn block_mean<T: Copy + Into<f64>>(block: &PixelBlock<T>) -> f64 {
    let sum: f64 = block.values.iter().map(|&v| v.into()).sum();
    sum / block.values.len() as f64
}

/// Share of each channel in a partition's total color, in percent.
/// An all-black partition is treated as neutral: 100/3 each.
pub fn channel_percentages(means: [f64; 3]) -> [f64; 3] {
    let total: f64 = means.iter().sum();
    if total > 0.0 {
        means.map(|m| 100.0 * m / total)
    } else {
        [100.0 / 3.0; 3]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColorFeature {
    pub means: [f64; 3 * PARTITIONS],
    pub percentages: [f64; 3 * PARTITIONS],
}

impl ColorFeature {
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(COLOR_DIMS);
        v.extend_from_slice(&self.means);
        v.extend_from_slice(&self.percentages);
        v
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        if values.len() != COLOR_DIMS {
            return Err(Error::ShapeMismatch {
                expected: COLOR_DIMS,
                found: values.len(),
            });
        }
        let mut means = [0.0; 3 * PARTITIONS];
        let mut percentages = [0.0; 3 * PARTITIONS];
        means.copy_from_slice(&values[..3 * PARTITIONS]);
        percentages.copy_from_slice(&values[3 * PARTITIONS..]);
        Ok(Self { means, percentages })
    }

    /// Mean of channel `k` in partition `i`.
    pub fn mean(&self, i: usize, k: usize) -> f64 {
        self.means[3 * i + k]
    }

    pub fn percentage(&self, i: usize, k: usize) -> f64 {
        self.percentages[3 * i + k]
    }
}

pub fn extract_color(raster: &RgbRaster, grid: PartitionGrid) -> Result<ColorFeature> {
    if grid.blocks() != PARTITIONS {
        return Err(Error::Partition {
            width: raster.width(),
            height: raster.height(),
            rows: grid.rows,
            cols: grid.cols,
        });
    }
    let mut means = [0.0; 3 * PARTITIONS];
    for k in 0..3 {
        let plane = raster.channel(k);
        let blocks = partition_channel(&plane, raster.width(), raster.height(), grid)?;
        for (i, block) in blocks.iter().enumerate() {
            means[3 * i + k] = block_mean(block);
        }
    }
    let mut percentages = [0.0; 3 * PARTITIONS];
    for i in 0..PARTITIONS {
        let p = channel_percentages([means[3 * i], means[3 * i + 1], means[3 * i + 2]]);
        percentages[3 * i..3 * i + 3].copy_from_slice(&p);
    }
    Ok(ColorFeature { means, percentages })
}
