//! Appearance-based color logo classification.
//!
//! Logos are sorted into three classes (`TEXT`, `SYMBOL`, `BOTH`) from
//! three global descriptors:
//!
//! * [`color`]: block means and channel percentages over 8 partitions (48 values)
//! * [`texture`]: steerable Gaussian-derivative response statistics (8 values)
//! * [`shape`]: pseudo-Zernike moment amplitude and phase (4 values)
//!
//! Descriptors are max-normalized and fused in any of the seven
//! combinations ([`fusion`]), classified with 1-NN ([`classifier`]) and
//! scored with accuracy, macro precision/recall and F-measure
//! ([`evaluation`]). [`harness`] runs the full train/test grid.

pub mod classifier;
pub mod cli;
pub mod color;
pub mod error;
pub mod evaluation;
pub mod fusion;
pub mod harness;
pub mod imaging;
pub mod label;
pub mod shape;
pub mod texture;

pub use error::{Error, Result};
pub use label::LogoClass;
