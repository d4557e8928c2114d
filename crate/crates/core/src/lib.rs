//! Edge- and corner-preserving smoothing with the one-sided box filter.
//!
//! Around every pixel the filter considers eight one-sided sub-windows (four
//! quarter windows and four half windows), computes the mean over each, and
//! replaces the pixel by the mean closest to its current value. Window means
//! come from a summed-area table, so the cost per pixel is independent of the
//! radius and linear in the number of pixels.
//!
//! ```
//! use osbf::{filters2d, synth};
//!
//! let step = synth::step(64, 64, 32, 0.0, 100.0).unwrap();
//! let out = filters2d::osbf(&step, 3, 10).unwrap();
//! assert_eq!(out, step);
//! ```

pub mod bench;
pub mod config;
pub mod error;
pub mod filters2d;
pub mod filters3d;
pub mod image;
pub mod integral;
pub mod io;
pub mod kernel;
pub mod metrics;
pub mod synth;

pub use config::{FilterConfig, FilterVariant};
pub use error::{Error, Result};
pub use image::{ImagePlane, MultiChannelImage, Volume};
pub use integral::{SummedAreaTable, SummedVolumeTable};
pub use kernel::{OneSidedKernelSet, SeparableKernel, SubWindowId};
