//! Two-dimensional filters.
//!
//! Every filter performs Jacobi-style iterations: iteration `t + 1` is
//! computed entirely from the materialized iteration-`t` plane. Work inside
//! one iteration is split over rows with rayon; each row is computed by the
//! same sequential code, so results do not depend on the thread count.
//!
//! Windows that cross the image border are clipped and normalized by the
//! number (or total weight) of in-domain samples.

mod boxf;
mod fast;
mod generic;
mod osbf;
mod spectrum;

use rayon::prelude::*;

pub use boxf::box_filter;
pub use fast::{fast_osbf, fast_osbf_step, quarter_means, FastCandidate};
pub use generic::{convolve_separable, gaussian_filter, one_sided_filter};
pub use osbf::{osbf, osbf_step, subwindow_means, SubWindowMeans};
pub use spectrum::{box_kernel_spectrum, kernel_spectrum, kernel_spectrum_magnitude, DEFAULT_SPECTRUM_GRID};

use crate::config::FilterConfig;
use crate::error::Result;
use crate::image::{ImagePlane, MultiChannelImage};

/// Fills a fresh `width x height` buffer row by row.
pub(crate) fn par_rows<F>(width: usize, height: usize, fill_row: F) -> Vec<f64>
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    let mut out = vec![0.0; width * height];
    out.par_chunks_mut(width)
        .enumerate()
        .for_each(|(y, row)| fill_row(y, row));
    out
}

/// Runs `step` `iterations` times; zero iterations returns a copy of the input.
pub(crate) fn iterate(
    plane: &ImagePlane,
    iterations: usize,
    mut step: impl FnMut(&ImagePlane) -> ImagePlane,
) -> ImagePlane {
    if iterations == 0 {
        return plane.clone();
    }
    let mut current = step(plane);
    for _ in 1..iterations {
        current = step(&current);
    }
    current
}

/// Applies the configured filter to each channel independently.
pub fn filter_multichannel(img: &MultiChannelImage, config: &FilterConfig) -> Result<MultiChannelImage> {
    let channels = img
        .channels()
        .iter()
        .map(|c| config.apply(c))
        .collect::<Result<Vec<_>>>()?;
    MultiChannelImage::new(channels)
}
