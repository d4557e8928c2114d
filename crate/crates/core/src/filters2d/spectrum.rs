//! Frequency response of the per-window update operators `k_i - delta`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::image::ImagePlane;
use crate::kernel::{Kernel2D, OneSidedKernelSet, SubWindowId};

pub const DEFAULT_SPECTRUM_GRID: usize = 64;

/// DFT magnitude of `k - delta` embedded at the center of a `grid x grid`
/// field, with the zero frequency shifted to `(grid / 2, grid / 2)`.
pub fn kernel_spectrum_magnitude(kernel: &Kernel2D, grid: usize) -> Result<ImagePlane> {
    let r = kernel
        .x
        .u_min()
        .abs()
        .max(kernel.x.u_max())
        .max(kernel.y.u_min().abs())
        .max(kernel.y.u_max()) as usize;
    if grid < 2 * (2 * r + 1) {
        return Err(Error::invalid(format!(
            "grid {grid} too small for kernel radius {r}; need at least {}",
            2 * (2 * r + 1)
        )));
    }
    let c = (grid / 2) as isize;
    let mut taps: Vec<(usize, usize, f64)> = Vec::new();
    for v in kernel.y.u_min()..=kernel.y.u_max() {
        for u in kernel.x.u_min()..=kernel.x.u_max() {
            let mut w = kernel.weight(u, v);
            if u == 0 && v == 0 {
                w -= 1.0;
            }
            if w != 0.0 {
                taps.push(((c + u) as usize, (c + v) as usize, w));
            }
        }
    }
    // cos/sin of 2*pi*m/grid, indexed by the phase numerator reduced mod grid
    let (cos, sin): (Vec<f64>, Vec<f64>) = (0..grid)
        .map(|m| {
            let theta = 2.0 * PI * m as f64 / grid as f64;
            (theta.cos(), theta.sin())
        })
        .unzip();
    let half = grid / 2;
    let samples = (0..grid * grid)
        .map(|i| {
            let (px, py) = (i % grid, i / grid);
            let kx = (px + grid - half) % grid;
            let ky = (py + grid - half) % grid;
            let (mut re, mut im) = (0.0, 0.0);
            for &(x, y, w) in &taps {
                let m = (kx * x + ky * y) % grid;
                re += w * cos[m];
                im -= w * sin[m];
            }
            re.hypot(im)
        })
        .collect();
    Ok(ImagePlane::from_raw(grid, grid, samples))
}

/// Spectrum magnitude linearly rescaled to `[0, 1]`.
pub fn kernel_spectrum(kernel: &Kernel2D, grid: usize) -> Result<ImagePlane> {
    let mag = kernel_spectrum_magnitude(kernel, grid)?;
    let (lo, hi) = mag.range();
    let span = hi - lo;
    Ok(if span > 0.0 {
        mag.map(|v| (v - lo) / span)
    } else {
        mag.map(|_| 0.0)
    })
}

/// Normalized spectrum of box kernel `index` (1..=8) at radius `r`.
pub fn box_kernel_spectrum(index: u8, radius: usize, grid: usize) -> Result<ImagePlane> {
    let id = SubWindowId::new(index)?;
    let set = OneSidedKernelSet::boxes(radius)?;
    kernel_spectrum(set.get(id), grid)
}
