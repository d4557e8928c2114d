//! One-sided filtering with arbitrary separable kernels.
//!
//! Convolution here is correlation-oriented: a tap at offset `u` weighs the
//! sample at `x + u`, matching the sub-window offsets. Taps that fall outside
//! the image are dropped and the remaining weights are rescaled to sum to 1.
//! Because the domain is a rectangle, that rescaling factors per axis, so the
//! row and column passes can each normalize on their own.

use super::{iterate, par_rows};
use crate::error::Result;
use crate::image::ImagePlane;
use crate::kernel::{check_radius, gaussian_kernel, Kernel2D, OneSidedKernelSet, SeparableKernel, Side, SubWindowId};

fn filter_rows(plane: &ImagePlane, k: &SeparableKernel) -> ImagePlane {
    let (w, h) = (plane.width(), plane.height());
    let (u_min, u_max) = (k.u_min(), k.u_max());
    let out = par_rows(w, h, |y, row| {
        let src = plane.row(y);
        for (x, out) in row.iter_mut().enumerate() {
            let lo = (x as isize + u_min).max(0) as usize;
            let hi = (x as isize + u_max).min(w as isize - 1) as usize;
            let mut acc = 0.0;
            let mut norm = 0.0;
            for (xx, &s) in src.iter().enumerate().take(hi + 1).skip(lo) {
                let wgt = k.weight(xx as isize - x as isize);
                acc += wgt * s;
                norm += wgt;
            }
            *out = acc / norm;
        }
    });
    ImagePlane::from_raw(w, h, out)
}

fn filter_cols(plane: &ImagePlane, k: &SeparableKernel) -> ImagePlane {
    let (w, h) = (plane.width(), plane.height());
    let (v_min, v_max) = (k.u_min(), k.u_max());
    let out = par_rows(w, h, |y, row| {
        let lo = (y as isize + v_min).max(0) as usize;
        let hi = (y as isize + v_max).min(h as isize - 1) as usize;
        let mut norm = 0.0;
        for yy in lo..=hi {
            let wgt = k.weight(yy as isize - y as isize);
            norm += wgt;
            for (o, &s) in row.iter_mut().zip(plane.row(yy)) {
                *o += wgt * s;
            }
        }
        for o in row.iter_mut() {
            *o /= norm;
        }
    });
    ImagePlane::from_raw(w, h, out)
}

/// Separable convolution with border renormalization.
pub fn convolve_separable(plane: &ImagePlane, kernel: &Kernel2D) -> ImagePlane {
    filter_cols(&filter_rows(plane, &kernel.x), &kernel.y)
}

/// General one-sided filter: eight convolutions, then per-pixel selection of
/// the response closest to the current value (ties go to the smaller id).
pub fn one_sided_filter(plane: &ImagePlane, kernels: &OneSidedKernelSet, iterations: usize) -> ImagePlane {
    iterate(plane, iterations, |p| one_sided_step(p, kernels))
}

fn one_sided_step(plane: &ImagePlane, kernels: &OneSidedKernelSet) -> ImagePlane {
    // Kernels sharing an x side share the row pass.
    let sides = [Side::Minus, Side::Plus, Side::Full];
    let row_passes: Vec<(Side, ImagePlane)> = sides
        .iter()
        .filter_map(|&side| {
            let id = SubWindowId::ALL.iter().find(|id| id.sides().0 == side)?;
            Some((side, filter_rows(plane, &kernels.get(*id).x)))
        })
        .collect();
    let responses: Vec<ImagePlane> = SubWindowId::ALL
        .iter()
        .map(|id| {
            let side = id.sides().0;
            let rows = &row_passes.iter().find(|(s, _)| *s == side).expect("row pass per side").1;
            filter_cols(rows, &kernels.get(*id).y)
        })
        .collect();

    let (w, h) = (plane.width(), plane.height());
    let out = par_rows(w, h, |y, row| {
        let src = plane.row(y);
        let rows: Vec<&[f64]> = responses.iter().map(|r| r.row(y)).collect();
        for (x, out) in row.iter_mut().enumerate() {
            let cands: [f64; 8] = std::array::from_fn(|i| rows[i][x]);
            *out = cands[super::osbf::select_closest(&cands, src[x])];
        }
    });
    ImagePlane::from_raw(w, h, out)
}

/// Plain (two-sided) Gaussian smoothing, iterated.
pub fn gaussian_filter(plane: &ImagePlane, radius: usize, sigma: f64, iterations: usize) -> Result<ImagePlane> {
    check_radius(radius)?;
    let k = gaussian_kernel(radius, sigma)?;
    let kernel = Kernel2D { x: k.clone(), y: k };
    Ok(iterate(plane, iterations, |p| convolve_separable(p, &kernel)))
}
