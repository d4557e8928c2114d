//! Fast approximation of the one-sided box filter.
//!
//! Only one mean field is computed per iteration: the quarter-window mean
//! `Q(x, y)` over `[x-r, x] x [y-r, y]`. The other three quarter windows of a
//! pixel are the same field read at `(x+r, y)`, `(x, y+r)` and `(x+r, y+r)`,
//! and each half window is approximated by the average of its two quarters.
//! Shifted reads are clamped to the last valid row/column.

use super::{iterate, par_rows};
use crate::error::Result;
use crate::image::ImagePlane;
use crate::integral::SummedAreaTable;
use crate::kernel::check_radius;

/// Candidate order used for selection; earlier entries win ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastCandidate {
    /// `Q(x, y)`, the window `[x-r, x] x [y-r, y]`.
    Quarter00,
    /// `Q(x+r, y)`.
    QuarterR0,
    /// `Q(x, y+r)`.
    Quarter0R,
    /// `Q(x+r, y+r)`.
    QuarterRR,
    /// `(Q(x, y) + Q(x, y+r)) / 2`.
    Left,
    /// `(Q(x+r, y) + Q(x+r, y+r)) / 2`.
    Right,
    /// `(Q(x, y) + Q(x+r, y)) / 2`.
    Up,
    /// `(Q(x, y+r) + Q(x+r, y+r)) / 2`.
    Down,
}

impl FastCandidate {
    pub const ORDER: [FastCandidate; 8] = [
        FastCandidate::Quarter00,
        FastCandidate::QuarterR0,
        FastCandidate::Quarter0R,
        FastCandidate::QuarterRR,
        FastCandidate::Left,
        FastCandidate::Right,
        FastCandidate::Up,
        FastCandidate::Down,
    ];
}

/// Valid-count mean over `[x-r, x] x [y-r, y]` for every pixel.
pub fn quarter_means(plane: &ImagePlane, radius: usize) -> Result<ImagePlane> {
    check_radius(radius)?;
    Ok(quarter_field(plane, radius))
}

fn quarter_field(plane: &ImagePlane, r: usize) -> ImagePlane {
    let (w, h) = (plane.width(), plane.height());
    let sat = SummedAreaTable::new(plane);
    let out = par_rows(w, h, |y, row| {
        let y0 = y.saturating_sub(r);
        let ny = (y + 1 - y0) as f64;
        for (x, out) in row.iter_mut().enumerate() {
            let x0 = x.saturating_sub(r);
            *out = sat.sum_unchecked(x0, x + 1, y0, y + 1) / ((x + 1 - x0) as f64 * ny);
        }
    });
    ImagePlane::from_raw(w, h, out)
}

#[inline]
fn candidates(q00: f64, qr0: f64, q0r: f64, qrr: f64) -> [f64; 8] {
    [
        q00,
        qr0,
        q0r,
        qrr,
        0.5 * (q00 + q0r),
        0.5 * (qr0 + qrr),
        0.5 * (q00 + qr0),
        0.5 * (q0r + qrr),
    ]
}

/// One iteration of the fast approximation.
pub fn fast_osbf_step(plane: &ImagePlane, radius: usize) -> Result<ImagePlane> {
    check_radius(radius)?;
    Ok(step(plane, radius))
}

fn step(plane: &ImagePlane, r: usize) -> ImagePlane {
    let (w, h) = (plane.width(), plane.height());
    let q = quarter_field(plane, r);
    let out = par_rows(w, h, |y, row| {
        let src = plane.row(y);
        let q_row = q.row(y);
        let q_row_r = q.row((y + r).min(h - 1));
        for (x, out) in row.iter_mut().enumerate() {
            let xr = (x + r).min(w - 1);
            let cands = candidates(q_row[x], q_row[xr], q_row_r[x], q_row_r[xr]);
            *out = cands[super::osbf::select_closest(&cands, src[x])];
        }
    });
    ImagePlane::from_raw(w, h, out)
}

/// Iterated fast one-sided box filter.
pub fn fast_osbf(plane: &ImagePlane, radius: usize, iterations: usize) -> Result<ImagePlane> {
    check_radius(radius)?;
    Ok(iterate(plane, iterations, |p| step(p, radius)))
}
