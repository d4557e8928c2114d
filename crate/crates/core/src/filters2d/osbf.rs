use super::{iterate, par_rows};
use crate::error::Result;
use crate::image::ImagePlane;
use crate::integral::SummedAreaTable;
use crate::kernel::{check_radius, SubWindowId};

/// Means `a_1..a_8` over the eight one-sided sub-windows of one pixel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubWindowMeans {
    pub a: [f64; 8],
}

impl SubWindowMeans {
    pub fn get(&self, id: SubWindowId) -> f64 {
        self.a[id.index()]
    }

    /// The window whose mean is closest to `value`; ties go to the smaller id.
    pub fn closest(&self, value: f64) -> (SubWindowId, f64) {
        let best = select_closest(&self.a, value);
        (SubWindowId::ALL[best], self.a[best])
    }
}

/// Index of the candidate minimizing `|candidate - value|`, first one on ties.
#[inline]
pub(crate) fn select_closest(candidates: &[f64; 8], value: f64) -> usize {
    let mut best = 0;
    let mut best_dist = (candidates[0] - value).abs();
    for (i, &c) in candidates.iter().enumerate().skip(1) {
        let dist = (c - value).abs();
        if dist < best_dist {
            best = i;
            best_dist = dist;
        }
    }
    best
}

/// Half-open table ranges of the left/right/full extents along one axis.
#[derive(Clone, Copy)]
struct AxisSpans {
    lo: usize,
    center: usize,
    hi: usize,
}

impl AxisSpans {
    #[inline]
    fn new(c: usize, r: usize, len: usize) -> Self {
        Self {
            lo: c.saturating_sub(r),
            center: c,
            hi: (c + r).min(len - 1) + 1,
        }
    }

    #[inline]
    fn minus(self) -> (usize, usize) {
        (self.lo, self.center + 1)
    }

    #[inline]
    fn plus(self) -> (usize, usize) {
        (self.center, self.hi)
    }

    #[inline]
    fn full(self) -> (usize, usize) {
        (self.lo, self.hi)
    }
}

#[inline]
fn window_mean(sat: &SummedAreaTable, (x0, x1): (usize, usize), (y0, y1): (usize, usize)) -> f64 {
    sat.sum_unchecked(x0, x1, y0, y1) / ((x1 - x0) * (y1 - y0)) as f64
}

#[inline]
fn means_at(sat: &SummedAreaTable, xs: AxisSpans, ys: AxisSpans) -> [f64; 8] {
    [
        window_mean(sat, xs.minus(), ys.plus()),
        window_mean(sat, xs.plus(), ys.plus()),
        window_mean(sat, xs.plus(), ys.minus()),
        window_mean(sat, xs.minus(), ys.minus()),
        window_mean(sat, xs.minus(), ys.full()),
        window_mean(sat, xs.plus(), ys.full()),
        window_mean(sat, xs.full(), ys.plus()),
        window_mean(sat, xs.full(), ys.minus()),
    ]
}

/// Valid-count means over the eight sub-windows of `(x, y)`.
///
/// Panics if `(x, y)` lies outside the table's domain.
pub fn subwindow_means(sat: &SummedAreaTable, x: usize, y: usize, radius: usize) -> SubWindowMeans {
    assert!(x < sat.width() && y < sat.height(), "pixel ({x}, {y}) outside domain");
    let xs = AxisSpans::new(x, radius, sat.width());
    let ys = AxisSpans::new(y, radius, sat.height());
    SubWindowMeans {
        a: means_at(sat, xs, ys),
    }
}

/// One iteration of the one-sided box filter.
///
/// Each pixel is replaced by the sub-window mean closest to its current value.
pub fn osbf_step(plane: &ImagePlane, radius: usize) -> Result<ImagePlane> {
    check_radius(radius)?;
    Ok(step(plane, radius))
}

fn step(plane: &ImagePlane, r: usize) -> ImagePlane {
    let (w, h) = (plane.width(), plane.height());
    let sat = SummedAreaTable::new(plane);
    let out = par_rows(w, h, |y, row| {
        let ys = AxisSpans::new(y, r, h);
        let src = plane.row(y);
        for (x, out) in row.iter_mut().enumerate() {
            let means = means_at(&sat, AxisSpans::new(x, r, w), ys);
            *out = means[select_closest(&means, src[x])];
        }
    });
    ImagePlane::from_raw(w, h, out)
}

/// Iterated one-sided box filter; zero iterations returns the input.
pub fn osbf(plane: &ImagePlane, radius: usize, iterations: usize) -> Result<ImagePlane> {
    check_radius(radius)?;
    Ok(iterate(plane, iterations, |p| step(p, radius)))
}
