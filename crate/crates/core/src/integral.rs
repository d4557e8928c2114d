//! Summed-area and summed-volume tables.
//!
//! A table for a `W x H` plane stores `(W + 1) x (H + 1)` prefix sums with a
//! zero first row and column; entry `(x, y)` is the sum of samples over
//! `[0, x) x [0, y)`. Any axis-aligned rectangle sum then costs four lookups.
//! Rectangles are clipped to the domain before lookup, so callers can pass
//! windows that hang over the border.

use crate::error::{Error, Result};
use crate::image::{ImagePlane, Volume};

/// 2D prefix-sum table.
#[derive(Debug, Clone)]
pub struct SummedAreaTable {
    width: usize,
    height: usize,
    stride: usize,
    cumsum: Vec<f64>,
}

impl SummedAreaTable {
    pub fn new(plane: &ImagePlane) -> Self {
        let (w, h) = (plane.width(), plane.height());
        let stride = w + 1;
        let mut cumsum = vec![0.0; stride * (h + 1)];
        for y in 0..h {
            let src = plane.row(y);
            let (prev, cur) = cumsum[y * stride..(y + 2) * stride].split_at_mut(stride);
            let mut row_sum = 0.0;
            for x in 0..w {
                row_sum += src[x];
                cur[x + 1] = prev[x + 1] + row_sum;
            }
        }
        Self {
            width: w,
            height: h,
            stride,
            cumsum,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Prefix sum over `[0, x) x [0, y)`.
    #[inline]
    pub fn cumsum(&self, x: usize, y: usize) -> f64 {
        self.cumsum[y * self.stride + x]
    }

    pub fn total(&self) -> f64 {
        self.cumsum(self.width, self.height)
    }

    /// Sum over the half-open table range `[x0, x1) x [y0, y1)`, already clipped.
    #[inline]
    pub(crate) fn sum_unchecked(&self, x0: usize, x1: usize, y0: usize, y1: usize) -> f64 {
        let top = y0 * self.stride;
        let bottom = y1 * self.stride;
        self.cumsum[bottom + x1] - self.cumsum[top + x1] - self.cumsum[bottom + x0] + self.cumsum[top + x0]
    }

    /// Clips the inclusive rectangle to the domain as half-open ranges.
    fn clip(&self, x0: isize, y0: isize, x1: isize, y1: isize) -> Option<(usize, usize, usize, usize)> {
        let cx0 = x0.max(0);
        let cy0 = y0.max(0);
        let cx1 = x1.min(self.width as isize - 1);
        let cy1 = y1.min(self.height as isize - 1);
        if cx0 > cx1 || cy0 > cy1 {
            return None;
        }
        Some((cx0 as usize, cx1 as usize + 1, cy0 as usize, cy1 as usize + 1))
    }

    /// Sum over `[x0, x1] x [y0, y1]` (inclusive) intersected with the domain.
    pub fn rect_sum(&self, x0: isize, y0: isize, x1: isize, y1: isize) -> f64 {
        match self.clip(x0, y0, x1, y1) {
            Some((a, b, c, d)) => self.sum_unchecked(a, b, c, d),
            None => 0.0,
        }
    }

    /// Mean over the in-domain part of `[x0, x1] x [y0, y1]`.
    pub fn rect_mean(&self, x0: isize, y0: isize, x1: isize, y1: isize) -> Result<f64> {
        match self.clip(x0, y0, x1, y1) {
            Some((a, b, c, d)) => Ok(self.sum_unchecked(a, b, c, d) / ((b - a) * (d - c)) as f64),
            None => Err(Error::Domain(format!(
                "rectangle [{x0}, {x1}] x [{y0}, {y1}] does not intersect the {}x{} domain",
                self.width, self.height
            ))),
        }
    }
}

/// 3D prefix-sum table with a zero border slab on each axis.
#[derive(Debug, Clone)]
pub struct SummedVolumeTable {
    dims: [usize; 3],
    cumsum: Vec<f64>,
}

/// Inclusive box `[lo[axis], hi[axis]]` in voxel coordinates; may exceed the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxRegion {
    pub lo: [isize; 3],
    pub hi: [isize; 3],
}

impl SummedVolumeTable {
    pub fn new(vol: &Volume) -> Self {
        let [w, h, d] = vol.dims();
        let (sx, sy) = (w + 1, (w + 1) * (h + 1));
        let mut cumsum = vec![0.0; sy * (d + 1)];
        let src = vol.samples();
        for z in 0..d {
            for y in 0..h {
                let mut row_sum = 0.0;
                for x in 0..w {
                    row_sum += src[(z * h + y) * w + x];
                    let i = (z + 1) * sy + (y + 1) * sx + (x + 1);
                    // plane above (z) plus column-prefix in this slab
                    cumsum[i] = row_sum + cumsum[i - sx] + cumsum[i - sy] - cumsum[i - sx - sy];
                }
            }
        }
        Self { dims: [w, h, d], cumsum }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    #[inline]
    fn at(&self, x: usize, y: usize, z: usize) -> f64 {
        let [w, h, _] = self.dims;
        self.cumsum[(z * (h + 1) + y) * (w + 1) + x]
    }

    pub fn total(&self) -> f64 {
        let [w, h, d] = self.dims;
        self.at(w, h, d)
    }

    /// Sum over the half-open range `[lo, hi)` per axis, already clipped.
    #[inline]
    pub(crate) fn sum_unchecked(&self, lo: [usize; 3], hi: [usize; 3]) -> f64 {
        self.at(hi[0], hi[1], hi[2]) - self.at(lo[0], hi[1], hi[2]) - self.at(hi[0], lo[1], hi[2])
            - self.at(hi[0], hi[1], lo[2])
            + self.at(lo[0], lo[1], hi[2])
            + self.at(lo[0], hi[1], lo[2])
            + self.at(hi[0], lo[1], lo[2])
            - self.at(lo[0], lo[1], lo[2])
    }

    fn clip(&self, region: &BoxRegion) -> Option<([usize; 3], [usize; 3])> {
        let mut lo = [0usize; 3];
        let mut hi = [0usize; 3];
        for a in 0..3 {
            let l = region.lo[a].max(0);
            let h = region.hi[a].min(self.dims[a] as isize - 1);
            if l > h {
                return None;
            }
            lo[a] = l as usize;
            hi[a] = h as usize + 1;
        }
        Some((lo, hi))
    }

    pub fn box_sum(&self, region: &BoxRegion) -> f64 {
        match self.clip(region) {
            Some((lo, hi)) => self.sum_unchecked(lo, hi),
            None => 0.0,
        }
    }

    pub fn box_mean(&self, region: &BoxRegion) -> Result<f64> {
        match self.clip(region) {
            Some((lo, hi)) => {
                let count = (0..3).map(|a| hi[a] - lo[a]).product::<usize>();
                Ok(self.sum_unchecked(lo, hi) / count as f64)
            }
            None => Err(Error::Domain(format!("box {region:?} does not intersect the volume"))),
        }
    }
}
