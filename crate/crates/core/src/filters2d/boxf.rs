use super::{iterate, par_rows};
use crate::error::Result;
use crate::image::ImagePlane;
use crate::integral::SummedAreaTable;
use crate::kernel::check_radius;

/// Classical box filter: mean over the clipped `(2r+1)^2` window, iterated.
pub fn box_filter(plane: &ImagePlane, radius: usize, iterations: usize) -> Result<ImagePlane> {
    check_radius(radius)?;
    Ok(iterate(plane, iterations, |p| box_step(p, radius)))
}

fn box_step(plane: &ImagePlane, r: usize) -> ImagePlane {
    let (w, h) = (plane.width(), plane.height());
    let sat = SummedAreaTable::new(plane);
    let out = par_rows(w, h, |y, row| {
        let y0 = y.saturating_sub(r);
        let y1 = (y + r).min(h - 1) + 1;
        let ny = (y1 - y0) as f64;
        for (x, out) in row.iter_mut().enumerate() {
            let x0 = x.saturating_sub(r);
            let x1 = (x + r).min(w - 1) + 1;
            *out = sat.sum_unchecked(x0, x1, y0, y1) / ((x1 - x0) as f64 * ny);
        }
    });
    ImagePlane::from_raw(w, h, out)
}
