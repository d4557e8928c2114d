//! RMSE, PSNR and SSIM between planes.

use crate::error::{Error, Result};
use crate::image::ImagePlane;
use crate::kernel::gaussian_kernel;

pub const DEFAULT_PEAK: f64 = 255.0;

const SSIM_RADIUS: usize = 5;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    pub rmse: f64,
    /// `f64::INFINITY` when the planes are identical.
    pub psnr: f64,
    /// `None` when either extent is below the 11-pixel SSIM window.
    pub ssim: Option<f64>,
}

fn check_shape(a: &ImagePlane, b: &ImagePlane) -> Result<()> {
    if !a.same_shape(b) {
        return Err(Error::invalid(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    Ok(())
}

pub fn mse(a: &ImagePlane, b: &ImagePlane) -> Result<f64> {
    check_shape(a, b)?;
    let sum: f64 = a.samples().iter().zip(b.samples()).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok(sum / a.len() as f64)
}

pub fn rmse(a: &ImagePlane, b: &ImagePlane) -> Result<f64> {
    mse(a, b).map(f64::sqrt)
}

/// `10 log10(peak^2 / MSE)`; infinite for identical planes.
pub fn psnr(a: &ImagePlane, b: &ImagePlane, peak: f64) -> Result<f64> {
    if peak.is_nan() || peak <= 0.0 {
        return Err(Error::invalid(format!("peak must be positive, got {peak}")));
    }
    let m = mse(a, b)?;
    Ok(if m == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (peak * peak / m).log10()
    })
}

/// Valid-mode 1D correlation along rows then columns with the same taps.
fn gaussian_valid(p: &[f64], w: usize, h: usize, taps: &[f64]) -> (Vec<f64>, usize, usize) {
    let n = taps.len();
    let ow = w - n + 1;
    let oh = h - n + 1;
    let mut rows = vec![0.0; ow * h];
    for y in 0..h {
        for x in 0..ow {
            rows[y * ow + x] = taps.iter().enumerate().map(|(i, t)| t * p[y * w + x + i]).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for (i, t) in taps.iter().enumerate() {
            let src = &rows[(y + i) * ow..(y + i + 1) * ow];
            for (o, s) in out[y * ow..(y + 1) * ow].iter_mut().zip(src) {
                *o += t * s;
            }
        }
    }
    (out, ow, oh)
}

/// Mean structural similarity with an 11x11 Gaussian window (sigma 1.5),
/// `K1 = 0.01`, `K2 = 0.03`, averaged over all fully interior windows.
pub fn ssim(a: &ImagePlane, b: &ImagePlane, peak: f64) -> Result<f64> {
    check_shape(a, b)?;
    let win = 2 * SSIM_RADIUS + 1;
    if a.width() < win || a.height() < win {
        return Err(Error::invalid(format!(
            "SSIM needs at least {win}x{win} pixels, got {}x{}",
            a.width(),
            a.height()
        )));
    }
    if peak.is_nan() || peak <= 0.0 {
        return Err(Error::invalid(format!("peak must be positive, got {peak}")));
    }
    let taps = gaussian_kernel(SSIM_RADIUS, SSIM_SIGMA)?.taps().to_vec();
    let (w, h) = (a.width(), a.height());
    let (sa, sb) = (a.samples(), b.samples());
    let aa: Vec<f64> = sa.iter().map(|v| v * v).collect();
    let bb: Vec<f64> = sb.iter().map(|v| v * v).collect();
    let ab: Vec<f64> = sa.iter().zip(sb).map(|(x, y)| x * y).collect();

    let (mu_a, ow, oh) = gaussian_valid(sa, w, h, &taps);
    let (mu_b, _, _) = gaussian_valid(sb, w, h, &taps);
    let (e_aa, _, _) = gaussian_valid(&aa, w, h, &taps);
    let (e_bb, _, _) = gaussian_valid(&bb, w, h, &taps);
    let (e_ab, _, _) = gaussian_valid(&ab, w, h, &taps);

    let c1 = (SSIM_K1 * peak).powi(2);
    let c2 = (SSIM_K2 * peak).powi(2);
    let total: f64 = (0..ow * oh)
        .map(|i| {
            let (ma, mb) = (mu_a[i], mu_b[i]);
            let va = e_aa[i] - ma * ma;
            let vb = e_bb[i] - mb * mb;
            let cov = e_ab[i] - ma * mb;
            ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2))
        })
        .sum();
    Ok(total / (ow * oh) as f64)
}

/// RMSE, PSNR and (when the planes are large enough) SSIM.
pub fn compare(a: &ImagePlane, b: &ImagePlane, peak: f64) -> Result<MetricReport> {
    let rmse = rmse(a, b)?;
    let psnr = psnr(a, b, peak)?;
    let ssim = if a.width() > 2 * SSIM_RADIUS && a.height() > 2 * SSIM_RADIUS {
        Some(ssim(a, b, peak)?)
    } else {
        None
    };
    Ok(MetricReport { rmse, psnr, ssim })
}
