//! Deterministic synthetic test data.
//!
//! Noise comes from ChaCha8 (`rand_chacha`) seeded with a 64-bit seed and
//! standard normal deviates from `rand_distr`'s ziggurat sampler. The stream
//! for a given seed is the same on every platform.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::image::{ImagePlane, Volume};

/// Noise level used for the noisy checkerboard on the 0..255 scale.
pub const DEFAULT_NOISE_SIGMA: f64 = 20.0;

/// Additive i.i.d. Gaussian noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub seed: u64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self {
            sigma: DEFAULT_NOISE_SIGMA,
            seed: 0,
        }
    }
}

/// `lo` where `x / cell + y / cell` is even, `hi` elsewhere.
pub fn checkerboard(width: usize, height: usize, cell: usize, lo: f64, hi: f64) -> Result<ImagePlane> {
    if cell == 0 {
        return Err(Error::invalid("checkerboard cell must be at least 1"));
    }
    ImagePlane::from_fn(width, height, |x, y| if (x / cell + y / cell).is_multiple_of(2) { lo } else { hi })
}

/// Vertical edge: columns left of `edge_col` are `lo`, the rest `hi`.
pub fn step(width: usize, height: usize, edge_col: usize, lo: f64, hi: f64) -> Result<ImagePlane> {
    if edge_col == 0 || edge_col >= width {
        return Err(Error::invalid(format!("edge column {edge_col} must lie in 1..{width}")));
    }
    ImagePlane::from_fn(width, height, |x, _| if x < edge_col { lo } else { hi })
}

/// Zero plane with a single sample set to `amplitude`.
pub fn impulse(width: usize, height: usize, x: usize, y: usize, amplitude: f64) -> Result<ImagePlane> {
    let mut p = ImagePlane::new(width, height, 0.0)?;
    p.set(x, y, amplitude)?;
    Ok(p)
}

/// Step along x: voxels with `x < edge` are `lo`, the rest `hi`.
pub fn step_volume(width: usize, height: usize, depth: usize, edge: usize, lo: f64, hi: f64) -> Result<Volume> {
    step_volume_along(width, height, depth, 0, edge, lo, hi)
}

/// Step perpendicular to `axis` (0 = x, 1 = y, 2 = z).
pub fn step_volume_along(
    width: usize,
    height: usize,
    depth: usize,
    axis: usize,
    edge: usize,
    lo: f64,
    hi: f64,
) -> Result<Volume> {
    let dims = [width, height, depth];
    if axis > 2 {
        return Err(Error::invalid(format!("axis must be 0, 1 or 2, got {axis}")));
    }
    if edge == 0 || edge >= dims[axis] {
        return Err(Error::invalid(format!("edge {edge} must lie in 1..{}", dims[axis])));
    }
    Volume::from_fn(width, height, depth, |x, y, z| if [x, y, z][axis] < edge { lo } else { hi })
}

fn normal_deviates(spec: &NoiseSpec, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            z * spec.sigma
        })
        .collect()
}

/// Adds zero-mean Gaussian noise; the result is not clamped.
pub fn add_gaussian_noise(plane: &ImagePlane, spec: &NoiseSpec) -> ImagePlane {
    if spec.sigma == 0.0 {
        return plane.clone();
    }
    let noise = normal_deviates(spec, plane.len());
    let samples = plane.samples().iter().zip(noise).map(|(v, n)| v + n).collect();
    ImagePlane::from_raw(plane.width(), plane.height(), samples)
}

pub fn add_gaussian_noise_volume(vol: &Volume, spec: &NoiseSpec) -> Volume {
    if spec.sigma == 0.0 {
        return vol.clone();
    }
    let noise = normal_deviates(spec, vol.len());
    let samples = vol.samples().iter().zip(noise).map(|(v, n)| v + n).collect();
    Volume::from_raw(vol.width(), vol.height(), vol.depth(), samples)
}

pub fn noisy_checkerboard(
    width: usize,
    height: usize,
    cell: usize,
    lo: f64,
    hi: f64,
    noise: &NoiseSpec,
) -> Result<ImagePlane> {
    Ok(add_gaussian_noise(&checkerboard(width, height, cell, lo, hi)?, noise))
}

/// Uniform random samples in `[0, 255)`.
pub fn uniform_plane(width: usize, height: usize, seed: u64) -> Result<ImagePlane> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImagePlane::from_fn(width, height, |_, _| rng.random_range(0.0..255.0))
}

/// 8-bit-valued test scene with natural-image statistics: smooth shading,
/// flat objects with sharp boundaries, thin structures, a textured band and
/// mild sensor noise. Samples are integers in `[0, 255]`.
pub fn phantom(width: usize, height: usize, seed: u64) -> Result<ImagePlane> {
    let (w, h) = (width as f64, height as f64);
    let noise = normal_deviates(&NoiseSpec { sigma: 3.0, seed }, width * height);
    ImagePlane::from_fn(width, height, |x, y| {
        let (u, v) = ((x as f64 + 0.5) / w, (y as f64 + 0.5) / h);
        // sky-like vertical gradient with slow horizontal shading
        let mut val = 170.0 - 60.0 * v + 15.0 * (2.0 * PI * 0.8 * u).sin();

        // textured ground band
        if v > 0.72 {
            let tex = (2.0 * PI * 23.0 * u).sin() * (2.0 * PI * 17.0 * v).cos()
                + 0.5 * (2.0 * PI * (31.0 * u + 11.0 * v)).sin();
            val = 95.0 + 20.0 * v + 14.0 * tex;
        }

        // large dark disk with radial shading
        let d = ((u - 0.38).powi(2) + (v - 0.45).powi(2)).sqrt();
        if d < 0.2 {
            val = 35.0 + 60.0 * d;
        }

        // bright rectangle
        if (0.62..0.86).contains(&u) && (0.18..0.5).contains(&v) {
            val = 215.0 - 30.0 * (u - 0.62);
        }

        // triangle pointing up
        if v > 0.52 && v < 0.82 && (u - 0.75).abs() < (v - 0.52) * 0.6 {
            val = 140.0;
        }

        // thin diagonal pole and a thin horizontal bar
        if ((u - 0.15) - 0.3 * (v - 0.2)).abs() < 0.006 && (0.2..0.9).contains(&v) {
            val = 20.0;
        }
        if (v - 0.3).abs() < 0.005 && (0.05..0.3).contains(&u) {
            val = 230.0;
        }

        (val + noise[y * width + x]).round().clamp(0.0, 255.0)
    })
}
