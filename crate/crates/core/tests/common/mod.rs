//! Brute-force reference implementations used as independent oracles.
//!
//! Nothing here touches summed-area tables or separable passes: every window
//! mean is a direct loop over the clipped window.

#![allow(dead_code)]

use osbf::ImagePlane;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_plane(w: usize, h: usize, seed: u64) -> ImagePlane {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImagePlane::from_fn(w, h, |_, _| rng.random_range(0.0..255.0)).unwrap()
}

/// Mean over `[x + u0, x + u1] x [y + v0, y + v1]` clipped to the plane.
pub fn window_mean(p: &ImagePlane, x: isize, y: isize, (u0, u1): (isize, isize), (v0, v1): (isize, isize)) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for yy in (y + v0).max(0)..=(y + v1).min(p.height() as isize - 1) {
        for xx in (x + u0).max(0)..=(x + u1).min(p.width() as isize - 1) {
            sum += p.at(xx as usize, yy as usize);
            n += 1;
        }
    }
    assert!(n > 0, "empty window");
    sum / n as f64
}

fn pick_closest(cands: &[f64], value: f64) -> f64 {
    let mut best = cands[0];
    for &c in &cands[1..] {
        if (c - value).abs() < (best - value).abs() {
            best = c;
        }
    }
    best
}

/// One exact one-sided box filter step, evaluated pixel by pixel.
pub fn naive_osbf_step(p: &ImagePlane, r: usize) -> ImagePlane {
    let r = r as isize;
    let (m, pl, f) = ((-r, 0), (0, r), (-r, r));
    // window order 1..8: (x side, y side)
    let windows = [(m, pl), (pl, pl), (pl, m), (m, m), (m, f), (pl, f), (f, pl), (f, m)];
    ImagePlane::from_fn(p.width(), p.height(), |x, y| {
        let cands: Vec<f64> = windows
            .iter()
            .map(|&(wx, wy)| window_mean(p, x as isize, y as isize, wx, wy))
            .collect();
        pick_closest(&cands, p.at(x, y))
    })
    .unwrap()
}

pub fn naive_osbf(p: &ImagePlane, r: usize, iterations: usize) -> ImagePlane {
    let mut cur = p.clone();
    for _ in 0..iterations {
        cur = naive_osbf_step(&cur, r);
    }
    cur
}

/// One fast-approximation step with quarter means computed by direct loops.
pub fn naive_fast_step(p: &ImagePlane, r: usize) -> ImagePlane {
    let (w, h) = (p.width(), p.height());
    let q = |x: usize, y: usize| window_mean(p, x as isize, y as isize, (-(r as isize), 0), (-(r as isize), 0));
    ImagePlane::from_fn(w, h, |x, y| {
        let xr = (x + r).min(w - 1);
        let yr = (y + r).min(h - 1);
        let (q00, qr0, q0r, qrr) = (q(x, y), q(xr, y), q(x, yr), q(xr, yr));
        let cands = [
            q00,
            qr0,
            q0r,
            qrr,
            (q00 + q0r) / 2.0,
            (qr0 + qrr) / 2.0,
            (q00 + qr0) / 2.0,
            (q0r + qrr) / 2.0,
        ];
        pick_closest(&cands, p.at(x, y))
    })
    .unwrap()
}

/// Full `grid^2 x grid^2` DFT magnitude of a dense field, DC shifted to the center.
pub fn naive_dft_magnitude(field: &[f64], grid: usize) -> Vec<f64> {
    use std::f64::consts::PI;
    let mut out = vec![0.0; grid * grid];
    let half = grid / 2;
    for py in 0..grid {
        for px in 0..grid {
            let kx = (px + grid - half) % grid;
            let ky = (py + grid - half) % grid;
            let (mut re, mut im) = (0.0, 0.0);
            for y in 0..grid {
                for x in 0..grid {
                    let v = field[y * grid + x];
                    if v == 0.0 {
                        continue;
                    }
                    let theta = -2.0 * PI * ((kx * x) as f64 + (ky * y) as f64) / grid as f64;
                    re += v * theta.cos();
                    im += v * theta.sin();
                }
            }
            out[py * grid + px] = (re * re + im * im).sqrt();
        }
    }
    out
}

pub fn max_abs_diff(a: &ImagePlane, b: &ImagePlane) -> f64 {
    a.samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
