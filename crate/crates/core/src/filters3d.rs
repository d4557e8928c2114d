//! Box filter and one-sided box filter over volumes.
//!
//! The 3D one-sided filter uses fourteen regions around each voxel: eight
//! octants (one-sided on all three axes) and six half windows (one-sided on a
//! single axis, full on the other two).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::Volume;
use crate::integral::SummedVolumeTable;
use crate::kernel::{check_radius, Side};

/// One of the fourteen one-sided regions around a voxel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubRegion3D(u8);

impl SubRegion3D {
    pub const COUNT: usize = 14;

    pub fn new(id: u8) -> Result<Self> {
        if (1..=Self::COUNT as u8).contains(&id) {
            Ok(Self(id))
        } else {
            Err(Error::invalid(format!("3D region id must be 1..=14, got {id}")))
        }
    }

    pub fn all() -> impl Iterator<Item = SubRegion3D> {
        (1..=Self::COUNT as u8).map(SubRegion3D)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Per-axis side: ids 1..=8 enumerate octants with x varying fastest
    /// (minus before plus); ids 9..=14 are the x-, x+, y-, y+, z-, z+ halves.
    pub fn sides(self) -> [Side; 3] {
        REGION_SIDES[self.0 as usize - 1]
    }

    pub fn is_octant(self) -> bool {
        self.0 <= 8
    }

    /// Voxel count away from any border.
    pub fn volume(self, radius: usize) -> usize {
        self.sides()
            .iter()
            .map(|s| if *s == Side::Full { 2 * radius + 1 } else { radius + 1 })
            .product()
    }
}

const REGION_SIDES: [[Side; 3]; 14] = {
    use Side::{Full as F, Minus as M, Plus as P};
    [
        [M, M, M],
        [P, M, M],
        [M, P, M],
        [P, P, M],
        [M, M, P],
        [P, M, P],
        [M, P, P],
        [P, P, P],
        [M, F, F],
        [P, F, F],
        [F, M, F],
        [F, P, F],
        [F, F, M],
        [F, F, P],
    ]
};

#[derive(Clone, Copy)]
struct Spans {
    lo: usize,
    c: usize,
    hi: usize,
}

impl Spans {
    fn new(c: usize, r: usize, len: usize) -> Self {
        Self {
            lo: c.saturating_sub(r),
            c,
            hi: (c + r).min(len - 1) + 1,
        }
    }

    #[inline]
    fn range(self, side: Side) -> (usize, usize) {
        match side {
            Side::Minus => (self.lo, self.c + 1),
            Side::Plus => (self.c, self.hi),
            Side::Full => (self.lo, self.hi),
        }
    }
}

fn region_mean(svt: &SummedVolumeTable, spans: [Spans; 3], sides: [Side; 3]) -> f64 {
    let mut lo = [0; 3];
    let mut hi = [0; 3];
    let mut count = 1usize;
    for a in 0..3 {
        let (l, h) = spans[a].range(sides[a]);
        lo[a] = l;
        hi[a] = h;
        count *= h - l;
    }
    svt.sum_unchecked(lo, hi) / count as f64
}

/// Valid-count means over the fourteen regions of voxel `(x, y, z)`, in id order.
pub fn region_means(svt: &SummedVolumeTable, x: usize, y: usize, z: usize, radius: usize) -> [f64; 14] {
    let [w, h, d] = svt.dims();
    assert!(x < w && y < h && z < d, "voxel ({x}, {y}, {z}) outside domain");
    let spans = [Spans::new(x, radius, w), Spans::new(y, radius, h), Spans::new(z, radius, d)];
    std::array::from_fn(|i| region_mean(svt, spans, REGION_SIDES[i]))
}

fn map_voxels(vol: &Volume, f: impl Fn(usize, usize, usize, f64) -> f64 + Sync) -> Volume {
    let [w, h, d] = vol.dims();
    let mut out = vec![0.0; w * h * d];
    out.par_chunks_mut(w * h).enumerate().for_each(|(z, slice)| {
        for y in 0..h {
            for x in 0..w {
                slice[y * w + x] = f(x, y, z, vol.at(x, y, z));
            }
        }
    });
    Volume::from_raw(w, h, d, out)
}

fn iterate(vol: &Volume, iterations: usize, step: impl Fn(&Volume) -> Volume) -> Volume {
    if iterations == 0 {
        return vol.clone();
    }
    let mut current = step(vol);
    for _ in 1..iterations {
        current = step(&current);
    }
    current
}

/// Mean over the clipped `(2r+1)^3` box, iterated.
pub fn box_filter_3d(vol: &Volume, radius: usize, iterations: usize) -> Result<Volume> {
    check_radius(radius)?;
    Ok(iterate(vol, iterations, |v| {
        let svt = SummedVolumeTable::new(v);
        let [w, h, d] = v.dims();
        map_voxels(v, |x, y, z, _| {
            let spans = [Spans::new(x, radius, w), Spans::new(y, radius, h), Spans::new(z, radius, d)];
            region_mean(&svt, spans, [Side::Full; 3])
        })
    }))
}

/// One-sided box filter over fourteen regions, iterated.
pub fn osbf_3d(vol: &Volume, radius: usize, iterations: usize) -> Result<Volume> {
    check_radius(radius)?;
    Ok(iterate(vol, iterations, |v| {
        let svt = SummedVolumeTable::new(v);
        map_voxels(v, |x, y, z, value| {
            let means = region_means(&svt, x, y, z, radius);
            let mut best = means[0];
            let mut best_dist = (best - value).abs();
            for &m in &means[1..] {
                let dist = (m - value).abs();
                if dist < best_dist {
                    best = m;
                    best_dist = dist;
                }
            }
            best
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_volume(n: usize, seed: u64) -> Volume {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Volume::from_fn(n, n, n, |_, _, _| rng.random_range(0.0..255.0)).unwrap()
    }

    fn brute_region_mean(v: &Volume, p: [usize; 3], r: usize, sides: [Side; 3]) -> f64 {
        let ri = r as isize;
        let dims = v.dims();
        let mut s = 0.0;
        let mut n = 0.0;
        let ranges: Vec<(isize, isize)> = sides.iter().map(|s| s.range(ri)).collect();
        for dz in ranges[2].0..=ranges[2].1 {
            for dy in ranges[1].0..=ranges[1].1 {
                for dx in ranges[0].0..=ranges[0].1 {
                    let q = [p[0] as isize + dx, p[1] as isize + dy, p[2] as isize + dz];
                    if (0..3).all(|a| q[a] >= 0 && (q[a] as usize) < dims[a]) {
                        s += v.at(q[0] as usize, q[1] as usize, q[2] as usize);
                        n += 1.0;
                    }
                }
            }
        }
        s / n
    }

    #[test]
    fn region_set_shape() {
        let regions: Vec<_> = SubRegion3D::all().collect();
        assert_eq!(regions.len(), 14);
        let mut seen = std::collections::HashSet::new();
        for reg in &regions {
            assert!(seen.insert(reg.sides()));
            let full = reg.sides().iter().filter(|s| **s == Side::Full).count();
            if reg.is_octant() {
                assert_eq!(full, 0);
                assert_eq!(reg.volume(2), 27);
            } else {
                assert_eq!(full, 2);
                assert_eq!(reg.volume(2), 75);
            }
        }
        assert!(SubRegion3D::new(15).is_err());
    }

    #[test]
    fn region_means_match_brute_force() {
        let v = random_volume(8, 1);
        let svt = SummedVolumeTable::new(&v);
        for r in [1, 2, 3] {
            for z in 0..8 {
                for y in (0..8).step_by(3) {
                    for x in 0..8 {
                        let m = region_means(&svt, x, y, z, r);
                        for (i, reg) in SubRegion3D::all().enumerate() {
                            let b = brute_region_mean(&v, [x, y, z], r, reg.sides());
                            assert!((m[i] - b).abs() < 1e-9);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn box_3d_matches_naive() {
        let v = random_volume(8, 2);
        let out = box_filter_3d(&v, 1, 1).unwrap();
        for z in 0..8 {
            for y in 0..8 {
                for x in 0..8 {
                    let b = brute_region_mean(&v, [x, y, z], 1, [Side::Full; 3]);
                    assert!((out.at(x, y, z) - b).abs() < 1e-9);
                }
            }
        }
        assert_eq!(box_filter_3d(&v, 1, 0).unwrap(), v);
    }

    #[test]
    fn constant_volume_fixed() {
        let v = Volume::new(6, 5, 4, 17.0).unwrap();
        for out in [osbf_3d(&v, 2, 2).unwrap(), box_filter_3d(&v, 2, 2).unwrap()] {
            assert!(out.samples().iter().all(|&s| (s - 17.0).abs() < 1e-12));
        }
    }

    #[test]
    fn step_volume_fixed_all_axes() {
        for axis in 0..3 {
            let v = synth::step_volume_along(16, 16, 16, axis, 8, 0.0, 100.0).unwrap();
            let out = osbf_3d(&v, 2, 1).unwrap();
            for (a, b) in out.samples().iter().zip(v.samples()) {
                assert!((a - b).abs() < 1e-9, "axis {axis}");
            }
        }
    }

    #[test]
    fn range_preserved() {
        let v = random_volume(7, 3);
        let (lo, hi) = v.range();
        let out = osbf_3d(&v, 2, 3).unwrap();
        assert!(out.samples().iter().all(|&s| s >= lo - 1e-9 && s <= hi + 1e-9));
        assert!(osbf_3d(&v, 0, 1).is_err());
    }

    #[test]
    fn noisy_step_beats_box() {
        let clean = synth::step_volume(16, 16, 16, 8, 0.0, 100.0).unwrap();
        let noisy = synth::add_gaussian_noise_volume(&clean, &synth::NoiseSpec { sigma: 10.0, seed: 9 });
        let rmse = |a: &Volume| {
            (a.samples().iter().zip(clean.samples()).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / a.len() as f64).sqrt()
        };
        let os = osbf_3d(&noisy, 2, 1).unwrap();
        let bx = box_filter_3d(&noisy, 2, 1).unwrap();
        assert!(rmse(&os) < rmse(&bx));
    }
}
