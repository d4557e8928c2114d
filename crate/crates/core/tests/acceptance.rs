//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Runs as a plain binary (no libtest harness) so that criteria execute one
//! after another and the timing criteria are not disturbed by other tests.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use osbf::bench::time_median;
use osbf::filters2d::{box_filter, box_kernel_spectrum, fast_osbf_step, kernel_spectrum_magnitude, osbf, osbf_step};
use osbf::filters3d::{box_filter_3d, osbf_3d};
use osbf::kernel::{gaussian_kernel, make_one_sided_kernels};
use osbf::metrics::{psnr, rmse, DEFAULT_PEAK};
use osbf::synth::{self, NoiseSpec};
use osbf::{ImagePlane, OneSidedKernelSet, SeparableKernel, SubWindowId, Volume};

use common::{max_abs_diff, naive_dft_magnitude, naive_osbf, random_plane};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    format!("error: {e}")
}

fn c1_step_edges() -> Outcome {
    let mut worst = 0.0f64;
    let vertical = synth::step(256, 256, 128, 0.0, 100.0).map_err(fail)?;
    for p in [vertical.clone(), vertical.transpose()] {
        for r in [1, 2, 5, 10] {
            let out = osbf(&p, r, 30).map_err(fail)?;
            worst = worst.max(max_abs_diff(&p, &out));
        }
    }
    check(worst <= 1e-6, format!("max |change| = {worst:.3e} (limit 1e-6)"))
}

fn c2_checkerboard_corners() -> Outcome {
    let p = synth::checkerboard(256, 256, 32, 0.0, 100.0).map_err(fail)?;
    let mut worst = 0.0f64;
    for r in 1..=10 {
        let out = osbf_step(&p, r).map_err(fail)?;
        worst = worst.max(max_abs_diff(&p, &out));
    }
    check(worst <= 1e-6, format!("max |change| over r=1..10 = {worst:.3e} (limit 1e-6)"))
}

fn c3_denoising_gain() -> Outcome {
    let clean = synth::checkerboard(256, 256, 32, 0.0, 255.0).map_err(fail)?;
    let noisy = synth::add_gaussian_noise(&clean, &NoiseSpec { sigma: 20.0, seed: 7 });
    let mut worst = f64::INFINITY;
    let mut worst_r = 0;
    for r in 3..=10 {
        let a = psnr(&clean, &osbf(&noisy, r, 10).map_err(fail)?, DEFAULT_PEAK).map_err(fail)?;
        let b = psnr(&clean, &box_filter(&noisy, r, 10).map_err(fail)?, DEFAULT_PEAK).map_err(fail)?;
        if a - b < worst {
            worst = a - b;
            worst_r = r;
        }
    }
    check(worst >= 3.0, format!("min PSNR gain = {worst:.2} dB at r={worst_r} (limit 3 dB)"))
}

fn c4_fast_vs_exact() -> Outcome {
    let img = synth::phantom(256, 256, 1).map_err(fail)?;
    let checkpoints = [1, 10, 50, 100];
    let mut worst = (0.0f64, 0, 0);
    for r in 2..=10 {
        let (mut exact, mut fast) = (img.clone(), img.clone());
        for t in 1..=100 {
            exact = osbf_step(&exact, r).map_err(fail)?;
            fast = fast_osbf_step(&fast, r).map_err(fail)?;
            if checkpoints.contains(&t) {
                let e = rmse(&exact, &fast).map_err(fail)?;
                if e > worst.0 {
                    worst = (e, r, t);
                }
            }
        }
    }
    check(
        worst.0 <= 5.0,
        format!("max RMSE = {:.3} at r={}, {} iterations (limit 5)", worst.0, worst.1, worst.2),
    )
}

fn c5_brute_force_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..50u64 {
        let p = random_plane(64, 64, 1000 + seed);
        for r in [1, 2, 3, 5] {
            let fast = osbf(&p, r, 3).map_err(fail)?;
            let slow = naive_osbf(&p, r, 3);
            worst = worst.max(max_abs_diff(&fast, &slow));
        }
    }
    check(worst <= 1e-9, format!("max |diff| over 200 runs = {worst:.3e} (limit 1e-9)"))
}

type Filter = fn(&ImagePlane, usize) -> ImagePlane;

fn run_box(p: &ImagePlane, r: usize) -> ImagePlane {
    box_filter(p, r, 1).unwrap()
}

fn run_osbf(p: &ImagePlane, r: usize) -> ImagePlane {
    osbf_step(p, r).unwrap()
}

fn time_filter(f: Filter, p: &ImagePlane, r: usize) -> f64 {
    time_median(
        || {
            std::hint::black_box(f(p, r));
        },
        5,
        1,
        Duration::from_millis(20),
    )
}

fn single_thread<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(fail)?;
    Ok(pool.install(f))
}

fn c6_radius_independence() -> Outcome {
    let p = synth::uniform_plane(1024, 1024, 3).map_err(fail)?;
    let spreads = single_thread(|| {
        [("box", run_box as Filter), ("osbf", run_osbf as Filter)].map(|(name, f)| {
            let t: Vec<f64> = [2, 8, 32].iter().map(|&r| time_filter(f, &p, r)).collect();
            let max = t.iter().cloned().fold(0.0, f64::max);
            let min = t.iter().cloned().fold(f64::INFINITY, f64::min);
            (name, max / min, t)
        })
    })?;
    let detail = spreads
        .iter()
        .map(|(n, s, t)| format!("{n}: spread {s:.2} (r=2/8/32: {:.1}/{:.1}/{:.1} ms)", t[0] * 1e3, t[1] * 1e3, t[2] * 1e3))
        .collect::<Vec<_>>()
        .join("; ");
    check(spreads.iter().all(|(_, s, _)| *s <= 1.5), format!("{detail} (limit 1.5)"))
}

fn c7_linear_in_pixels() -> Outcome {
    let sizes = [256, 512, 1024, 2048];
    let planes: Vec<ImagePlane> = sizes.iter().map(|&n| synth::uniform_plane(n, n, 4).unwrap()).collect();
    let ratios = single_thread(|| {
        [("box", run_box as Filter), ("osbf", run_osbf as Filter)].map(|(name, f)| {
            let t: Vec<f64> = planes.iter().map(|p| time_filter(f, p, 5)).collect();
            (name, t.windows(2).map(|w| w[1] / w[0]).collect::<Vec<f64>>())
        })
    })?;
    let ok = ratios.iter().all(|(_, rs)| rs.iter().all(|&q| (2.0..=8.0).contains(&q)));
    let detail = ratios
        .iter()
        .map(|(n, rs)| {
            let s: Vec<String> = rs.iter().map(|q| format!("{q:.2}")).collect();
            format!("{n}: x4 pixels -> x{}", s.join(", x"))
        })
        .collect::<Vec<_>>()
        .join("; ");
    check(ok, format!("{detail} (band [2, 8])"))
}

fn vol_rmse(a: &Volume, b: &Volume) -> f64 {
    let n = a.samples().len() as f64;
    (a.samples().iter().zip(b.samples()).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / n).sqrt()
}

fn c8_volume() -> Outcome {
    let clean = synth::step_volume(64, 64, 64, 32, 0.0, 100.0).map_err(fail)?;
    let same = osbf_3d(&clean, 2, 1).map_err(fail)?;
    let change = clean
        .samples()
        .iter()
        .zip(same.samples())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let noisy = synth::add_gaussian_noise_volume(&clean, &NoiseSpec { sigma: 20.0, seed: 11 });
    let e_osbf = vol_rmse(&clean, &osbf_3d(&noisy, 2, 1).map_err(fail)?);
    let e_box = vol_rmse(&clean, &box_filter_3d(&noisy, 2, 1).map_err(fail)?);
    check(
        change <= 1e-6 && e_osbf < e_box,
        format!("step |change| = {change:.3e}; noisy RMSE osbf3d {e_osbf:.3} vs box3d {e_box:.3}"),
    )
}

fn c9_kernel_algebra() -> Outcome {
    let constant = SeparableKernel::new(-2, vec![1.0; 5]).map_err(fail)?;
    let boxes = make_one_sided_kernels(&constant).map_err(fail)?;
    let mut worst = 0.0f64;
    for id in SubWindowId::ALL {
        let expected = if id.is_quarter() { 1.0 / 9.0 } else { 1.0 / 15.0 };
        let k = boxes.get(id);
        let ((u0, u1), (v0, v1)) = id.offsets(2);
        for v in -2..=2 {
            for u in -2..=2 {
                let inside = (u0..=u1).contains(&u) && (v0..=v1).contains(&v);
                let want = if inside { expected } else { 0.0 };
                worst = worst.max((k.weight(u, v) - want).abs());
            }
        }
    }
    let gauss = OneSidedKernelSet::gaussian(5, 3.0).map_err(fail)?;
    let sum_err = gauss.kernels().iter().map(|k| (k.sum() - 1.0).abs()).fold(0.0, f64::max);
    let base = gaussian_kernel(5, 3.0).map_err(fail)?;
    let base_err = (base.taps().iter().sum::<f64>() - 1.0).abs();
    check(
        worst <= 1e-15 && sum_err <= 1e-12 && base_err <= 1e-12,
        format!("box weight err {worst:.1e}; gaussian sums err {sum_err:.1e} / base {base_err:.1e}"),
    )
}

fn c10_spectrum() -> Outcome {
    let grid = 16;
    let set = OneSidedKernelSet::boxes(1).map_err(fail)?;
    let (mut dc, mut diff) = (0.0f64, 0.0f64);
    for id in SubWindowId::ALL {
        let k = set.get(id);
        let mag = kernel_spectrum_magnitude(k, grid).map_err(fail)?;
        dc = dc.max(mag.at(grid / 2, grid / 2));
        let mut field = vec![0.0; grid * grid];
        let c = (grid / 2) as isize;
        for v in -1..=1 {
            for u in -1..=1 {
                let idx = ((c + v) as usize) * grid + (c + u) as usize;
                field[idx] = k.weight(u, v) - if u == 0 && v == 0 { 1.0 } else { 0.0 };
            }
        }
        let oracle = naive_dft_magnitude(&field, grid);
        for (a, b) in mag.samples().iter().zip(&oracle) {
            diff = diff.max((a - b).abs());
        }
        let normalized = box_kernel_spectrum(id.get(), 1, 64).map_err(fail)?;
        dc = dc.max(normalized.at(32, 32));
    }
    check(dc <= 1e-9 && diff <= 1e-9, format!("max DC {dc:.1e}; max |spectrum - dense DFT| {diff:.1e}"))
}

fn iterations_to_settle(img: &ImagePlane, r: usize) -> Result<(usize, f64), String> {
    let mut cur = img.clone();
    let mut curve = Vec::with_capacity(100);
    for _ in 0..100 {
        cur = osbf_step(&cur, r).map_err(fail)?;
        curve.push(rmse(img, &cur).map_err(fail)?);
    }
    let target = 0.95 * curve[99];
    let t = curve.iter().position(|&e| e >= target).unwrap() + 1;
    Ok((t, curve[99]))
}

fn c11_convergence_order() -> Outcome {
    let img = synth::phantom(256, 256, 1).map_err(fail)?;
    let (t2, e2) = iterations_to_settle(&img, 2)?;
    let (t10, e10) = iterations_to_settle(&img, 10)?;
    check(
        t10 < t2,
        format!("95% of final change reached at t={t10} for r=10 (RMSE {e10:.2}) vs t={t2} for r=2 (RMSE {e2:.2})"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("step edges are fixed points", c1_step_edges),
        ("checkerboard corners are fixed points", c2_checkerboard_corners),
        ("denoising gain over box filter", c3_denoising_gain),
        ("fast approximation tracks exact filter", c4_fast_vs_exact),
        ("matches brute-force reference", c5_brute_force_equivalence),
        ("runtime independent of radius", c6_radius_independence),
        ("runtime linear in pixel count", c7_linear_in_pixels),
        ("3D edge preservation and denoising", c8_volume),
        ("one-sided kernel algebra", c9_kernel_algebra),
        ("kernel spectra", c10_spectrum),
        ("larger radius converges in fewer iterations", c11_convergence_order),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{:>2}] {name}: {detail} ({secs:.2} s)", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
