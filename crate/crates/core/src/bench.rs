//! Wall-clock timing harness for the complexity checks.
//!
//! Each measurement discards warmup runs, then takes the median of repeated
//! timings. Very short runs are batched so that one timing covers at least
//! `min_batch` of wall time and is reported per call.

use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::config::{FilterConfig, FilterVariant};
use crate::error::{Error, Result};
use crate::synth;

/// One timing result, one CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub filter: String,
    pub width: usize,
    pub height: usize,
    pub radius: usize,
    pub iterations: usize,
    /// Median wall-clock seconds per call.
    pub seconds: f64,
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub filters: Vec<FilterVariant>,
    /// Square image side lengths.
    pub sizes: Vec<usize>,
    pub radii: Vec<usize>,
    pub iterations: usize,
    pub repeats: usize,
    pub warmup: usize,
    pub min_batch: Duration,
    pub seed: u64,
}

impl Default for BenchPlan {
    fn default() -> Self {
        Self {
            filters: vec![FilterVariant::Box, FilterVariant::OsbfExact, FilterVariant::OsbfFast],
            sizes: vec![256, 512, 1024, 2048],
            radii: vec![2, 8, 32],
            iterations: 1,
            repeats: 5,
            warmup: 1,
            min_batch: Duration::from_millis(20),
            seed: 0,
        }
    }
}

impl BenchPlan {
    pub fn validate(&self) -> Result<()> {
        if self.filters.is_empty() || self.sizes.is_empty() || self.radii.is_empty() {
            return Err(Error::invalid("bench needs at least one filter, size and radius"));
        }
        if self.repeats < 3 {
            return Err(Error::invalid(format!("repeats must be at least 3, got {}", self.repeats)));
        }
        if self.warmup < 1 {
            return Err(Error::invalid("at least one warmup run is required"));
        }
        if self.sizes.contains(&0) || self.radii.contains(&0) {
            return Err(Error::invalid("sizes and radii must be positive"));
        }
        Ok(())
    }
}

/// Median seconds per call of `f` over `repeats` timings.
pub fn time_median(mut f: impl FnMut(), repeats: usize, warmup: usize, min_batch: Duration) -> f64 {
    let mut slowest_warmup = Duration::ZERO;
    for _ in 0..warmup.max(1) {
        let t = Instant::now();
        f();
        slowest_warmup = slowest_warmup.max(t.elapsed());
    }
    let per_call = slowest_warmup.as_secs_f64().max(1e-9);
    let batch = ((min_batch.as_secs_f64() / per_call).ceil() as usize).max(1);
    let mut samples: Vec<f64> = (0..repeats.max(1))
        .map(|_| {
            let t = Instant::now();
            for _ in 0..batch {
                f();
            }
            t.elapsed().as_secs_f64() / batch as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        0.5 * (samples[mid - 1] + samples[mid])
    }
}

/// Times every (filter, size, radius) combination on a seeded random image.
pub fn run(plan: &BenchPlan, mut progress: impl FnMut(&BenchRecord)) -> Result<Vec<BenchRecord>> {
    plan.validate()?;
    let mut records = Vec::new();
    for &size in &plan.sizes {
        let image = synth::uniform_plane(size, size, plan.seed)?;
        for &variant in &plan.filters {
            for &radius in &plan.radii {
                let config = FilterConfig {
                    radius,
                    iterations: plan.iterations,
                    variant,
                    ..FilterConfig::default()
                };
                config.validate()?;
                let seconds = time_median(
                    || {
                        black_box(config.apply(black_box(&image)).expect("validated config"));
                    },
                    plan.repeats,
                    plan.warmup,
                    plan.min_batch,
                );
                let rec = BenchRecord {
                    filter: variant.name().to_string(),
                    width: size,
                    height: size,
                    radius,
                    iterations: plan.iterations,
                    seconds,
                };
                progress(&rec);
                records.push(rec);
            }
        }
    }
    Ok(records)
}

/// Slowest over fastest time across radii at one image size.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusSpread {
    pub filter: String,
    pub size: usize,
    pub ratio: f64,
}

/// Time growth between consecutive image sizes at one radius.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeGrowth {
    pub filter: String,
    pub radius: usize,
    pub from: usize,
    pub to: usize,
    /// `time(to) / time(from)`.
    pub time_ratio: f64,
    /// `pixels(to) / pixels(from)`.
    pub pixel_ratio: f64,
}

impl SizeGrowth {
    /// Time ratio normalized by the pixel ratio; 1.0 means exactly linear.
    pub fn per_pixel(&self) -> f64 {
        self.time_ratio / self.pixel_ratio
    }
}

/// `time(filter) / time(box)` at matching size and radius.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeCost {
    pub filter: String,
    pub size: usize,
    pub radius: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchSummary {
    pub radius_spread: Vec<RadiusSpread>,
    pub size_growth: Vec<SizeGrowth>,
    pub relative_to_box: Vec<RelativeCost>,
}

/// Limits for the complexity checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Largest allowed max/min time ratio across radii.
    pub max_radius_spread: f64,
    /// Allowed band for `per_pixel()` of every size step.
    pub per_pixel_band: (f64, f64),
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            max_radius_spread: 1.5,
            per_pixel_band: (0.5, 2.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub description: String,
    pub passed: bool,
}

fn ordered_unique(values: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = values.collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn summarize(records: &[BenchRecord]) -> BenchSummary {
    let mut filters: Vec<&str> = Vec::new();
    for r in records {
        if !filters.contains(&r.filter.as_str()) {
            filters.push(&r.filter);
        }
    }
    let sizes = ordered_unique(records.iter().map(|r| r.width));
    let radii = ordered_unique(records.iter().map(|r| r.radius));
    let find = |f: &str, size: usize, radius: usize| {
        records
            .iter()
            .find(|r| r.filter == f && r.width == size && r.radius == radius)
            .map(|r| r.seconds)
    };

    let mut summary = BenchSummary::default();
    for &f in &filters {
        for &size in &sizes {
            let times: Vec<f64> = radii.iter().filter_map(|&r| find(f, size, r)).collect();
            if times.len() >= 2 {
                let max = times.iter().copied().fold(f64::MIN, f64::max);
                let min = times.iter().copied().fold(f64::MAX, f64::min);
                summary.radius_spread.push(RadiusSpread {
                    filter: f.to_string(),
                    size,
                    ratio: max / min,
                });
            }
        }
        for &radius in &radii {
            for pair in sizes.windows(2) {
                if let (Some(a), Some(b)) = (find(f, pair[0], radius), find(f, pair[1], radius)) {
                    summary.size_growth.push(SizeGrowth {
                        filter: f.to_string(),
                        radius,
                        from: pair[0],
                        to: pair[1],
                        time_ratio: b / a,
                        pixel_ratio: (pair[1] * pair[1]) as f64 / (pair[0] * pair[0]) as f64,
                    });
                }
            }
        }
        if f != FilterVariant::Box.name() {
            for &size in &sizes {
                for &radius in &radii {
                    if let (Some(t), Some(b)) = (find(f, size, radius), find("box", size, radius)) {
                        summary.relative_to_box.push(RelativeCost {
                            filter: f.to_string(),
                            size,
                            radius,
                            ratio: t / b,
                        });
                    }
                }
            }
        }
    }
    summary
}

impl BenchSummary {
    /// Evaluates the radius-independence and linear-growth checks.
    pub fn check(&self, limits: &Thresholds) -> Vec<CheckOutcome> {
        let mut out = Vec::new();
        for s in &self.radius_spread {
            out.push(CheckOutcome {
                description: format!(
                    "{} {}^2: max/min time across radii = {:.3} (limit {})",
                    s.filter, s.size, s.ratio, limits.max_radius_spread
                ),
                passed: s.ratio <= limits.max_radius_spread,
            });
        }
        let (lo, hi) = limits.per_pixel_band;
        for g in &self.size_growth {
            let pp = g.per_pixel();
            out.push(CheckOutcome {
                description: format!(
                    "{} r={} {}^2 -> {}^2: time x{:.3} for pixels x{:.0} (per-pixel {:.3}, band [{lo}, {hi}])",
                    g.filter, g.radius, g.from, g.to, g.time_ratio, g.pixel_ratio, pp
                ),
                passed: (lo..=hi).contains(&pp),
            });
        }
        out
    }
}
