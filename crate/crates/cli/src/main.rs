//! `osbf` command-line tool: smoothing, comparison, synthetic data, kernel
//! spectra and timing.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 failed
//! bench check.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use osbf::bench::{self, BenchPlan, BenchRecord, Thresholds};
use osbf::filters2d::{box_kernel_spectrum, filter_multichannel, DEFAULT_SPECTRUM_GRID};
use osbf::filters3d::{box_filter_3d, osbf_3d};
use osbf::io::{self, BitDepth};
use osbf::metrics::{self, DEFAULT_PEAK};
use osbf::synth::{self, NoiseSpec, DEFAULT_NOISE_SIGMA};
use osbf::{FilterConfig, FilterVariant, ImagePlane, MultiChannelImage, SubWindowId, Volume};

#[derive(Parser, Debug)]
#[command(name = "osbf", version, about = "Edge and corner preserving smoothing with one-sided box filters")]
struct Cli {
    /// Worker threads for filtering (default: all cores). Results do not depend on it.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Filter a PGM/PPM image (or a VOL1 volume) and write the result.
    Smooth(SmoothArgs),
    /// Print RMSE, PSNR and SSIM between two images.
    Compare(CompareArgs),
    /// Write a synthetic test image or volume.
    Gen(GenArgs),
    /// Write the magnitude spectra of the eight box kernels minus the identity.
    Spectrum(SpectrumArgs),
    /// Time filters over image sizes and radii and write a CSV report.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct SmoothArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    output: PathBuf,
    /// box, osbf, fast-osbf, os-gauss or gauss (volumes: box or osbf).
    #[arg(long, default_value = "osbf")]
    filter: FilterVariant,
    #[arg(long, default_value_t = osbf::config::DEFAULT_RADIUS)]
    radius: usize,
    #[arg(long, default_value_t = osbf::config::DEFAULT_ITERATIONS)]
    iters: usize,
    /// Gaussian sigma for os-gauss and gauss.
    #[arg(long, default_value_t = osbf::config::DEFAULT_SIGMA)]
    sigma: f64,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long, value_name = "PATH")]
    a: PathBuf,
    #[arg(long, value_name = "PATH")]
    b: PathBuf,
    #[arg(long, default_value_t = DEFAULT_PEAK)]
    peak: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Pattern {
    Checkerboard,
    Step,
    Impulse,
    NoisyCheckerboard,
    StepVolume,
    Phantom,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    X,
    Y,
    Z,
}

#[derive(Args, Debug)]
struct GenArgs {
    pattern: Pattern,
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    #[arg(long, default_value_t = 256)]
    width: usize,
    #[arg(long, default_value_t = 256)]
    height: usize,
    /// Volume depth (step-volume only).
    #[arg(long, default_value_t = 64)]
    depth: usize,
    /// Checkerboard cell side.
    #[arg(long, default_value_t = 32)]
    cell: usize,
    /// First coordinate on the high side of a step (default: middle).
    #[arg(long)]
    edge: Option<usize>,
    /// Step direction of step-volume.
    #[arg(long, value_enum, default_value_t = Axis::X)]
    axis: Axis,
    #[arg(long, default_value_t = 64.0)]
    lo: f64,
    #[arg(long, default_value_t = 192.0)]
    hi: f64,
    /// Noise standard deviation on the 0-255 scale.
    #[arg(long, default_value_t = DEFAULT_NOISE_SIGMA)]
    sigma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample depth of image output, 8 or 16.
    #[arg(long, default_value_t = 8)]
    bits: u32,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long, default_value_t = 1)]
    radius: usize,
    #[arg(long, default_value_t = DEFAULT_SPECTRUM_GRID)]
    grid: usize,
    #[arg(long, value_name = "DIR")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "box,osbf,fast-osbf")]
    filters: Vec<FilterVariant>,
    #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048")]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2,8,32")]
    radii: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    iters: usize,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long, default_value_t = 1)]
    warmup: usize,
    /// Shortest timed batch; faster calls are repeated within one sample.
    #[arg(long, default_value_t = 20, value_name = "MS")]
    min_batch_ms: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Exit with status 3 unless the radius-independence and linear-growth checks pass.
    #[arg(long)]
    check: bool,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: impl fmt::Display) -> Self {
        Self {
            code: 2,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<osbf::Error> for Failure {
    fn from(err: osbf::Error) -> Self {
        let code = match err {
            osbf::Error::Io(_) | osbf::Error::Parse { .. } | osbf::Error::Csv(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Attaches the offending path to I/O and parse errors.
fn at(path: &Path) -> impl FnOnce(osbf::Error) -> Failure + '_ {
    move |err| {
        let mut f = Failure::from(err);
        if f.code == 2 {
            f.message = format!("{}: {}", path.display(), f.message);
        }
        f
    }
}

fn smooth(args: &SmoothArgs) -> CmdResult {
    let config = FilterConfig {
        radius: args.radius,
        iterations: args.iters,
        variant: args.filter,
        sigma: args.sigma,
    };
    config.validate()?;
    let data = fs::read(&args.input).map_err(|e| Failure::io(&args.input, e))?;

    if data.starts_with(io::VOLUME_MAGIC.as_bytes()) {
        let vol = io::decode_volume(&data).map_err(at(&args.input))?;
        let filter: fn(&Volume, usize, usize) -> osbf::Result<Volume> = match args.filter {
            FilterVariant::Box => box_filter_3d,
            FilterVariant::OsbfExact => osbf_3d,
            other => return Err(Failure::usage(format!("filter {other} is not available for volumes; use box or osbf"))),
        };
        let start = Instant::now();
        let out = filter(&vol, args.radius, args.iters)?;
        let secs = start.elapsed().as_secs_f64();
        io::write_volume(&out, &args.output).map_err(at(&args.output))?;
        let [w, h, d] = vol.dims();
        println!("{} {w}x{h}x{d} r={} iters={}: {secs:.6} s", args.filter, args.radius, args.iters);
        return Ok(());
    }

    let decoded = io::decode_pnm(&data).map_err(at(&args.input))?;
    let start = Instant::now();
    let out = filter_multichannel(&decoded.image, &config)?;
    let secs = start.elapsed().as_secs_f64();
    io::write_image(&out, &args.output, BitDepth::for_maxval(decoded.maxval)).map_err(at(&args.output))?;
    println!(
        "{} {}x{} ({} ch) r={} iters={}: {secs:.6} s",
        args.filter,
        out.width(),
        out.height(),
        out.channel_count(),
        args.radius,
        args.iters
    );
    Ok(())
}

fn format_ssim(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |s| format!("{s:.6}"))
}

fn compare(args: &CompareArgs) -> CmdResult {
    let a = io::read_image(&args.a).map_err(at(&args.a))?;
    let b = io::read_image(&args.b).map_err(at(&args.b))?;
    if (a.width(), a.height(), a.channel_count()) != (b.width(), b.height(), b.channel_count()) {
        return Err(Failure::usage(format!(
            "images differ in shape: {}x{}x{} vs {}x{}x{}",
            a.width(),
            a.height(),
            a.channel_count(),
            b.width(),
            b.height(),
            b.channel_count()
        )));
    }
    let reports = a
        .channels()
        .iter()
        .zip(b.channels())
        .map(|(x, y)| metrics::compare(x, y, args.peak))
        .collect::<osbf::Result<Vec<_>>>()?;
    for (c, r) in reports.iter().enumerate() {
        println!("channel {c}: rmse={:.6} psnr={:.4} ssim={}", r.rmse, r.psnr, format_ssim(r.ssim));
    }
    let n = reports.len() as f64;
    let mean_rmse = reports.iter().map(|r| r.rmse).sum::<f64>() / n;
    let mean_psnr = reports.iter().map(|r| r.psnr).sum::<f64>() / n;
    let mean_ssim = reports
        .iter()
        .map(|r| r.ssim)
        .sum::<Option<f64>>()
        .map(|s| s / n);
    println!("mean: rmse={mean_rmse:.6} psnr={mean_psnr:.4} ssim={}", format_ssim(mean_ssim));
    Ok(())
}

fn gen(args: &GenArgs) -> CmdResult {
    let noise = NoiseSpec {
        sigma: args.sigma,
        seed: args.seed,
    };
    if args.pattern == Pattern::StepVolume {
        let (axis, extent) = match args.axis {
            Axis::X => (0, args.width),
            Axis::Y => (1, args.height),
            Axis::Z => (2, args.depth),
        };
        let edge = args.edge.unwrap_or(extent / 2);
        let vol = synth::step_volume_along(args.width, args.height, args.depth, axis, edge, args.lo, args.hi)?;
        return io::write_volume(&vol, &args.out).map_err(at(&args.out));
    }

    let depth = BitDepth::from_bits(args.bits)?;
    let (w, h) = (args.width, args.height);
    let plane: ImagePlane = match args.pattern {
        Pattern::Checkerboard => synth::checkerboard(w, h, args.cell, args.lo, args.hi)?,
        Pattern::NoisyCheckerboard => synth::noisy_checkerboard(w, h, args.cell, args.lo, args.hi, &noise)?,
        Pattern::Step => synth::step(w, h, args.edge.unwrap_or(w / 2), args.lo, args.hi)?,
        Pattern::Impulse => synth::impulse(w, h, w / 2, h / 2, args.hi)?,
        Pattern::Phantom => synth::phantom(w, h, args.seed)?,
        Pattern::StepVolume => unreachable!("handled above"),
    };
    io::write_image(&MultiChannelImage::gray(plane), &args.out, depth).map_err(at(&args.out))
}

fn spectrum(args: &SpectrumArgs) -> CmdResult {
    fs::create_dir_all(&args.out_dir).map_err(|e| Failure::io(&args.out_dir, e))?;
    for id in SubWindowId::ALL {
        let spec = box_kernel_spectrum(id.get(), args.radius, args.grid)?;
        let img = MultiChannelImage::gray(spec.map(|v| v * 255.0));
        let path = args.out_dir.join(format!("k{}.pgm", id.get()));
        io::write_image(&img, &path, BitDepth::Eight).map_err(at(&path))?;
    }
    println!(
        "wrote k1.pgm..k8.pgm (r={}, {}x{}) to {}",
        args.radius,
        args.grid,
        args.grid,
        args.out_dir.display()
    );
    Ok(())
}

fn bench(args: &BenchArgs) -> CmdResult {
    let plan = BenchPlan {
        filters: args.filters.clone(),
        sizes: args.sizes.clone(),
        radii: args.radii.clone(),
        iterations: args.iters,
        repeats: args.repeats,
        warmup: args.warmup,
        min_batch: Duration::from_millis(args.min_batch_ms),
        seed: args.seed,
    };
    let records = bench::run(&plan, |r: &BenchRecord| {
        println!("{:<10} {:>5}^2 r={:<3} {:.4e} s", r.filter, r.width, r.radius, r.seconds);
    })?;
    io::write_csv(&records, &args.out).map_err(at(&args.out))?;

    let summary = bench::summarize(&records);
    println!("radius independence (max/min time across radii):");
    for s in &summary.radius_spread {
        println!("  {:<10} {:>5}^2  {:.3}", s.filter, s.size, s.ratio);
    }
    println!("size growth (time ratio per pixel-count ratio):");
    for g in &summary.size_growth {
        println!(
            "  {:<10} r={:<3} {:>5}^2 -> {:>5}^2  x{:.3} time for x{:.0} pixels",
            g.filter, g.radius, g.from, g.to, g.time_ratio, g.pixel_ratio
        );
    }
    println!("cost relative to box filter:");
    for c in &summary.relative_to_box {
        println!("  {:<10} {:>5}^2 r={:<3} x{:.2}", c.filter, c.size, c.radius, c.ratio);
    }
    let exact = FilterVariant::OsbfExact.name();
    let fast = FilterVariant::OsbfFast.name();
    let fast_vs_exact: Vec<f64> = records
        .iter()
        .filter(|r| r.filter == fast)
        .filter_map(|f| {
            records
                .iter()
                .find(|e| e.filter == exact && e.width == f.width && e.radius == f.radius)
                .map(|e| f.seconds / e.seconds)
        })
        .collect();
    if !fast_vs_exact.is_empty() {
        let mean = fast_vs_exact.iter().sum::<f64>() / fast_vs_exact.len() as f64;
        println!("fast-osbf / osbf time: mean x{mean:.2} over {} cases", fast_vs_exact.len());
    }

    if args.check {
        let outcomes = summary.check(&Thresholds::default());
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        for o in &outcomes {
            println!("{} {}", if o.passed { "PASS" } else { "FAIL" }, o.description);
        }
        if failed > 0 {
            return Err(Failure {
                code: 3,
                message: format!("{failed} of {} bench checks failed", outcomes.len()),
            });
        }
    }
    Ok(())
}

fn dispatch(command: &Command) -> CmdResult {
    match command {
        Command::Smooth(a) => smooth(a),
        Command::Compare(a) => compare(a),
        Command::Gen(a) => gen(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.threads {
        Some(0) => Err(Failure::usage("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(Failure::usage(format!("cannot start {n} threads: {e}"))),
        },
        None => dispatch(&cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
