//! Separable 1D kernels and the eight one-sided 2D kernels spanned from them.
//!
//! A 2D one-sided kernel is the outer product of an x factor and a y factor,
//! each of which is either the left/lower half of a base kernel, its
//! right/upper half, or the full base kernel. Both halves include the center
//! tap, so every kernel's support contains the center pixel.

use crate::error::{Error, Result};

const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// 1D tap vector over offsets `u_min..=u_max`, with `u_min <= 0 <= u_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableKernel {
    u_min: isize,
    taps: Vec<f64>,
}

impl SeparableKernel {
    /// Kernel with taps for offsets `u_min, u_min + 1, ...`, normalized to sum 1.
    pub fn new(u_min: isize, taps: Vec<f64>) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::invalid("kernel needs at least one tap"));
        }
        let u_max = u_min + taps.len() as isize - 1;
        if u_min > 0 || u_max < 0 {
            return Err(Error::invalid(format!(
                "kernel support [{u_min}, {u_max}] must contain offset 0"
            )));
        }
        if taps.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::invalid("kernel taps must be finite and non-negative"));
        }
        let sum: f64 = taps.iter().sum();
        if sum <= 0.0 {
            return Err(Error::invalid("kernel taps sum to zero; cannot normalize"));
        }
        let taps = taps.into_iter().map(|t| t / sum).collect();
        Ok(Self { u_min, taps })
    }

    /// Uniform taps `1 / (2r + 1)` over `[-r, r]`.
    pub fn box_kernel(radius: usize) -> Result<Self> {
        check_radius(radius)?;
        let r = radius as isize;
        Self::new(-r, vec![1.0; 2 * radius + 1])
    }

    pub fn u_min(&self) -> isize {
        self.u_min
    }

    pub fn u_max(&self) -> isize {
        self.u_min + self.taps.len() as isize - 1
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    /// Tap at offset `u`; zero outside the support.
    pub fn weight(&self, u: isize) -> f64 {
        if u < self.u_min || u > self.u_max() {
            0.0
        } else {
            self.taps[(u - self.u_min) as usize]
        }
    }

    /// Taps for `u <= 0`, renormalized.
    pub fn minus_half(&self) -> Result<Self> {
        let n = (-self.u_min) as usize + 1;
        Self::new(self.u_min, self.taps[..n].to_vec())
            .map_err(|_| Error::invalid("left half of kernel has no weight"))
    }

    /// Taps for `u >= 0`, renormalized.
    pub fn plus_half(&self) -> Result<Self> {
        let start = (-self.u_min) as usize;
        Self::new(0, self.taps[start..].to_vec())
            .map_err(|_| Error::invalid("right half of kernel has no weight"))
    }

    fn is_centered(&self) -> bool {
        self.u_min == -self.u_max()
    }
}

/// Sampled Gaussian `exp(-u^2 / 2 sigma^2)` over `[-r, r]`, normalized.
pub fn gaussian_kernel(radius: usize, sigma: f64) -> Result<SeparableKernel> {
    check_radius(radius)?;
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::invalid(format!("sigma must be positive, got {sigma}")));
    }
    let r = radius as isize;
    let taps = (-r..=r)
        .map(|u| (-((u * u) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    SeparableKernel::new(-r, taps)
}

pub(crate) fn check_radius(radius: usize) -> Result<()> {
    if radius == 0 {
        return Err(Error::invalid("radius must be at least 1"));
    }
    Ok(())
}

/// Which part of the base kernel a 1D factor uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Offsets `[-r, 0]`.
    Minus,
    /// Offsets `[0, r]`.
    Plus,
    /// Offsets `[-r, r]`.
    Full,
}

impl Side {
    /// Inclusive offset range for radius `r`.
    pub fn range(self, r: isize) -> (isize, isize) {
        match self {
            Side::Minus => (-r, 0),
            Side::Plus => (0, r),
            Side::Full => (-r, r),
        }
    }

    pub fn mirrored(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
            Side::Full => Side::Full,
        }
    }
}

/// One of the eight one-sided sub-windows around a pixel.
///
/// Ids 1..=4 are quarter windows, 5..=8 half windows:
///
/// | id | x range    | y range    |
/// |----|------------|------------|
/// | 1  | `[x-r, x]` | `[y, y+r]` |
/// | 2  | `[x, x+r]` | `[y, y+r]` |
/// | 3  | `[x, x+r]` | `[y-r, y]` |
/// | 4  | `[x-r, x]` | `[y-r, y]` |
/// | 5  | `[x-r, x]` | `[y-r, y+r]` |
/// | 6  | `[x, x+r]` | `[y-r, y+r]` |
/// | 7  | `[x-r, x+r]` | `[y, y+r]` |
/// | 8  | `[x-r, x+r]` | `[y-r, y]` |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubWindowId(u8);

impl SubWindowId {
    pub const ALL: [SubWindowId; 8] = [
        SubWindowId(1),
        SubWindowId(2),
        SubWindowId(3),
        SubWindowId(4),
        SubWindowId(5),
        SubWindowId(6),
        SubWindowId(7),
        SubWindowId(8),
    ];

    pub fn new(id: u8) -> Result<Self> {
        if (1..=8).contains(&id) {
            Ok(Self(id))
        } else {
            Err(Error::invalid(format!("sub-window id must be 1..=8, got {id}")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based position in [`SubWindowId::ALL`].
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn sides(self) -> (Side, Side) {
        match self.0 {
            1 => (Side::Minus, Side::Plus),
            2 => (Side::Plus, Side::Plus),
            3 => (Side::Plus, Side::Minus),
            4 => (Side::Minus, Side::Minus),
            5 => (Side::Minus, Side::Full),
            6 => (Side::Plus, Side::Full),
            7 => (Side::Full, Side::Plus),
            _ => (Side::Full, Side::Minus),
        }
    }

    pub fn is_quarter(self) -> bool {
        self.0 <= 4
    }

    /// Offset ranges `((u_lo, u_hi), (v_lo, v_hi))` relative to the center.
    pub fn offsets(self, radius: usize) -> ((isize, isize), (isize, isize)) {
        let r = radius as isize;
        let (sx, sy) = self.sides();
        (sx.range(r), sy.range(r))
    }

    /// Number of pixels covered away from any border.
    pub fn area(self, radius: usize) -> usize {
        let ((u0, u1), (v0, v1)) = self.offsets(radius);
        ((u1 - u0 + 1) * (v1 - v0 + 1)) as usize
    }

    /// Window id after mirroring the image left-right.
    pub fn mirrored_x(self) -> SubWindowId {
        let (sx, sy) = self.sides();
        Self::from_sides(sx.mirrored(), sy)
    }

    /// Window id after mirroring the image top-bottom.
    pub fn mirrored_y(self) -> SubWindowId {
        let (sx, sy) = self.sides();
        Self::from_sides(sx, sy.mirrored())
    }

    fn from_sides(sx: Side, sy: Side) -> SubWindowId {
        *Self::ALL
            .iter()
            .find(|id| id.sides() == (sx, sy))
            .expect("every quarter/half side pair has an id")
    }
}

/// Separable 2D kernel `k(u, v) = x(u) * y(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel2D {
    pub x: SeparableKernel,
    pub y: SeparableKernel,
}

impl Kernel2D {
    pub fn weight(&self, u: isize, v: isize) -> f64 {
        self.x.weight(u) * self.y.weight(v)
    }

    pub fn sum(&self) -> f64 {
        let sx: f64 = self.x.taps().iter().sum();
        let sy: f64 = self.y.taps().iter().sum();
        sx * sy
    }
}

/// The eight one-sided kernels, indexed in [`SubWindowId`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct OneSidedKernelSet {
    radius: usize,
    kernels: [Kernel2D; 8],
}

impl OneSidedKernelSet {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn kernels(&self) -> &[Kernel2D; 8] {
        &self.kernels
    }

    pub fn get(&self, id: SubWindowId) -> &Kernel2D {
        &self.kernels[id.index()]
    }

    /// Box kernel set of radius `r`: weights `(r+1)^-2` and `((r+1)(2r+1))^-1`.
    pub fn boxes(radius: usize) -> Result<Self> {
        make_one_sided_kernels(&SeparableKernel::box_kernel(radius)?)
    }

    pub fn gaussian(radius: usize, sigma: f64) -> Result<Self> {
        make_one_sided_kernels(&gaussian_kernel(radius, sigma)?)
    }
}

/// Spans the eight one-sided kernels from a centered, normalized base kernel.
pub fn make_one_sided_kernels(base: &SeparableKernel) -> Result<OneSidedKernelSet> {
    if !base.is_centered() {
        return Err(Error::invalid(format!(
            "base kernel must be centered, support is [{}, {}]",
            base.u_min(),
            base.u_max()
        )));
    }
    let sum: f64 = base.taps().iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::invalid(format!("base kernel sums to {sum}, expected 1")));
    }
    let minus = base.minus_half()?;
    let plus = base.plus_half()?;
    let factor = |side: Side| match side {
        Side::Minus => minus.clone(),
        Side::Plus => plus.clone(),
        Side::Full => base.clone(),
    };
    let kernels = SubWindowId::ALL.map(|id| {
        let (sx, sy) = id.sides();
        Kernel2D {
            x: factor(sx),
            y: factor(sy),
        }
    });
    Ok(OneSidedKernelSet {
        radius: base.u_max() as usize,
        kernels,
    })
}
