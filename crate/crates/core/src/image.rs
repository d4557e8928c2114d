//! Sample containers: single-channel planes, multi-channel images and volumes.
//!
//! Samples are `f64` and stored row-major (`y * width + x`); volumes are
//! stored x-fastest, then y, then z.

use crate::error::{Error, Result};

/// Single-channel 2D grid of real samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ImagePlane {
    width: usize,
    height: usize,
    samples: Vec<f64>,
}

impl ImagePlane {
    /// Plane of the given size with every sample set to `fill`.
    pub fn new(width: usize, height: usize, fill: f64) -> Result<Self> {
        check_extent(width, height)?;
        if !fill.is_finite() {
            return Err(Error::invalid("fill value must be finite"));
        }
        Ok(Self {
            width,
            height,
            samples: vec![fill; width * height],
        })
    }

    /// Wraps row-major samples; rejects length mismatches and non-finite values.
    pub fn from_samples(width: usize, height: usize, samples: Vec<f64>) -> Result<Self> {
        check_extent(width, height)?;
        if samples.len() != width * height {
            return Err(Error::invalid(format!(
                "expected {} samples for {width}x{height}, got {}",
                width * height,
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("sample {i} is not finite")));
        }
        Ok(Self {
            width,
            height,
            samples,
        })
    }

    /// Builds a plane by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        check_extent(width, height)?;
        let mut samples = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                samples.push(f(x, y));
            }
        }
        Self::from_samples(width, height, samples)
    }

    /// Internal constructor for filter outputs whose samples are known to be valid.
    pub(crate) fn from_raw(width: usize, height: usize, samples: Vec<f64>) -> Self {
        debug_assert_eq!(samples.len(), width * height);
        Self {
            width,
            height,
            samples,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn get(&self, x: usize, y: usize) -> Result<f64> {
        self.index(x, y).map(|i| self.samples[i])
    }

    pub fn set(&mut self, x: usize, y: usize, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::invalid("sample value must be finite"));
        }
        let i = self.index(x, y)?;
        self.samples[i] = value;
        Ok(())
    }

    /// Unchecked-by-contract accessor used on hot paths; panics when out of range.
    #[inline]
    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.samples[y * self.width + x]
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.samples[y * self.width..(y + 1) * self.width]
    }

    pub fn same_shape(&self, other: &ImagePlane) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Smallest and largest sample.
    pub fn range(&self) -> (f64, f64) {
        self.samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> ImagePlane {
        ImagePlane::from_raw(self.width, self.height, self.samples.iter().map(|&v| f(v)).collect())
    }

    pub fn flip_horizontal(&self) -> ImagePlane {
        let mut out = Vec::with_capacity(self.samples.len());
        for y in 0..self.height {
            out.extend(self.row(y).iter().rev());
        }
        ImagePlane::from_raw(self.width, self.height, out)
    }

    pub fn flip_vertical(&self) -> ImagePlane {
        let mut out = Vec::with_capacity(self.samples.len());
        for y in (0..self.height).rev() {
            out.extend_from_slice(self.row(y));
        }
        ImagePlane::from_raw(self.width, self.height, out)
    }

    pub fn transpose(&self) -> ImagePlane {
        let mut out = Vec::with_capacity(self.samples.len());
        for x in 0..self.width {
            for y in 0..self.height {
                out.push(self.at(x, y));
            }
        }
        ImagePlane::from_raw(self.height, self.width, out)
    }

    fn index(&self, x: usize, y: usize) -> Result<usize> {
        if x >= self.width || y >= self.height {
            return Err(Error::Index {
                x,
                y,
                width: self.width,
                height: self.height,
            });
        }
        Ok(y * self.width + x)
    }
}

fn check_extent(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::invalid(format!(
            "plane dimensions must be positive, got {width}x{height}"
        )));
    }
    Ok(())
}

/// Up to four planes of identical size, filtered independently.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiChannelImage {
    channels: Vec<ImagePlane>,
}

impl MultiChannelImage {
    pub const MAX_CHANNELS: usize = 4;

    pub fn new(channels: Vec<ImagePlane>) -> Result<Self> {
        if channels.is_empty() || channels.len() > Self::MAX_CHANNELS {
            return Err(Error::invalid(format!(
                "channel count must be 1..={}, got {}",
                Self::MAX_CHANNELS,
                channels.len()
            )));
        }
        if channels.iter().any(|c| !c.same_shape(&channels[0])) {
            return Err(Error::invalid("all channels must share dimensions"));
        }
        Ok(Self { channels })
    }

    pub fn gray(plane: ImagePlane) -> Self {
        Self {
            channels: vec![plane],
        }
    }

    pub fn width(&self) -> usize {
        self.channels[0].width()
    }

    pub fn height(&self) -> usize {
        self.channels[0].height()
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    pub fn channels(&self) -> &[ImagePlane] {
        &self.channels
    }

    pub fn channel(&self, index: usize) -> Option<&ImagePlane> {
        self.channels.get(index)
    }

    pub fn into_channels(self) -> Vec<ImagePlane> {
        self.channels
    }
}

/// Single-channel 3D grid of real samples, x-fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Volume {
    width: usize,
    height: usize,
    depth: usize,
    samples: Vec<f64>,
}

impl Volume {
    pub fn new(width: usize, height: usize, depth: usize, fill: f64) -> Result<Self> {
        Self::from_samples(width, height, depth, vec![fill; width * height * depth])
    }

    pub fn from_samples(width: usize, height: usize, depth: usize, samples: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || depth == 0 {
            return Err(Error::invalid(format!(
                "volume dimensions must be positive, got {width}x{height}x{depth}"
            )));
        }
        if samples.len() != width * height * depth {
            return Err(Error::invalid(format!(
                "expected {} samples for {width}x{height}x{depth}, got {}",
                width * height * depth,
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("sample {i} is not finite")));
        }
        Ok(Self {
            width,
            height,
            depth,
            samples,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        depth: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let mut samples = Vec::with_capacity(width * height * depth);
        for z in 0..depth {
            for y in 0..height {
                for x in 0..width {
                    samples.push(f(x, y, z));
                }
            }
        }
        Self::from_samples(width, height, depth, samples)
    }

    pub(crate) fn from_raw(width: usize, height: usize, depth: usize, samples: Vec<f64>) -> Self {
        debug_assert_eq!(samples.len(), width * height * depth);
        Self {
            width,
            height,
            depth,
            samples,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.width, self.height, self.depth]
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize, z: usize) -> f64 {
        self.samples[(z * self.height + y) * self.width + x]
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> Result<f64> {
        if x >= self.width || y >= self.height || z >= self.depth {
            return Err(Error::invalid(format!(
                "voxel ({x}, {y}, {z}) out of range for {}x{}x{} volume",
                self.width, self.height, self.depth
            )));
        }
        Ok(self.at(x, y, z))
    }

    pub fn range(&self) -> (f64, f64) {
        self.samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_plane_fills() {
        let p = ImagePlane::new(3, 2, 0.0).unwrap();
        assert_eq!(p.samples(), &[0.0; 6]);
        let p = ImagePlane::new(1, 1, 5.0).unwrap();
        assert_eq!(p.samples(), &[5.0]);
        let p = ImagePlane::new(2, 2, 1.0).unwrap();
        assert_eq!(p.samples(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(ImagePlane::new(0, 3, 0.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(ImagePlane::new(3, 0, 0.0), Err(Error::InvalidArgument(_))));
        assert!(ImagePlane::new(2, 2, f64::NAN).is_err());
    }

    #[test]
    fn get_set() {
        let mut p = ImagePlane::new(2, 2, 3.0).unwrap();
        assert_eq!(p.get(1, 1).unwrap(), 3.0);
        p.set(0, 1, 7.5).unwrap();
        assert_eq!(p.get(0, 1).unwrap(), 7.5);
        assert!(matches!(p.get(2, 0), Err(Error::Index { .. })));
        assert!(p.set(0, 2, 1.0).is_err());

        let p = ImagePlane::from_samples(2, 2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(p.get(1, 1).unwrap(), 3.0);
    }

    #[test]
    fn row_major_addressing() {
        let (w, h) = (7, 5);
        let mut p = ImagePlane::new(w, h, 0.0).unwrap();
        for y in 0..h {
            for x in 0..w {
                p.set(x, y, (y * w + x) as f64).unwrap();
            }
        }
        for (i, &v) in p.samples().iter().enumerate() {
            assert_eq!(v, i as f64);
        }
    }

    #[test]
    fn from_samples_validates() {
        assert!(ImagePlane::from_samples(2, 2, vec![0.0; 3]).is_err());
        assert!(ImagePlane::from_samples(2, 1, vec![0.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn multichannel_invariants() {
        let a = ImagePlane::new(2, 2, 0.0).unwrap();
        let b = ImagePlane::new(3, 2, 0.0).unwrap();
        assert!(MultiChannelImage::new(vec![]).is_err());
        assert!(MultiChannelImage::new(vec![a.clone(), b]).is_err());
        assert!(MultiChannelImage::new(vec![a.clone(); 5]).is_err());
        assert_eq!(MultiChannelImage::new(vec![a; 3]).unwrap().channel_count(), 3);
    }

    #[test]
    fn volume_layout() {
        let v = Volume::from_fn(3, 2, 2, |x, y, z| (x + 10 * y + 100 * z) as f64).unwrap();
        assert_eq!(v.samples()[1], 1.0);
        assert_eq!(v.samples()[3], 10.0);
        assert_eq!(v.samples()[6], 100.0);
        assert_eq!(v.at(2, 1, 1), 112.0);
        assert!(Volume::new(0, 1, 1, 0.0).is_err());
    }

    #[test]
    fn flips_and_transpose() {
        let p = ImagePlane::from_samples(3, 2, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(p.flip_horizontal().samples(), &[3.0, 2.0, 1.0, 6.0, 5.0, 4.0]);
        assert_eq!(p.flip_vertical().samples(), &[4.0, 5.0, 6.0, 1.0, 2.0, 3.0]);
        let t = p.transpose();
        assert_eq!((t.width(), t.height()), (2, 3));
        assert_eq!(t.samples(), &[1.0, 4.0, 2.0, 5.0, 3.0, 6.0]);
    }
}
