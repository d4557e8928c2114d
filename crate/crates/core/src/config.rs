use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::filters2d;
use crate::image::ImagePlane;
use crate::kernel::OneSidedKernelSet;

pub const DEFAULT_RADIUS: usize = 2;
/// PSNR between input and output flattens out after about ten iterations.
pub const DEFAULT_ITERATIONS: usize = 10;
pub const DEFAULT_SIGMA: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterVariant {
    Box,
    OsbfExact,
    OsbfFast,
    /// One-sided filter spanned from a Gaussian base kernel.
    OneSidedGeneric,
    Gaussian,
}

impl FilterVariant {
    pub const ALL: [FilterVariant; 5] = [
        FilterVariant::Box,
        FilterVariant::OsbfExact,
        FilterVariant::OsbfFast,
        FilterVariant::OneSidedGeneric,
        FilterVariant::Gaussian,
    ];

    /// Short name used on the command line and in benchmark output.
    pub fn name(self) -> &'static str {
        match self {
            FilterVariant::Box => "box",
            FilterVariant::OsbfExact => "osbf",
            FilterVariant::OsbfFast => "fast-osbf",
            FilterVariant::OneSidedGeneric => "os-gauss",
            FilterVariant::Gaussian => "gauss",
        }
    }

    pub fn uses_sigma(self) -> bool {
        matches!(self, FilterVariant::OneSidedGeneric | FilterVariant::Gaussian)
    }
}

impl fmt::Display for FilterVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" => Ok(FilterVariant::Box),
            "osbf" | "osbf-exact" => Ok(FilterVariant::OsbfExact),
            "fast-osbf" | "osbf-fast" => Ok(FilterVariant::OsbfFast),
            "os-gauss" | "one-sided-generic" => Ok(FilterVariant::OneSidedGeneric),
            "gauss" | "gaussian" => Ok(FilterVariant::Gaussian),
            other => Err(Error::invalid(format!(
                "unknown filter '{other}' (expected box, osbf, fast-osbf, os-gauss or gauss)"
            ))),
        }
    }
}

/// Every knob the filters take.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterConfig {
    pub radius: usize,
    pub iterations: usize,
    pub variant: FilterVariant,
    /// Gaussian standard deviation in pixels; ignored by box variants.
    pub sigma: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            radius: DEFAULT_RADIUS,
            iterations: DEFAULT_ITERATIONS,
            variant: FilterVariant::OsbfExact,
            sigma: DEFAULT_SIGMA,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radius == 0 {
            return Err(Error::invalid("radius must be at least 1"));
        }
        if self.variant.uses_sigma() && !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::invalid(format!("sigma must be positive, got {}", self.sigma)));
        }
        Ok(())
    }

    pub fn apply(&self, plane: &ImagePlane) -> Result<ImagePlane> {
        self.validate()?;
        let (r, n) = (self.radius, self.iterations);
        match self.variant {
            FilterVariant::Box => filters2d::box_filter(plane, r, n),
            FilterVariant::OsbfExact => filters2d::osbf(plane, r, n),
            FilterVariant::OsbfFast => filters2d::fast_osbf(plane, r, n),
            FilterVariant::OneSidedGeneric => {
                let set = OneSidedKernelSet::gaussian(r, self.sigma)?;
                Ok(filters2d::one_sided_filter(plane, &set, n))
            }
            FilterVariant::Gaussian => filters2d::gaussian_filter(plane, r, self.sigma, n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in FilterVariant::ALL {
            assert_eq!(v.name().parse::<FilterVariant>().unwrap(), v);
        }
        assert!("median".parse::<FilterVariant>().is_err());
    }

    #[test]
    fn defaults() {
        let c = FilterConfig::default();
        assert_eq!((c.radius, c.iterations, c.sigma), (2, 10, 3.0));
    }

    #[test]
    fn validation() {
        let p = ImagePlane::new(4, 4, 0.0).unwrap();
        let bad_r = FilterConfig {
            radius: 0,
            ..Default::default()
        };
        assert!(bad_r.apply(&p).is_err());
        let bad_sigma = FilterConfig {
            variant: FilterVariant::Gaussian,
            sigma: -1.0,
            ..Default::default()
        };
        assert!(bad_sigma.apply(&p).is_err());
        let box_ignores_sigma = FilterConfig {
            variant: FilterVariant::Box,
            sigma: -1.0,
            ..Default::default()
        };
        assert!(box_ignores_sigma.apply(&p).is_ok());
    }
}
