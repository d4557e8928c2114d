//! Netpbm grayscale (PGM, `P2`/`P5`) and color (PPM, `P3`/`P6`) images.
//!
//! Reading accepts ASCII and binary variants with `#` comments in the header
//! and any maxval in `1..=65535`; binary samples above 255 are two bytes,
//! big-endian. Writing always emits the binary variant without comments,
//! rounding half up and clamping to `[0, maxval]`.

use std::fs;
use std::path::Path;

use super::write_atomic;
use crate::error::{Error, Result};
use crate::image::{ImagePlane, MultiChannelImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitDepth {
    Eight,
    Sixteen,
}

impl BitDepth {
    pub fn maxval(self) -> u16 {
        match self {
            BitDepth::Eight => 255,
            BitDepth::Sixteen => 65535,
        }
    }

    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            8 => Ok(BitDepth::Eight),
            16 => Ok(BitDepth::Sixteen),
            other => Err(Error::invalid(format!("bit depth must be 8 or 16, got {other}"))),
        }
    }

    /// Smallest depth that can hold samples up to `maxval`.
    pub fn for_maxval(maxval: u16) -> Self {
        if maxval > 255 {
            BitDepth::Sixteen
        } else {
            BitDepth::Eight
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodedImage {
    pub image: MultiChannelImage,
    pub maxval: u16,
}

/// Round half up, then clamp into `[0, maxval]`.
pub fn quantize(value: f64, maxval: u16) -> u16 {
    (value + 0.5).floor().clamp(0.0, maxval as f64) as u16
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, format!("expected {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, format!("{what} out of range")))
    }
}

/// Parses a PGM/PPM byte stream.
pub fn decode_pnm(data: &[u8]) -> Result<DecodedImage> {
    if data.len() < 2 || data[0] != b'P' {
        return Err(Error::parse(0, "missing netpbm magic"));
    }
    let (channels, binary) = match data[1] {
        b'2' => (1, false),
        b'5' => (1, true),
        b'3' => (3, false),
        b'6' => (3, true),
        _ => {
            return Err(Error::parse(
                0,
                format!("unsupported magic '{}'", String::from_utf8_lossy(&data[..2])),
            ))
        }
    };
    let mut cur = Cursor { data, pos: 2 };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    cur.skip_space_and_comments();
    let maxval_pos = cur.pos;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::parse(maxval_pos, format!("invalid dimensions {width}x{height}")));
    }
    if !(1..=65535).contains(&maxval) {
        return Err(Error::parse(maxval_pos, format!("maxval {maxval} outside 1..=65535")));
    }
    let n = width * height * channels;
    let mut values = Vec::with_capacity(n);
    if binary {
        // exactly one whitespace byte separates the header from the raster
        if !data.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(Error::parse(cur.pos, "expected whitespace after maxval"));
        }
        let start = cur.pos + 1;
        let bytes_per = if maxval > 255 { 2 } else { 1 };
        let need = n * bytes_per;
        let raster = data.get(start..start + need).ok_or_else(|| {
            Error::parse(
                data.len(),
                format!("truncated raster: expected {need} bytes, found {}", data.len().saturating_sub(start)),
            )
        })?;
        for (i, chunk) in raster.chunks_exact(bytes_per).enumerate() {
            let v = if bytes_per == 2 {
                u16::from_be_bytes([chunk[0], chunk[1]]) as u32
            } else {
                chunk[0] as u32
            };
            if v > maxval {
                return Err(Error::parse(start + i * bytes_per, format!("sample {v} exceeds maxval {maxval}")));
            }
            values.push(v as f64);
        }
    } else {
        for _ in 0..n {
            let pos = cur.pos;
            let v = cur
                .number("sample")
                .map_err(|_| Error::parse(pos, format!("expected {n} samples, found {}", values.len())))?;
            if v > maxval {
                return Err(Error::parse(pos, format!("sample {v} exceeds maxval {maxval}")));
            }
            values.push(v as f64);
        }
    }
    let planes = (0..channels)
        .map(|c| ImagePlane::from_samples(width, height, values.iter().skip(c).step_by(channels).copied().collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecodedImage {
        image: MultiChannelImage::new(planes)?,
        maxval: maxval as u16,
    })
}

/// Encodes one channel as `P5` or three channels as `P6`.
pub fn encode_pnm(img: &MultiChannelImage, depth: BitDepth) -> Result<Vec<u8>> {
    let magic = match img.channel_count() {
        1 => "P5",
        3 => "P6",
        n => return Err(Error::invalid(format!("netpbm output needs 1 or 3 channels, got {n}"))),
    };
    let maxval = depth.maxval();
    let mut out = format!("{magic}\n{} {}\n{maxval}\n", img.width(), img.height()).into_bytes();
    let channels = img.channels();
    for i in 0..img.width() * img.height() {
        for c in channels {
            let q = quantize(c.samples()[i], maxval);
            match depth {
                BitDepth::Eight => out.push(q as u8),
                BitDepth::Sixteen => out.extend_from_slice(&q.to_be_bytes()),
            }
        }
    }
    Ok(out)
}

pub fn read_pnm(path: &Path) -> Result<DecodedImage> {
    decode_pnm(&fs::read(path)?)
}

pub fn read_image(path: &Path) -> Result<MultiChannelImage> {
    read_pnm(path).map(|d| d.image)
}

pub fn write_image(img: &MultiChannelImage, path: &Path, depth: BitDepth) -> Result<()> {
    write_atomic(path, &encode_pnm(img, depth)?)
}
