//! `VOL1` container: the ASCII header `VOL1\n<w> <h> <d>\n` followed by
//! `w * h * d` little-endian `f32` samples, x fastest.

use std::fs;
use std::path::Path;

use super::write_atomic;
use crate::error::{Error, Result};
use crate::image::Volume;

pub const VOLUME_MAGIC: &str = "VOL1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VolumeHeader {
    pub width: usize,
    pub height: usize,
    pub depth: usize,
}

impl VolumeHeader {
    pub fn payload_len(&self) -> usize {
        4 * self.width * self.height * self.depth
    }

    /// Parses the two header lines; returns the header and the payload offset.
    pub fn parse(data: &[u8]) -> Result<(Self, usize)> {
        let line_end = |from: usize| {
            data[from..]
                .iter()
                .position(|&b| b == b'\n')
                .map(|i| from + i)
                .ok_or_else(|| Error::parse(data.len(), "unterminated header line"))
        };
        let first = line_end(0)?;
        if &data[..first] != VOLUME_MAGIC.as_bytes() {
            return Err(Error::parse(0, format!("bad magic, expected {VOLUME_MAGIC}")));
        }
        let second = line_end(first + 1)?;
        let dims: Vec<usize> = std::str::from_utf8(&data[first + 1..second])
            .ok()
            .map(|s| s.split(' ').map(|t| t.parse::<usize>()).collect::<std::result::Result<Vec<_>, _>>())
            .and_then(|r| r.ok())
            .filter(|d| d.len() == 3)
            .ok_or_else(|| Error::parse(first + 1, "expected '<width> <height> <depth>'"))?;
        if dims.contains(&0) {
            return Err(Error::parse(first + 1, "volume extents must be positive"));
        }
        Ok((
            Self {
                width: dims[0],
                height: dims[1],
                depth: dims[2],
            },
            second + 1,
        ))
    }
}

pub fn decode_volume(data: &[u8]) -> Result<Volume> {
    let (header, offset) = VolumeHeader::parse(data)?;
    let actual = data.len() - offset;
    if actual != header.payload_len() {
        return Err(Error::parse(
            offset,
            format!("payload size mismatch: expected {} bytes, found {actual}", header.payload_len()),
        ));
    }
    let samples = data[offset..]
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
        .collect();
    Volume::from_samples(header.width, header.height, header.depth, samples)
}

pub fn encode_volume(vol: &Volume) -> Vec<u8> {
    let mut out = format!("{VOLUME_MAGIC}\n{} {} {}\n", vol.width(), vol.height(), vol.depth()).into_bytes();
    out.reserve(4 * vol.len());
    for &s in vol.samples() {
        out.extend_from_slice(&(s as f32).to_le_bytes());
    }
    out
}

pub fn read_volume(path: &Path) -> Result<Volume> {
    decode_volume(&fs::read(path)?)
}

pub fn write_volume(vol: &Volume, path: &Path) -> Result<()> {
    write_atomic(path, &encode_volume(vol))
}
