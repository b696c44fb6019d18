//! Integer arrays with a fixed on-disk format.
//!
//! All integer arrays produced by the toolkit (SA, ISA, NSV, LF, lambda,
//! lambda_SA) serialize to the same container:
//!
//! ```text
//! offset  size  field
//! 0       8     magic "LYNARR01"
//! 8       1     width in bits (32 or 64)
//! 9       7     reserved, must be zero
//! 16      8     length n, little endian
//! 24      n*w   n little-endian values of the stated width
//! ```
//!
//! Width 32 is the default and is valid only while every stored value is
//! below 2^31. Stored positions are 1-based.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const ARRAY_MAGIC: &[u8; 8] = b"LYNARR01";

/// Storage width of an [`IntArray`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Width {
    W32,
    W64,
}

impl Width {
    pub fn bits(self) -> u8 {
        match self {
            Width::W32 => 32,
            Width::W64 => 64,
        }
    }
}

/// A sequence of non-negative integers stored at 32 or 64 bits per value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntArray {
    W32(Vec<u32>),
    W64(Vec<u64>),
}

impl IntArray {
    pub fn from_u32(values: Vec<u32>) -> Self {
        IntArray::W32(values)
    }

    pub fn from_u64(values: Vec<u64>) -> Self {
        IntArray::W64(values)
    }

    /// Re-encodes `values` at the requested width. Widening is lossless;
    /// the width-32 value bound is checked at write time.
    pub fn from_u32_at(values: Vec<u32>, width: Width) -> Self {
        match width {
            Width::W32 => IntArray::W32(values),
            Width::W64 => IntArray::W64(values.into_iter().map(u64::from).collect()),
        }
    }

    pub fn width(&self) -> Width {
        match self {
            IntArray::W32(_) => Width::W32,
            IntArray::W64(_) => Width::W64,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            IntArray::W32(v) => v.len(),
            IntArray::W64(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Value at 0-based index `i`.
    pub fn get(&self, i: usize) -> u64 {
        match self {
            IntArray::W32(v) => v[i] as u64,
            IntArray::W64(v) => v[i],
        }
    }

    pub fn iter_u64(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match self {
            IntArray::W32(v) => Box::new(v.iter().map(|&x| x as u64)),
            IntArray::W64(v) => Box::new(v.iter().copied()),
        }
    }

    /// Borrows the values as `u32`s when the array is stored at width 32.
    pub fn as_u32(&self) -> Option<&[u32]> {
        match self {
            IntArray::W32(v) => Some(v),
            IntArray::W64(_) => None,
        }
    }

    /// Converts to a `u32` vector, failing on values that do not fit.
    pub fn to_u32_vec(&self) -> Result<Vec<u32>> {
        match self {
            IntArray::W32(v) => Ok(v.clone()),
            IntArray::W64(v) => v
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| Error::WidthOverflow { value: x }))
                .collect(),
        }
    }
}

/// Writes `arr` at `path` in the binary container format.
pub fn write_array(path: &Path, arr: &IntArray) -> Result<()> {
    if arr.is_empty() {
        return Err(Error::EmptyArray);
    }
    if let IntArray::W32(values) = arr {
        if let Some(&v) = values.iter().find(|&&v| v >= 1 << 31) {
            return Err(Error::WidthOverflow { value: v as u64 });
        }
    }
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(ARRAY_MAGIC)?;
    w.write_all(&[arr.width().bits()])?;
    w.write_all(&[0u8; 7])?;
    w.write_all(&(arr.len() as u64).to_le_bytes())?;
    match arr {
        IntArray::W32(values) => {
            for &v in values {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        IntArray::W64(values) => {
            for &v in values {
                w.write_all(&v.to_le_bytes())?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads an array previously written by [`write_array`].
pub fn read_array(path: &Path) -> Result<IntArray> {
    let malformed = |reason: &str| Error::MalformedHeader {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    let mut r = BufReader::new(File::open(path)?);
    let mut header = [0u8; 24];
    r.read_exact(&mut header)
        .map_err(|_| malformed("file shorter than header"))?;
    if &header[0..8] != ARRAY_MAGIC {
        return Err(malformed("bad magic"));
    }
    let width = match header[8] {
        32 => Width::W32,
        64 => Width::W64,
        _ => return Err(malformed("width must be 32 or 64")),
    };
    if header[9..16].iter().any(|&b| b != 0) {
        return Err(malformed("reserved bytes must be zero"));
    }
    let n = u64::from_le_bytes(header[16..24].try_into().unwrap());
    if n == 0 {
        return Err(malformed("arrays have length >= 1"));
    }
    let n = usize::try_from(n).map_err(|_| malformed("length exceeds address space"))?;
    let arr = match width {
        Width::W32 => {
            let mut raw = vec![0u8; n * 4];
            r.read_exact(&mut raw)
                .map_err(|_| malformed("truncated value section"))?;
            let mut values = Vec::with_capacity(n);
            for chunk in raw.chunks_exact(4) {
                values.push(u32::from_le_bytes(chunk.try_into().unwrap()));
            }
            IntArray::W32(values)
        }
        Width::W64 => {
            let mut raw = vec![0u8; n * 8];
            r.read_exact(&mut raw)
                .map_err(|_| malformed("truncated value section"))?;
            let mut values = Vec::with_capacity(n);
            for chunk in raw.chunks_exact(8) {
                values.push(u64::from_le_bytes(chunk.try_into().unwrap()));
            }
            IntArray::W64(values)
        }
    };
    let mut probe = [0u8; 1];
    if r.read(&mut probe)? != 0 {
        return Err(malformed("trailing bytes after value section"));
    }
    Ok(arr)
}
