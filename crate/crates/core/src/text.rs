//! Text ingestion and sentinel enforcement.
//!
//! Every text handled by the toolkit ends with a unique sentinel symbol that
//! compares strictly smaller than all other symbols. The sentinel is the byte
//! value 0; inputs that already contain a 0 byte are rejected rather than
//! remapped, so symbol values always equal the raw input bytes.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// Largest supported text length. Suffix positions must fit the width-32
/// value invariant (every stored value < 2^31), and NSV stores up to n+1.
pub const MAX_TEXT_LEN: u64 = (1 << 31) - 2;

/// How `load_text` treats the sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentinelPolicy {
    /// Append a fresh sentinel; the input must not contain byte 0.
    Append,
    /// The input's final byte must already be the sentinel, occurring only there.
    Verify,
}

/// A byte text of length `n >= 1` whose last symbol is the unique sentinel 0.
///
/// Positions are 1-based in all public reporting; `bytes()` exposes the
/// underlying 0-based slice for algorithm internals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    data: Vec<u8>,
    sigma: u16,
}

impl Text {
    /// Builds a text by appending the sentinel to `raw`.
    pub fn from_bytes(raw: &[u8]) -> Result<Self> {
        if let Some(off) = raw.iter().position(|&b| b == 0) {
            return Err(Error::SentinelConflict { offset: off });
        }
        let mut data = Vec::with_capacity(raw.len() + 1);
        data.extend_from_slice(raw);
        data.push(0);
        Self::from_terminated(data)
    }

    /// Builds a text from bytes that already end with the sentinel.
    pub fn from_terminated(data: Vec<u8>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyInput);
        }
        if data.len() as u64 > MAX_TEXT_LEN {
            return Err(Error::TextTooLarge {
                n: data.len() as u64,
                max: MAX_TEXT_LEN,
            });
        }
        let last = data.len() - 1;
        if data[last] != 0 {
            return Err(Error::MissingSentinel);
        }
        if let Some(off) = data[..last].iter().position(|&b| b == 0) {
            return Err(Error::SentinelConflict { offset: off });
        }
        let sigma = distinct_symbols(&data);
        Ok(Text { data, sigma })
    }

    /// Length `n`, including the sentinel.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a text always contains at least the sentinel
    }

    /// Number of distinct symbols present, including the sentinel.
    pub fn sigma(&self) -> u16 {
        self.sigma
    }

    /// Symbol at 1-based position `i`.
    pub fn sym(&self, i: usize) -> u8 {
        self.data[i - 1]
    }

    /// The raw bytes, sentinel included.
    pub fn bytes(&self) -> &[u8] {
        &self.data
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.data
    }
}

fn distinct_symbols(data: &[u8]) -> u16 {
    let mut seen = [false; 256];
    for &b in data {
        seen[b as usize] = true;
    }
    seen.iter().filter(|&&s| s).count() as u16
}

/// Reads a text file under the given sentinel policy.
///
/// The file is read into a buffer of exactly the final length so that peak
/// memory stays at n bytes for the text.
pub fn load_text(path: &Path, policy: SentinelPolicy) -> Result<Text> {
    let mut file = File::open(path)?;
    let len = file.metadata()?.len();
    let extra = match policy {
        SentinelPolicy::Append => 1,
        SentinelPolicy::Verify => 0,
    };
    if len + extra == 0 {
        return Err(Error::EmptyInput);
    }
    if len + extra > MAX_TEXT_LEN {
        return Err(Error::TextTooLarge {
            n: len + extra,
            max: MAX_TEXT_LEN,
        });
    }
    let mut data = vec![0u8; (len + extra) as usize];
    file.read_exact(&mut data[..len as usize])?;
    match policy {
        SentinelPolicy::Append => {
            // The trailing slot is already 0; the body must not contain 0.
            if let Some(off) = data[..len as usize].iter().position(|&b| b == 0) {
                return Err(Error::SentinelConflict { offset: off });
            }
            Text::from_terminated(data)
        }
        SentinelPolicy::Verify => Text::from_terminated(data),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn tmp_file(contents: &[u8]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn banana_append() {
        let f = tmp_file(b"banana");
        let t = load_text(f.path(), SentinelPolicy::Append).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.bytes(), b"banana\x00");
        assert_eq!(t.sym(7), 0);
        assert_eq!(t.sigma(), 4); // $, a, b, n
    }

    #[test]
    fn empty_file_append_is_sentinel_only() {
        let f = tmp_file(b"");
        let t = load_text(f.path(), SentinelPolicy::Append).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.bytes(), b"\x00");
        assert_eq!(t.sigma(), 1);
    }

    #[test]
    fn interior_zero_is_rejected() {
        let f = tmp_file(b"ba\x00na");
        let err = load_text(f.path(), SentinelPolicy::Append).unwrap_err();
        assert!(matches!(err, Error::SentinelConflict { offset: 2 }));
    }

    #[test]
    fn verify_policy() {
        let f = tmp_file(b"banana\x00");
        let t = load_text(f.path(), SentinelPolicy::Verify).unwrap();
        assert_eq!(t.len(), 7);

        let f = tmp_file(b"");
        assert!(matches!(
            load_text(f.path(), SentinelPolicy::Verify).unwrap_err(),
            Error::EmptyInput
        ));

        let f = tmp_file(b"banana");
        assert!(load_text(f.path(), SentinelPolicy::Verify).is_err());

        let f = tmp_file(b"ba\x00na\x00");
        assert!(matches!(
            load_text(f.path(), SentinelPolicy::Verify).unwrap_err(),
            Error::SentinelConflict { offset: 2 }
        ));
    }

    #[test]
    fn sentinel_is_unique_minimum() {
        let t = Text::from_bytes(b"mississippi").unwrap();
        let n = t.len();
        assert_eq!(t.sym(n), 0);
        assert!(t.bytes()[..n - 1].iter().all(|&b| b > 0));
    }
}
