//! Lyndon array construction during Burrows-Wheeler inversion, plus the
//! definitional quadratic oracle and the SA-permuted variant.
//!
//! The BWT route decodes the text right to left. After decoding `T[i]` the
//! walk position advances to the row of suffix `T[i..]`; rows of previously
//! visited suffixes that rank above it are popped, and the step distance to
//! the surviving top is exactly the length of the longest Lyndon word at
//! `i`. A materialized bottom entry `(-1, 0)` stands for the sentinel
//! suffix, which ranks below every row.

use crate::bwt::{BwtString, LfArray, LfWalk};
use crate::error::{Error, Result};
use crate::suffix::SuffixArray;
use crate::text::Text;

/// Per-position length of the longest Lyndon word starting there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LyndonArray {
    lam: Vec<u32>,
}

impl LyndonArray {
    /// Wraps precomputed values. The caller vouches that they form a Lyndon
    /// array; the construction routes and the oracle are the validated ways
    /// to obtain one.
    pub fn from_values(lam: Vec<u32>) -> Self {
        LyndonArray { lam }
    }

    pub fn len(&self) -> usize {
        self.lam.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lam.is_empty()
    }

    /// `lambda[i]` for a 1-based position.
    pub fn at(&self, i: usize) -> u32 {
        self.lam[i - 1]
    }

    pub fn values(&self) -> &[u32] {
        &self.lam
    }

    pub fn into_values(self) -> Vec<u32> {
        self.lam
    }
}

/// Instrumentation for one Lyndon-during-inversion run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StackStats {
    /// entries pushed inside the loop (always n - 1)
    pub pushes: u64,
    /// entries popped inside the loop
    pub pops: u64,
    /// maximum simultaneous depth, bottom sentinel excluded
    pub high_water: usize,
    /// bytes of one stack entry, for space reports
    pub entry_bytes: usize,
}

impl StackStats {
    /// Total stack operations (pushes + pops), bounded by 2n.
    pub fn total_ops(&self) -> u64 {
        self.pushes + self.pops
    }

    pub fn high_water_bytes(&self) -> usize {
        self.high_water * self.entry_bytes
    }
}

/// Row/step pair; `pos` is widened so the bottom sentinel can sit at -1.
#[derive(Debug, Clone, Copy)]
struct PairEntry {
    pos: i64,
    step: u64,
}

struct PairStack {
    entries: Vec<PairEntry>,
    stats: StackStats,
}

impl PairStack {
    fn new() -> Self {
        PairStack {
            entries: vec![PairEntry { pos: -1, step: 0 }],
            stats: StackStats {
                entry_bytes: std::mem::size_of::<PairEntry>(),
                ..StackStats::default()
            },
        }
    }

    #[inline]
    fn top(&self) -> PairEntry {
        *self.entries.last().expect("bottom sentinel never popped")
    }

    #[inline]
    fn pop_larger_than(&mut self, pos: i64) {
        while self.top().pos > pos {
            self.entries.pop();
            self.stats.pops += 1;
        }
    }

    #[inline]
    fn push(&mut self, pos: i64, step: u64) {
        self.entries.push(PairEntry { pos, step });
        self.stats.pushes += 1;
        self.stats.high_water = self.stats.high_water.max(self.entries.len() - 1);
    }
}

fn run_bwt_lyndon(
    l: &BwtString,
    lf: &LfArray,
    lam: &mut [u32],
    mut text_out: Option<&mut [u8]>,
) -> Result<StackStats> {
    let n = l.len();
    if lf.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: lf.len(),
        });
    }
    debug_assert_eq!(lam.len(), n);
    lam[n - 1] = 1;
    if let Some(t) = text_out.as_deref_mut() {
        t[n - 1] = 0;
    }
    let mut stack = PairStack::new();
    let mut walk = LfWalk::new(lf);
    for step in 1..n as u64 {
        let i = n - step as usize; // 1-based text position being decoded
        if let Some(t) = text_out.as_deref_mut() {
            t[i - 1] = l.sym(walk.pos() as usize);
        }
        // advance to the row of suffix T[i..]; stack entries above that row
        // are suffixes lexicographically larger than it
        walk.step()?;
        let pos = walk.pos() as i64;
        stack.pop_larger_than(pos);
        lam[i - 1] = (step - stack.top().step) as u32;
        stack.push(pos, step);
    }
    walk.finish()?;
    Ok(stack.stats)
}

/// Decodes the text and computes its Lyndon array in one LF walk.
pub fn bwt_lyndon(l: &BwtString, lf: &LfArray) -> Result<(Text, LyndonArray)> {
    let (t, lam, _) = bwt_lyndon_with_stats(l, lf)?;
    Ok((t, lam))
}

/// [`bwt_lyndon`] with stack instrumentation.
pub fn bwt_lyndon_with_stats(
    l: &BwtString,
    lf: &LfArray,
) -> Result<(Text, LyndonArray, StackStats)> {
    let n = l.len();
    let mut lam = vec![0u32; n];
    let mut text = vec![0u8; n];
    let stats = run_bwt_lyndon(l, lf, &mut lam, Some(&mut text))?;
    Ok((Text::from_terminated(text)?, LyndonArray { lam }, stats))
}

/// Lambda-only variant that writes into caller-provided storage (typically
/// the buffer that held SA) and skips the decoded-text allocation.
pub fn bwt_lyndon_into(
    l: &BwtString,
    lf: &LfArray,
    mut storage: Vec<u32>,
) -> Result<(LyndonArray, StackStats)> {
    if storage.len() != l.len() {
        return Err(Error::LengthMismatch {
            left: storage.len(),
            right: l.len(),
        });
    }
    let stats = run_bwt_lyndon(l, lf, &mut storage, None)?;
    Ok((LyndonArray { lam: storage }, stats))
}

/// Maximum simultaneous stack depth of the run, bottom sentinel excluded.
pub fn stack_high_water(l: &BwtString, lf: &LfArray) -> Result<usize> {
    let mut lam = vec![0u32; l.len()];
    let stats = run_bwt_lyndon(l, lf, &mut lam, None)?;
    Ok(stats.high_water)
}

/// Number of interleaved LF cursors used by [`bwt_lyndon_with_sa`].
const CURSORS: usize = 16;

/// Lambda construction for the text-to-lambda pipeline, which still holds
/// the suffix array: the LF walk is split into [`CURSORS`] independent
/// chases entered at rows looked up from SA, so the dependent cache misses
/// of the walk overlap. The pos sequence, the stack pass, and the output
/// are identical to [`bwt_lyndon_into`]; `sa` is consumed and its buffer
/// becomes the lambda storage.
pub fn bwt_lyndon_with_sa(
    l: &BwtString,
    lf: &LfArray,
    sa: SuffixArray,
) -> Result<(LyndonArray, StackStats)> {
    let n = l.len();
    if lf.len() != n || sa.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: lf.len().max(sa.len()),
        });
    }
    let mut buf = sa.into_values();
    if n == 1 {
        buf[0] = 1;
        return Ok((
            LyndonArray { lam: buf },
            StackStats {
                entry_bytes: std::mem::size_of::<PairEntry>(),
                ..StackStats::default()
            },
        ));
    }

    // Chase c covers steps (c*chunk, (c+1)*chunk], the last one also takes
    // the remainder. Its entry is the walk position before its first step,
    // i.e. the row of suffix n - c*chunk, read off the suffix array.
    let total = n - 1;
    let k = CURSORS.min(total);
    let chunk = total / k;
    let mut entry = vec![0u32; k];
    for (r0, &j) in buf.iter().enumerate() {
        if j == 0 || j as usize > n {
            return Err(Error::PermutationViolation {
                context: "suffix array",
                len: n,
            });
        }
        let off = n - j as usize;
        if off.is_multiple_of(chunk) {
            let c = off / chunk;
            if c < k {
                entry[c] = (r0 + 1) as u32;
            }
        }
    }
    // entry[0] is the row of the sentinel suffix; the walk starts there
    if entry.contains(&0) || entry[0] != 1 {
        return Err(Error::PermutationViolation {
            context: "suffix array",
            len: n,
        });
    }

    // Phase 1: fill buf[i-1] with the row of suffix i (= ISA[i]) for
    // i = 1..n-1. Uniform rounds first, then the last chase drains its
    // remainder serially.
    let lf_vals = lf.values();
    let mut pos = entry.clone();
    let advance = |pos: &mut u32, s: usize, buf: &mut [u32]| -> Result<()> {
        let next = lf_vals[(*pos - 1) as usize];
        if next == 0 || next as usize > n {
            return Err(Error::PermutationViolation {
                context: "LF array",
                len: n,
            });
        }
        *pos = next;
        buf[n - s - 1] = next;
        Ok(())
    };
    for r in 0..chunk {
        for (c, p) in pos.iter_mut().enumerate() {
            advance(p, c * chunk + r + 1, &mut buf)?;
        }
    }
    for s in k * chunk + 1..=total {
        let p = &mut pos[k - 1];
        advance(p, s, &mut buf)?;
    }
    // Each chase must hand off exactly where the next one entered.
    for c in 0..k - 1 {
        if pos[c] != entry[c + 1] {
            return Err(Error::NonTerminating {
                row: pos[c] as usize,
            });
        }
    }

    // Phase 2: the sequential stack pass over the pos sequence, overwriting
    // each slot with lambda. The visited marks double as the distinctness
    // guard of the walk.
    let mut visited = vec![0u64; n.div_ceil(64)];
    visited[0] = 1; // row 1, consumed by the first step of chase 0
    let mut stack = PairStack::new();
    for step in 1..=total as u64 {
        let i = n - step as usize;
        let row = buf[i - 1];
        let bit = (row - 1) as usize;
        if visited[bit >> 6] >> (bit & 63) & 1 != 0 {
            return Err(Error::NonTerminating { row: row as usize });
        }
        visited[bit >> 6] |= 1 << (bit & 63);
        let p = row as i64;
        stack.pop_larger_than(p);
        let lam_i = (step - stack.top().step) as u32;
        stack.push(p, step);
        buf[i - 1] = lam_i;
    }
    buf[n - 1] = 1;
    Ok((LyndonArray { lam: buf }, stack.stats))
}

/// Definitional oracle: `lambda[i] = j - i` where `j` is the first position
/// after `i` whose suffix is lexicographically smaller.
///
/// Quadratic in the worst case (unary texts); used as a test oracle and for
/// the quadratic-blowup benchmark.
pub fn oracle_lyndon(t: &Text) -> LyndonArray {
    let bytes = t.bytes();
    let n = bytes.len();
    let mut lam = vec![0u32; n];
    lam[n - 1] = 1;
    for i in 1..n {
        let suffix = &bytes[i - 1..];
        let j = (i + 1..=n)
            .find(|&k| bytes[k - 1..] < *suffix)
            .expect("the sentinel suffix is smaller than any other");
        lam[i - 1] = (j - i) as u32;
    }
    LyndonArray { lam }
}

/// `out[i] = lambda[SA[i]]`: Lyndon word lengths in suffix rank order.
pub fn lyndon_sa_permuted(lam: &LyndonArray, sa: &SuffixArray) -> Result<Vec<u32>> {
    if lam.len() != sa.len() {
        return Err(Error::LengthMismatch {
            left: lam.len(),
            right: sa.len(),
        });
    }
    Ok(sa.values().iter().map(|&v| lam.at(v as usize)).collect())
}
