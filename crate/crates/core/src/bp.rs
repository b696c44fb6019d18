//! Balanced-parenthesis representation of the Lyndon array.
//!
//! The representation is a bit sequence of length 2n (1 = open, 0 = close)
//! produced by a stack pass over the ISA values in text order: arriving at
//! `ISA[i]`, every stacked value larger than it is closed, then `ISA[i]`
//! opens. `lambda[i]` is recovered from the span between the i-th open
//! parenthesis and its matching close: `lambda[i] = (c_i - o_i + 1) / 2`.
//!
//! [`BpIndex`] adds a range-min-max tree over excess values (per-block
//! minimum and net excess, plus a binary tree over the blocks), giving
//! matching-parenthesis search in a bounded block scan plus a logarithmic
//! number of tree hops, and per-block open counts for select.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::bits::select_in_word;
use crate::bwt::{isa_stream, BwtString};
use crate::error::{Error, Result};

pub const BP_MAGIC: &[u8; 8] = b"LYNBP001";

/// Which stack implementation drives the construction pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StackMode {
    /// growable word stack
    #[default]
    Pairs,
    /// n-bit dynamic bitvector; set bit = value currently stacked
    BitStack,
}

/// 2n-bit balanced-parenthesis encoding of a Lyndon array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpRepresentation {
    words: Vec<u64>,
    n: usize,
}

impl BpRepresentation {
    /// Number of open parentheses (= text length).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total bit length, always `2n`.
    pub fn len_bits(&self) -> usize {
        2 * self.n
    }

    /// Bit at 1-based position `p`: true = open.
    pub fn is_open(&self, p: usize) -> bool {
        let i = p - 1;
        (self.words[i >> 6] >> (i & 63)) & 1 != 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Renders as a parenthesis string, for dumps and small tests.
    pub fn to_paren_string(&self) -> String {
        (1..=self.len_bits())
            .map(|p| if self.is_open(p) { '(' } else { ')' })
            .collect()
    }

    /// Parses a parenthesis string; used by tests and the CLI dump checks.
    pub fn from_paren_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.len().is_multiple_of(2) {
            return Err(Error::Unbalanced {
                reason: format!("length {} is not a positive even number", s.len()),
            });
        }
        let n = s.len() / 2;
        let mut b = BpBuilder::with_capacity(n);
        for ch in s.chars() {
            match ch {
                '(' => b.open(),
                ')' => b.close(),
                other => {
                    return Err(Error::Unbalanced {
                        reason: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        Ok(b.finish())
    }
}

/// Append-only builder with exact preallocation.
struct BpBuilder {
    words: Vec<u64>,
    len: usize,
}

impl BpBuilder {
    fn with_capacity(n: usize) -> Self {
        BpBuilder {
            words: vec![0u64; (2 * n).div_ceil(64)],
            len: 0,
        }
    }

    #[inline]
    fn open(&mut self) {
        self.words[self.len >> 6] |= 1 << (self.len & 63);
        self.len += 1;
    }

    #[inline]
    fn close(&mut self) {
        self.len += 1;
    }

    fn finish(self) -> BpRepresentation {
        BpRepresentation {
            n: self.len / 2,
            words: self.words,
        }
    }
}

/// Builds the representation from the ISA values in text order.
///
/// `values` must be a permutation of 1..=n ending in 1; the final stack
/// state guards this. The word stack drives the pass.
pub fn bp_from_isa_values(
    n: usize,
    values: impl IntoIterator<Item = u32>,
) -> Result<BpRepresentation> {
    let mut builder = BpBuilder::with_capacity(n);
    let mut stack: Vec<u32> = Vec::new();
    let mut produced = 0usize;
    for v in values {
        produced += 1;
        if v == 0 || v as usize > n || produced > n {
            return Err(Error::NotAPermutation {
                reason: format!("value {v} at position {produced} outside 1..={n}"),
            });
        }
        while let Some(&top) = stack.last() {
            if top > v {
                stack.pop();
                builder.close();
            } else if top == v {
                return Err(Error::NotAPermutation {
                    reason: format!("value {v} seen twice"),
                });
            } else {
                break;
            }
        }
        stack.push(v);
        builder.open();
    }
    if produced != n || stack.len() != 1 {
        return Err(Error::NotAPermutation {
            reason: format!(
                "{produced} of {n} values consumed, {} left on the stack",
                stack.len()
            ),
        });
    }
    stack.pop();
    builder.close();
    Ok(builder.finish())
}

fn bp_from_isa_values_bitstack(
    n: usize,
    values: impl IntoIterator<Item = u32>,
) -> Result<BpRepresentation> {
    let mut builder = BpBuilder::with_capacity(n);
    let mut stack = BitStack::new(n);
    let mut produced = 0usize;
    for v in values {
        produced += 1;
        if v == 0 || v as usize > n || produced > n {
            return Err(Error::NotAPermutation {
                reason: format!("value {v} at position {produced} outside 1..={n}"),
            });
        }
        let closed = stack.push_popping_larger(v as usize)?;
        for _ in 0..closed {
            builder.close();
        }
        builder.open();
    }
    if produced != n || stack.ones() != 1 || stack.top() != Some(1) {
        return Err(Error::NotAPermutation {
            reason: format!("{produced} of {n} values consumed, stack not reduced to {{1}}"),
        });
    }
    builder.close();
    Ok(builder.finish())
}

/// Streams the ISA values out of the BWT (via Psi) and builds the
/// representation with the chosen stack.
pub fn bp_from_bwt(l: &BwtString, mode: StackMode) -> Result<BpRepresentation> {
    let n = l.len();
    let stream = isa_stream(l);
    match mode {
        StackMode::Pairs => bp_from_isa_values(n, stream),
        StackMode::BitStack => bp_from_isa_values_bitstack(n, stream),
    }
}

// --- succinct index ------------------------------------------------------

/// Default range-min-max block size in bits.
pub const DEFAULT_BLOCK_BITS: usize = 512;

#[derive(Debug, Clone, Copy)]
struct RmmNode {
    /// minimum running excess inside the range, relative to its entry
    min: i32,
    /// net excess over the range
    total: i32,
}

const EMPTY_NODE: RmmNode = RmmNode {
    min: i32::MAX / 2,
    total: 0,
};

/// Balanced-parenthesis index: per-block open counts for select plus a
/// range-min-max tree for matching-close search.
#[derive(Debug, Clone)]
pub struct BpIndex {
    bp: BpRepresentation,
    block_bits: usize,
    /// opens strictly before each block, one trailing total
    cum_opens: Vec<u32>,
    /// 1-based heap layout; leaves start at `leaf_base`
    tree: Vec<RmmNode>,
    leaf_base: usize,
}

impl BpIndex {
    pub fn bp(&self) -> &BpRepresentation {
        &self.bp
    }

    pub fn n(&self) -> usize {
        self.bp.n()
    }

    pub fn block_bits(&self) -> usize {
        self.block_bits
    }

    /// Index overhead in machine words (the `o(n)` budget, measured).
    pub fn overhead_words(&self) -> usize {
        // cum_opens u32s count as half-words; round up
        self.cum_opens.len().div_ceil(2) + self.tree.len()
    }

    #[inline]
    fn bit_delta(&self, p0: usize) -> i32 {
        let w = self.bp.words[p0 >> 6];
        if (w >> (p0 & 63)) & 1 != 0 {
            1
        } else {
            -1
        }
    }

    /// 1-based position of the i-th open parenthesis.
    pub fn selectopen(&self, i: usize) -> Result<usize> {
        let n = self.n();
        if i == 0 || i > n {
            return Err(Error::OutOfRange { index: i, max: n });
        }
        // last block whose prefix open count is < i
        let block = self.cum_opens.partition_point(|&c| (c as usize) < i) - 1;
        let mut remaining = i - self.cum_opens[block] as usize;
        let bits = self.bp.len_bits();
        let first_word = block * self.block_bits / 64;
        let last_word = ((block + 1) * self.block_bits).min(bits).div_ceil(64);
        for wi in first_word..last_word {
            let ones = self.bp.words[wi].count_ones() as usize;
            if remaining <= ones {
                return Ok(wi * 64 + select_in_word(self.bp.words[wi], remaining) + 1);
            }
            remaining -= ones;
        }
        Err(Error::Internal(format!(
            "open {i} not found from block {block}"
        )))
    }

    /// 1-based position of the close matching the i-th open parenthesis.
    pub fn selectclose(&self, i: usize) -> Result<usize> {
        let open = self.selectopen(i)?;
        self.find_close(open)
    }

    /// Matching close of the open parenthesis at 1-based position `p`.
    pub fn find_close(&self, p: usize) -> Result<usize> {
        debug_assert!(self.bp.is_open(p));
        let bits = self.bp.len_bits();
        let open0 = p - 1;
        // scan the remainder of the block
        let mut exc: i32 = 1;
        let block = open0 / self.block_bits;
        let block_end = ((block + 1) * self.block_bits).min(bits);
        for q in open0 + 1..block_end {
            exc += self.bit_delta(q);
            if exc == 0 {
                return Ok(q + 1);
            }
        }
        // climb the min-max tree looking for the first subtree to the right
        // that dips to the target excess
        let mut v = self.leaf_base + block;
        loop {
            while v != 1 && v & 1 == 1 {
                v >>= 1;
            }
            if v == 1 {
                return Err(Error::Unbalanced {
                    reason: format!("no matching close for open at {p}"),
                });
            }
            v += 1;
            if exc + self.tree[v].min <= 0 {
                break;
            }
            exc += self.tree[v].total;
        }
        // descend to the leftmost block reaching the target
        while v < self.leaf_base {
            let left = 2 * v;
            if exc + self.tree[left].min <= 0 {
                v = left;
            } else {
                exc += self.tree[left].total;
                v = left + 1;
            }
        }
        let b = v - self.leaf_base;
        let start = b * self.block_bits;
        let end = (start + self.block_bits).min(bits);
        for q in start..end {
            exc += self.bit_delta(q);
            if exc == 0 {
                return Ok(q + 1);
            }
        }
        Err(Error::Internal(format!(
            "min-max descent for open at {p} missed its block"
        )))
    }

    /// `lambda[i] = (selectclose(i) - selectopen(i) + 1) / 2`.
    pub fn lambda_at(&self, i: usize) -> Result<u32> {
        let o = self.selectopen(i)?;
        let c = self.find_close(o)?;
        let span = c - o;
        if span % 2 == 0 {
            return Err(Error::Internal(format!(
                "even open/close distance {span} at index {i}"
            )));
        }
        Ok(span.div_ceil(2) as u32)
    }
}

/// Builds the index over `bp`, validating balance.
pub fn build_bp_index(bp: BpRepresentation) -> Result<BpIndex> {
    build_bp_index_with_block(bp, DEFAULT_BLOCK_BITS)
}

/// [`build_bp_index`] with a custom block size (bits, multiple of 64).
pub fn build_bp_index_with_block(bp: BpRepresentation, block_bits: usize) -> Result<BpIndex> {
    if block_bits == 0 || !block_bits.is_multiple_of(64) {
        return Err(Error::Internal(format!(
            "block size {block_bits} must be a positive multiple of 64"
        )));
    }
    let bits = bp.len_bits();
    let nblocks = bits.div_ceil(block_bits);
    let leaf_base = nblocks.next_power_of_two().max(1);
    let mut tree = vec![EMPTY_NODE; 2 * leaf_base];
    let mut cum_opens = Vec::with_capacity(nblocks + 1);

    let mut abs_excess: i64 = 0;
    let mut opens: u32 = 0;
    for b in 0..nblocks {
        cum_opens.push(opens);
        let start = b * block_bits;
        let end = (start + block_bits).min(bits);
        let mut exc: i32 = 0;
        let mut min = i32::MAX / 2;
        for q in start..end {
            if (bp.words[q >> 6] >> (q & 63)) & 1 != 0 {
                exc += 1;
                opens += 1;
            } else {
                exc -= 1;
            }
            min = min.min(exc);
        }
        // abs_excess + min is the lowest absolute excess inside this block
        if abs_excess + i64::from(min) < 0 {
            return Err(Error::Unbalanced {
                reason: format!("prefix closes exceed opens inside block {b}"),
            });
        }
        abs_excess += exc as i64;
        tree[leaf_base + b] = RmmNode { min, total: exc };
    }
    cum_opens.push(opens);
    if abs_excess != 0 {
        return Err(Error::Unbalanced {
            reason: format!("sequence ends with net excess {abs_excess}"),
        });
    }
    if opens as usize != bp.n() {
        return Err(Error::Unbalanced {
            reason: format!("{opens} opens in a sequence of {} bits", bits),
        });
    }
    for v in (1..leaf_base).rev() {
        let l = tree[2 * v];
        let r = tree[2 * v + 1];
        tree[v] = RmmNode {
            min: l.min.min(l.total.saturating_add(r.min)),
            total: l.total + r.total,
        };
    }
    Ok(BpIndex {
        bp,
        block_bits,
        cum_opens,
        tree,
        leaf_base,
    })
}

// --- serialization --------------------------------------------------------

/// Writes `bp` as `"LYNBP001"`, an 8-byte little-endian n, then the packed
/// words in little-endian order.
pub fn write_bp(path: &Path, bp: &BpRepresentation) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(BP_MAGIC)?;
    w.write_all(&(bp.n() as u64).to_le_bytes())?;
    for &word in bp.words() {
        w.write_all(&word.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_bp(path: &Path) -> Result<BpRepresentation> {
    let malformed = |reason: &str| Error::MalformedHeader {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    let mut r = BufReader::new(File::open(path)?);
    let mut header = [0u8; 16];
    r.read_exact(&mut header)
        .map_err(|_| malformed("file shorter than header"))?;
    if &header[0..8] != BP_MAGIC {
        return Err(malformed("bad magic"));
    }
    let n = u64::from_le_bytes(header[8..16].try_into().unwrap());
    if n == 0 {
        return Err(malformed("n must be >= 1"));
    }
    let n = usize::try_from(n).map_err(|_| malformed("n exceeds address space"))?;
    let nwords = (2 * n).div_ceil(64);
    let mut raw = vec![0u8; nwords * 8];
    r.read_exact(&mut raw)
        .map_err(|_| malformed("truncated bit section"))?;
    let words: Vec<u64> = raw
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let mut probe = [0u8; 1];
    if r.read(&mut probe)? != 0 {
        return Err(malformed("trailing bytes after bit section"));
    }
    let bp = BpRepresentation { words, n };
    // stray bits past 2n would corrupt block summaries
    let last_used = (2 * n).div_ceil(64) - 1;
    let tail_bits = 2 * n - last_used * 64;
    if tail_bits < 64 && bp.words[last_used] >> tail_bits != 0 {
        return Err(malformed("nonzero padding bits"));
    }
    Ok(bp)
}

// --- dynamic bit stack ----------------------------------------------------

const SUPERBLOCK_BITS: usize = 4096;

/// Stack of distinct values 1..=n kept as a bitvector: bit `i` set means
/// `i` is on the stack. Values on the stack are always increasing, so the
/// set alone captures the stack order.
#[derive(Debug, Clone)]
pub struct BitStack {
    words: Vec<u64>,
    /// popcount per superblock of `SUPERBLOCK_BITS` bits
    super_counts: Vec<u32>,
    capacity: usize,
    ones: usize,
}

impl BitStack {
    pub fn new(capacity: usize) -> Self {
        let nwords = capacity.div_ceil(64);
        let nsupers = capacity.div_ceil(SUPERBLOCK_BITS);
        BitStack {
            words: vec![0u64; nwords],
            super_counts: vec![0u32; nsupers.max(1)],
            capacity,
            ones: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Number of stacked values.
    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn is_empty(&self) -> bool {
        self.ones == 0
    }

    /// Is value `e` (1-based) on the stack?
    pub fn contains(&self, e: usize) -> bool {
        let p = e - 1;
        (self.words[p >> 6] >> (p & 63)) & 1 != 0
    }

    fn set(&mut self, e: usize) {
        let p = e - 1;
        self.words[p >> 6] |= 1 << (p & 63);
        self.super_counts[p / SUPERBLOCK_BITS] += 1;
        self.ones += 1;
    }

    fn clear(&mut self, e: usize) {
        let p = e - 1;
        self.words[p >> 6] &= !(1 << (p & 63));
        self.super_counts[p / SUPERBLOCK_BITS] -= 1;
        self.ones -= 1;
    }

    /// Set values <= `e`.
    pub fn rank1(&self, e: usize) -> usize {
        debug_assert!(e <= self.capacity);
        let p = e; // count of bits in positions 0..e
        let full_supers = p / SUPERBLOCK_BITS;
        let mut r = 0usize;
        for sb in 0..full_supers {
            r += self.super_counts[sb] as usize;
        }
        let first_word = full_supers * SUPERBLOCK_BITS / 64;
        let last_word = p >> 6;
        for w in &self.words[first_word..last_word] {
            r += w.count_ones() as usize;
        }
        let rem = p & 63;
        if rem != 0 {
            r += (self.words[last_word] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        r
    }

    /// `k`-th smallest stacked value (1-based `k`).
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.ones {
            return None;
        }
        let mut remaining = k;
        let mut sb = 0usize;
        while remaining > self.super_counts[sb] as usize {
            remaining -= self.super_counts[sb] as usize;
            sb += 1;
        }
        let first_word = sb * SUPERBLOCK_BITS / 64;
        let last_word = ((sb + 1) * SUPERBLOCK_BITS)
            .div_ceil(64)
            .min(self.words.len());
        for wi in first_word..last_word {
            let ones = self.words[wi].count_ones() as usize;
            if remaining <= ones {
                return Some(wi * 64 + select_in_word(self.words[wi], remaining) + 1);
            }
            remaining -= ones;
        }
        None
    }

    /// Largest stacked value, i.e. the stack top.
    pub fn top(&self) -> Option<usize> {
        self.select1(self.ones)
    }

    /// Pops every value larger than `e`, then pushes `e`.
    ///
    /// Returns the number of popped values. The values to pop are the ones
    /// at select ranks above `rank1(e)`.
    pub fn push_popping_larger(&mut self, e: usize) -> Result<usize> {
        if e == 0 || e > self.capacity {
            return Err(Error::OutOfRange {
                index: e,
                max: self.capacity,
            });
        }
        if self.contains(e) {
            return Err(Error::DuplicatePush { value: e });
        }
        let keep = self.rank1(e);
        let mut popped = 0usize;
        while self.ones > keep {
            let victim = self
                .select1(keep + 1)
                .expect("rank bookkeeping guarantees a victim");
            self.clear(victim);
            popped += 1;
        }
        self.set(e);
        Ok(popped)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bwt::bwt_from_sa;
    use crate::suffix::{build_sa, invert_sa};
    use crate::text::Text;

    fn bwt_of(s: &[u8]) -> BwtString {
        let t = Text::from_bytes(s).unwrap();
        let sa = build_sa(&t);
        bwt_from_sa(&t, &sa)
    }

    fn isa_of(s: &[u8]) -> Vec<u32> {
        let t = Text::from_bytes(s).unwrap();
        invert_sa(&build_sa(&t)).unwrap().into_values()
    }

    #[test]
    fn banana_bp() {
        let isa = isa_of(b"banana");
        assert_eq!(isa, vec![5, 4, 7, 3, 6, 2, 1]);
        let bp = bp_from_isa_values(7, isa).unwrap();
        assert_eq!(bp.to_paren_string(), "()(())(())()()");
        assert_eq!(bp.n(), 7);
    }

    #[test]
    fn trivial_bp() {
        let bp = bp_from_isa_values(1, vec![1]).unwrap();
        assert_eq!(bp.to_paren_string(), "()");
    }

    #[test]
    fn ab_bp() {
        let bp = bp_from_isa_values(3, isa_of(b"ab")).unwrap();
        assert_eq!(bp.to_paren_string(), "(())()");
    }

    #[test]
    fn malformed_streams_rejected() {
        // duplicate
        assert!(matches!(
            bp_from_isa_values(3, vec![2, 2, 1]).unwrap_err(),
            Error::NotAPermutation { .. }
        ));
        // out of range
        assert!(bp_from_isa_values(3, vec![4, 2, 1]).is_err());
        // does not end in 1 / leaves extra stack entries
        assert!(bp_from_isa_values(3, vec![1, 2, 3]).is_err());
        // short stream
        assert!(bp_from_isa_values(3, vec![2, 1]).is_err());
        // same guards on the bitstack side
        assert!(bp_from_isa_values_bitstack(3, vec![2, 2, 1]).is_err());
        assert!(bp_from_isa_values_bitstack(3, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn modes_agree_from_bwt() {
        for s in [
            &b"banana"[..],
            b"",
            b"ab",
            b"mississippi",
            b"aaaaaaaaaa",
            b"abcadcabcc",
            b"zyxwvu",
        ] {
            let l = bwt_of(s);
            let a = bp_from_bwt(&l, StackMode::Pairs).unwrap();
            let b = bp_from_bwt(&l, StackMode::BitStack).unwrap();
            assert_eq!(a, b, "text {s:?}");
        }
    }

    #[test]
    fn index_selects_banana() {
        let bp = bp_from_isa_values(7, isa_of(b"banana")).unwrap();
        let idx = build_bp_index(bp).unwrap();
        assert_eq!(idx.selectopen(2).unwrap(), 3);
        assert_eq!(idx.selectclose(2).unwrap(), 6);
        assert_eq!(idx.selectopen(1).unwrap(), 1);
        assert_eq!(idx.selectclose(1).unwrap(), 2);
        assert_eq!(idx.selectopen(7).unwrap(), 13);
        assert_eq!(idx.selectclose(7).unwrap(), 14);
        assert!(idx.selectopen(0).is_err());
        assert!(idx.selectopen(8).is_err());
    }

    #[test]
    fn lambda_via_paren_span() {
        let bp = bp_from_isa_values(7, isa_of(b"banana")).unwrap();
        let idx = build_bp_index(bp).unwrap();
        assert_eq!(idx.lambda_at(2).unwrap(), 2);
        assert_eq!(idx.lambda_at(7).unwrap(), 1); // lambda[n] = 1 always
        let sweep: Vec<u32> = (1..=7).map(|i| idx.lambda_at(i).unwrap()).collect();
        assert_eq!(sweep, vec![1, 2, 1, 2, 1, 1, 1]);
    }

    #[test]
    fn unbalanced_rejected() {
        let bp = BpRepresentation::from_paren_str("(()(").unwrap();
        assert!(matches!(
            build_bp_index(bp).unwrap_err(),
            Error::Unbalanced { .. }
        ));
        let bp = BpRepresentation::from_paren_str("))((").unwrap();
        assert!(build_bp_index(bp).is_err());
        assert!(BpRepresentation::from_paren_str("(()").is_err());
    }

    #[test]
    fn deep_nesting_crosses_blocks() {
        // a fully nested sequence forces the tree search across blocks
        let n = 3000usize;
        let mut s = String::with_capacity(2 * n);
        for _ in 0..n {
            s.push('(');
        }
        for _ in 0..n {
            s.push(')');
        }
        let idx = build_bp_index(BpRepresentation::from_paren_str(&s).unwrap()).unwrap();
        for i in [1usize, 2, 63, 64, 65, 512, 513, n - 1, n] {
            assert_eq!(idx.selectopen(i).unwrap(), i);
            assert_eq!(idx.selectclose(i).unwrap(), 2 * n - i + 1);
            assert_eq!(idx.lambda_at(i).unwrap() as usize, n - i + 1);
        }
    }

    #[test]
    fn index_overhead_stays_within_budget() {
        // auxiliary structures: <= 5 words per block plus O(B) slack
        for n in [1usize, 7, 100, 4096, 100_000] {
            let values: Vec<u32> = (1..=n as u32).rev().collect(); // ISA of a^n
            let bp = bp_from_isa_values(n, values).unwrap();
            for block_bits in [64usize, 512, 4096] {
                let idx = build_bp_index_with_block(bp.clone(), block_bits).unwrap();
                let blocks = (2 * n).div_ceil(block_bits);
                let budget = 5 * blocks + block_bits;
                assert!(
                    idx.overhead_words() <= budget,
                    "n={n} B={block_bits}: {} words > {budget}",
                    idx.overhead_words()
                );
            }
        }
    }

    #[test]
    fn small_block_size_matches_default() {
        let isa = isa_of(b"abracadabra");
        let bp = bp_from_isa_values(12, isa).unwrap();
        let coarse = build_bp_index(bp.clone()).unwrap();
        let fine = build_bp_index_with_block(bp, 64).unwrap();
        for i in 1..=12 {
            assert_eq!(coarse.lambda_at(i).unwrap(), fine.lambda_at(i).unwrap());
        }
    }

    #[test]
    fn bp_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.bp");
        let bp = bp_from_isa_values(7, isa_of(b"banana")).unwrap();
        write_bp(&path, &bp).unwrap();
        assert_eq!(read_bp(&path).unwrap(), bp);

        let raw = std::fs::read(&path).unwrap();
        assert_eq!(&raw[0..8], b"LYNBP001");
        assert_eq!(u64::from_le_bytes(raw[8..16].try_into().unwrap()), 7);
        assert_eq!(raw.len(), 16 + 8);

        let mut bad = raw.clone();
        bad[0] ^= 0xFF;
        std::fs::write(&path, &bad).unwrap();
        assert!(read_bp(&path).is_err());
    }

    #[test]
    fn bitstack_example_trace() {
        // push 5, push 7, then pushing 3 pops 7 and 5
        let mut s = BitStack::new(8);
        assert_eq!(s.push_popping_larger(5).unwrap(), 0);
        assert_eq!(s.push_popping_larger(7).unwrap(), 0);
        assert_eq!(s.top(), Some(7));
        assert_eq!(s.push_popping_larger(3).unwrap(), 2);
        assert_eq!(s.top(), Some(3));
        assert_eq!(s.ones(), 1);
        assert!(s.contains(3) && !s.contains(5) && !s.contains(7));
    }

    #[test]
    fn bitstack_push_into_empty() {
        let mut s = BitStack::new(4);
        assert_eq!(s.push_popping_larger(1).unwrap(), 0);
        assert_eq!(s.top(), Some(1));
        assert!(matches!(
            s.push_popping_larger(1).unwrap_err(),
            Error::DuplicatePush { value: 1 }
        ));
        assert!(s.push_popping_larger(0).is_err());
        assert!(s.push_popping_larger(5).is_err());
    }

    #[test]
    fn bitstack_matches_array_stack_on_random_ops() {
        let capacity = 100_000usize;
        let mut bits = BitStack::new(capacity);
        let mut array: Vec<usize> = Vec::new();
        let mut state = 0xDEADBEEFCAFEu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut ops = 0usize;
        while ops < 100_000 {
            let e = (next() % capacity as u64) as usize + 1;
            let expected_pops = array.iter().rev().take_while(|&&v| v > e).count();
            if array.len() > expected_pops && array[array.len() - 1 - expected_pops] == e {
                assert!(matches!(
                    bits.push_popping_larger(e),
                    Err(Error::DuplicatePush { .. })
                ));
                ops += 1;
                continue;
            }
            for _ in 0..expected_pops {
                array.pop();
            }
            array.push(e);
            let pops = bits.push_popping_larger(e).unwrap();
            assert_eq!(pops, expected_pops);
            assert_eq!(bits.ones(), array.len());
            assert_eq!(bits.top(), array.last().copied());
            ops += 1 + pops;
        }
        // full agreement of the final contents
        let from_bits: Vec<usize> = (1..=bits.ones())
            .map(|k| bits.select1(k).unwrap())
            .collect();
        assert_eq!(from_bits, array);
    }
}
