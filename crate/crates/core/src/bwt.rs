//! Burrows-Wheeler transform, LF-mapping, inversion, and the Psi view.
//!
//! `L` is the last column of the sorted-rotations matrix with the sentinel
//! kept inside it (no separate primary index). Rows are 1-based. Iterating
//! LF walks the text right to left; iterating Psi (the inverse of LF) walks
//! left to right and yields the ISA values in text order.

use crate::bits::RankBits;
use crate::error::{Error, Result};
use crate::suffix::SuffixArray;
use crate::text::Text;

/// The BWT string: a permutation of the text's symbols, sentinel included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BwtString {
    l: Vec<u8>,
}

impl BwtString {
    /// Wraps raw BWT bytes, checking that the sentinel occurs exactly once.
    pub fn from_bytes(l: Vec<u8>) -> Result<Self> {
        if l.is_empty() {
            return Err(Error::EmptyInput);
        }
        match l.iter().filter(|&&b| b == 0).count() {
            1 => Ok(BwtString { l }),
            0 => Err(Error::MissingSentinel),
            _ => {
                let second = l
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b == 0)
                    .nth(1)
                    .map(|(i, _)| i)
                    .unwrap();
                Err(Error::SentinelConflict { offset: second })
            }
        }
    }

    pub fn len(&self) -> usize {
        self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l.is_empty()
    }

    /// Symbol of row `i` (1-based).
    pub fn sym(&self, i: usize) -> u8 {
        self.l[i - 1]
    }

    pub fn bytes(&self) -> &[u8] {
        &self.l
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.l
    }
}

/// `c[s]` = number of symbols in the text strictly smaller than `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountArray {
    c: Vec<u32>, // 257 entries; c[256] = n closes the last bucket
}

impl CountArray {
    pub fn smaller_than(&self, sym: u8) -> u32 {
        self.c[sym as usize]
    }

    /// Number of occurrences of `sym`.
    pub fn count(&self, sym: u8) -> u32 {
        self.c[sym as usize + 1] - self.c[sym as usize]
    }

    pub fn occurs(&self, sym: u8) -> bool {
        self.count(sym) > 0
    }

    /// Total number of symbols counted.
    pub fn n(&self) -> usize {
        self.c[256] as usize
    }
}

/// Exclusive prefix sums of symbol frequencies in symbol order.
pub fn count_array(l: &BwtString) -> CountArray {
    let mut c = vec![0u32; 257];
    for &b in l.bytes() {
        c[b as usize + 1] += 1;
    }
    for i in 0..256 {
        c[i + 1] += c[i];
    }
    CountArray { c }
}

/// Precomputed last-to-first mapping; a permutation of 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfArray {
    lf: Vec<u32>,
}

impl LfArray {
    pub fn len(&self) -> usize {
        self.lf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lf.is_empty()
    }

    /// `LF(i)` for a 1-based row.
    pub fn at(&self, i: usize) -> u32 {
        self.lf[i - 1]
    }

    pub fn values(&self) -> &[u32] {
        &self.lf
    }
}

/// `L[i] = T[SA[i] - 1]`, with the sentinel where `SA[i] = 1`.
pub fn bwt_from_sa(t: &Text, sa: &SuffixArray) -> BwtString {
    debug_assert_eq!(t.len(), sa.len());
    let bytes = t.bytes();
    let l = sa
        .values()
        .iter()
        .map(|&v| if v == 1 { 0 } else { bytes[(v - 2) as usize] })
        .collect();
    BwtString { l }
}

/// `lf[i] = c[L[i]] +` (occurrences of `L[i]` in `L[1..=i]`).
///
/// Equal symbols map order-preservingly (the mapping is stable).
pub fn lf_array(l: &BwtString, c: &CountArray) -> LfArray {
    let mut occ = vec![0u32; 256];
    let lf = l
        .bytes()
        .iter()
        .map(|&b| {
            occ[b as usize] += 1;
            c.smaller_than(b) + occ[b as usize]
        })
        .collect();
    LfArray { lf }
}

/// Walks LF from the sentinel row, checking each row is visited once.
///
/// Returns the visited-row order: `rows[k]` is the row decoded at step `k`.
/// Shared by [`invert_bwt`] and the Lyndon construction in [`crate::lyndon`].
pub(crate) struct LfWalk<'a> {
    lf: &'a LfArray,
    visited: Vec<u64>,
    pos: u32,
}

impl<'a> LfWalk<'a> {
    pub(crate) fn new(lf: &'a LfArray) -> Self {
        LfWalk {
            lf,
            visited: vec![0u64; lf.len().div_ceil(64)],
            pos: 1, // the row of ISA[n] = 1
        }
    }

    pub(crate) fn pos(&self) -> u32 {
        self.pos
    }

    fn mark(&mut self, row: u32) -> Result<()> {
        let p = (row - 1) as usize;
        if self.visited[p >> 6] >> (p & 63) & 1 != 0 {
            return Err(Error::NonTerminating { row: row as usize });
        }
        self.visited[p >> 6] |= 1 << (p & 63);
        Ok(())
    }

    /// Marks the current row as consumed and advances along LF.
    pub(crate) fn step(&mut self) -> Result<()> {
        let n = self.lf.len();
        self.mark(self.pos)?;
        let next = self.lf.at(self.pos as usize);
        if next == 0 || next as usize > n {
            return Err(Error::PermutationViolation {
                context: "LF array",
                len: n,
            });
        }
        self.pos = next;
        Ok(())
    }

    /// Final check: after n-1 steps the walk must sit on a fresh row.
    pub(crate) fn finish(mut self) -> Result<()> {
        let pos = self.pos;
        self.mark(pos)
    }
}

/// Inverts the BWT, decoding the text right to left along LF.
pub fn invert_bwt(l: &BwtString, lf: &LfArray) -> Result<Text> {
    let n = l.len();
    if lf.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: lf.len(),
        });
    }
    let mut out = vec![0u8; n];
    let mut walk = LfWalk::new(lf);
    for i in (1..n).rev() {
        out[i - 1] = l.sym(walk.pos() as usize);
        walk.step()?;
    }
    walk.finish()?;
    Text::from_terminated(out)
}

/// Marks the first row of each symbol's bucket, with rank/select support.
#[derive(Debug, Clone)]
pub struct FBitvector {
    bits: RankBits,
    /// occurring symbols in ascending order; class k (1-based) maps to [k-1]
    class_symbols: Vec<u8>,
}

impl FBitvector {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit of row `j` (1-based): true iff row `j` starts a symbol bucket.
    pub fn bit(&self, j: usize) -> bool {
        self.bits.bit(j - 1)
    }

    /// Ones among rows `1..=j`.
    pub fn rank1(&self, j: usize) -> usize {
        self.bits.rank1(j)
    }

    /// 1-based row of the `k`-th one.
    pub fn select1(&self, k: usize) -> Option<usize> {
        self.bits.select1(k).map(|p| p + 1)
    }

    pub fn ones(&self) -> usize {
        self.bits.count_ones()
    }

    /// Symbol whose bucket is the `k`-th (1-based class index).
    pub fn class_symbol(&self, k: usize) -> u8 {
        self.class_symbols[k - 1]
    }
}

/// Sets a bit at row `c[s] + 1` for every occurring symbol `s`.
pub fn f_bitvector(c: &CountArray, n: usize) -> FBitvector {
    let mut positions = Vec::new();
    let mut class_symbols = Vec::new();
    for sym in 0..=255u8 {
        if c.occurs(sym) {
            positions.push(c.smaller_than(sym) as usize); // 0-based row
            class_symbols.push(sym);
        }
    }
    FBitvector {
        bits: RankBits::from_positions(n, &positions),
        class_symbols,
    }
}

/// Psi queries over the BWT: a per-symbol occurrence index plus `F`.
///
/// `Psi(i)` is the position in `L` of the character prefixing row `i`, so
/// `Psi` and `LF` are inverse permutations, with `Psi(1) = ISA[1]`.
#[derive(Debug, Clone)]
pub struct PsiView {
    f: FBitvector,
    /// occurrence rows of each symbol, grouped by symbol in ascending order
    occ_rows: Vec<u32>,
    /// start of each symbol's group inside `occ_rows`
    sym_offsets: Vec<u32>,
    n: usize,
}

impl PsiView {
    pub fn new(l: &BwtString) -> Self {
        let n = l.len();
        let c = count_array(l);
        let f = f_bitvector(&c, n);
        let mut sym_offsets = vec![0u32; 257];
        for s in 0..=255u8 {
            sym_offsets[s as usize + 1] = sym_offsets[s as usize] + c.count(s);
        }
        let mut cursor: Vec<u32> = sym_offsets[..256].to_vec();
        let mut occ_rows = vec![0u32; n];
        for (row0, &b) in l.bytes().iter().enumerate() {
            occ_rows[cursor[b as usize] as usize] = (row0 + 1) as u32;
            cursor[b as usize] += 1;
        }
        PsiView {
            f,
            occ_rows,
            sym_offsets,
            n,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn f(&self) -> &FBitvector {
        &self.f
    }

    /// Row of the `k`-th occurrence of `sym` in `L` (1-based `k`).
    pub fn select_sym(&self, sym: u8, k: usize) -> u32 {
        self.occ_rows[self.sym_offsets[sym as usize] as usize + k - 1]
    }

    #[inline]
    fn psi_unchecked(&self, i: usize) -> u32 {
        // c_i = rank1(F, i) names the symbol class prefixing row i;
        // the occurrence index inside the class is i - select1(F, c_i) + 1.
        let class = self.f.rank1(i);
        let bucket_start = self
            .f
            .select1(class)
            .expect("class index within occurring symbols");
        let sym = self.f.class_symbol(class);
        self.select_sym(sym, i - bucket_start + 1)
    }
}

/// `Psi(i)` with bounds checking; `psi_at(view, 1) = ISA[1]`.
pub fn psi_at(view: &PsiView, i: usize) -> Result<u32> {
    if i == 0 || i > view.n {
        return Err(Error::OutOfRange {
            index: i,
            max: view.n,
        });
    }
    Ok(view.psi_unchecked(i))
}

/// Yields `ISA[1], ISA[2], ..., ISA[n]` by iterating Psi.
pub struct IsaStream {
    view: PsiView,
    prev: u32,
    produced: usize,
}

impl IsaStream {
    pub fn new(view: PsiView) -> Self {
        IsaStream {
            view,
            prev: 1,
            produced: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.view.len()
    }

    pub fn is_empty(&self) -> bool {
        self.view.is_empty()
    }
}

impl Iterator for IsaStream {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.produced == self.view.len() {
            return None;
        }
        // ISA[1] = Psi(1); ISA[i] = Psi(ISA[i-1])
        let v = self.view.psi_unchecked(self.prev as usize);
        self.prev = v;
        self.produced += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = self.view.len() - self.produced;
        (rem, Some(rem))
    }
}

impl ExactSizeIterator for IsaStream {}

/// Builds the Psi view for `l` and streams the ISA values in text order.
pub fn isa_stream(l: &BwtString) -> IsaStream {
    IsaStream::new(PsiView::new(l))
}
