//! Plain bitvector with a sampled rank/select index.
//!
//! The index stores one cumulative count per 512-bit block (32 extra bits per
//! 512, i.e. 6.25% of the bit data). Rank is one table lookup plus at most
//! eight popcounts; select binary-searches the block counts and finishes
//! inside a word.

pub const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;

#[derive(Debug, Clone)]
pub struct RankBits {
    words: Vec<u64>,
    nbits: usize,
    /// ones strictly before each block; one trailing entry with the total
    block_ranks: Vec<u32>,
}

impl RankBits {
    pub fn new(words: Vec<u64>, nbits: usize) -> Self {
        debug_assert!(words.len() * 64 >= nbits);
        let nblocks = nbits.div_ceil(BLOCK_BITS);
        let mut block_ranks = Vec::with_capacity(nblocks + 1);
        let mut acc = 0u32;
        for b in 0..nblocks {
            block_ranks.push(acc);
            let start = b * WORDS_PER_BLOCK;
            let end = (start + WORDS_PER_BLOCK).min(words.len());
            for w in &words[start..end] {
                acc += w.count_ones();
            }
        }
        block_ranks.push(acc);
        RankBits {
            words,
            nbits,
            block_ranks,
        }
    }

    pub fn from_positions(nbits: usize, one_positions: &[usize]) -> Self {
        let mut words = vec![0u64; nbits.div_ceil(64)];
        for &p in one_positions {
            debug_assert!(p < nbits);
            words[p >> 6] |= 1 << (p & 63);
        }
        Self::new(words, nbits)
    }

    pub fn len(&self) -> usize {
        self.nbits
    }

    pub fn is_empty(&self) -> bool {
        self.nbits == 0
    }

    pub fn count_ones(&self) -> usize {
        *self.block_ranks.last().unwrap() as usize
    }

    /// Bit at 0-based position `p`.
    #[inline]
    pub fn bit(&self, p: usize) -> bool {
        (self.words[p >> 6] >> (p & 63)) & 1 != 0
    }

    /// Number of ones among the first `p` bits (positions `0..p`).
    pub fn rank1(&self, p: usize) -> usize {
        debug_assert!(p <= self.nbits);
        let block = p / BLOCK_BITS;
        let mut r = self.block_ranks[block] as usize;
        let first_word = block * WORDS_PER_BLOCK;
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

    /// 0-based position of the `k`-th one, `k >= 1`.
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.count_ones() {
            return None;
        }
        // last block whose prefix count is < k
        let block = self.block_ranks.partition_point(|&r| (r as usize) < k) - 1;
        let mut remaining = k - self.block_ranks[block] as usize;
        let first_word = block * WORDS_PER_BLOCK;
        let last_word = ((block + 1) * WORDS_PER_BLOCK).min(self.words.len());
        for wi in first_word..last_word {
            let ones = self.words[wi].count_ones() as usize;
            if remaining <= ones {
                return Some(wi * 64 + select_in_word(self.words[wi], remaining));
            }
            remaining -= ones;
        }
        None
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Bit index of the `k`-th set bit of `w`, `k >= 1` and within popcount.
#[inline]
pub fn select_in_word(mut w: u64, k: usize) -> usize {
    debug_assert!(k >= 1 && k <= w.count_ones() as usize);
    for _ in 1..k {
        w &= w - 1; // clear lowest set bit
    }
    w.trailing_zeros() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference(bits: &[bool]) -> (Vec<usize>, Vec<usize>) {
        let ranks = (0..=bits.len())
            .map(|p| bits[..p].iter().filter(|&&b| b).count())
            .collect();
        let selects = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect();
        (ranks, selects)
    }

    #[test]
    fn rank_select_match_reference() {
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for nbits in [1usize, 63, 64, 65, 511, 512, 513, 3000] {
            let bits: Vec<bool> = (0..nbits).map(|_| next() % 3 == 0).collect();
            let positions: Vec<usize> = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect();
            let rb = RankBits::from_positions(nbits, &positions);
            let (ranks, selects) = reference(&bits);
            for p in 0..=nbits {
                assert_eq!(rb.rank1(p), ranks[p], "rank1({p}) nbits={nbits}");
            }
            for (k, &pos) in selects.iter().enumerate() {
                assert_eq!(rb.select1(k + 1), Some(pos));
            }
            assert_eq!(rb.select1(selects.len() + 1), None);
            assert_eq!(rb.select1(0), None);
            assert_eq!(rb.count_ones(), selects.len());
        }
    }
}
