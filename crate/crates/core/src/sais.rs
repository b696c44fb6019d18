//! Induced-sorting suffix array construction (SA-IS).
//!
//! Sorts all suffixes of a sequence that ends with a unique smallest symbol.
//! The reduced problem of each recursion level is stored inside the output
//! buffer itself, so the extra working memory per level is the type bitmap
//! (n bits) plus two bucket arrays of sigma words.

const EMPTY: u32 = u32::MAX;

pub(crate) trait Symbol: Copy {
    fn idx(self) -> usize;
}

impl Symbol for u8 {
    #[inline]
    fn idx(self) -> usize {
        self as usize
    }
}

impl Symbol for u32 {
    #[inline]
    fn idx(self) -> usize {
        self as usize
    }
}

/// S/L type classification, bit-packed. A set bit marks an S-type position.
struct TypeMap {
    words: Vec<u64>,
}

impl TypeMap {
    fn classify<S: Symbol>(s: &[S]) -> Self {
        let n = s.len();
        let mut t = TypeMap {
            words: vec![0u64; n.div_ceil(64)],
        };
        t.set(n - 1);
        for i in (0..n - 1).rev() {
            let a = s[i].idx();
            let b = s[i + 1].idx();
            if a < b || (a == b && t.is_s(i + 1)) {
                t.set(i);
            }
        }
        t
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    fn is_s(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 != 0
    }

    /// Left-most S-type: an S position whose predecessor is L-type.
    #[inline]
    fn is_lms(&self, i: usize) -> bool {
        i > 0 && self.is_s(i) && !self.is_s(i - 1)
    }
}

fn count_symbols<S: Symbol>(s: &[S], sigma: usize) -> Vec<u32> {
    let mut counts = vec![0u32; sigma];
    for &c in s {
        counts[c.idx()] += 1;
    }
    counts
}

fn bucket_heads(counts: &[u32], bkt: &mut [u32]) {
    let mut sum = 0u32;
    for (b, &c) in bkt.iter_mut().zip(counts) {
        *b = sum;
        sum += c;
    }
}

/// One past the end of each bucket; placement pre-decrements.
fn bucket_tails(counts: &[u32], bkt: &mut [u32]) {
    let mut sum = 0u32;
    for (b, &c) in bkt.iter_mut().zip(counts) {
        sum += c;
        *b = sum;
    }
}

fn induce_l<S: Symbol>(s: &[S], sa: &mut [u32], types: &TypeMap, counts: &[u32], bkt: &mut [u32]) {
    bucket_heads(counts, bkt);
    for i in 0..sa.len() {
        let j = sa[i];
        if j == EMPTY || j == 0 {
            continue;
        }
        let p = (j - 1) as usize;
        if !types.is_s(p) {
            let c = s[p].idx();
            sa[bkt[c] as usize] = p as u32;
            bkt[c] += 1;
        }
    }
}

fn induce_s<S: Symbol>(s: &[S], sa: &mut [u32], types: &TypeMap, counts: &[u32], bkt: &mut [u32]) {
    bucket_tails(counts, bkt);
    for i in (0..sa.len()).rev() {
        let j = sa[i];
        if j == EMPTY || j == 0 {
            continue;
        }
        let p = (j - 1) as usize;
        if types.is_s(p) {
            let c = s[p].idx();
            bkt[c] -= 1;
            sa[bkt[c] as usize] = p as u32;
        }
    }
}

/// Compares the LMS substrings starting at `a` and `b` (both LMS positions).
///
/// An LMS substring runs up to and including the next LMS position. Equal
/// symbol content of equal length implies equal internal types, because the
/// classification is determined backwards from the shared S-type endpoint.
fn lms_substring_eq<S: Symbol>(s: &[S], types: &TypeMap, a: usize, b: usize) -> bool {
    let n = s.len();
    if a == b {
        return true;
    }
    if s[a].idx() != s[b].idx() {
        return false;
    }
    let mut i = 1;
    loop {
        let pa = a + i;
        let pb = b + i;
        // only the sentinel substring touches the end, and it is unique
        if pa == n || pb == n {
            return false;
        }
        let ea = types.is_lms(pa);
        let eb = types.is_lms(pb);
        if ea != eb {
            return false;
        }
        if s[pa].idx() != s[pb].idx() {
            return false;
        }
        if ea && eb {
            return true;
        }
        i += 1;
    }
}

/// Computes the suffix array of `s` into `sa`.
///
/// `s` must end with a unique symbol of rank 0 and `sa.len() == s.len()`.
pub(crate) fn sort_suffixes<S: Symbol>(s: &[S], sigma: usize, sa: &mut [u32]) {
    let n = s.len();
    debug_assert_eq!(n, sa.len());
    match n {
        0 => return,
        1 => {
            sa[0] = 0;
            return;
        }
        2 => {
            // the sentinel suffix is the smaller one
            sa[0] = 1;
            sa[1] = 0;
            return;
        }
        _ => {}
    }

    let types = TypeMap::classify(s);
    let counts = count_symbols(s, sigma);
    let mut bkt = vec![0u32; sigma];

    // Stage 1: sort the LMS substrings by seeding bucket tails and inducing.
    sa.fill(EMPTY);
    bucket_tails(&counts, &mut bkt);
    for i in (1..n).rev() {
        if types.is_lms(i) {
            let c = s[i].idx();
            bkt[c] -= 1;
            sa[bkt[c] as usize] = i as u32;
        }
    }
    induce_l(s, sa, &types, &counts, &mut bkt);
    induce_s(s, sa, &types, &counts, &mut bkt);

    // Compact LMS positions, now in sorted LMS-substring order.
    let mut n1 = 0usize;
    for i in 0..n {
        let j = sa[i];
        if j != EMPTY && types.is_lms(j as usize) {
            sa[n1] = j;
            n1 += 1;
        }
    }

    // Name the LMS substrings. sa[n1..] is the scratch area; names are
    // parked at position/2 which is injective for LMS positions.
    sa[n1..].fill(EMPTY);
    let mut names = 0u32;
    let mut prev = EMPTY;
    for k in 0..n1 {
        let pos = sa[k] as usize;
        let same = prev != EMPTY && lms_substring_eq(s, &types, prev as usize, pos);
        if !same {
            names += 1;
        }
        prev = pos as u32;
        sa[n1 + pos / 2] = names - 1;
    }

    // Pack the names into the reduced string s1 = sa[n - n1 ..] in text order.
    let mut w = n;
    for i in (n1..n).rev() {
        if sa[i] != EMPTY {
            w -= 1;
            sa[w] = sa[i];
        }
    }
    debug_assert_eq!(w, n - n1);

    if (names as usize) < n1 {
        let (head, s1) = sa.split_at_mut(n - n1);
        sort_suffixes::<u32>(s1, names as usize, &mut head[..n1]);
    } else {
        // all names unique: the reduced suffix array is the inverse ranking
        for i in 0..n1 {
            let r = sa[n - n1 + i] as usize;
            sa[r] = i as u32;
        }
    }

    // Map reduced indexes back to LMS text positions, using s1's slots to
    // hold the LMS positions in text order.
    {
        let mut w = n - n1;
        for i in 1..n {
            if types.is_lms(i) {
                sa[w] = i as u32;
                w += 1;
            }
        }
        debug_assert_eq!(w, n);
    }
    for i in 0..n1 {
        sa[i] = sa[n - n1 + sa[i] as usize];
    }

    // Stage 3: place the now fully sorted LMS suffixes and induce the rest.
    sa[n1..].fill(EMPTY);
    bucket_tails(&counts, &mut bkt);
    for k in (0..n1).rev() {
        let j = sa[k];
        sa[k] = EMPTY;
        let c = s[j as usize].idx();
        bkt[c] -= 1;
        sa[bkt[c] as usize] = j;
    }
    induce_l(s, sa, &types, &counts, &mut bkt);
    induce_s(s, sa, &types, &counts, &mut bkt);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(s: &[u8]) -> Vec<u32> {
        let mut idx: Vec<u32> = (0..s.len() as u32).collect();
        idx.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        idx
    }

    fn run(s: &[u8]) -> Vec<u32> {
        let mut sa = vec![0u32; s.len()];
        sort_suffixes(s, 256, &mut sa);
        sa
    }

    #[test]
    fn banana() {
        assert_eq!(run(b"banana\x00"), vec![6, 5, 3, 1, 0, 4, 2]);
    }

    #[test]
    fn tiny() {
        assert_eq!(run(b"\x00"), vec![0]);
        assert_eq!(run(b"a\x00"), vec![1, 0]);
        assert_eq!(run(b"ab\x00"), vec![2, 0, 1]);
        assert_eq!(run(b"ba\x00"), vec![2, 1, 0]);
    }

    #[test]
    fn exhaustive_binary_up_to_9() {
        for n in 1..=9usize {
            for mask in 0..(1u32 << n) {
                let mut s: Vec<u8> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { b'b' } else { b'a' })
                    .collect();
                s.push(0);
                assert_eq!(run(&s), naive(&s), "text {:?}", s);
            }
        }
    }

    #[test]
    fn repetitive_and_runs() {
        for s in [
            &b"aaaaaaaaaaaaaaaa\x00"[..],
            b"abababababababab\x00",
            b"abcabcabcabcabc\x00",
            b"mississippi\x00",
            b"zyxwvutsrqponml\x00",
        ] {
            assert_eq!(run(s), naive(s), "text {:?}", s);
        }
    }

    #[test]
    fn fibonacci_word() {
        // deep LMS recursion case
        let mut a = b"a".to_vec();
        let mut b = b"ab".to_vec();
        for _ in 0..12 {
            let next = [b.as_slice(), a.as_slice()].concat();
            a = b;
            b = next;
        }
        b.push(0);
        assert_eq!(run(&b), naive(&b));
    }
}
