//! Suffix array construction, inversion, and next-smaller-value computation.
//!
//! All arrays store 1-based positions: `sa[i]` (0-based slot `i`) is the
//! 1-based start of the rank-`i+1` suffix.

use crate::error::{Error, Result};
use crate::lyndon::LyndonArray;
use crate::sais;
use crate::text::Text;

/// Lexicographic order of all suffix start positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArray {
    sa: Vec<u32>,
}

impl SuffixArray {
    /// Wraps a raw permutation of 1..=n, validating it.
    pub fn from_values(sa: Vec<u32>) -> Result<Self> {
        validate_permutation(&sa, "suffix array")?;
        Ok(SuffixArray { sa })
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// 1-based suffix start at rank `i` (1-based).
    pub fn at(&self, i: usize) -> u32 {
        self.sa[i - 1]
    }

    pub fn values(&self) -> &[u32] {
        &self.sa
    }

    pub fn into_values(self) -> Vec<u32> {
        self.sa
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSuffixArray {
    isa: Vec<u32>,
}

impl InverseSuffixArray {
    pub fn len(&self) -> usize {
        self.isa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.isa.is_empty()
    }

    /// Lexicographic rank of the suffix starting at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.isa[i - 1]
    }

    pub fn values(&self) -> &[u32] {
        &self.isa
    }

    pub fn into_values(self) -> Vec<u32> {
        self.isa
    }
}

/// Next-smaller-value positions; `nsv[i] = n+1` when no smaller value follows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsvArray {
    nsv: Vec<u32>,
}

impl NsvArray {
    pub fn len(&self) -> usize {
        self.nsv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nsv.is_empty()
    }

    pub fn at(&self, i: usize) -> u32 {
        self.nsv[i - 1]
    }

    pub fn values(&self) -> &[u32] {
        &self.nsv
    }

    pub fn into_values(self) -> Vec<u32> {
        self.nsv
    }
}

/// Builds the suffix array by induced sorting in O(n) time.
pub fn build_sa(t: &Text) -> SuffixArray {
    let n = t.len();
    let mut sa = vec![0u32; n];
    sais::sort_suffixes(t.bytes(), 256, &mut sa);
    // shift to 1-based positions in place
    for v in &mut sa {
        *v += 1;
    }
    SuffixArray { sa }
}

/// Comparison-sort oracle for [`build_sa`]; quadratic-ish, test/debug use.
pub fn build_sa_naive(t: &Text) -> SuffixArray {
    let bytes = t.bytes();
    let mut sa: Vec<u32> = (1..=t.len() as u32).collect();
    sa.sort_by(|&a, &b| bytes[(a - 1) as usize..].cmp(&bytes[(b - 1) as usize..]));
    SuffixArray { sa }
}

fn validate_permutation(values: &[u32], context: &'static str) -> Result<()> {
    let n = values.len();
    let mut seen = vec![0u64; n.div_ceil(64)];
    for &v in values {
        if v == 0 || v as usize > n {
            return Err(Error::PermutationViolation { context, len: n });
        }
        let p = (v - 1) as usize;
        if seen[p >> 6] >> (p & 63) & 1 != 0 {
            return Err(Error::PermutationViolation { context, len: n });
        }
        seen[p >> 6] |= 1 << (p & 63);
    }
    Ok(())
}

/// Inverts a suffix array: `isa[sa[i]] = i`.
pub fn invert_sa(sa: &SuffixArray) -> Result<InverseSuffixArray> {
    let n = sa.len();
    validate_permutation(&sa.sa, "invert_sa input")?;
    let mut isa = vec![0u32; n];
    for (i, &v) in sa.sa.iter().enumerate() {
        isa[(v - 1) as usize] = (i + 1) as u32;
    }
    Ok(InverseSuffixArray { isa })
}

/// Replaces each slot of `a` with the 1-based position of the next strictly
/// smaller value to its right (`n+1` when there is none).
///
/// Single left-to-right pass; the stack keeps positions whose values form a
/// non-decreasing chain, so each slot is pushed and popped at most once.
pub fn nsv_inplace(a: &mut [u32]) {
    let n = a.len();
    let mut stack: Vec<(u32, u32)> = Vec::new(); // (1-based position, value)
    for i in 1..=n {
        let v = a[i - 1];
        while let Some(&(p, pv)) = stack.last() {
            if pv > v {
                a[(p - 1) as usize] = i as u32;
                stack.pop();
            } else {
                break;
            }
        }
        stack.push((i as u32, v));
    }
    for (p, _) in stack {
        a[(p - 1) as usize] = (n + 1) as u32;
    }
}

/// Non-destructive [`nsv_inplace`].
pub fn compute_nsv(a: &[u32]) -> NsvArray {
    let mut nsv = a.to_vec();
    nsv_inplace(&mut nsv);
    NsvArray { nsv }
}

/// Lyndon array via the NSV route: `lambda[i] = NSV_ISA[i] - i`.
///
/// NSV overwrites the ISA buffer and lambda overwrites the SA buffer, so the
/// pipeline peaks at the text plus two integer arrays.
pub fn lyndon_from_nsv(t: &Text) -> LyndonArray {
    let sa = build_sa(t);
    let isa = invert_sa(&sa).expect("freshly built SA is a permutation");
    let mut nsv = isa.into_values();
    nsv_inplace(&mut nsv);
    let mut lam = sa.into_values();
    lambda_from_nsv_into(&nsv, &mut lam);
    LyndonArray::from_values(lam)
}

/// Writes `lambda[i] = nsv[i] - i` into `out` (any prior contents overwritten).
pub fn lambda_from_nsv_into(nsv: &[u32], out: &mut [u32]) {
    debug_assert_eq!(nsv.len(), out.len());
    for (i, (&v, slot)) in nsv.iter().zip(out.iter_mut()).enumerate() {
        *slot = v - (i + 1) as u32;
    }
}
