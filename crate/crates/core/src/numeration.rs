//! Graded-lexicographic numeration of `N^s`.
//!
//! Multi-indices are ordered first by total degree `|k| = k_1 + ... + k_s` and then
//! lexicographically on `(k_1, ..., k_s)`. The resulting enumeration is 1-based:
//! `index_to_multi(s, 1)` is the zero multi-index and `index_to_multi(s, N_d)` is
//! `(d, 0, ..., 0)`, the last multi-index of total degree `d`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{LejaError, Result};

/// An exponent tuple `k = (k_1, ..., k_s)` with `s >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Result<Self> {
        if components.is_empty() {
            return Err(LejaError::ZeroDimension);
        }
        Ok(MultiIndex(components))
    }

    pub fn zero(s: usize) -> Result<Self> {
        MultiIndex::new(vec![0; s])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, j: usize) -> usize {
        self.0[j]
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The indices `start_index..=end_index` of all multi-indices of total degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBlock {
    pub s: usize,
    pub d: usize,
    pub start_index: u64,
    pub end_index: u64,
}

impl DegreeBlock {
    pub fn len(&self) -> u64 {
        self.end_index - self.start_index + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `binom(n, k)` with explicit overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(LejaError::Overflow { n, k })?
            / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return Err(LejaError::Overflow { n, k });
        }
    }
    Ok(acc as u64)
}

/// `N_d = binom(s + d, s)`, the number of multi-indices in `N^s` of total degree at most `d`.
pub fn block_size(s: usize, d: usize) -> Result<u64> {
    if s == 0 {
        return Err(LejaError::ZeroDimension);
    }
    let n = (s as u64)
        .checked_add(d as u64)
        .ok_or(LejaError::Overflow { n: u64::MAX, k: s as u64 })?;
    binomial(n, s as u64)
}

/// `N_{d-1}` with the convention `N_{-1} = 0`.
fn block_size_below(s: usize, d: usize) -> Result<u64> {
    if d == 0 {
        Ok(0)
    } else {
        block_size(s, d - 1)
    }
}

pub fn degree_block(s: usize, d: usize) -> Result<DegreeBlock> {
    let end_index = block_size(s, d)?;
    let start_index = block_size_below(s, d)? + 1;
    Ok(DegreeBlock {
        s,
        d,
        start_index,
        end_index,
    })
}

/// The total degree `d` of the `n`-th multi-index, i.e. the unique `d` with
/// `N_{d-1} < n <= N_d`.
pub fn degree_of_index(s: usize, n: u64) -> Result<usize> {
    if s == 0 {
        return Err(LejaError::ZeroDimension);
    }
    if n == 0 {
        return Err(LejaError::ZeroIndex);
    }
    let mut d = 0;
    while block_size(s, d)? < n {
        d += 1;
    }
    Ok(d)
}

/// Graded-lex comparison.
pub fn compare(k: &MultiIndex, l: &MultiIndex) -> Result<Ordering> {
    if k.dim() != l.dim() {
        return Err(LejaError::DimensionMismatch {
            expected: k.dim(),
            found: l.dim(),
        });
    }
    Ok(k.degree()
        .cmp(&l.degree())
        .then_with(|| k.components().cmp(l.components())))
}

// Number of compositions of `total` into `parts` non-negative parts.
fn compositions(total: usize, parts: usize) -> Result<u64> {
    if parts == 0 {
        return Ok(u64::from(total == 0));
    }
    binomial((total + parts - 1) as u64, (parts - 1) as u64)
}

/// The `n`-th multi-index (1-based) of `N^s` in graded-lex order.
pub fn index_to_multi(s: usize, n: u64) -> Result<MultiIndex> {
    let d = degree_of_index(s, n)?;
    let mut rank = n - block_size_below(s, d)? - 1;
    let mut remaining = d;
    let mut out = Vec::with_capacity(s);
    for j in 0..s - 1 {
        let tail = s - j - 1;
        let mut v = 0;
        loop {
            let count = compositions(remaining - v, tail)?;
            if rank < count {
                break;
            }
            rank -= count;
            v += 1;
        }
        out.push(v);
        remaining -= v;
    }
    out.push(remaining);
    MultiIndex::new(out)
}

/// Inverse of [`index_to_multi`].
pub fn multi_to_index(k: &MultiIndex) -> Result<u64> {
    let s = k.dim();
    let d = k.degree();
    let mut rank = 0u64;
    let mut remaining = d;
    for j in 0..s - 1 {
        let tail = s - j - 1;
        for v in 0..k.get(j) {
            rank += compositions(remaining - v, tail)?;
        }
        remaining -= k.get(j);
    }
    Ok(block_size_below(s, d)? + 1 + rank)
}

/// `k(n + 1)` from `k = k(n)`, by the closed-form case split:
///
/// * `k = (d, 0, ..., 0)` is the last index of its degree block and is followed by
///   `(0, ..., 0, d + 1)`;
/// * otherwise, with `m >= 2` the position of the last nonzero entry,
///   `(k_1, ..., k_m, 0, ..., 0)` is followed by
///   `(k_1, ..., k_{m-2}, k_{m-1} + 1, 0, ..., 0, k_m - 1)`.
pub fn successor(k: &MultiIndex) -> MultiIndex {
    let s = k.dim();
    let mut next = k.components().to_vec();
    match next.iter().rposition(|&c| c > 0) {
        None | Some(0) => {
            let d = k.degree();
            next.iter_mut().for_each(|c| *c = 0);
            next[s - 1] = d + 1;
        }
        Some(m) => {
            let last = next[m];
            next[m] = 0;
            next[m - 1] += 1;
            next[s - 1] = last - 1;
        }
    }
    MultiIndex(next)
}

/// Iterator over `k(1), k(2), ...` using [`successor`].
pub fn enumerate(s: usize) -> Result<impl Iterator<Item = MultiIndex>> {
    let first = MultiIndex::zero(s)?;
    Ok(std::iter::successors(Some(first), |k| Some(successor(k))))
}
