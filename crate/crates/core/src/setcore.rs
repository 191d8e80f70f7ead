//! Subsets of the ground set `[n] = {1..n}` packed into one machine word.
//!
//! Element `i` lives in bit `i - 1`. Levels are enumerated in colexicographic
//! order, which for a fixed cardinality is the same as ascending mask value,
//! so [`rank`] and [`unrank`] are the combinatorial number system.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: u32 = 64;

#[inline]
fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    // field order matters for the derived Ord: colex by mask first
    mask: u64,
    n: u8,
}

impl Subset {
    pub fn empty(n: u32) -> Result<Self> {
        check_ground(n)?;
        Ok(Subset { mask: 0, n: n as u8 })
    }

    /// The whole ground set `[n]`.
    pub fn full(n: u32) -> Result<Self> {
        check_ground(n)?;
        Ok(Subset { mask: full_mask(n), n: n as u8 })
    }

    pub fn from_mask(n: u32, mask: u64) -> Result<Self> {
        check_ground(n)?;
        if mask & !full_mask(n) != 0 {
            return Err(Error::InvalidParameters(format!(
                "mask {mask:#x} has bits outside [{n}]"
            )));
        }
        Ok(Subset { mask, n: n as u8 })
    }

    /// Builds a subset from 1-based elements. Duplicates are rejected.
    pub fn from_elements(n: u32, elements: &[u32]) -> Result<Self> {
        let mut s = Subset::empty(n)?;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::InvalidParameters(format!("element {e} not in [{n}]")));
            }
            if s.contains(e) {
                return Err(Error::InvalidParameters(format!("duplicate element {e}")));
            }
            s.mask |= 1 << (e - 1);
        }
        Ok(s)
    }

    /// The interval `{lo..=hi}`; empty when `lo > hi`.
    pub fn interval(n: u32, lo: u32, hi: u32) -> Result<Self> {
        check_ground(n)?;
        if lo > hi {
            return Subset::empty(n);
        }
        if lo == 0 || hi > n {
            return Err(Error::InvalidParameters(format!("interval {lo}..={hi} not in [{n}]")));
        }
        let mask = full_mask(hi) & !full_mask(lo - 1);
        Ok(Subset { mask, n: n as u8 })
    }

    #[inline]
    pub(crate) fn from_mask_unchecked(n: u32, mask: u64) -> Self {
        debug_assert!(n <= MAX_N && mask & !full_mask(n) == 0);
        Subset { mask, n: n as u8 }
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n as u32
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(&self, element: u32) -> bool {
        element >= 1 && element <= self.n() && self.mask >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset { mask: self.mask | other.mask, n: self.n.max(other.n) }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset { mask: self.mask & other.mask, n: self.n.max(other.n) }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        Subset { mask: self.mask & !other.mask, n: self.n }
    }

    /// `[n]` minus this set.
    pub fn complement(&self) -> Subset {
        Subset { mask: !self.mask & full_mask(self.n()), n: self.n }
    }

    pub fn with(&self, element: u32) -> Subset {
        debug_assert!(element >= 1 && element <= self.n());
        Subset { mask: self.mask | 1 << (element - 1), n: self.n }
    }

    pub fn without(&self, element: u32) -> Subset {
        debug_assert!(element >= 1 && element <= self.n());
        Subset { mask: self.mask & !(1 << (element - 1)), n: self.n }
    }

    pub fn min_element(&self) -> Option<u32> {
        (self.mask != 0).then(|| self.mask.trailing_zeros() + 1)
    }

    /// Ascending 1-based elements.
    pub fn elements(&self) -> Elements {
        Elements { rest: self.mask }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.elements().collect()
    }

    /// The `count` smallest elements, as a subset.
    pub fn lowest(&self, count: u32) -> Subset {
        let mut mask = 0;
        for e in self.elements().take(count as usize) {
            mask |= 1 << (e - 1);
        }
        Subset { mask, n: self.n }
    }
}

pub struct Elements {
    rest: u64,
}

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.rest == 0 {
            return None;
        }
        let bit = self.rest.trailing_zeros();
        self.rest &= self.rest - 1;
        Some(bit + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.rest.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

fn check_ground(n: u32) -> Result<()> {
    if n > MAX_N {
        return Err(Error::InvalidParameters(format!("ground set size {n} exceeds {MAX_N}")));
    }
    Ok(())
}

/// Exact `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow { n, k })?
            / (i + 1) as u128;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow { n, k })
}

/// `C(n, k)` for `n <= 64`, which always fits in a `u64`.
#[inline]
pub(crate) fn choose(n: u32, k: u32) -> u64 {
    debug_assert!(n <= MAX_N);
    binomial(n, k).expect("C(n,k) fits in u64 for n <= 64")
}

/// Iterator over the `k`-subsets of `[n]` in ascending mask order (Gosper's hack).
#[derive(Clone, Debug)]
pub struct KSubsets {
    n: u32,
    next: Option<u128>,
    remaining: u64,
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        let limit = 1u128 << self.n;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ < limit).then_some(succ)
        };
        self.remaining -= 1;
        Some(Subset::from_mask_unchecked(self.n, cur as u64))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for KSubsets {}

pub fn enumerate_k_subsets(n: u32, k: u32) -> Result<KSubsets> {
    check_ground(n)?;
    if k > n {
        return Err(Error::InvalidParameters(format!("k = {k} exceeds n = {n}")));
    }
    Ok(KSubsets {
        n,
        next: Some((1u128 << k) - 1),
        remaining: choose(n, k),
    })
}

/// Colex rank of a `k`-subset: `sum_i C(e_i - 1, i)` over its ascending elements.
pub fn rank(s: &Subset, k: u32) -> Result<u64> {
    if s.len() != k {
        return Err(Error::InvalidParameters(format!(
            "subset {s} has {} elements, expected {k}",
            s.len()
        )));
    }
    Ok(rank_unchecked(s.mask))
}

#[inline]
pub(crate) fn rank_unchecked(mask: u64) -> u64 {
    let mut r = 0;
    let mut rest = mask;
    let mut i = 1;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        r += choose(bit, i);
        i += 1;
    }
    r
}

/// Inverse of [`rank`] on the `k`-th level of `[n]`.
pub fn unrank(index: u64, n: u32, k: u32) -> Result<Subset> {
    check_ground(n)?;
    if k > n {
        return Err(Error::InvalidParameters(format!("k = {k} exceeds n = {n}")));
    }
    let total = choose(n, k);
    if index >= total {
        return Err(Error::InvalidParameters(format!(
            "index {index} out of range for C({n},{k}) = {total}"
        )));
    }
    let mut rest = index;
    let mut mask = 0u64;
    let mut top = n;
    for i in (1..=k).rev() {
        // largest c < top with C(c, i) <= rest
        let mut c = top - 1;
        while choose(c, i) > rest {
            c -= 1;
        }
        rest -= choose(c, i);
        mask |= 1 << c;
        top = c;
    }
    Ok(Subset::from_mask_unchecked(n, mask))
}

/// A list of 2-element subsets of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFamily {
    n: u32,
    pairs: Vec<Subset>,
}

impl PairFamily {
    pub fn new(n: u32, pairs: Vec<Subset>) -> Result<Self> {
        check_ground(n)?;
        if let Some(bad) = pairs.iter().find(|p| p.len() != 2 || p.n() != n) {
            return Err(Error::InvalidParameters(format!("{bad} is not a pair in [{n}]")));
        }
        Ok(PairFamily { n, pairs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn pairs(&self) -> &[Subset] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn union(&self) -> Subset {
        let mask = self.pairs.iter().fold(0, |m, p| m | p.mask());
        Subset::from_mask_unchecked(self.n, mask)
    }

    pub fn spans(&self) -> bool {
        self.union().len() == self.n
    }
}

/// `ceil(n/2)` consecutive pairs covering `[n]`: `{1,2},{3,4},...`, closing
/// with `{n-1,n}` when `n` is odd.
pub fn spanning_pairs(n: u32) -> Result<PairFamily> {
    check_ground(n)?;
    if n < 2 {
        return Err(Error::InvalidParameters(format!("spanning pairs need n >= 2, got {n}")));
    }
    let mut pairs: Vec<Subset> = (1..n)
        .step_by(2)
        .map(|a| Subset::from_mask_unchecked(n, 0b11 << (a - 1)))
        .collect();
    if n % 2 == 1 {
        pairs.push(Subset::from_mask_unchecked(n, 0b11 << (n - 2)));
    }
    Ok(PairFamily { n, pairs })
}

#[inline]
pub fn ceil_half(n: u32) -> u32 {
    n.div_ceil(2)
}
