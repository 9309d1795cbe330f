//! Unsigned integer arithmetic abstraction for the enumeration kernels.
//!
//! Hot loops run on `u128` whenever `2 * total` fits; otherwise they fall back
//! to `BigUint`. Both paths produce identical results.

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

pub(crate) trait Word: Clone + Ord + Debug + Send + Sync {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    /// `self - other`; callers guarantee `self >= other`.
    fn sub(&self, other: &Self) -> Self;
    fn abs_diff(&self, other: &Self) -> Self;
    fn double(&self) -> Self;
    fn from_big(v: &BigUint) -> Self;
    fn to_big(&self) -> BigUint;
}

impl Word for u128 {
    #[inline]
    fn zero() -> Self {
        0
    }
    #[inline]
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    #[inline]
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    #[inline]
    fn abs_diff(&self, other: &Self) -> Self {
        u128::abs_diff(*self, *other)
    }
    #[inline]
    fn double(&self) -> Self {
        self << 1
    }
    fn from_big(v: &BigUint) -> Self {
        v.to_u128().expect("value fits in u128")
    }
    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Word for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self - other
        } else {
            other - self
        }
    }
    fn double(&self) -> Self {
        self << 1usize
    }
    fn from_big(v: &BigUint) -> Self {
        v.clone()
    }
    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

/// Enumerates every configuration of one chunk of the canonical half-space
/// (spin 0 up) in Gray-code order, calling `visit(mask, up_sum)` once per mask.
///
/// The free spins `1..n` are split into `low_bits` Gray-coded bits and the
/// remaining high bits, which are fixed to `chunk`.
pub(crate) fn for_each_canonical<W: Word>(
    weights: &[W],
    chunk: u64,
    low_bits: u32,
    mut visit: impl FnMut(u64, &W),
) {
    let n = weights.len();
    debug_assert!(n >= 1 && (low_bits as usize) < n);
    let mut mask = 1u64 | (chunk << (1 + low_bits));
    let mut sum = weights[0].clone();
    for (i, w) in weights.iter().enumerate().skip(1 + low_bits as usize) {
        if mask >> i & 1 == 1 {
            sum = sum.add(w);
        }
    }
    visit(mask, &sum);
    for step in 1u64..(1u64 << low_bits) {
        let bit = 1 + step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        sum = if mask >> bit & 1 == 1 {
            sum.add(&weights[bit])
        } else {
            sum.sub(&weights[bit])
        };
        visit(mask, &sum);
    }
}

/// Splits the `n - 1` free spins into (chunk count, Gray bits per chunk).
pub(crate) fn chunking(n: usize) -> (u64, u32) {
    let free = (n - 1) as u32;
    let high = free.min(6);
    (1u64 << high, free - high)
}
