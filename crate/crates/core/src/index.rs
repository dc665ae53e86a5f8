//! Integer vectors and rectangular lattice boxes.
//!
//! [`MultiIndex`] is used both for grading vectors in ℤ^s (the `n`, `m`, `e`,
//! `α` of a filtration) and, through [`crate::Monomial`], for exponent
//! vectors in ℕ^d. Its arity is part of the value: comparing or adding
//! vectors of different arity is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub(crate) type Components = SmallVec<[i64; 4]>;

/// A fixed-arity vector of integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Components);

impl MultiIndex {
    pub fn new(components: impl Into<Vec<i64>>) -> Self {
        let v: Vec<i64> = components.into();
        assert!(!v.is_empty(), "MultiIndex arity must be at least 1");
        MultiIndex(SmallVec::from_vec(v))
    }

    pub fn from_slice(components: &[i64]) -> Self {
        assert!(
            !components.is_empty(),
            "MultiIndex arity must be at least 1"
        );
        MultiIndex(SmallVec::from_slice(components))
    }

    pub fn zero(arity: usize) -> Self {
        Self::splat(arity, 0)
    }

    /// The all-`value` vector; `splat(s, 1)` is `e`.
    pub fn splat(arity: usize, value: i64) -> Self {
        assert!(arity >= 1, "MultiIndex arity must be at least 1");
        MultiIndex(SmallVec::from_elem(value, arity))
    }

    /// The standard basis vector `e_i`.
    pub fn unit(arity: usize, i: usize) -> Self {
        let mut v = Self::zero(arity);
        v.0[i] = 1;
        v
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    /// Componentwise `max(·, 0)`.
    pub fn plus_part(&self) -> Self {
        MultiIndex(self.0.iter().map(|&x| x.max(0)).collect())
    }

    /// `|α|`, the sum of the components.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn has_negative(&self) -> bool {
        !self.is_nonnegative()
    }

    /// Componentwise `self ≥ other`.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.check_arity(other);
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    /// The partial order; `None` when incomparable.
    pub fn partial_cmp_componentwise(&self, other: &MultiIndex) -> Option<Ordering> {
        match (self.dominates(other), other.dominates(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    pub fn componentwise_min(&self, other: &MultiIndex) -> Self {
        self.check_arity(other);
        MultiIndex(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn componentwise_max(&self, other: &MultiIndex) -> Self {
        self.check_arity(other);
        MultiIndex(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn with_component(&self, i: usize, value: i64) -> Self {
        let mut v = self.clone();
        v.0[i] = value;
        v
    }

    pub fn offset(&self, i: usize, delta: i64) -> Self {
        let mut v = self.clone();
        v.0[i] += delta;
        v
    }

    /// `self + k·e`.
    pub fn shift_all(&self, k: i64) -> Self {
        MultiIndex(self.0.iter().map(|&x| x + k).collect())
    }

    fn check_arity(&self, other: &MultiIndex) {
        assert_eq!(
            self.arity(),
            other.arity(),
            "arity mismatch: {self} vs {other}"
        );
    }

    /// Parses `"a,b,c"`.
    pub fn parse_list(text: &str) -> Result<Self, String> {
        let parts: Result<Vec<i64>, _> = text.split(',').map(|p| p.trim().parse::<i64>()).collect();
        match parts {
            Ok(v) if !v.is_empty() => Ok(MultiIndex::new(v)),
            Ok(_) => Err("empty vector".into()),
            Err(e) => Err(format!("invalid vector {text:?}: {e}")),
        }
    }

    /// `"a,b,c"`; the key format used for coefficient maps in JSON.
    pub fn to_key(&self) -> String {
        self.0
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Index<usize> for MultiIndex {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        self.check_arity(rhs);
        MultiIndex(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &MultiIndex {
    type Output = MultiIndex;
    fn sub(self, rhs: &MultiIndex) -> MultiIndex {
        self.check_arity(rhs);
        MultiIndex(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_key())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(v: Vec<i64>) -> Self {
        MultiIndex::new(v)
    }
}

impl<const N: usize> From<[i64; N]> for MultiIndex {
    fn from(v: [i64; N]) -> Self {
        MultiIndex::from_slice(&v)
    }
}

/// An inclusive lattice box `[lo, hi]` in ℤ^s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridBox {
    pub lo: MultiIndex,
    pub hi: MultiIndex,
}

impl GridBox {
    pub fn new(lo: MultiIndex, hi: MultiIndex) -> Self {
        assert_eq!(lo.arity(), hi.arity(), "box corners differ in arity");
        GridBox { lo, hi }
    }

    /// `[0, hi]`.
    pub fn up_to(hi: MultiIndex) -> Self {
        let lo = MultiIndex::zero(hi.arity());
        GridBox::new(lo, hi)
    }

    pub fn arity(&self) -> usize {
        self.lo.arity()
    }

    pub fn is_empty(&self) -> bool {
        !self.hi.dominates(&self.lo)
    }

    pub fn side(&self, i: usize) -> usize {
        (self.hi[i] - self.lo[i] + 1).max(0) as usize
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        (0..self.arity()).map(|i| self.side(i)).product()
    }

    pub fn contains(&self, n: &MultiIndex) -> bool {
        n.dominates(&self.lo) && self.hi.dominates(n)
    }

    /// The box grown by `k` along every upper edge.
    pub fn extend_upper(&self, k: i64) -> Self {
        GridBox::new(self.lo.clone(), self.hi.shift_all(k))
    }

    /// Row-major position of `n` (last coordinate varies fastest).
    pub fn linear_index(&self, n: &MultiIndex) -> Option<usize> {
        if !self.contains(n) {
            return None;
        }
        let mut idx = 0usize;
        for i in 0..self.arity() {
            idx = idx * self.side(i) + (n[i] - self.lo[i]) as usize;
        }
        Some(idx)
    }

    /// Inverse of [`GridBox::linear_index`].
    pub fn point_at(&self, mut idx: usize) -> MultiIndex {
        let s = self.arity();
        let mut v = vec![0i64; s];
        for i in (0..s).rev() {
            let side = self.side(i);
            v[i] = self.lo[i] + (idx % side) as i64;
            idx /= side;
        }
        MultiIndex::new(v)
    }

    /// All points in row-major order.
    pub fn points(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        (0..self.len()).map(move |i| self.point_at(i))
    }
}

impl fmt::Display for GridBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Keeps the ≤-minimal elements of `points`, sorted.
pub fn minimal_elements(points: impl IntoIterator<Item = MultiIndex>) -> Vec<MultiIndex> {
    let mut pts: Vec<MultiIndex> = points.into_iter().collect();
    pts.sort_by_key(|p| (p.total(), p.clone()));
    pts.dedup();
    let mut kept: Vec<MultiIndex> = Vec::new();
    for p in pts {
        if !kept.iter().any(|k| p.dominates(k)) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_part_and_order() {
        let n = MultiIndex::from([-3, 2, 0]);
        assert_eq!(n.plus_part(), MultiIndex::from([0, 2, 0]));
        assert!(MultiIndex::from([1, 2]).dominates(&MultiIndex::from([1, 1])));
        assert_eq!(
            MultiIndex::from([1, 0]).partial_cmp_componentwise(&MultiIndex::from([0, 1])),
            None
        );
    }

    #[test]
    fn box_linear_index_roundtrip() {
        let b = GridBox::new(MultiIndex::from([-2, -1]), MultiIndex::from([3, 4]));
        assert_eq!(b.len(), 36);
        for (i, p) in b.points().enumerate() {
            assert_eq!(b.linear_index(&p), Some(i));
        }
        assert_eq!(b.point_at(0), MultiIndex::from([-2, -1]));
        assert_eq!(b.point_at(1), MultiIndex::from([-2, 0]));
    }

    #[test]
    fn minimal_elements_antichain() {
        let pts = vec![
            MultiIndex::from([2, 2]),
            MultiIndex::from([1, 3]),
            MultiIndex::from([3, 0]),
            MultiIndex::from([1, 1]),
            MultiIndex::from([1, 1]),
        ];
        assert_eq!(
            minimal_elements(pts),
            vec![MultiIndex::from([1, 1]), MultiIndex::from([3, 0])]
        );
    }

    #[test]
    #[should_panic]
    fn arity_mismatch_panics() {
        let _ = MultiIndex::from([1, 2]).dominates(&MultiIndex::from([1]));
    }
}
