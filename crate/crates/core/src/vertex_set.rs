//! Fixed-width vertex sets.
//!
//! Every structure in the crate lives on at most [`MAX_VERTICES`] vertices, so a
//! vertex set is a single `u64` word. Iteration is always in increasing index
//! order, which keeps every search in the crate deterministic.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Upper bound on the number of vertices of any polytope or graph.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, 1, ..., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// The set `{start, ..., start + len - 1}`.
    #[inline]
    pub fn range(start: usize, len: usize) -> Self {
        VertexSet(Self::full(len).0 << start)
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Largest member plus one, or 0 for the empty set.
    #[inline]
    pub fn upper_bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Shifts every member up by `offset`.
    #[inline]
    pub fn shifted(self, offset: usize) -> Self {
        debug_assert!(self.upper_bound() + offset <= MAX_VERTICES);
        if self.0 == 0 {
            self
        } else {
            VertexSet(self.0 << offset)
        }
    }

    #[inline]
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted member lists.
    pub fn cmp_lex(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = members.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex index {v} exceeds the supported maximum of {}",
                MAX_VERTICES - 1
            )));
        }
        Ok(members.into_iter().collect())
    }
}

/// Calls `f` on every `size`-subset of `pool` in colexicographic order.
/// Stops early and returns `true` as soon as `f` returns `true`.
pub fn any_subset_colex(pool: &[usize], size: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if size > pool.len() {
        return false;
    }
    // colex order on index tuples c[0] < c[1] < ... : advance the lowest index that can move
    let mut idx: Vec<usize> = (0..size).collect();
    let mut chosen: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        if f(&chosen) {
            return true;
        }
        let mut j = 0;
        while j < size {
            let limit = if j + 1 < size { idx[j + 1] } else { pool.len() };
            if idx[j] + 1 < limit {
                break;
            }
            j += 1;
        }
        if j == size {
            return false;
        }
        idx[j] += 1;
        for (i, slot) in idx.iter_mut().enumerate().take(j) {
            *slot = i;
        }
        for i in 0..=j {
            chosen[i] = pool[idx[i]];
        }
    }
}

/// All `size`-subsets of `pool` in colexicographic order.
pub fn subsets_colex(pool: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    any_subset_colex(pool, size, |s| {
        out.push(s.to_vec());
        false
    });
    out
}
