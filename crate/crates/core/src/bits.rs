//! Fixed-capacity element bitsets.
//!
//! Every subset of a ground set is stored as a mask of element indices. The
//! capacity is [`MAX_GROUND`] elements, which covers every construction the
//! crate performs at desk scale (the largest tree family exercised in the test
//! suite has 340 edges). Hot exhaustive loops that only ever see tiny ground
//! sets use plain `u64` masks through the crate-internal [`Bits`] trait so the
//! same algorithm code serves both representations.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{BitAnd, BitOr, Sub};

const WORDS: usize = 8;

/// Largest supported ground set.
pub const MAX_GROUND: usize = WORDS * 64;

/// A subset of the ground set of some [`SetSystem`](crate::SetSystem).
///
/// Equality is set equality. The `Ord` instance is the lexicographic order of
/// the ascending element lists, so `{0} < {0,1} < {1}` and `∅` is least.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSubset {
    words: [u64; WORDS],
}

impl ElementSubset {
    pub const fn empty() -> Self {
        ElementSubset { words: [0; WORDS] }
    }

    /// Builds a subset from element indices.
    ///
    /// # Panics
    /// If an index is `>= MAX_GROUND`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut set = Self::empty();
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// The first `n` elements.
    pub fn full(n: usize) -> Self {
        Self::from_indices(0..n)
    }

    /// Interprets the low `n` bits of `mask` as element indices.
    pub fn from_mask(mask: u64) -> Self {
        let mut set = Self::empty();
        set.words[0] = mask;
        set
    }

    /// The subset as a `u64` mask, if every element is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        if self.words[1..].iter().all(|&w| w == 0) {
            Some(self.words[0])
        } else {
            None
        }
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_GROUND, "element index {i} exceeds capacity {MAX_GROUND}");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < MAX_GROUND {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    pub fn contains(&self, i: usize) -> bool {
        i < MAX_GROUND && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    /// Least element, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    /// Greatest element, if any.
    pub fn last(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Ascending element indices.
    pub fn iter(&self) -> Elements {
        Elements {
            words: self.words,
            word: 0,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let mut words = [0; WORDS];
        for (k, w) in words.iter_mut().enumerate() {
            *w = f(self.words[k], other.words[k]);
        }
        ElementSubset { words }
    }
}

pub struct Elements {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl<'a> IntoIterator for &'a ElementSubset {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl FromIterator<usize> for ElementSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

impl BitAnd for ElementSubset {
    type Output = ElementSubset;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(&rhs)
    }
}

impl BitOr for ElementSubset {
    type Output = ElementSubset;
    fn bitor(self, rhs: Self) -> Self {
        self.union(&rhs)
    }
}

impl Sub for ElementSubset {
    type Output = ElementSubset;
    fn sub(self, rhs: Self) -> Self {
        self.difference(&rhs)
    }
}

impl Ord for ElementSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.difference(other).union(&other.difference(self));
        let Some(pivot) = diff.first() else {
            return Ordering::Equal;
        };
        // Both lists agree below `pivot`; whoever holds `pivot` is smaller
        // unless the other list has already run out.
        let (holder, other_side) = if self.contains(pivot) {
            (Ordering::Less, other)
        } else {
            (Ordering::Greater, self)
        };
        let other_continues = other_side.last().is_some_and(|m| m > pivot);
        if other_continues {
            holder
        } else {
            holder.reverse()
        }
    }
}

impl PartialOrd for ElementSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl serde::Serialize for ElementSubset {
    /// Serialises as the ascending list of element indices.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Common surface of [`ElementSubset`] and raw `u64` masks.
pub(crate) trait Bits: Copy + Eq + Hash + Send + Sync + fmt::Debug {
    fn and(self, other: Self) -> Self;
    fn or(self, other: Self) -> Self;
    fn minus(self, other: Self) -> Self;
    fn subset_of(self, other: Self) -> bool;
    fn count(self) -> usize;
    fn lex_cmp(&self, other: &Self) -> Ordering;
}

impl Bits for ElementSubset {
    fn and(self, other: Self) -> Self {
        self.intersection(&other)
    }
    fn or(self, other: Self) -> Self {
        self.union(&other)
    }
    fn minus(self, other: Self) -> Self {
        self.difference(&other)
    }
    fn subset_of(self, other: Self) -> bool {
        self.is_subset(&other)
    }
    fn count(self) -> usize {
        self.len()
    }
    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl Bits for u64 {
    fn and(self, other: Self) -> Self {
        self & other
    }
    fn or(self, other: Self) -> Self {
        self | other
    }
    fn minus(self, other: Self) -> Self {
        self & !other
    }
    fn subset_of(self, other: Self) -> bool {
        self & !other == 0
    }
    fn count(self) -> usize {
        self.count_ones() as usize
    }
    fn lex_cmp(&self, other: &Self) -> Ordering {
        ElementSubset::from_mask(*self).cmp(&ElementSubset::from_mask(*other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElementSubset {
        xs.iter().copied().collect()
    }

    #[test]
    fn lex_order_matches_sorted_lists() {
        let mut all: Vec<ElementSubset> = (0u64..64).map(ElementSubset::from_mask).collect();
        all.sort();
        let mut lists: Vec<Vec<usize>> = (0u64..64)
            .map(|m| ElementSubset::from_mask(m).iter().collect())
            .collect();
        lists.sort();
        let sorted: Vec<Vec<usize>> = all.iter().map(|s| s.iter().collect()).collect();
        assert_eq!(sorted, lists);
    }

    #[test]
    fn lex_order_across_words() {
        assert!(set(&[3]) < set(&[3, 200]));
        assert!(set(&[3, 200]) < set(&[4]));
        assert!(set(&[]) < set(&[500]));
        assert!(set(&[70, 71]) > set(&[70]));
    }

    #[test]
    fn iteration_and_counts() {
        let s = set(&[0, 63, 64, 300, 511]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 300, 511]);
        assert_eq!(s.len(), 5);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.last(), Some(511));
        assert!(set(&[63, 300]).is_subset(&s));
        assert!(!set(&[1]).is_subset(&s));
        assert_eq!(s.to_mask(), None);
        assert_eq!(set(&[1, 5]).to_mask(), Some(0b100010));
    }
}
