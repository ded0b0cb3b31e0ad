//! Subsets of a field as fixed-width bitmasks over canonical indices.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::field::Elem;

type Words = SmallVec<[u64; 2]>;

/// A subset of `F_q`, `q` bits wide.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: u32,
    words: Words,
}

impl ElementSet {
    pub fn empty(universe: u32) -> Self {
        let n = (universe as usize).div_ceil(64);
        ElementSet {
            universe,
            words: SmallVec::from_elem(0, n),
        }
    }

    /// The whole field.
    pub fn full(universe: u32) -> Self {
        let mut s = Self::empty(universe);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.clear_tail();
        s
    }

    pub fn from_iter(universe: u32, items: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(universe);
        for x in items {
            s.insert(x);
        }
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.universe % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the ambient field.
    pub fn universe(&self) -> u32 {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, x: Elem) -> bool {
        let i = x.index() as usize;
        assert!(i < self.universe as usize, "element {i} outside universe");
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: Elem) -> bool {
        let i = x.index() as usize;
        if i >= self.universe as usize {
            return false;
        }
        let (w, b) = (i / 64, i % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        let i = x.index() as usize;
        i < self.universe as usize && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    /// Cardinality, as the popcount of the mask.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(Elem::from_index(wi as u32 * 64 + b))
            })
        })
    }

    pub fn indices(&self) -> Vec<u32> {
        self.iter().map(Elem::index).collect()
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(self.universe, other.universe, "sets over different fields");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_universe(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_universe(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_universe(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// `A* = A \ {0}`.
    pub fn without_zero(&self) -> Self {
        let mut out = self.clone();
        out.remove(Elem::ZERO);
        out
    }

    /// Low 64 bits of the mask; the whole mask when `q <= 64`.
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter().map(Elem::index)).finish()
    }
}

/// Serializes as the sorted list of member indices.
impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for x in self.iter() {
            seq.serialize_element(&x.index())?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(universe: u32, xs: &[u32]) -> ElementSet {
        ElementSet::from_iter(universe, xs.iter().map(|&i| Elem::from_index(i)))
    }

    #[test]
    fn basic_algebra() {
        let a = set(70, &[0, 3, 64, 69]);
        let b = set(70, &[3, 5, 69]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.union(&b).indices(), vec![0, 3, 5, 64, 69]);
        assert_eq!(a.intersection(&b).indices(), vec![3, 69]);
        assert_eq!(a.difference(&b).indices(), vec![0, 64]);
        assert_eq!(a.complement().len(), 66);
        assert!(set(70, &[3]).is_subset(&b));
        assert!(!a.is_subset(&b));
        assert_eq!(a.without_zero().indices(), vec![3, 64, 69]);
        assert_eq!(ElementSet::full(70).len(), 70);
        assert!(ElementSet::empty(5).is_empty());
    }

    #[test]
    fn serializes_sorted() {
        let s = set(9, &[7, 1, 4]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,4,7]");
    }

    proptest! {
        #[test]
        fn cardinality_is_popcount(universe in 1u32..300, xs in proptest::collection::vec(0u32..300, 0..50)) {
            let xs: Vec<u32> = xs.into_iter().filter(|&x| x < universe).collect();
            let s = set(universe, &xs);
            let mut uniq = xs.clone();
            uniq.sort_unstable();
            uniq.dedup();
            prop_assert_eq!(s.len(), uniq.len());
            prop_assert_eq!(s.indices(), uniq);
            prop_assert_eq!(s.complement().len() + s.len(), universe as usize);
        }
    }
}
