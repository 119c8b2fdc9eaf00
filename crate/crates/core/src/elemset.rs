//! Subsets of a finite group as characteristic bit-vectors indexed by element rank.

use std::fmt;

use crate::group::{Element, Group};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { universe, words: vec![0; universe.div_ceil(WORD).max(1)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.words[i / WORD] |= 1 << (i % WORD);
        }
        s
    }

    pub fn singleton(universe: usize, e: Element) -> Self {
        let mut s = Self::empty(universe);
        s.insert(e);
        s
    }

    pub fn from_elements(universe: usize, elems: impl IntoIterator<Item = Element>) -> Self {
        let mut s = Self::empty(universe);
        for e in elems {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, e: Element) {
        let i = e.rank();
        debug_assert!(i < self.universe);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, e: Element) {
        let i = e.rank();
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    #[inline]
    pub fn contains(&self, e: Element) -> bool {
        let i = e.rank();
        i < self.universe && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(Element::from_rank(wi * WORD + b))
            })
        })
    }

    /// Smallest element by rank.
    pub fn first(&self) -> Option<Element> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// `g + self`.
    pub fn translate(&self, group: &Group, g: Element) -> ElementSet {
        let mut out = ElementSet::empty(self.universe);
        self.translate_into(group, g, &mut out);
        out
    }

    /// ORs `g + self` into `out`.
    #[inline]
    pub fn translate_into(&self, group: &Group, g: Element, out: &mut ElementSet) {
        if g.rank() == 0 {
            out.union_with(self);
            return;
        }
        for x in self.iter() {
            out.insert(group.add(x, g));
        }
    }

    /// The sumset `self + other`.
    pub fn sumset(&self, group: &Group, other: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.universe);
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        for a in small.iter() {
            big.translate_into(group, a, &mut out);
        }
        out
    }

    /// `k · self = {k a : a ∈ self}`.
    pub fn scaled(&self, group: &Group, k: i64) -> ElementSet {
        ElementSet::from_elements(self.universe, self.iter().map(|a| group.scale(k, a)))
    }

    pub fn negated(&self, group: &Group) -> ElementSet {
        self.scaled(group, -1)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.iter().map(|e| e.rank()).collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.rank())).finish()
    }
}
