//! Fixed-capacity vertex sets backed by `u64` words.
//!
//! Graphs at desk scale stay in the hundreds of vertices, so one or a few
//! words per set is the common case. Capacity is fixed at construction;
//! operations between sets of different capacity panic.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    cap: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(cap: usize) -> Self {
        VertexSet {
            cap,
            words: vec![0; cap.div_ceil(64)],
        }
    }

    pub fn full(cap: usize) -> Self {
        let mut s = Self::empty(cap);
        for v in 0..cap {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(cap: usize, it: I) -> Self {
        let mut s = Self::empty(cap);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.cap, "vertex {} out of range {}", v, self.cap);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.cap);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.cap && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
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

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.cap, other.cap);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        assert_eq!(self.cap, other.cap);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn min_vertex(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.cap, other.cap, "capacity mismatch");
        VertexSet {
            cap: self.cap,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
