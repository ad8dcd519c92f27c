use std::fmt;

use fixedbitset::FixedBitSet;

use crate::automaton::{StateId, StateSet};

/// A set of pairs `(q', m)` of states: `q'` labels a non-root node of a run
/// and `m` is the maximum state among its strict ancestors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSet {
    n: usize,
    bits: FixedBitSet,
}

impl PairSet {
    pub fn empty(num_states: usize) -> Self {
        PairSet {
            n: num_states,
            bits: FixedBitSet::with_capacity(num_states * num_states),
        }
    }

    pub fn full(num_states: usize) -> Self {
        let mut s = Self::empty(num_states);
        s.bits.insert_range(..);
        s
    }

    /// All pairs whose first component lies in `targets`.
    pub fn into_states(num_states: usize, targets: &StateSet) -> Self {
        let mut s = Self::empty(num_states);
        for q in targets.iter() {
            s.bits
                .insert_range(q.index() * num_states..(q.index() + 1) * num_states);
        }
        s
    }

    pub fn from_pairs<I: IntoIterator<Item = (StateId, StateId)>>(
        num_states: usize,
        pairs: I,
    ) -> Self {
        let mut s = Self::empty(num_states);
        for (q, m) in pairs {
            s.insert(q, m);
        }
        s
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    fn index(&self, q: StateId, m: StateId) -> usize {
        debug_assert!(q.index() < self.n && m.index() < self.n);
        q.index() * self.n + m.index()
    }

    pub fn insert(&mut self, q: StateId, m: StateId) -> bool {
        let i = self.index(q, m);
        !self.bits.put(i)
    }

    pub fn remove(&mut self, q: StateId, m: StateId) {
        let i = self.index(q, m);
        self.bits.set(i, false);
    }

    pub fn contains(&self, q: StateId, m: StateId) -> bool {
        self.bits.contains(self.index(q, m))
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Pairs in ascending `(q', m)` order.
    pub fn iter(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        let n = self.n;
        self.bits
            .ones()
            .map(move |i| (StateId::from_index(i / n), StateId::from_index(i % n)))
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PairSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &PairSet) -> PairSet {
        let mut s = self.clone();
        s.bits.union_with(&other.bits);
        s
    }

    pub fn intersection(&self, other: &PairSet) -> PairSet {
        let mut s = self.clone();
        s.bits.intersect_with(&other.bits);
        s
    }

    pub fn difference(&self, other: &PairSet) -> PairSet {
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        s
    }

    pub fn union_with(&mut self, other: &PairSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &PairSet) {
        self.bits.difference_with(&other.bits);
    }

    /// Complement within `Q × Q`.
    pub fn complement(&self) -> PairSet {
        let mut s = self.clone();
        s.bits.toggle_range(..);
        s
    }

    /// First components of the pairs.
    pub fn targets(&self) -> StateSet {
        StateSet::from_states(self.n, self.iter().map(|(q, _)| q))
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|(q, m)| (q.0, m.0)))
            .finish()
    }
}
