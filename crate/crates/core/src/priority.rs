//! Max-parity encoding of "the limsup lies in a given set of states".

use crate::automaton::{StateId, StateSet};

/// Order-monotone priorities whose parity encodes membership in a good set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PriorityMap {
    priorities: Vec<u32>,
}

impl PriorityMap {
    #[inline]
    pub fn get(&self, q: StateId) -> u32 {
        self.priorities[q.index()]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.priorities
    }

    /// Priority of the lowest state.
    pub fn min(&self) -> u32 {
        self.priorities.first().copied().unwrap_or(0)
    }

    pub fn max(&self) -> u32 {
        self.priorities.last().copied().unwrap_or(0)
    }

    pub fn is_good(&self, q: StateId) -> bool {
        self.get(q).is_multiple_of(2)
    }
}

/// Walks the states in ascending order, starting at 0 (lowest state good) or
/// 1 (lowest state bad), and bumps the priority each time good-membership
/// flips. The maximal state seen infinitely often is good iff the maximal
/// priority seen infinitely often is even.
pub fn compress_priorities(good: &StateSet) -> PriorityMap {
    let n = good.capacity();
    let mut priorities = Vec::with_capacity(n);
    let mut current = 0u32;
    let mut previous: Option<bool> = None;
    for i in 0..n {
        let is_good = good.contains(StateId::from_index(i));
        current = match previous {
            None => u32::from(!is_good),
            Some(prev) if prev != is_good => current + 1,
            Some(_) => current,
        };
        previous = Some(is_good);
        priorities.push(current);
    }
    PriorityMap { priorities }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize, members: &[usize]) -> StateSet {
        StateSet::from_states(n, members.iter().map(|&i| StateId::from_index(i)))
    }

    #[test]
    fn dense_priorities() {
        // s < n < f, good {n, f}
        assert_eq!(compress_priorities(&set(3, &[1, 2])).as_slice(), [1, 2, 2]);
    }

    #[test]
    fn nothing_good() {
        assert_eq!(compress_priorities(&set(4, &[])).as_slice(), [1, 1, 1, 1]);
    }

    #[test]
    fn everywhere_positive_priorities() {
        // s_b < s_a < n_b < n_a < f_b < f_a, good = n_* and f_*
        let p = compress_priorities(&set(6, &[2, 3, 4, 5]));
        assert_eq!(p.as_slice(), [1, 1, 2, 2, 2, 2]);
        // constant sequences: limsup is the state itself
        for q in 0..6 {
            let q = StateId::from_index(q);
            assert_eq!(p.is_good(q), q.index() >= 2);
        }
    }

    proptest! {
        #[test]
        fn monotone_and_parity_faithful(mask in 0u32..(1 << 10), n in 1usize..=10) {
            let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let good = set(n, &members);
            let p = compress_priorities(&good);
            for i in 0..n {
                let q = StateId::from_index(i);
                prop_assert_eq!(p.is_good(q), good.contains(q));
                if i > 0 {
                    prop_assert!(p.get(StateId::from_index(i - 1)) <= p.get(q));
                }
            }
        }

        /// For any nonempty set of states visited infinitely often, the
        /// limsup is its maximum; compare the two readings directly.
        #[test]
        fn limsup_equivalence(mask in 0u32..(1 << 8), visited in 1u32..(1 << 8)) {
            let n = 8;
            let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let good = set(n, &members);
            let p = compress_priorities(&good);
            let states: Vec<StateId> = (0..n).filter(|i| visited & (1 << i) != 0).map(StateId::from_index).collect();
            let limsup = *states.iter().max().unwrap();
            let max_priority = states.iter().map(|&q| p.get(q)).max().unwrap();
            prop_assert_eq!(good.contains(limsup), max_priority % 2 == 0);
        }
    }
}
