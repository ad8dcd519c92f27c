//! Automaton data model: states, letters, transitions and the acceptance sets.
//!
//! States are identified by their position in the declared total order, so
//! comparing two [`StateId`]s compares the states. The last state is the
//! initial one.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::ModelError;

/// Position of a state in the automaton's total order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        StateId(index as u32)
    }
}

/// Position of a letter in the declared alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterId(pub u32);

impl LetterId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A transition `source --letter--> (left, right)`.
///
/// The derived order is the canonical one: lexicographic in
/// `(source, letter, left, right)` using the declared orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub source: StateId,
    pub letter: LetterId,
    pub left: StateId,
    pub right: StateId,
}

impl Transition {
    pub fn new(source: StateId, letter: LetterId, left: StateId, right: StateId) -> Self {
        Transition {
            source,
            letter,
            left,
            right,
        }
    }

    /// Both successor states, left first.
    #[inline]
    pub fn successors(&self) -> [StateId; 2] {
        [self.left, self.right]
    }
}

/// A set of states of one automaton, stored as a bitset sized to the state count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    bits: FixedBitSet,
}

impl StateSet {
    pub fn empty(num_states: usize) -> Self {
        StateSet {
            bits: FixedBitSet::with_capacity(num_states),
        }
    }

    pub fn full(num_states: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(num_states);
        bits.insert_range(..);
        StateSet { bits }
    }

    pub fn from_states<I: IntoIterator<Item = StateId>>(num_states: usize, states: I) -> Self {
        let mut set = StateSet::empty(num_states);
        for q in states {
            set.insert(q);
        }
        set
    }

    /// Number of states of the owning automaton (not the cardinality).
    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, q: StateId) -> bool {
        self.bits.contains(q.index())
    }

    #[inline]
    pub fn insert(&mut self, q: StateId) -> bool {
        let fresh = !self.bits.contains(q.index());
        self.bits.insert(q.index());
        fresh
    }

    #[inline]
    pub fn remove(&mut self, q: StateId) -> bool {
        let present = self.bits.contains(q.index());
        self.bits.set(q.index(), false);
        present
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in ascending state order.
    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.bits.ones().map(StateId::from_index)
    }

    pub fn last(&self) -> Option<StateId> {
        self.bits.maximum().map(StateId::from_index)
    }

    pub fn first(&self) -> Option<StateId> {
        self.bits.minimum().map(StateId::from_index)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &StateSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> StateSet {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// Which acceptance conditions a run has to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RunSemantics {
    /// Surely, almost-surely and nonzero accepting.
    Full,
    /// Almost-surely and nonzero accepting; the sure condition is ignored.
    Trivial,
}

/// A nonzero automaton on infinite binary trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonzeroAutomaton {
    states: Vec<String>,
    letters: Vec<String>,
    /// Sorted canonically, no duplicates.
    transitions: Vec<Transition>,
    /// `offsets[q]..offsets[q + 1]` indexes the transitions with source `q`.
    offsets: Vec<usize>,
    forall: StateSet,
    one: StateSet,
    positive: StateSet,
}

impl NonzeroAutomaton {
    /// Builds and validates an automaton.
    ///
    /// `states` is given in ascending order; its last element is the initial state.
    pub fn new(
        states: Vec<String>,
        letters: Vec<String>,
        transitions: Vec<Transition>,
        forall: StateSet,
        one: StateSet,
        positive: StateSet,
    ) -> Result<Self, ModelError> {
        if states.is_empty() {
            return Err(ModelError::NoStates);
        }
        if letters.is_empty() {
            return Err(ModelError::EmptyAlphabet);
        }
        check_distinct(&states).map_err(ModelError::DuplicateState)?;
        check_distinct(&letters).map_err(ModelError::DuplicateLetter)?;
        let n = states.len();
        for set in [&forall, &one, &positive] {
            if set.capacity() != n {
                return Err(ModelError::SetSizeMismatch);
            }
        }
        for t in &transitions {
            if t.letter.index() >= letters.len() {
                return Err(ModelError::LetterOutOfRange(t.letter.0));
            }
            for q in [t.source, t.left, t.right] {
                if q.index() >= n {
                    return Err(ModelError::StateOutOfRange(q.0));
                }
            }
        }
        let mut sorted = transitions;
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            let t = w[0];
            return Err(ModelError::DuplicateTransition(format!(
                "{} {} {} {}",
                states[t.source.index()],
                letters[t.letter.index()],
                states[t.left.index()],
                states[t.right.index()]
            )));
        }
        Ok(Self::assemble(
            states, letters, sorted, forall, one, positive,
        ))
    }

    /// Trusted constructor for internally generated automata; sorts and dedups.
    pub(crate) fn assemble(
        states: Vec<String>,
        letters: Vec<String>,
        mut transitions: Vec<Transition>,
        forall: StateSet,
        one: StateSet,
        positive: StateSet,
    ) -> Self {
        transitions.sort_unstable();
        transitions.dedup();
        let offsets = source_offsets(states.len(), &transitions);
        NonzeroAutomaton {
            states,
            letters,
            transitions,
            offsets,
            forall,
            one,
            positive,
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn letter_names(&self) -> &[String] {
        &self.letters
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q.index()]
    }

    pub fn letter_name(&self, a: LetterId) -> &str {
        &self.letters[a.index()]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(StateId::from_index)
    }

    pub fn letter_by_name(&self, name: &str) -> Option<LetterId> {
        self.letters
            .iter()
            .position(|s| s == name)
            .map(|i| LetterId(i as u32))
    }

    /// All states in ascending order.
    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states.len()).map(StateId::from_index)
    }

    pub fn letters(&self) -> impl Iterator<Item = LetterId> + '_ {
        (0..self.letters.len()).map(|i| LetterId(i as u32))
    }

    /// The maximal state.
    pub fn initial(&self) -> StateId {
        StateId::from_index(self.states.len() - 1)
    }

    /// Transitions in canonical order.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transitions_from(&self, q: StateId) -> &[Transition] {
        &self.transitions[self.offsets[q.index()]..self.offsets[q.index() + 1]]
    }

    pub fn has_transition(&self, t: &Transition) -> bool {
        self.transitions.binary_search(t).is_ok()
    }

    pub fn forall_set(&self) -> &StateSet {
        &self.forall
    }

    pub fn one_set(&self) -> &StateSet {
        &self.one
    }

    pub fn positive_set(&self) -> &StateSet {
        &self.positive
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.num_states())
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    /// Renders a transition with state and letter names, space separated.
    pub fn display_transition(&self, t: &Transition) -> String {
        format!(
            "{} {} {} {}",
            self.state_name(t.source),
            self.letter_name(t.letter),
            self.state_name(t.left),
            self.state_name(t.right)
        )
    }

    /// Same automaton with the three acceptance sets replaced.
    pub fn with_acceptance(&self, forall: StateSet, one: StateSet, positive: StateSet) -> Self {
        assert_eq!(forall.capacity(), self.num_states());
        assert_eq!(one.capacity(), self.num_states());
        assert_eq!(positive.capacity(), self.num_states());
        NonzeroAutomaton {
            forall,
            one,
            positive,
            ..self.clone()
        }
    }

    /// Keeps only the transitions whose three states lie in `allowed` and
    /// intersects the acceptance sets with `allowed`. The state list is kept
    /// so state identifiers stay valid; `root` becomes the designated root.
    pub fn restrict(
        &self,
        allowed: &StateSet,
        root: StateId,
    ) -> Result<RootedAutomaton, ModelError> {
        if !allowed.contains(root) {
            return Err(ModelError::RootNotAllowed(self.state_name(root).to_owned()));
        }
        let transitions = self
            .transitions
            .iter()
            .copied()
            .filter(|t| {
                allowed.contains(t.source) && allowed.contains(t.left) && allowed.contains(t.right)
            })
            .collect();
        let automaton = Self::assemble(
            self.states.clone(),
            self.letters.clone(),
            transitions,
            self.forall.intersection(allowed),
            self.one.intersection(allowed),
            self.positive.intersection(allowed),
        );
        Ok(RootedAutomaton { automaton, root })
    }

    /// Drops states not reachable from the initial state, preserving order.
    pub fn prune_unreachable(&self) -> Self {
        let n = self.num_states();
        let mut seen = StateSet::empty(n);
        let mut stack = vec![self.initial()];
        seen.insert(self.initial());
        while let Some(q) = stack.pop() {
            for t in self.transitions_from(q) {
                for r in t.successors() {
                    if seen.insert(r) {
                        stack.push(r);
                    }
                }
            }
        }
        if seen.len() == n {
            return self.clone();
        }
        let mut remap = vec![u32::MAX; n];
        let mut names = Vec::with_capacity(seen.len());
        for (fresh, q) in seen.iter().enumerate() {
            remap[q.index()] = fresh as u32;
            names.push(self.states[q.index()].clone());
        }
        let m = names.len();
        let map_set = |set: &StateSet| {
            StateSet::from_states(
                m,
                set.iter()
                    .filter(|q| seen.contains(*q))
                    .map(|q| StateId(remap[q.index()])),
            )
        };
        let transitions = self
            .transitions
            .iter()
            .filter(|t| seen.contains(t.source))
            .map(|t| Transition {
                source: StateId(remap[t.source.index()]),
                letter: t.letter,
                left: StateId(remap[t.left.index()]),
                right: StateId(remap[t.right.index()]),
            })
            .collect();
        Self::assemble(
            names,
            self.letters.clone(),
            transitions,
            map_set(&self.forall),
            map_set(&self.one),
            map_set(&self.positive),
        )
    }
}

/// An automaton whose emptiness questions are asked at a designated root
/// instead of the maximal state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedAutomaton {
    pub automaton: NonzeroAutomaton,
    pub root: StateId,
}

/// A zero automaton: a nonzero automaton plus a set of seed states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroAutomaton {
    base: NonzeroAutomaton,
    seed: StateSet,
}

impl ZeroAutomaton {
    pub fn new(base: NonzeroAutomaton, seed: StateSet) -> Result<Self, ModelError> {
        if seed.capacity() != base.num_states() {
            return Err(ModelError::SetSizeMismatch);
        }
        Ok(ZeroAutomaton { base, seed })
    }

    /// States, transitions and the three acceptance sets, ignoring seeds.
    pub fn base(&self) -> &NonzeroAutomaton {
        &self.base
    }

    pub fn seed_set(&self) -> &StateSet {
        &self.seed
    }

    pub(crate) fn with_base(&self, base: NonzeroAutomaton) -> Self {
        ZeroAutomaton {
            base,
            seed: self.seed.clone(),
        }
    }
}

/// Either kind of automaton, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Nonzero(NonzeroAutomaton),
    Zero(ZeroAutomaton),
}

impl Automaton {
    /// The underlying state/transition structure.
    pub fn base(&self) -> &NonzeroAutomaton {
        match self {
            Automaton::Nonzero(a) => a,
            Automaton::Zero(z) => z.base(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Automaton::Nonzero(_) => "nonzero",
            Automaton::Zero(_) => "zero",
        }
    }
}

fn check_distinct(names: &[String]) -> Result<(), String> {
    let mut sorted: Vec<&String> = names.iter().collect();
    sorted.sort();
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(w[0].clone()),
        None => Ok(()),
    }
}

fn source_offsets(num_states: usize, sorted: &[Transition]) -> Vec<usize> {
    let mut offsets = vec![0usize; num_states + 1];
    for t in sorted {
        offsets[t.source.index() + 1] += 1;
    }
    for i in 0..num_states {
        offsets[i + 1] += offsets[i];
    }
    offsets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ids(a: &NonzeroAutomaton, names: &[&str]) -> StateSet {
        StateSet::from_states(
            a.num_states(),
            names.iter().map(|n| a.state_by_name(n).unwrap()),
        )
    }

    #[test]
    fn restrict_dense_to_searching_states() {
        let a = catalog::dense();
        let allowed = ids(&a, &["n", "s"]);
        let n = a.state_by_name("n").unwrap();
        let r = a.restrict(&allowed, n).unwrap();
        let got: Vec<String> = r
            .automaton
            .transitions()
            .iter()
            .map(|t| a.display_transition(t))
            .collect();
        assert_eq!(got, ["s b s n", "s b n s", "n b s n", "n b n s"]);
        assert_eq!(r.root, n);
        assert!(r.automaton.forall_set().contains(n));
        assert!(!r.automaton.forall_set().contains(a.initial()));
    }

    #[test]
    fn restrict_to_everything_is_identity_on_transitions() {
        let a = catalog::dense();
        let r = a.restrict(&a.all_states(), a.initial()).unwrap();
        assert_eq!(r.automaton.transitions(), a.transitions());
    }

    #[test]
    fn restrict_dense_to_found_state() {
        let a = catalog::dense();
        let f = a.initial();
        let r = a.restrict(&ids(&a, &["f"]), f).unwrap();
        let got: Vec<String> = r
            .automaton
            .transitions()
            .iter()
            .map(|t| a.display_transition(t))
            .collect();
        assert_eq!(got, ["f a f f"]);
    }

    #[test]
    fn restrict_rejects_root_outside() {
        let a = catalog::dense();
        let err = a.restrict(&ids(&a, &["n"]), a.initial()).unwrap_err();
        assert!(matches!(err, ModelError::RootNotAllowed(ref s) if s == "f"));
    }

    #[test]
    fn duplicate_transition_rejected() {
        let t = Transition::new(StateId(0), LetterId(0), StateId(0), StateId(0));
        let err = NonzeroAutomaton::new(
            vec!["q".into()],
            vec!["a".into()],
            vec![t, t],
            StateSet::empty(1),
            StateSet::empty(1),
            StateSet::empty(1),
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::DuplicateTransition(_)));
    }

    #[test]
    fn empty_alphabet_rejected() {
        let err = NonzeroAutomaton::new(
            vec!["q".into()],
            vec![],
            vec![],
            StateSet::empty(1),
            StateSet::empty(1),
            StateSet::empty(1),
        )
        .unwrap_err();
        assert_eq!(err, ModelError::EmptyAlphabet);
    }

    #[test]
    fn state_set_ops() {
        let mut s = StateSet::empty(5);
        s.insert(StateId(1));
        s.insert(StateId(3));
        assert_eq!(s.len(), 2);
        assert_eq!(s.last(), Some(StateId(3)));
        let c = s.complement();
        assert_eq!(c.iter().map(|q| q.0).collect::<Vec<_>>(), [0, 2, 4]);
        assert!(s.is_disjoint(&c));
        assert_eq!(s.union(&c), StateSet::full(5));
    }
}
