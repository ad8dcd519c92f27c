use std::cell::RefCell;
use std::collections::HashMap;

use crate::automaton::{NonzeroAutomaton, StateId, StateSet, Transition};
use crate::graph::transitions_inside;
use crate::jumping::pairs::PairSet;
use crate::trivial::{analyse, System};

/// The automaton enriched with the maximum state among strict ancestors.
///
/// State `(q, m)` has identifier `q·(n+1) + 0` for `m = ⊥` and
/// `q·(n+1) + m + 1` otherwise, which is the lexicographic order with `⊥`
/// lowest. The reachable second components of a run rooted at `(q, ⊥)` are
/// exactly the pairs of the underlying run's profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedAutomaton {
    n: usize,
    automaton: NonzeroAutomaton,
}

impl ExtendedAutomaton {
    /// Number of states of the underlying automaton.
    pub fn base_states(&self) -> usize {
        self.n
    }

    pub fn automaton(&self) -> &NonzeroAutomaton {
        &self.automaton
    }

    pub fn id(&self, q: StateId, m: Option<StateId>) -> StateId {
        let second = m.map_or(0, |m| m.index() + 1);
        StateId::from_index(q.index() * (self.n + 1) + second)
    }

    pub fn decode(&self, x: StateId) -> (StateId, Option<StateId>) {
        let q = StateId::from_index(x.index() / (self.n + 1));
        let second = x.index() % (self.n + 1);
        (q, second.checked_sub(1).map(StateId::from_index))
    }

    /// `{(q, ⊥)} ∪ X` as a set of extended states.
    pub fn region(&self, q: StateId, x: &PairSet) -> StateSet {
        let mut allowed = StateSet::empty(self.automaton.num_states());
        allowed.insert(self.id(q, None));
        for (r, m) in x.iter() {
            allowed.insert(self.id(r, Some(m)));
        }
        allowed
    }
}

/// Builds the extended automaton; acceptance sets are lifted through the
/// first projection.
pub fn extend_automaton(a: &NonzeroAutomaton) -> ExtendedAutomaton {
    let n = a.num_states();
    let width = n + 1;
    let id = |q: StateId, m: Option<StateId>| {
        StateId::from_index(q.index() * width + m.map_or(0, |m| m.index() + 1))
    };
    let mut names = Vec::with_capacity(n * width);
    for q in a.states() {
        names.push(format!("{}/-", a.state_name(q)));
        for m in a.states() {
            names.push(format!("{}/{}", a.state_name(q), a.state_name(m)));
        }
    }
    let mut transitions = Vec::with_capacity(a.transitions().len() * width);
    for t in a.transitions() {
        for m in std::iter::once(None).chain(a.states().map(Some)) {
            let next = Some(match m {
                None => t.source,
                Some(m) => m.max(t.source),
            });
            transitions.push(Transition::new(
                id(t.source, m),
                t.letter,
                id(t.left, next),
                id(t.right, next),
            ));
        }
    }
    let lift = |set: &StateSet| {
        StateSet::from_states(
            n * width,
            (0..n * width)
                .map(StateId::from_index)
                .filter(|x| set.contains(StateId::from_index(x.index() / width))),
        )
    };
    let automaton = NonzeroAutomaton::assemble(
        names,
        a.letter_names().to_vec(),
        transitions,
        lift(a.forall_set()),
        lift(a.one_set()),
        lift(a.positive_set()),
    );
    ExtendedAutomaton { n, automaton }
}

/// Memoized answers to the profile-realizability question for one automaton.
pub struct AvailOracle {
    extended: ExtendedAutomaton,
    cache: RefCell<HashMap<(StateId, PairSet), bool>>,
}

impl AvailOracle {
    pub fn new(a: &NonzeroAutomaton) -> Self {
        AvailOracle {
            extended: extend_automaton(a),
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn extended(&self) -> &ExtendedAutomaton {
        &self.extended
    }

    pub fn num_states(&self) -> usize {
        self.extended.n
    }

    /// Whether some almost-surely and nonzero accepting run rooted at `q`
    /// has its profile inside `x`.
    pub fn avail(&self, q: StateId, x: &PairSet) -> bool {
        if x.is_empty() {
            return false;
        }
        if let Some(&hit) = self.cache.borrow().get(&(q, x.clone())) {
            return hit;
        }
        let answer = self.compute(q, x);
        self.cache.borrow_mut().insert((q, x.clone()), answer);
        answer
    }

    fn compute(&self, q: StateId, x: &PairSet) -> bool {
        let ext = &self.extended.automaton;
        let allowed = self.extended.region(q, x);
        let transitions = transitions_inside(ext.transitions(), &allowed);
        let sys = System {
            num_states: ext.num_states(),
            num_letters: ext.num_letters(),
            transitions: &transitions,
            one: ext.one_set(),
            positive: ext.positive_set(),
        };
        analyse(&sys).is_nonempty_at(self.extended.id(q, None))
    }

    /// Number of distinct queries answered so far.
    pub fn queries(&self) -> usize {
        self.cache.borrow().len()
    }
}

/// One-off [`AvailOracle::avail`] query.
pub fn avail(a: &NonzeroAutomaton, q: StateId, x: &PairSet) -> bool {
    AvailOracle::new(a).avail(q, x)
}
