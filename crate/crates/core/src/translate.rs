//! Zero automata to nonzero automata.
//!
//! The translated automaton guesses a run of the zero automaton in the first
//! component of its state. Below a seed state it looks for a seed-consistent
//! path (path-finding states, remembering the smallest seed seen) to a node
//! from which it guesses a subtree with limsup `f ∈ F>0` (subtree-guessing
//! states, remembering `f`).

use std::cmp::Ordering;

use crate::automaton::{NonzeroAutomaton, StateId, StateSet, Transition, ZeroAutomaton};

/// A state of the translated automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TranslatedState {
    Normal(StateId),
    /// `(q, s)`: `s` is the smallest seed state on the path so far.
    PathFinding(StateId, StateId),
    /// `(q, f, *)`: guessing a subtree whose branches have limsup `f`.
    SubtreeGuessing(StateId, StateId),
}

impl TranslatedState {
    /// Projection onto the zero automaton's state.
    pub fn first(&self) -> StateId {
        match *self {
            TranslatedState::Normal(q)
            | TranslatedState::PathFinding(q, _)
            | TranslatedState::SubtreeGuessing(q, _) => q,
        }
    }

    fn key(&self) -> (StateId, u8, StateId) {
        match *self {
            TranslatedState::PathFinding(q, s) => (q, 0, s),
            TranslatedState::SubtreeGuessing(q, f) => (q, 1, f),
            TranslatedState::Normal(q) => (q, 2, q),
        }
    }

    pub fn render(&self, z: &NonzeroAutomaton) -> String {
        match *self {
            TranslatedState::Normal(q) => z.state_name(q).to_owned(),
            TranslatedState::PathFinding(q, s) => {
                format!("pf:{}:{}", z.state_name(q), z.state_name(s))
            }
            TranslatedState::SubtreeGuessing(q, f) => {
                format!("sg:{}:{}", z.state_name(q), z.state_name(f))
            }
        }
    }
}

impl Ord for TranslatedState {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for TranslatedState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The translated automaton with the meaning of each of its states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    pub automaton: NonzeroAutomaton,
    /// `states[i]` is the translated state with identifier `i`, in ascending order.
    pub states: Vec<TranslatedState>,
}

impl Translation {
    pub fn id(&self, s: TranslatedState) -> Option<StateId> {
        self.states.binary_search(&s).ok().map(StateId::from_index)
    }
}

/// Intersects `F1` with `F∀` and then `F>0` with the new `F1`.
pub fn normalize_zero(z: &ZeroAutomaton) -> ZeroAutomaton {
    let a = z.base();
    let one = a.one_set().intersection(a.forall_set());
    let positive = a.positive_set().intersection(&one);
    z.with_base(a.with_acceptance(a.forall_set().clone(), one, positive))
}

/// Child states `r` may take below a normal seed state or a path-finding
/// state with bound `bound`, not counting path-finding children.
fn search_options(r: StateId, bound: StateId, positive: &StateSet) -> Vec<TranslatedState> {
    let mut out = vec![TranslatedState::Normal(r)];
    if positive.contains(r) && r <= bound {
        out.push(TranslatedState::SubtreeGuessing(r, r));
    }
    out
}

fn guessing_options(r: StateId, f: StateId, seed: &StateSet) -> Vec<TranslatedState> {
    let mut out = vec![TranslatedState::Normal(r)];
    if r <= f && (!seed.contains(r) || r == f) {
        out.push(TranslatedState::SubtreeGuessing(r, f));
    }
    out
}

/// Transitions below a state that must make progress towards a subtree:
/// a normal seed state `q` (bound `q`) or a path-finding state (bound `s`).
/// At least one child leaves the normal states: either a subtree-guessing
/// child, or one child continues path-finding while the other is normal.
fn search_successors(
    t: &Transition,
    bound: StateId,
    positive: &StateSet,
    seed: &StateSet,
    out: &mut Vec<(TranslatedState, TranslatedState)>,
) {
    for l in search_options(t.left, bound, positive) {
        for r in search_options(t.right, bound, positive) {
            if matches!(
                (l, r),
                (TranslatedState::Normal(_), TranslatedState::Normal(_))
            ) {
                continue;
            }
            out.push((l, r));
        }
    }
    let next_seed = |r: StateId| if seed.contains(r) { r } else { bound };
    if t.left <= bound {
        out.push((
            TranslatedState::PathFinding(t.left, next_seed(t.left)),
            TranslatedState::Normal(t.right),
        ));
    }
    if t.right <= bound {
        out.push((
            TranslatedState::Normal(t.left),
            TranslatedState::PathFinding(t.right, next_seed(t.right)),
        ));
    }
}

/// Translates (after normalizing) a zero automaton into a nonzero automaton
/// of quadratic size accepting the same trees. All translated states are
/// kept, reachable or not.
pub fn translate(z: &ZeroAutomaton) -> Translation {
    let z = normalize_zero(z);
    let a = z.base();
    let seed = z.seed_set();
    let positive = a.positive_set();

    let mut states = Vec::new();
    for q in a.states() {
        for s in seed.iter().filter(|s| q <= *s) {
            states.push(TranslatedState::PathFinding(q, s));
        }
        for f in positive
            .iter()
            .filter(|f| q <= *f && (!seed.contains(q) || q == *f))
        {
            states.push(TranslatedState::SubtreeGuessing(q, f));
        }
        states.push(TranslatedState::Normal(q));
    }
    states.sort();
    let id = |s: TranslatedState| {
        StateId::from_index(states.binary_search(&s).expect("generated state"))
    };

    let mut transitions = Vec::new();
    let mut children = Vec::new();
    for (i, source) in states.iter().enumerate() {
        let q = source.first();
        for t in a.transitions_from(q) {
            children.clear();
            match *source {
                TranslatedState::Normal(q) if !seed.contains(q) => {
                    children.push((
                        TranslatedState::Normal(t.left),
                        TranslatedState::Normal(t.right),
                    ));
                }
                TranslatedState::Normal(q) => {
                    search_successors(t, q, positive, seed, &mut children)
                }
                TranslatedState::PathFinding(_, s) => {
                    search_successors(t, s, positive, seed, &mut children)
                }
                TranslatedState::SubtreeGuessing(_, f) => {
                    for l in guessing_options(t.left, f, seed) {
                        for r in guessing_options(t.right, f, seed) {
                            children.push((l, r));
                        }
                    }
                }
            }
            for &(l, r) in &children {
                transitions.push(Transition::new(
                    StateId::from_index(i),
                    t.letter,
                    id(l),
                    id(r),
                ));
            }
        }
    }

    let n = states.len();
    let lift = |pred: &dyn Fn(&TranslatedState) -> bool| {
        StateSet::from_states(
            n,
            states
                .iter()
                .enumerate()
                .filter(|(_, s)| pred(s))
                .map(|(i, _)| StateId::from_index(i)),
        )
    };
    let top = |s: &TranslatedState| matches!(*s, TranslatedState::SubtreeGuessing(q, f) if q == f);
    let g_positive = lift(&|s| matches!(s, TranslatedState::SubtreeGuessing(..)));
    let g_one =
        lift(&|s| matches!(*s, TranslatedState::Normal(q) if a.one_set().contains(q)) || top(s));
    let g_forall =
        lift(&|s| matches!(*s, TranslatedState::Normal(q) if a.forall_set().contains(q)) || top(s));

    let names = states.iter().map(|s| s.render(a)).collect();
    let automaton = NonzeroAutomaton::assemble(
        names,
        a.letter_names().to_vec(),
        transitions,
        g_forall,
        g_one,
        g_positive,
    );
    Translation { automaton, states }
}

pub fn translate_zero_to_nonzero(z: &ZeroAutomaton) -> NonzeroAutomaton {
    translate(z).automaton
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::LetterId;

    fn zero(
        names: &[&str],
        transitions: &[(usize, usize, usize)],
        sets: [&[usize]; 4],
    ) -> ZeroAutomaton {
        let n = names.len();
        let set = |m: &[usize]| StateSet::from_states(n, m.iter().map(|&i| StateId::from_index(i)));
        let base = NonzeroAutomaton::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec!["a".into()],
            transitions
                .iter()
                .map(|&(q, l, r)| {
                    Transition::new(
                        StateId::from_index(q),
                        LetterId(0),
                        StateId::from_index(l),
                        StateId::from_index(r),
                    )
                })
                .collect(),
            set(sets[0]),
            set(sets[1]),
            set(sets[2]),
        )
        .unwrap();
        ZeroAutomaton::new(base, set(sets[3])).unwrap()
    }

    #[test]
    fn normalization_intersects() {
        let z = zero(&["q", "r"], &[], [&[0], &[0, 1], &[1], &[]]);
        let z = normalize_zero(&z);
        assert_eq!(z.base().one_set(), &StateSet::from_states(2, [StateId(0)]));
        assert!(z.base().positive_set().is_empty());
        assert_eq!(normalize_zero(&z), z);
    }

    #[test]
    fn one_state_seeded() {
        let z = zero(&["q"], &[(0, 0, 0)], [&[0], &[0], &[0], &[0]]);
        let t = translate(&z);
        assert_eq!(
            t.states,
            [
                TranslatedState::PathFinding(StateId(0), StateId(0)),
                TranslatedState::SubtreeGuessing(StateId(0), StateId(0)),
                TranslatedState::Normal(StateId(0)),
            ]
        );
        assert_eq!(t.automaton.state_names(), ["pf:q:q", "sg:q:q", "q"]);
        assert_eq!(t.automaton.initial(), StateId(2));
        let sg = StateId(1);
        assert!(t
            .automaton
            .has_transition(&Transition::new(sg, LetterId(0), sg, sg)));
        assert!(t
            .automaton
            .has_transition(&Transition::new(StateId(2), LetterId(0), sg, sg)));
        assert!(!t.automaton.has_transition(&Transition::new(
            StateId(2),
            LetterId(0),
            StateId(2),
            StateId(2)
        )));
        assert_eq!(t.automaton.positive_set(), &StateSet::from_states(3, [sg]));
    }

    #[test]
    fn one_state_without_positive() {
        let z = zero(&["q"], &[(0, 0, 0)], [&[0], &[0], &[], &[0]]);
        let t = translate(&z);
        assert_eq!(t.states.len(), 2);
        assert!(t.automaton.positive_set().is_empty());
    }

    #[test]
    fn no_seed_keeps_normal_part() {
        let z = zero(
            &["p", "q"],
            &[(1, 0, 1), (0, 0, 0)],
            [&[0, 1], &[1], &[1], &[]],
        );
        let t = translate(&z);
        let reachable = t.automaton.prune_unreachable();
        assert_eq!(reachable.state_names(), ["p", "q"]);
        assert_eq!(reachable.transitions().len(), 2);
    }

    #[test]
    fn order_projects_monotonically() {
        let z = zero(
            &["p", "q", "r"],
            &[(2, 0, 1), (1, 1, 0)],
            [&[0, 1, 2], &[0, 1, 2], &[0, 2], &[1, 2]],
        );
        let t = translate(&z);
        for w in t.states.windows(2) {
            assert!(w[0].first() <= w[1].first());
        }
        assert_eq!(
            *t.states.last().unwrap(),
            TranslatedState::Normal(StateId(2))
        );
    }
}
