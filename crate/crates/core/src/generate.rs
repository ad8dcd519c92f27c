//! Random automata for property tests and oracle suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::{LetterId, NonzeroAutomaton, StateId, StateSet, Transition, ZeroAutomaton};

/// Size bounds for random automata; each bound is inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub max_states: usize,
    pub max_letters: usize,
    pub max_transitions: usize,
}

fn random_set<R: Rng>(rng: &mut R, n: usize) -> StateSet {
    StateSet::from_states(
        n,
        (0..n)
            .filter(|_| rng.gen_bool(0.5))
            .map(StateId::from_index),
    )
}

/// A random nonzero automaton within `shape`: at least one state, one
/// letter and one transition; each acceptance set includes each state
/// with probability one half.
pub fn random_nonzero<R: Rng>(rng: &mut R, shape: Shape) -> NonzeroAutomaton {
    let n = rng.gen_range(1..=shape.max_states.max(1));
    let k = rng.gen_range(1..=shape.max_letters.max(1));
    let mut all = Vec::with_capacity(n * k * n * n);
    for q in 0..n {
        for a in 0..k {
            for l in 0..n {
                for r in 0..n {
                    all.push(Transition::new(
                        StateId::from_index(q),
                        LetterId(a as u32),
                        StateId::from_index(l),
                        StateId::from_index(r),
                    ));
                }
            }
        }
    }
    let count = rng.gen_range(1..=shape.max_transitions.max(1).min(all.len()));
    let transitions: Vec<Transition> = all.choose_multiple(rng, count).copied().collect();
    NonzeroAutomaton::new(
        (0..n).map(|i| format!("q{i}")).collect(),
        (0..k).map(|i| format!("a{i}")).collect(),
        transitions,
        random_set(rng, n),
        random_set(rng, n),
        random_set(rng, n),
    )
    .expect("generated automata are valid")
}

/// A random zero automaton; `seeded` controls whether seeds may occur.
pub fn random_zero<R: Rng>(rng: &mut R, shape: Shape, seeded: bool) -> ZeroAutomaton {
    let base = random_nonzero(rng, shape);
    let n = base.num_states();
    let seed = if seeded {
        random_set(rng, n)
    } else {
        StateSet::empty(n)
    };
    ZeroAutomaton::new(base, seed).expect("seed set sized for the automaton")
}
