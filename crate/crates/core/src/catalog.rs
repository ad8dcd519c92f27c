//! Two reference automata.
//!
//! * `dense`: trees where every node has an `a` below it, yet a random branch
//!   sees finitely many `a`s almost surely.
//! * `everywhere-positive`: trees where below every node there is positive
//!   probability of seeing only the node's letter, and positive probability
//!   of seeing it finitely often.

use crate::automaton::{LetterId, NonzeroAutomaton, StateId, StateSet, Transition};
use crate::format::parse_automaton;
use crate::Automaton;

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 2] = ["dense", "everywhere-positive"];

/// Canonical file of the dense automaton.
pub const DENSE_TEXT: &str = "\
kind nonzero
states s n f
alphabet a b
forall n f
one n
positive
trans s a f f
trans s b s n
trans s b n s
trans n a f f
trans n b s n
trans n b n s
trans f a f f
trans f b s n
trans f b n s
";

pub fn dense() -> NonzeroAutomaton {
    match parse_automaton(DENSE_TEXT) {
        Ok(Automaton::Nonzero(a)) => a,
        _ => unreachable!("built-in dense automaton is valid"),
    }
}

/// The six-state everywhere-positive automaton
/// `s_b < s_a < n_b < n_a < f_b < f_a`.
///
/// On `a` the states `s_b, n_b, f_a` may move to any successor pair that
/// meets `{s_b, f_b}`; letter `b` is symmetric.
pub fn everywhere_positive() -> NonzeroAutomaton {
    let names = ["s_b", "s_a", "n_b", "n_a", "f_b", "f_a"];
    let id = |name: &str| StateId::from_index(names.iter().position(|n| *n == name).unwrap());
    let mut transitions = Vec::new();
    let rules = [
        (LetterId(0), ["s_b", "n_b", "f_a"], ["s_b", "f_b"]),
        (LetterId(1), ["s_a", "n_a", "f_b"], ["s_a", "f_a"]),
    ];
    for (letter, sources, hit) in rules {
        let hit = [id(hit[0]), id(hit[1])];
        for source in sources {
            for left in 0..names.len() {
                for right in 0..names.len() {
                    let (l, r) = (StateId::from_index(left), StateId::from_index(right));
                    if hit.contains(&l) || hit.contains(&r) {
                        transitions.push(Transition::new(id(source), letter, l, r));
                    }
                }
            }
        }
    }
    let set = |members: &[&str]| StateSet::from_states(names.len(), members.iter().map(|m| id(m)));
    let forall = set(&["n_a", "n_b", "f_a", "f_b"]);
    NonzeroAutomaton::new(
        names.iter().map(|s| s.to_string()).collect(),
        vec!["a".into(), "b".into()],
        transitions,
        forall.clone(),
        forall,
        set(&["n_a", "s_a", "n_b", "s_b"]),
    )
    .expect("built-in everywhere-positive automaton is valid")
}

pub fn by_name(name: &str) -> Option<NonzeroAutomaton> {
    match name {
        "dense" => Some(dense()),
        "everywhere-positive" => Some(everywhere_positive()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everywhere_positive_shape() {
        let a = everywhere_positive();
        assert_eq!(a.initial(), a.state_by_name("f_a").unwrap());
        // 36 successor pairs, 16 of which avoid both hit states; three sources per letter.
        assert_eq!(a.transitions().len(), 2 * 3 * 20);
        let fa = a.state_by_name("f_a").unwrap();
        let nb = a.state_by_name("n_b").unwrap();
        let sb = a.state_by_name("s_b").unwrap();
        assert!(a.has_transition(&Transition::new(fa, LetterId(0), nb, sb)));
        assert!(!a.has_transition(&Transition::new(fa, LetterId(1), nb, sb)));
        let pos: Vec<&str> = a.positive_set().iter().map(|q| a.state_name(q)).collect();
        assert_eq!(pos, ["s_b", "s_a", "n_b", "n_a"]);
    }
}
