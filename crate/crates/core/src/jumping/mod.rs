//! The jumping game: Automaton proposes a realizable profile, Pathfinder
//! picks one of its pairs `(q', m)`, emitting `m` and continuing from `q'`.
//! Automaton wins when the maximal state emitted infinitely often is in `F∀`.

mod extended;
mod oracle;
mod pairs;
mod solver;
mod witness;

pub use extended::{avail, extend_automaton, AvailOracle, ExtendedAutomaton};
pub use oracle::{oracle_explicit_game, ExplicitGame, Regions};
pub use pairs::PairSet;
pub use solver::{solve_jumping_game, solve_with, GameSolution, SolverConfig, WitnessOrigin};
pub use witness::{
    check_automaton_witness, check_automaton_witness_with, check_pathfinder_witness,
    check_pathfinder_witness_with, check_witness, JumpError, JumpFailure, JumpingWitness, Side,
};

use crate::automaton::{Automaton, NonzeroAutomaton};
use crate::translate::translate_zero_to_nonzero;

/// Answer of [`decide_emptiness`], with the witness of the winning side.
#[derive(Clone, Debug)]
pub struct Emptiness {
    /// The automaton the game was played on, see [`game_automaton`].
    pub automaton: NonzeroAutomaton,
    pub nonempty: bool,
    /// Automaton's witness when nonempty, Pathfinder's otherwise.
    pub witness: JumpingWitness,
    /// Whether `witness` passed its checker.
    pub witness_valid: bool,
}

/// The nonzero automaton whose jumping game decides emptiness of `a`: the
/// input itself, or the translation of a zero automaton with unreachable
/// states pruned, in both cases with `F1` replaced by `F1 ∩ F∀`.
///
/// The replacement keeps the accepting runs (every branch already has its
/// limsup in `F∀`) and the game needs it: a branch that stays forever in one
/// glued run only has its limsup in `F1`, so with `F1 ⊄ F∀` Automaton can win
/// the game of an empty automaton.
pub fn game_automaton(a: &Automaton) -> NonzeroAutomaton {
    let a = match a {
        Automaton::Nonzero(a) => a.clone(),
        Automaton::Zero(z) => translate_zero_to_nonzero(z).prune_unreachable(),
    };
    let one = a.one_set().intersection(a.forall_set());
    if &one == a.one_set() {
        return a;
    }
    a.with_acceptance(a.forall_set().clone(), one, a.positive_set().clone())
}

pub fn decide_emptiness_with(a: &Automaton, config: SolverConfig) -> Emptiness {
    let automaton = game_automaton(a);
    let oracle = AvailOracle::new(&automaton);
    let solution = solve_with(&oracle, &automaton, config);
    let nonempty = solution.automaton_region.contains(automaton.initial());
    let (witness, witness_valid) = if nonempty {
        (solution.automaton_witness, solution.automaton_witness_valid)
    } else {
        let valid = solution.pathfinder_origin != WitnessOrigin::Incomplete;
        (solution.pathfinder_witness, valid)
    };
    Emptiness {
        automaton,
        nonempty,
        witness,
        witness_valid,
    }
}

/// Nonempty iff the initial state lies in Automaton's winning region.
pub fn decide_emptiness(a: &Automaton) -> Emptiness {
    decide_emptiness_with(a, SolverConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;

    // every branch needs limsup in {q0, q2} while almost every branch needs q1
    const DISJOINT: &str = "\
kind nonzero
states q0 q1 q2
alphabet a0 a1
forall q0 q2
one q1
positive
trans q0 a0 q2 q2
trans q0 a1 q0 q0
trans q0 a1 q1 q2
trans q1 a0 q0 q0
trans q1 a0 q0 q1
trans q1 a0 q1 q0
trans q1 a0 q2 q2
trans q1 a1 q1 q0
trans q1 a1 q1 q1
trans q1 a1 q2 q1
trans q2 a0 q0 q1
trans q2 a1 q1 q1
";

    #[test]
    fn almost_sure_set_outside_forall_is_empty() {
        let a = parse_automaton(DISJOINT).unwrap();
        // the raw game is won by Automaton, which is why F1 is intersected first
        assert!(solve_jumping_game(a.base())
            .automaton_region
            .contains(a.base().initial()));
        let answer = decide_emptiness(&a);
        assert!(!answer.nonempty);
        assert!(answer.automaton.one_set().is_empty());
        assert!(answer.witness_valid);
    }

    #[test]
    fn nested_sets_are_kept() {
        let a = Automaton::Nonzero(crate::catalog::dense());
        assert_eq!(&game_automaton(&a), a.base());
    }
}
