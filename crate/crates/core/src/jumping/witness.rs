use std::fmt;

use thiserror::Error;

use crate::automaton::{NonzeroAutomaton, StateId, StateSet};
use crate::graph::tarjan;
use crate::jumping::extended::AvailOracle;
use crate::jumping::pairs::PairSet;
use crate::priority::compress_priorities;
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Automaton,
    Pathfinder,
}

impl Side {
    pub fn header(self) -> &'static str {
        match self {
            Side::Automaton => "automaton-witness",
            Side::Pathfinder => "pathfinder-witness",
        }
    }
}

/// A condensed positional strategy: a region `W` and, for each `q ∈ W`, a
/// set of pairs. For Automaton the set is the move `s(q)`; for Pathfinder it
/// is the set `t(q)` of pairs it is willing to pick.
#[derive(Clone, PartialEq, Eq)]
pub struct JumpingWitness {
    pub side: Side,
    pub region: StateSet,
    moves: Vec<PairSet>,
}

impl JumpingWitness {
    pub fn new(side: Side, region: StateSet) -> Self {
        let n = region.capacity();
        JumpingWitness {
            side,
            region,
            moves: vec![PairSet::empty(n); n],
        }
    }

    pub fn num_states(&self) -> usize {
        self.region.capacity()
    }

    pub fn moves(&self, q: StateId) -> &PairSet {
        &self.moves[q.index()]
    }

    pub fn set_moves(&mut self, q: StateId, pairs: PairSet) {
        self.moves[q.index()] = pairs;
    }

    pub fn moves_mut(&mut self, q: StateId) -> &mut PairSet {
        &mut self.moves[q.index()]
    }
}

impl fmt::Debug for JumpingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("JumpingWitness");
        d.field("side", &self.side).field("region", &self.region);
        let moves: Vec<(u32, &PairSet)> =
            self.region.iter().map(|q| (q.0, self.moves(q))).collect();
        d.field("moves", &moves).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JumpError {
    #[error("witness is ill-typed: move of `{state}` contains a pair leading to `{target}` outside the region")]
    IllTyped { state: String, target: String },
    #[error("witness has a move for `{0}`, which is outside the region")]
    MoveOutsideRegion(String),
    #[error("witness size does not match the automaton")]
    SizeMismatch,
    #[error("expected an {expected} but got a {actual}")]
    WrongSide {
        expected: &'static str,
        actual: &'static str,
    },
}

/// The first winning-witness condition that fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JumpFailure {
    /// (α) `s(q)` is empty.
    EmptyMove(StateId),
    /// (α) a generated cycle through the edge `from -> to` labelled `label`,
    /// whose maximal label is `label ∉ F∀`.
    BadCycle {
        from: StateId,
        to: StateId,
        label: StateId,
    },
    /// (β) no accepting run from `q` has its profile inside `s(q)`.
    Unrealizable(StateId),
    /// (γ) a generated cycle whose maximal label `label` is in `F∀`.
    GoodCycle {
        from: StateId,
        to: StateId,
        label: StateId,
    },
    /// (δ) some accepting run from `q` has a profile avoiding `t(q)`.
    Avoidable(StateId),
}

impl JumpFailure {
    pub fn condition(&self) -> &'static str {
        match self {
            JumpFailure::EmptyMove(_) | JumpFailure::BadCycle { .. } => "alpha",
            JumpFailure::Unrealizable(_) => "beta",
            JumpFailure::GoodCycle { .. } => "gamma",
            JumpFailure::Avoidable(_) => "delta",
        }
    }

    pub fn describe(&self, a: &NonzeroAutomaton) -> String {
        let name = |q: StateId| a.state_name(q);
        match *self {
            JumpFailure::EmptyMove(q) => format!("condition (alpha): empty move at `{}`", name(q)),
            JumpFailure::BadCycle { from, to, label } => format!(
                "condition (alpha): cycle through `{}` -> `{}` has maximal label `{}` outside F-forall",
                name(from),
                name(to),
                name(label)
            ),
            JumpFailure::Unrealizable(q) => {
                format!("condition (beta): no accepting run from `{}` has its profile inside the move", name(q))
            }
            JumpFailure::GoodCycle { from, to, label } => format!(
                "condition (gamma): cycle through `{}` -> `{}` has maximal label `{}` in F-forall",
                name(from),
                name(to),
                name(label)
            ),
            JumpFailure::Avoidable(q) => {
                format!("condition (delta): an accepting run from `{}` avoids every chosen pair", name(q))
            }
        }
    }
}

fn well_typed(a: &NonzeroAutomaton, w: &JumpingWitness) -> Result<(), JumpError> {
    if w.num_states() != a.num_states() {
        return Err(JumpError::SizeMismatch);
    }
    for q in a.states() {
        let moves = w.moves(q);
        if !w.region.contains(q) {
            if !moves.is_empty() {
                return Err(JumpError::MoveOutsideRegion(a.state_name(q).to_owned()));
            }
            continue;
        }
        if let Some((target, _)) = moves.iter().find(|(r, _)| !w.region.contains(*r)) {
            return Err(JumpError::IllTyped {
                state: a.state_name(q).to_owned(),
                target: a.state_name(target).to_owned(),
            });
        }
    }
    Ok(())
}

/// Finds a cycle of the generated graph whose maximal label has the given
/// parity (`odd` labels are outside `F∀`). Returns the edge carrying that
/// maximal label.
fn find_cycle(
    a: &NonzeroAutomaton,
    w: &JumpingWitness,
    odd: bool,
) -> Option<(StateId, StateId, StateId)> {
    let n = a.num_states();
    let prio = compress_priorities(a.forall_set());
    let edges: Vec<(StateId, StateId, StateId)> = w
        .region
        .iter()
        .flat_map(|q| w.moves(q).iter().map(move |(r, m)| (q, r, m)))
        .collect();
    let top = prio.max();
    for p in (0..=top).filter(|p| (p % 2 == 1) == odd) {
        let mut succ = vec![Vec::new(); n];
        for &(q, r, m) in &edges {
            if prio.get(m) <= p {
                succ[q.index()].push(r.index());
            }
        }
        let active: Vec<bool> = (0..n)
            .map(|i| w.region.contains(StateId::from_index(i)))
            .collect();
        let mut component = vec![usize::MAX; n];
        for (c, members) in tarjan(n, &succ, &active).into_iter().enumerate() {
            for v in members {
                component[v] = c;
            }
        }
        let hit = edges
            .iter()
            .filter(|(q, r, m)| prio.get(*m) == p && component[q.index()] == component[r.index()])
            .max_by_key(|(q, r, m)| (*m, std::cmp::Reverse((*q, *r))));
        if let Some(&e) = hit {
            return Some(e);
        }
    }
    None
}

/// Checks (α) and (β) for an Automaton witness.
pub fn check_automaton_witness_with(
    oracle: &AvailOracle,
    a: &NonzeroAutomaton,
    w: &JumpingWitness,
) -> Result<Verdict<JumpFailure>, JumpError> {
    if w.side != Side::Automaton {
        return Err(JumpError::WrongSide {
            expected: Side::Automaton.header(),
            actual: w.side.header(),
        });
    }
    well_typed(a, w)?;
    if let Some(q) = w.region.iter().find(|q| w.moves(*q).is_empty()) {
        return Ok(Verdict::Fails(JumpFailure::EmptyMove(q)));
    }
    if let Some((from, to, label)) = find_cycle(a, w, true) {
        return Ok(Verdict::Fails(JumpFailure::BadCycle { from, to, label }));
    }
    if let Some(q) = w.region.iter().find(|q| !oracle.avail(*q, w.moves(*q))) {
        return Ok(Verdict::Fails(JumpFailure::Unrealizable(q)));
    }
    Ok(Verdict::Holds)
}

pub fn check_automaton_witness(
    a: &NonzeroAutomaton,
    w: &JumpingWitness,
) -> Result<Verdict<JumpFailure>, JumpError> {
    check_automaton_witness_with(&AvailOracle::new(a), a, w)
}

/// Checks (γ) and (δ) for a Pathfinder witness.
pub fn check_pathfinder_witness_with(
    oracle: &AvailOracle,
    a: &NonzeroAutomaton,
    w: &JumpingWitness,
) -> Result<Verdict<JumpFailure>, JumpError> {
    if w.side != Side::Pathfinder {
        return Err(JumpError::WrongSide {
            expected: Side::Pathfinder.header(),
            actual: w.side.header(),
        });
    }
    well_typed(a, w)?;
    if let Some((from, to, label)) = find_cycle(a, w, false) {
        return Ok(Verdict::Fails(JumpFailure::GoodCycle { from, to, label }));
    }
    if let Some(q) = w
        .region
        .iter()
        .find(|q| oracle.avail(*q, &w.moves(*q).complement()))
    {
        return Ok(Verdict::Fails(JumpFailure::Avoidable(q)));
    }
    Ok(Verdict::Holds)
}

pub fn check_pathfinder_witness(
    a: &NonzeroAutomaton,
    w: &JumpingWitness,
) -> Result<Verdict<JumpFailure>, JumpError> {
    check_pathfinder_witness_with(&AvailOracle::new(a), a, w)
}

/// Dispatches on the witness side.
pub fn check_witness(
    a: &NonzeroAutomaton,
    w: &JumpingWitness,
) -> Result<Verdict<JumpFailure>, JumpError> {
    match w.side {
        Side::Automaton => check_automaton_witness(a, w),
        Side::Pathfinder => check_pathfinder_witness(a, w),
    }
}
