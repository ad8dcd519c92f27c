//! Emptiness of automata judged only by the almost-sure and nonzero
//! conditions (`F∀` is ignored throughout this module).
//!
//! The central certificate is an acceptance witness: a set `D` of
//! transitions whose transition graph contains the root, has no dead end,
//! and whose bottom components have the right maxima and `F>0` shape.
//! Witnesses shrink to positional runs, and their existence is decided in
//! polynomial time by turning almost-surely winnable states into absorbing
//! ones and computing a greatest fixpoint of transitions.

use std::fmt;

use thiserror::Error;

use crate::automaton::{LetterId, NonzeroAutomaton, StateId, StateSet, Transition};
use crate::error::GuardExceeded;
use crate::graph::{almost_sure_reach, mec_decompose, transitions_inside, TransitionGraph};
use crate::verdict::Verdict;

/// A transition set offered as proof of nonemptiness from `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptanceWitness {
    pub root: StateId,
    /// Canonically sorted.
    pub transitions: Vec<Transition>,
}

impl AcceptanceWitness {
    pub fn new(root: StateId, mut transitions: Vec<Transition>) -> Self {
        transitions.sort_unstable();
        transitions.dedup();
        AcceptanceWitness { root, transitions }
    }
}

/// One transition per state, read as a regular run from `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionalRun {
    root: StateId,
    choice: Vec<Option<Transition>>,
}

impl PositionalRun {
    pub fn new(num_states: usize, root: StateId) -> Self {
        PositionalRun {
            root,
            choice: vec![None; num_states],
        }
    }

    /// Sets the choice at `t.source`, returning the previous one.
    pub fn pick(&mut self, t: Transition) -> Option<Transition> {
        self.choice[t.source.index()].replace(t)
    }

    pub fn root(&self) -> StateId {
        self.root
    }

    pub fn num_states(&self) -> usize {
        self.choice.len()
    }

    pub fn choice(&self, q: StateId) -> Option<&Transition> {
        self.choice.get(q.index()).and_then(Option::as_ref)
    }

    /// Chosen transitions in state order.
    pub fn picks(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.choice.iter().flatten()
    }
}

/// The first condition an acceptance witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessFailure {
    /// i) the root does not occur in the transition graph.
    RootMissing,
    /// i) a state without outgoing transition.
    DeadEnd(StateId),
    /// ii) a bottom component whose maximum is not in `F1`.
    BsccMaximum(StateId),
    /// iii) a bottom component (given by its maximum) meeting `F>0` without
    /// being contained in it.
    BsccMixed(StateId),
    /// iv) a state of `F>0` with no `F>0` path to a bottom component inside `F>0`.
    NoPositivePath(StateId),
}

impl WitnessFailure {
    pub fn condition(&self) -> &'static str {
        match self {
            WitnessFailure::RootMissing | WitnessFailure::DeadEnd(_) => "i",
            WitnessFailure::BsccMaximum(_) => "ii",
            WitnessFailure::BsccMixed(_) => "iii",
            WitnessFailure::NoPositivePath(_) => "iv",
        }
    }

    /// Human-readable form using the automaton's state names.
    pub fn describe(&self, a: &NonzeroAutomaton) -> String {
        match *self {
            WitnessFailure::RootMissing => {
                "condition i): root does not occur in the witness".into()
            }
            WitnessFailure::DeadEnd(q) => {
                format!("condition i): `{}` is a dead end", a.state_name(q))
            }
            WitnessFailure::BsccMaximum(q) => {
                format!(
                    "condition ii): bottom component with maximum `{}` outside F1",
                    a.state_name(q)
                )
            }
            WitnessFailure::BsccMixed(q) => format!(
                "condition iii): bottom component with maximum `{}` partly in F>0",
                a.state_name(q)
            ),
            WitnessFailure::NoPositivePath(q) => format!(
                "condition iv): no F>0 path from `{}` to a bottom component inside F>0",
                a.state_name(q)
            ),
        }
    }
}

impl fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {})", self.condition())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrivialError {
    #[error("transition {0:?} is not a transition of the automaton")]
    ForeignTransition(Transition),
    #[error("not an acceptance witness: {0}")]
    NotAWitness(WitnessFailure),
}

/// The data the algorithms of this module look at. Acceptance sets need not
/// be restricted to the states occurring in `transitions`.
#[derive(Clone, Copy)]
pub(crate) struct System<'a> {
    pub num_states: usize,
    pub num_letters: usize,
    pub transitions: &'a [Transition],
    pub one: &'a StateSet,
    pub positive: &'a StateSet,
}

impl<'a> System<'a> {
    pub(crate) fn of(a: &'a NonzeroAutomaton) -> Self {
        System {
            num_states: a.num_states(),
            num_letters: a.num_letters(),
            transitions: a.transitions(),
            one: a.one_set(),
            positive: a.positive_set(),
        }
    }
}

pub(crate) fn witness_conditions(
    n: usize,
    d: &[Transition],
    one: &StateSet,
    positive: &StateSet,
    root: StateId,
) -> Result<(), WitnessFailure> {
    let graph = TransitionGraph::new(n, d);
    if !graph.vertices().contains(root) {
        return Err(WitnessFailure::RootMissing);
    }
    if let Some(q) = graph.dead_ends().first() {
        return Err(WitnessFailure::DeadEnd(q));
    }
    let bsccs = graph.bsccs();
    for b in &bsccs {
        let m = b.last().expect("components are nonempty");
        if !one.contains(m) {
            return Err(WitnessFailure::BsccMaximum(m));
        }
    }
    for b in &bsccs {
        if !b.is_subset(positive) && !b.is_disjoint(positive) {
            return Err(WitnessFailure::BsccMixed(b.last().unwrap()));
        }
    }
    let within = graph.vertices().intersection(positive);
    let mut targets = StateSet::empty(n);
    for b in bsccs.iter().filter(|b| b.is_subset(positive)) {
        targets.union_with(b);
    }
    let reach = graph.can_reach_within(&within, &targets);
    if let Some(q) = within.difference(&reach).first() {
        return Err(WitnessFailure::NoPositivePath(q));
    }
    Ok(())
}

fn check_foreign(a: &NonzeroAutomaton, d: &[Transition]) -> Result<(), TrivialError> {
    match d.iter().find(|t| !a.has_transition(t)) {
        Some(t) => Err(TrivialError::ForeignTransition(*t)),
        None => Ok(()),
    }
}

/// Checks conditions i) to iv) with `root` in place of the initial state.
pub fn is_acceptance_witness(
    a: &NonzeroAutomaton,
    d: &[Transition],
    root: StateId,
) -> Result<Verdict<WitnessFailure>, TrivialError> {
    check_foreign(a, d)?;
    Ok(witness_conditions(a.num_states(), d, a.one_set(), a.positive_set(), root).into())
}

/// Removes all but one transition per state while preserving the witness
/// conditions, always processing the least ambiguous state first.
fn shrink_witness(n: usize, mut d: Vec<Transition>, positive: &StateSet) -> Vec<Transition> {
    d.sort_unstable();
    d.dedup();
    loop {
        let ambiguous = d
            .windows(2)
            .find(|w| w[0].source == w[1].source)
            .map(|w| w[0].source);
        let Some(q) = ambiguous else {
            return d;
        };
        let graph = TransitionGraph::new(n, &d);
        let bsccs = graph.bsccs();
        let (within, eligible): (StateSet, Vec<&StateSet>) = if positive.contains(q) {
            (
                graph.vertices().intersection(positive),
                bsccs.iter().filter(|b| b.is_subset(positive)).collect(),
            )
        } else {
            (graph.vertices().clone(), bsccs.iter().collect())
        };
        let targets = StateSet::from_states(n, eligible.iter().map(|b| b.last().unwrap()));
        let dist = graph.distances_to(&within, &targets);
        let next = graph
            .successors(q)
            .iter()
            .filter(|r| within.contains(**r))
            .filter_map(|&r| dist[r.index()].map(|d| (d, r)))
            .min()
            .map(|(_, r)| r)
            .expect("witness conditions guarantee a path to a bottom maximum");
        let keep = *d
            .iter()
            .find(|t| t.source == q && (t.left == next || t.right == next))
            .unwrap();
        d.retain(|t| t.source != q || *t == keep);
    }
}

/// The chosen transitions of states reachable from `root`.
fn run_from_transitions(n: usize, root: StateId, d: &[Transition]) -> PositionalRun {
    let mut run = PositionalRun::new(n, root);
    let mut by_source: Vec<Option<Transition>> = vec![None; n];
    for t in d {
        by_source[t.source.index()] = Some(*t);
    }
    let mut seen = StateSet::empty(n);
    seen.insert(root);
    let mut stack = vec![root];
    while let Some(q) = stack.pop() {
        if let Some(t) = by_source[q.index()] {
            run.pick(t);
            for r in t.successors() {
                if seen.insert(r) {
                    stack.push(r);
                }
            }
        }
    }
    run
}

/// Shrinks an acceptance witness into a positional run with the same root.
pub fn witness_to_positional_run(
    a: &NonzeroAutomaton,
    w: &AcceptanceWitness,
) -> Result<PositionalRun, TrivialError> {
    if let Verdict::Fails(f) = is_acceptance_witness(a, &w.transitions, w.root)? {
        return Err(TrivialError::NotAWitness(f));
    }
    let d = shrink_witness(a.num_states(), w.transitions.clone(), a.positive_set());
    Ok(run_from_transitions(a.num_states(), w.root, &d))
}

/// Enumerates subsets of `Δ` by increasing bitmask (bit `i` is the `i`-th
/// transition in canonical order) and returns the first acceptance witness.
pub fn brute_force_acceptance_witness(
    a: &NonzeroAutomaton,
    root: StateId,
    guard: usize,
) -> Result<Option<AcceptanceWitness>, GuardExceeded> {
    let delta = a.transitions();
    let m = delta.len();
    if m > guard || m >= 63 {
        return Err(GuardExceeded {
            what: "transitions for brute-force witness search",
            limit: guard.min(62),
            actual: m,
        });
    }
    let n = a.num_states();
    let mut chosen = Vec::with_capacity(m);
    for mask in 1u64..(1u64 << m) {
        let mut sources = StateSet::empty(n);
        let mut vertices = StateSet::empty(n);
        chosen.clear();
        for (i, t) in delta.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sources.insert(t.source);
                vertices.insert(t.source);
                vertices.insert(t.left);
                vertices.insert(t.right);
                chosen.push(*t);
            }
        }
        if !sources.contains(root) || !vertices.is_subset(&sources) {
            continue;
        }
        if witness_conditions(n, &chosen, a.one_set(), a.positive_set(), root).is_ok() {
            return Ok(Some(AcceptanceWitness::new(root, chosen)));
        }
    }
    Ok(None)
}

/// States from which a run staying inside `allowed` is almost surely
/// accepting, together with a transition set witnessing this for all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostSureSet {
    pub states: StateSet,
    /// Good end-component transitions plus one progressive transition for
    /// every other state of `states`; canonically sorted.
    pub witness: Vec<Transition>,
}

pub(crate) fn almost_sure_set_in(sys: &System, allowed: &StateSet) -> AlmostSureSet {
    let n = sys.num_states;
    let inside = transitions_inside(sys.transitions, allowed);
    let mut good = StateSet::empty(n);
    let mut witness = Vec::new();
    for m in sys.one.intersection(allowed).iter() {
        let below = StateSet::from_states(n, allowed.iter().filter(|q| *q <= m));
        let restricted = transitions_inside(&inside, &below);
        for mec in mec_decompose(n, &restricted) {
            if mec.iter().any(|t| t.source == m) {
                for t in &mec {
                    good.insert(t.source);
                }
                witness.extend(mec);
                break;
            }
        }
    }
    let states = almost_sure_reach(&inside, allowed, &good);
    let core = transitions_inside(&inside, &states);
    let graph = TransitionGraph::new(n, &core);
    let dist = graph.distances_to(&states, &good);
    for q in states.difference(&good).iter() {
        let dq = dist[q.index()].expect("almost-sure states reach the good set");
        let step = core.iter().find(|t| {
            t.source == q
                && t.successors()
                    .iter()
                    .any(|r| dist[r.index()].is_some_and(|dr| dr + 1 == dq))
        });
        witness.push(*step.expect("every state off target has a progressive transition"));
    }
    witness.sort_unstable();
    witness.dedup();
    AlmostSureSet { states, witness }
}

/// States `q` of `allowed` for which some transition set inside `allowed`
/// contains `q`, has no dead end, and has every bottom maximum in `F1`.
pub fn almost_sure_set(a: &NonzeroAutomaton, allowed: &StateSet) -> StateSet {
    almost_sure_set_in(&System::of(a), allowed).states
}

/// [`almost_sure_set`] together with its witness transitions.
pub fn almost_sure_witness(a: &NonzeroAutomaton, allowed: &StateSet) -> AlmostSureSet {
    almost_sure_set_in(&System::of(a), allowed)
}

/// Intermediate results of the polynomial algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialAnalysis {
    /// Almost-sure states using only `F>0` states.
    pub r0: AlmostSureSet,
    /// Almost-sure states avoiding `F>0`.
    pub r1: AlmostSureSet,
    /// Greatest transition set of the absorbing automaton meeting the
    /// reduced witness conditions; canonically sorted.
    pub d_max: Vec<Transition>,
    /// States occurring in `d_max`.
    pub vertices: StateSet,
}

impl TrivialAnalysis {
    pub fn is_nonempty_at(&self, root: StateId) -> bool {
        self.vertices.contains(root)
    }

    /// Splices the almost-sure witnesses into the non-absorbing part of
    /// `d_max`, giving an acceptance witness of the original automaton.
    pub fn spliced_witness(&self, root: StateId) -> Option<AcceptanceWitness> {
        if !self.is_nonempty_at(root) {
            return None;
        }
        let absorbing = self.r0.states.union(&self.r1.states);
        let mut d: Vec<Transition> = self
            .d_max
            .iter()
            .copied()
            .filter(|t| !absorbing.contains(t.source))
            .collect();
        d.extend(self.r0.witness.iter().copied());
        d.extend(self.r1.witness.iter().copied());
        Some(AcceptanceWitness::new(root, d))
    }
}

pub(crate) fn analyse(sys: &System) -> TrivialAnalysis {
    let n = sys.num_states;
    let r0 = almost_sure_set_in(sys, sys.positive);
    let r1 = almost_sure_set_in(sys, &sys.positive.complement());
    let absorbing = r0.states.union(&r1.states);

    let mut d: Vec<Transition> = sys
        .transitions
        .iter()
        .copied()
        .filter(|t| !absorbing.contains(t.source))
        .collect();
    for q in absorbing.iter() {
        for a in 0..sys.num_letters {
            d.push(Transition::new(q, LetterId(a as u32), q, q));
        }
    }
    d.sort_unstable();

    loop {
        let before = d.len();

        let graph = TransitionGraph::new(n, &d);
        let dead = graph.dead_ends();
        if !dead.is_empty() {
            d.retain(|t| !dead.contains(t.left) && !dead.contains(t.right));
        }

        let graph = TransitionGraph::new(n, &d);
        let mut doomed = StateSet::empty(n);
        for b in graph.bsccs() {
            if b.is_disjoint(&absorbing) {
                doomed.union_with(&b);
            }
        }
        if !doomed.is_empty() {
            d.retain(|t| !doomed.contains(t.source));
        }

        let graph = TransitionGraph::new(n, &d);
        let within = graph.vertices().intersection(sys.positive);
        let reach = graph.can_reach_within(&within, &r0.states);
        d.retain(|t| !sys.positive.contains(t.source) || reach.contains(t.source));

        if d.len() == before {
            break;
        }
    }
    let vertices = TransitionGraph::new(n, &d).vertices().clone();
    TrivialAnalysis {
        r0,
        r1,
        d_max: d,
        vertices,
    }
}

/// Runs the polynomial algorithm and returns all intermediate sets.
pub fn trivial_analysis(a: &NonzeroAutomaton) -> TrivialAnalysis {
    analyse(&System::of(a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrivialOutcome {
    Nonempty(PositionalRun),
    Empty,
}

impl TrivialOutcome {
    pub fn is_nonempty(&self) -> bool {
        matches!(self, TrivialOutcome::Nonempty(_))
    }
}

/// Decides whether some run from `root` is almost-surely and nonzero
/// accepting, returning a positional run when it is.
pub fn trivial_emptiness(a: &NonzeroAutomaton, root: StateId) -> TrivialOutcome {
    let analysis = trivial_analysis(a);
    match analysis.spliced_witness(root) {
        None => TrivialOutcome::Empty,
        Some(w) => {
            let d = shrink_witness(a.num_states(), w.transitions, a.positive_set());
            TrivialOutcome::Nonempty(run_from_transitions(a.num_states(), root, &d))
        }
    }
}

/// Decision only: whether `trivial_emptiness` would answer nonempty.
pub fn trivial_nonempty(a: &NonzeroAutomaton, root: StateId) -> bool {
    trivial_analysis(a).is_nonempty_at(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn tr(a: &NonzeroAutomaton, text: &str) -> Transition {
        let parts: Vec<&str> = text.split_whitespace().collect();
        Transition::new(
            a.state_by_name(parts[0]).unwrap(),
            a.letter_by_name(parts[1]).unwrap(),
            a.state_by_name(parts[2]).unwrap(),
            a.state_by_name(parts[3]).unwrap(),
        )
    }

    fn one_state(one: bool, positive: bool) -> NonzeroAutomaton {
        let set = |b: bool| {
            if b {
                StateSet::full(1)
            } else {
                StateSet::empty(1)
            }
        };
        NonzeroAutomaton::new(
            vec!["q".into()],
            vec!["a".into()],
            vec![Transition::new(
                StateId(0),
                LetterId(0),
                StateId(0),
                StateId(0),
            )],
            StateSet::full(1),
            set(one),
            set(positive),
        )
        .unwrap()
    }

    #[test]
    fn dense_chain_is_a_witness() {
        let a = catalog::dense();
        let d: Vec<Transition> = ["f b n s", "n b n s", "s b n s"]
            .iter()
            .map(|t| tr(&a, t))
            .collect();
        let f = a.initial();
        assert!(is_acceptance_witness(&a, &d, f).unwrap().holds());
        let loop_f = [tr(&a, "f a f f")];
        assert_eq!(
            is_acceptance_witness(&a, &loop_f, f).unwrap(),
            Verdict::Fails(WitnessFailure::BsccMaximum(f))
        );
    }

    #[test]
    fn everywhere_positive_witness() {
        let a = catalog::everywhere_positive();
        let d: Vec<Transition> = ["f_a a n_b s_b", "n_b a n_b s_b", "s_b a n_b s_b"]
            .iter()
            .map(|t| tr(&a, t))
            .collect();
        assert!(is_acceptance_witness(&a, &d, a.initial()).unwrap().holds());
    }

    #[test]
    fn foreign_transition_is_an_error() {
        let a = catalog::dense();
        let bogus = tr(&a, "f a s s");
        assert_eq!(
            is_acceptance_witness(&a, &[bogus], a.initial()),
            Err(TrivialError::ForeignTransition(bogus))
        );
    }

    #[test]
    fn shrinking_drops_the_loop() {
        let a = catalog::dense();
        let d: Vec<Transition> = ["f b n s", "f a f f", "n b n s", "s b n s"]
            .iter()
            .map(|t| tr(&a, t))
            .collect();
        let run = witness_to_positional_run(&a, &AcceptanceWitness::new(a.initial(), d)).unwrap();
        assert_eq!(run.choice(a.initial()), Some(&tr(&a, "f b n s")));
        assert_eq!(run.picks().count(), 3);
    }

    #[test]
    fn positional_witness_is_unchanged() {
        let a = catalog::dense();
        let d: Vec<Transition> = ["f b n s", "n b n s", "s b n s"]
            .iter()
            .map(|t| tr(&a, t))
            .collect();
        let run =
            witness_to_positional_run(&a, &AcceptanceWitness::new(a.initial(), d.clone())).unwrap();
        let picked: Vec<Transition> = run.picks().copied().collect();
        let mut expected = d;
        expected.sort();
        assert_eq!(picked, expected);
    }

    #[test]
    fn not_a_witness_is_rejected() {
        let a = catalog::dense();
        let w = AcceptanceWitness::new(a.initial(), vec![tr(&a, "f a f f")]);
        assert!(matches!(
            witness_to_positional_run(&a, &w),
            Err(TrivialError::NotAWitness(_))
        ));
    }

    #[test]
    fn brute_force_single_state() {
        let a = one_state(true, false);
        let w = brute_force_acceptance_witness(&a, StateId(0), 12)
            .unwrap()
            .unwrap();
        assert_eq!(w.transitions, a.transitions());
        let a = one_state(false, false);
        assert_eq!(
            brute_force_acceptance_witness(&a, StateId(0), 12).unwrap(),
            None
        );
    }

    #[test]
    fn brute_force_guard() {
        let a = catalog::dense();
        let err = brute_force_acceptance_witness(&a, a.initial(), 4).unwrap_err();
        assert_eq!(err.actual, 9);
    }

    #[test]
    fn almost_sure_set_examples() {
        let a = one_state(true, false);
        assert!(almost_sure_set(&a, &StateSet::empty(1)).is_empty());
        assert_eq!(almost_sure_set(&a, &StateSet::full(1)), StateSet::full(1));
        let ep = catalog::everywhere_positive();
        assert_eq!(almost_sure_set(&ep, ep.positive_set()), *ep.positive_set());
    }

    #[test]
    fn dense_is_nonempty_with_chain_run() {
        let a = catalog::dense();
        let TrivialOutcome::Nonempty(run) = trivial_emptiness(&a, a.initial()) else {
            panic!("dense automaton is nonempty");
        };
        let graph = TransitionGraph::new(3, &run.picks().copied().collect::<Vec<_>>());
        let s = a.state_by_name("s").unwrap();
        let n = a.state_by_name("n").unwrap();
        assert_eq!(graph.bsccs(), vec![StateSet::from_states(3, [s, n])]);
    }

    #[test]
    fn everywhere_positive_is_nonempty() {
        let a = catalog::everywhere_positive();
        assert!(trivial_emptiness(&a, a.initial()).is_nonempty());
    }

    #[test]
    fn no_almost_sure_states_means_empty() {
        let a = catalog::dense();
        let a = a.with_acceptance(a.forall_set().clone(), a.empty_set(), a.empty_set());
        for q in a.states() {
            assert_eq!(trivial_emptiness(&a, q), TrivialOutcome::Empty);
        }
    }
}
