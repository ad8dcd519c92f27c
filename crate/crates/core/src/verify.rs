//! Independent checking of certificates.

use thiserror::Error;

use crate::automaton::{Automaton, NonzeroAutomaton, RunSemantics, StateId, StateSet, Transition};
use crate::graph::TransitionGraph;
use crate::jumping::{
    check_automaton_witness, check_pathfinder_witness, game_automaton, JumpError, JumpFailure,
    JumpingWitness, Side,
};
use crate::priority::compress_priorities;
use crate::trivial::{
    is_acceptance_witness, AcceptanceWitness, PositionalRun, TrivialError, WitnessFailure,
};
use crate::verdict::Verdict;

/// The first acceptance condition a positional run violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunFailure {
    /// A bottom component of the chain with maximum outside `F1`.
    AlmostSure(StateId),
    /// A state of `F>0` with no `F>0` path to a bottom component inside `F>0`.
    Nonzero(StateId),
    /// A cycle whose maximal state, given here, is outside `F∀`.
    Sure(StateId),
}

impl RunFailure {
    pub fn condition(&self) -> &'static str {
        match self {
            RunFailure::AlmostSure(_) => "almost-sure",
            RunFailure::Nonzero(_) => "nonzero",
            RunFailure::Sure(_) => "sure",
        }
    }

    pub fn describe(&self, a: &NonzeroAutomaton) -> String {
        match *self {
            RunFailure::AlmostSure(q) => {
                format!(
                    "almost-sure check: bottom component with maximum `{}` outside F1",
                    a.state_name(q)
                )
            }
            RunFailure::Nonzero(q) => format!(
                "nonzero check: no F>0 path from `{}` to a bottom component inside F>0",
                a.state_name(q)
            ),
            RunFailure::Sure(q) => {
                format!(
                    "sure check: cycle with maximum `{}` outside F-forall",
                    a.state_name(q)
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("run has no choice for reachable state `{0}`")]
    NotClosed(String),
    #[error("run chooses `{0}`, which is not a transition of the automaton")]
    ForeignChoice(String),
    #[error("certificate kind `{certificate}` does not fit {context}")]
    KindMismatch {
        certificate: &'static str,
        context: &'static str,
    },
    #[error(transparent)]
    Trivial(#[from] TrivialError),
    #[error(transparent)]
    Jump(#[from] JumpError),
}

/// States reachable from the run's root through chosen transitions.
fn reachable(
    a: &NonzeroAutomaton,
    r: &PositionalRun,
) -> Result<(StateSet, Vec<Transition>), VerifyError> {
    let n = a.num_states();
    let mut seen = StateSet::empty(n);
    let mut picks = Vec::new();
    seen.insert(r.root());
    let mut stack = vec![r.root()];
    while let Some(q) = stack.pop() {
        let t = *r
            .choice(q)
            .ok_or_else(|| VerifyError::NotClosed(a.state_name(q).to_owned()))?;
        if !a.has_transition(&t) {
            return Err(VerifyError::ForeignChoice(a.display_transition(&t)));
        }
        picks.push(t);
        for next in t.successors() {
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    picks.sort_unstable();
    Ok((seen, picks))
}

/// Choices the run carries for states unreachable from its root.
pub fn unreachable_choices(a: &NonzeroAutomaton, r: &PositionalRun) -> Vec<StateId> {
    let seen = match reachable(a, r) {
        Ok((seen, _)) => seen,
        Err(_) => return Vec::new(),
    };
    r.picks()
        .map(|t| t.source)
        .filter(|q| !seen.contains(*q))
        .collect()
}

/// Reads the run as a finite Markov chain and checks its acceptance.
pub fn verify_positional_run(
    a: &NonzeroAutomaton,
    r: &PositionalRun,
    sem: RunSemantics,
) -> Result<Verdict<RunFailure>, VerifyError> {
    let n = a.num_states();
    let (states, picks) = reachable(a, r)?;
    let graph = TransitionGraph::new(n, &picks);
    let bsccs = graph.bsccs();

    for b in &bsccs {
        let m = b.last().unwrap();
        if !a.one_set().contains(m) {
            return Ok(Verdict::Fails(RunFailure::AlmostSure(m)));
        }
    }

    let positive = a.positive_set();
    let within = states.intersection(positive);
    let mut targets = StateSet::empty(n);
    for b in bsccs.iter().filter(|b| b.is_subset(positive)) {
        targets.union_with(b);
    }
    let reach = graph.can_reach_within(&within, &targets);
    if let Some(q) = within.difference(&reach).first() {
        return Ok(Verdict::Fails(RunFailure::Nonzero(q)));
    }

    if sem == RunSemantics::Full {
        let prio = compress_priorities(a.forall_set());
        for p in (1..=prio.max()).step_by(2) {
            let low = StateSet::from_states(n, states.iter().filter(|q| prio.get(*q) <= p));
            for c in graph.sccs_within(&low) {
                if !graph.is_nontrivial(&c) {
                    continue;
                }
                if let Some(q) = c.iter().filter(|q| prio.get(*q) == p).max() {
                    return Ok(Verdict::Fails(RunFailure::Sure(q)));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A certificate in any of the supported forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Acceptance(AcceptanceWitness),
    Run(PositionalRun),
    Jumping(JumpingWitness),
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::Acceptance(_) => "acceptance-witness",
            Certificate::Run(_) => "positional-run",
            Certificate::Jumping(w) => w.side.header(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Nonempty,
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateFailure {
    Witness(WitnessFailure),
    Run(RunFailure),
    Jump(JumpFailure),
    /// The initial state is not in the witness region.
    InitialOutsideRegion,
}

impl CertificateFailure {
    pub fn describe(&self, a: &NonzeroAutomaton) -> String {
        match self {
            CertificateFailure::Witness(f) => f.describe(a),
            CertificateFailure::Run(f) => f.describe(a),
            CertificateFailure::Jump(f) => f.describe(a),
            CertificateFailure::InitialOutsideRegion => {
                "initial state is not in the witness region".into()
            }
        }
    }
}

/// The automaton a certificate for `a` refers to: `a` itself, or the pruned
/// translation of a zero automaton.
pub fn certificate_automaton(a: &Automaton) -> NonzeroAutomaton {
    game_automaton(a)
}

/// Re-checks `cert` against `a` with the checker matching its kind.
///
/// Acceptance witnesses and positional runs certify nonemptiness of the
/// almost-sure and nonzero conditions from their own root; jumping witnesses
/// certify the full answer and must cover the initial state.
pub fn certify(
    a: &Automaton,
    answer: Answer,
    cert: &Certificate,
) -> Result<Verdict<CertificateFailure>, VerifyError> {
    let mismatch = |context| VerifyError::KindMismatch {
        certificate: cert.kind_name(),
        context,
    };
    match (answer, cert) {
        (Answer::Nonempty, Certificate::Acceptance(w)) => {
            let Automaton::Nonzero(base) = a else {
                return Err(mismatch("a zero automaton"));
            };
            Ok(is_acceptance_witness(base, &w.transitions, w.root)?
                .map(CertificateFailure::Witness))
        }
        (Answer::Nonempty, Certificate::Run(r)) => {
            let Automaton::Nonzero(base) = a else {
                return Err(mismatch("a zero automaton"));
            };
            Ok(verify_positional_run(base, r, RunSemantics::Trivial)?.map(CertificateFailure::Run))
        }
        (_, Certificate::Jumping(w)) => {
            let expected = match answer {
                Answer::Nonempty => Side::Automaton,
                Answer::Empty => Side::Pathfinder,
            };
            if w.side != expected {
                return Err(mismatch(match answer {
                    Answer::Nonempty => "a nonempty answer",
                    Answer::Empty => "an empty answer",
                }));
            }
            let game = certificate_automaton(a);
            if w.num_states() != game.num_states() {
                return Err(VerifyError::Jump(JumpError::SizeMismatch));
            }
            let verdict = match w.side {
                Side::Automaton => check_automaton_witness(&game, w)?,
                Side::Pathfinder => check_pathfinder_witness(&game, w)?,
            };
            if !verdict.holds() {
                return Ok(verdict.map(CertificateFailure::Jump));
            }
            if !w.region.contains(game.initial()) {
                return Ok(Verdict::Fails(CertificateFailure::InitialOutsideRegion));
            }
            Ok(Verdict::Holds)
        }
        (Answer::Empty, _) => Err(mismatch("an empty answer")),
    }
}
