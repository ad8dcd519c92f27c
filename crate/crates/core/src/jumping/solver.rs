//! Zielonka-style solver for the jumping game on its implicit arena.
//!
//! Nodes are the states (owned by Automaton, carrying the least priority)
//! and the pairs `(q', m)` (priority of `m`, unique successor `q'`).
//! Automaton's moves from `q` are the pair sets `X` with `avail(q, X)`, and
//! Pathfinder answers with a pair of `X`. A subgame is described by its
//! states `S`, its pairs `P`, the pairs `Z` removed by Automaton attractors
//! (Automaton may still offer them, Pathfinder can never profit from
//! picking them) and the pairs `F` removed by Pathfinder attractors
//! (Automaton must not offer them). `P`, `Z` and `F` partition `Q × Q`.

use crate::automaton::{NonzeroAutomaton, StateId, StateSet};
use crate::jumping::extended::AvailOracle;
use crate::jumping::pairs::PairSet;
use crate::jumping::witness::{
    check_automaton_witness_with, check_pathfinder_witness_with, JumpingWitness, Side,
};
use crate::priority::{compress_priorities, PriorityMap};

/// Bounds for the last-resort Pathfinder witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of candidate sets examined per state, and maximum
    /// number of combinations examined overall.
    pub search_guard: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            search_guard: 1 << 16,
        }
    }
}

/// How the Pathfinder witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessOrigin {
    /// Read off the solver's strategy.
    Strategy,
    /// Greedy pruning of all pairs into the region.
    Greedy,
    /// Exhaustive search over minimal pair sets.
    Search,
    /// Every method failed or the search guard tripped; the regions are
    /// still the solver's answer but the witness does not pass its checker.
    Incomplete,
}

#[derive(Clone, Debug)]
pub struct GameSolution {
    pub automaton_region: StateSet,
    pub pathfinder_region: StateSet,
    pub automaton_witness: JumpingWitness,
    pub pathfinder_witness: JumpingWitness,
    pub pathfinder_origin: WitnessOrigin,
    /// Whether the Automaton witness passed its checker.
    pub automaton_witness_valid: bool,
}

impl GameSolution {
    pub fn witness_extraction_incomplete(&self) -> bool {
        !self.automaton_witness_valid || self.pathfinder_origin == WitnessOrigin::Incomplete
    }
}

#[derive(Clone)]
struct Ctx {
    s: StateSet,
    p: PairSet,
    z: PairSet,
    f: PairSet,
}

struct Solved {
    wa: StateSet,
    wp: StateSet,
    s: Vec<Option<PairSet>>,
    t: Vec<Option<PairSet>>,
}

impl Solved {
    fn empty(n: usize) -> Self {
        Solved {
            wa: StateSet::empty(n),
            wp: StateSet::empty(n),
            s: vec![None; n],
            t: vec![None; n],
        }
    }
}

struct Attractor {
    states: StateSet,
    pairs: PairSet,
    /// Strategy of the attracting player at each newly attracted state.
    strategy: Vec<(StateId, PairSet)>,
}

struct Solver<'a> {
    oracle: &'a AvailOracle,
    prio: PriorityMap,
    n: usize,
}

impl Solver<'_> {
    /// Pairs of `p` whose successor lies in `states`.
    fn pairs_into(&self, p: &PairSet, states: &StateSet) -> PairSet {
        PairSet::into_states(self.n, states).intersection(p)
    }

    fn attract(
        &self,
        ctx: &Ctx,
        player: Side,
        target_states: &StateSet,
        target_pairs: &PairSet,
    ) -> Attractor {
        let mut states = target_states.intersection(&ctx.s);
        let mut pairs = target_pairs
            .intersection(&ctx.p)
            .union(&self.pairs_into(&ctx.p, &states));
        let mut strategy = Vec::new();
        loop {
            let mut fresh = Vec::new();
            for q in ctx.s.difference(&states).iter() {
                match player {
                    Side::Automaton => {
                        let x = pairs.union(&ctx.z);
                        if self.oracle.avail(q, &x) {
                            fresh.push((q, x));
                        }
                    }
                    Side::Pathfinder => {
                        if !self
                            .oracle
                            .avail(q, &ctx.p.difference(&pairs).union(&ctx.z))
                        {
                            fresh.push((q, pairs.union(&ctx.f)));
                        }
                    }
                }
            }
            if fresh.is_empty() {
                return Attractor {
                    states,
                    pairs,
                    strategy,
                };
            }
            for (q, x) in fresh {
                states.insert(q);
                strategy.push((q, x));
            }
            pairs.union_with(&self.pairs_into(&ctx.p, &states));
        }
    }

    fn without(&self, ctx: &Ctx, attr: &Attractor, to_z: bool) -> Ctx {
        let mut child = ctx.clone();
        child.s.difference_with(&attr.states);
        child.p.difference_with(&attr.pairs);
        if to_z {
            child.z.union_with(&attr.pairs);
        } else {
            child.f.union_with(&attr.pairs);
        }
        child
    }

    fn solve(&self, ctx: &Ctx) -> Solved {
        let n = self.n;
        if ctx.s.is_empty() {
            return Solved::empty(n);
        }

        // states where Automaton has no move at all
        let dead = self.attract(
            ctx,
            Side::Pathfinder,
            &StateSet::empty(n),
            &PairSet::empty(n),
        );
        if !dead.states.is_empty() {
            let mut r = self.solve(&self.without(ctx, &dead, false));
            r.wp.union_with(&dead.states);
            for (q, x) in dead.strategy {
                r.t[q.index()] = Some(x);
            }
            return r;
        }

        let state_prio = self.prio.min();
        let d = ctx
            .p
            .iter()
            .map(|(_, m)| self.prio.get(m))
            .max()
            .map_or(state_prio, |p| p.max(state_prio));
        let player = if d % 2 == 0 {
            Side::Automaton
        } else {
            Side::Pathfinder
        };
        let u_states = if state_prio == d {
            ctx.s.clone()
        } else {
            StateSet::empty(n)
        };
        let u_pairs = PairSet::from_pairs(n, ctx.p.iter().filter(|(_, m)| self.prio.get(*m) == d));
        let a = self.attract(ctx, player, &u_states, &u_pairs);
        let r1 = self.solve(&self.without(ctx, &a, player == Side::Automaton));

        match player {
            Side::Automaton => {
                if r1.wp.is_empty() {
                    let mut r = r1;
                    r.wa = ctx.s.clone();
                    for q in u_states.iter() {
                        r.s[q.index()] = Some(ctx.p.union(&ctx.z));
                    }
                    for (q, x) in a.strategy {
                        r.s[q.index()] = Some(x);
                    }
                    r.t = vec![None; n];
                    return r;
                }
                let b = self.attract(ctx, Side::Pathfinder, &r1.wp, &PairSet::empty(n));
                let mut r = self.solve(&self.without(ctx, &b, false));
                for q in r1.wp.iter() {
                    r.t[q.index()] = r1.t[q.index()].clone();
                }
                for (q, x) in b.strategy {
                    r.t[q.index()] = Some(x);
                }
                r.wp.union_with(&b.states);
                r
            }
            Side::Pathfinder => {
                if r1.wa.is_empty() {
                    let mut r = r1;
                    r.wp = ctx.s.clone();
                    for q in u_states.iter() {
                        r.t[q.index()] = Some(ctx.p.union(&ctx.f));
                    }
                    for (q, x) in a.strategy {
                        r.t[q.index()] = Some(x);
                    }
                    r.s = vec![None; n];
                    return r;
                }
                let b = self.attract(ctx, Side::Automaton, &r1.wa, &PairSet::empty(n));
                let mut r = self.solve(&self.without(ctx, &b, true));
                for q in r1.wa.iter() {
                    r.s[q.index()] = r1.s[q.index()].clone();
                }
                for (q, x) in b.strategy {
                    r.s[q.index()] = Some(x);
                }
                r.wa.union_with(&b.states);
                r
            }
        }
    }
}

/// Pairs ordered for greedy removal: `m ∈ F∀` first, then by descending `m`,
/// then by ascending `q'`.
fn removal_order(a: &NonzeroAutomaton, pairs: &PairSet) -> Vec<(StateId, StateId)> {
    let mut order: Vec<(StateId, StateId)> = pairs.iter().collect();
    order.sort_by_key(|&(q, m)| (!a.forall_set().contains(m), std::cmp::Reverse(m), q));
    order
}

fn greedy_pathfinder(
    oracle: &AvailOracle,
    a: &NonzeroAutomaton,
    region: &StateSet,
) -> JumpingWitness {
    let n = a.num_states();
    let all = PairSet::into_states(n, region);
    let mut w = JumpingWitness::new(Side::Pathfinder, region.clone());
    for q in region.iter() {
        let mut t = all.clone();
        for (r, m) in removal_order(a, &all) {
            let mut smaller = t.clone();
            smaller.remove(r, m);
            if !oracle.avail(q, &smaller.complement()) {
                t = smaller;
            }
        }
        w.set_moves(q, t);
    }
    w
}

/// Inclusion-minimal sets `t` of pairs into the region with
/// `¬avail(q, complement(t))`; fewer pairs never create generated cycles.
fn minimal_choices(
    oracle: &AvailOracle,
    q: StateId,
    pool: &[(StateId, StateId)],
    n: usize,
    guard: usize,
) -> Option<Vec<PairSet>> {
    if pool.len() >= usize::BITS as usize - 1 || (1usize << pool.len()) > guard {
        return None;
    }
    let mut found: Vec<(u64, PairSet)> = Vec::new();
    let mut masks: Vec<u64> = (0..1u64 << pool.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        if found.iter().any(|(f, _)| f & mask == *f) {
            continue;
        }
        let t = PairSet::from_pairs(
            n,
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| *p),
        );
        if !oracle.avail(q, &t.complement()) {
            found.push((mask, t));
        }
    }
    Some(found.into_iter().map(|(_, t)| t).collect())
}

fn search_pathfinder(
    oracle: &AvailOracle,
    a: &NonzeroAutomaton,
    region: &StateSet,
    guard: usize,
) -> Option<JumpingWitness> {
    let n = a.num_states();
    let pool: Vec<(StateId, StateId)> = PairSet::into_states(n, region).iter().collect();
    let members: Vec<StateId> = region.iter().collect();
    let mut options = Vec::with_capacity(members.len());
    let mut combinations = 1usize;
    for &q in &members {
        let choices = minimal_choices(oracle, q, &pool, n, guard)?;
        if choices.is_empty() {
            return None;
        }
        combinations = combinations.checked_mul(choices.len())?;
        if combinations > guard {
            return None;
        }
        options.push(choices);
    }
    for mut code in 0..combinations {
        let mut w = JumpingWitness::new(Side::Pathfinder, region.clone());
        for (i, &q) in members.iter().enumerate() {
            let k = options[i].len();
            w.set_moves(q, options[i][code % k].clone());
            code /= k;
        }
        if check_pathfinder_witness_with(oracle, a, &w).is_ok_and(|v| v.holds()) {
            return Some(w);
        }
    }
    None
}

/// Solves the jumping game, sharing `oracle` for all realizability queries.
pub fn solve_with(
    oracle: &AvailOracle,
    a: &NonzeroAutomaton,
    config: SolverConfig,
) -> GameSolution {
    let n = a.num_states();
    let solver = Solver {
        oracle,
        prio: compress_priorities(a.forall_set()),
        n,
    };
    let top = Ctx {
        s: StateSet::full(n),
        p: PairSet::full(n),
        z: PairSet::empty(n),
        f: PairSet::empty(n),
    };
    let solved = solver.solve(&top);

    let mut automaton_witness = JumpingWitness::new(Side::Automaton, solved.wa.clone());
    for q in solved.wa.iter() {
        let moves = solved.s[q.index()]
            .clone()
            .expect("strategy for every Automaton state");
        // pairs into the region suffice; anything else was never needed
        automaton_witness.set_moves(q, moves.intersection(&PairSet::into_states(n, &solved.wa)));
    }
    let automaton_witness_valid =
        check_automaton_witness_with(oracle, a, &automaton_witness).is_ok_and(|v| v.holds());

    let mut strategy = JumpingWitness::new(Side::Pathfinder, solved.wp.clone());
    for q in solved.wp.iter() {
        let moves = solved.t[q.index()]
            .clone()
            .expect("strategy for every Pathfinder state");
        strategy.set_moves(q, moves.intersection(&PairSet::into_states(n, &solved.wp)));
    }
    let valid =
        |w: &JumpingWitness| check_pathfinder_witness_with(oracle, a, w).is_ok_and(|v| v.holds());
    let (pathfinder_witness, pathfinder_origin) = if valid(&strategy) {
        (strategy, WitnessOrigin::Strategy)
    } else {
        let greedy = greedy_pathfinder(oracle, a, &solved.wp);
        if valid(&greedy) {
            (greedy, WitnessOrigin::Greedy)
        } else if let Some(found) = search_pathfinder(oracle, a, &solved.wp, config.search_guard) {
            (found, WitnessOrigin::Search)
        } else {
            (strategy, WitnessOrigin::Incomplete)
        }
    };

    GameSolution {
        automaton_region: solved.wa,
        pathfinder_region: solved.wp,
        automaton_witness,
        pathfinder_witness,
        pathfinder_origin,
        automaton_witness_valid,
    }
}

pub fn solve_jumping_game(a: &NonzeroAutomaton) -> GameSolution {
    solve_with(&AvailOracle::new(a), a, SolverConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{LetterId, Transition};
    use crate::catalog;

    #[test]
    fn dense_is_won_by_automaton() {
        let a = catalog::dense();
        let sol = solve_jumping_game(&a);
        assert_eq!(sol.automaton_region, StateSet::full(3));
        assert!(sol.automaton_witness_valid);
        assert!(!sol.witness_extraction_incomplete());
    }

    #[test]
    fn everywhere_positive_initial_is_won() {
        let a = catalog::everywhere_positive();
        let sol = solve_jumping_game(&a);
        assert!(sol.automaton_region.contains(a.initial()));
        assert!(sol.automaton_witness_valid);
    }

    #[test]
    fn dead_end_is_won_by_pathfinder() {
        let a = NonzeroAutomaton::new(
            vec!["q".into()],
            vec!["a".into()],
            vec![Transition::new(
                StateId(0),
                LetterId(0),
                StateId(0),
                StateId(0),
            )],
            StateSet::full(1),
            StateSet::empty(1),
            StateSet::empty(1),
        )
        .unwrap();
        let sol = solve_jumping_game(&a);
        assert_eq!(sol.pathfinder_region, StateSet::full(1));
        assert_eq!(sol.pathfinder_origin, WitnessOrigin::Strategy);
        assert!(sol.pathfinder_witness.moves(StateId(0)).is_empty());
    }
}
