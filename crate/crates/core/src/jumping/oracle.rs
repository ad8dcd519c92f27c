//! The jumping game materialized as an explicit parity game, for desk-scale
//! cross-checking of the implicit solver.

use crate::automaton::{NonzeroAutomaton, StateId, StateSet};
use crate::error::GuardExceeded;
use crate::jumping::extended::AvailOracle;
use crate::jumping::pairs::PairSet;
use crate::jumping::witness::Side;
use crate::priority::compress_priorities;

/// Winning regions over the automaton's states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regions {
    pub automaton: StateSet,
    pub pathfinder: StateSet,
}

/// A finite max-parity game; even priorities favour Automaton.
#[derive(Clone, Debug, Default)]
pub struct ExplicitGame {
    owner: Vec<Side>,
    priority: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl ExplicitGame {
    pub fn add_node(&mut self, owner: Side, priority: u32) -> usize {
        self.owner.push(owner);
        self.priority.push(priority);
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        self.succ[from].push(to);
        self.pred[to].push(from);
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    /// Nodes of `within` from which `player` forces a visit to `target`.
    /// A node of the opponent without successors in `within` is attracted.
    fn attractor(&self, within: &[bool], player: Side, target: &[bool]) -> Vec<bool> {
        let n = self.len();
        let mut attr: Vec<bool> = (0..n).map(|v| within[v] && target[v]).collect();
        let mut remaining: Vec<usize> = (0..n)
            .map(|v| self.succ[v].iter().filter(|&&w| within[w]).count())
            .collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| attr[v]).collect();
        for v in 0..n {
            if within[v] && !attr[v] && self.owner[v] != player && remaining[v] == 0 {
                attr[v] = true;
                queue.push(v);
            }
        }
        while let Some(w) = queue.pop() {
            for &v in &self.pred[w] {
                if !within[v] || attr[v] {
                    continue;
                }
                if self.owner[v] == player {
                    attr[v] = true;
                    queue.push(v);
                } else {
                    remaining[v] -= 1;
                    if remaining[v] == 0 {
                        attr[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        attr
    }

    /// Automaton's winning region within `within`.
    fn zielonka(&self, within: &[bool]) -> Vec<bool> {
        let n = self.len();
        let none = vec![false; n];
        if !within.iter().any(|&b| b) {
            return none;
        }
        let minus =
            |a: &[bool], b: &[bool]| -> Vec<bool> { (0..n).map(|v| a[v] && !b[v]).collect() };

        let stuck_a = self.attractor(within, Side::Pathfinder, &none);
        if stuck_a.iter().any(|&b| b) {
            return self.zielonka(&minus(within, &stuck_a));
        }
        let stuck_p = self.attractor(within, Side::Automaton, &none);
        if stuck_p.iter().any(|&b| b) {
            let mut w = self.zielonka(&minus(within, &stuck_p));
            for v in 0..n {
                w[v] |= stuck_p[v];
            }
            return w;
        }

        let d = (0..n)
            .filter(|&v| within[v])
            .map(|v| self.priority[v])
            .max()
            .unwrap();
        let (player, opponent) = if d % 2 == 0 {
            (Side::Automaton, Side::Pathfinder)
        } else {
            (Side::Pathfinder, Side::Automaton)
        };
        let top: Vec<bool> = (0..n).map(|v| within[v] && self.priority[v] == d).collect();
        let a = self.attractor(within, player, &top);
        let sub = minus(within, &a);
        let w1 = self.zielonka(&sub);
        let opp1: Vec<bool> = (0..n)
            .map(|v| sub[v] && (w1[v] == (opponent == Side::Automaton)))
            .collect();
        if !opp1.iter().any(|&b| b) {
            return (0..n)
                .map(|v| within[v] && player == Side::Automaton)
                .collect();
        }
        let b = self.attractor(within, opponent, &opp1);
        let w2 = self.zielonka(&minus(within, &b));
        (0..n)
            .map(|v| {
                if b[v] {
                    opponent == Side::Automaton
                } else {
                    w2[v]
                }
            })
            .collect()
    }

    /// Automaton's winning region.
    pub fn solve(&self) -> Vec<bool> {
        self.zielonka(&vec![true; self.len()])
    }
}

/// Builds the explicit game: Automaton nodes `Q`, Pathfinder nodes `(q, X)`
/// for every `X ⊆ Q × Q` with `avail(q, X)`, and one node per pair.
pub fn oracle_explicit_game(a: &NonzeroAutomaton, guard: usize) -> Result<Regions, GuardExceeded> {
    let n = a.num_states();
    if n > guard || n * n >= 24 {
        return Err(GuardExceeded {
            what: "states for the explicit jumping game",
            limit: guard.min(4),
            actual: n,
        });
    }
    let oracle = AvailOracle::new(a);
    let prio = compress_priorities(a.forall_set());
    let low = prio.min();
    let mut game = ExplicitGame::default();
    let state_nodes: Vec<usize> = (0..n)
        .map(|_| game.add_node(Side::Automaton, low))
        .collect();
    let all_pairs: Vec<(StateId, StateId)> = PairSet::full(n).iter().collect();
    let pair_nodes: Vec<usize> = all_pairs
        .iter()
        .map(|&(r, m)| {
            let v = game.add_node(Side::Automaton, prio.get(m));
            game.add_edge(v, state_nodes[r.index()]);
            v
        })
        .collect();
    for q in a.states() {
        for mask in 1u64..(1u64 << all_pairs.len()) {
            let x = PairSet::from_pairs(
                n,
                all_pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, p)| *p),
            );
            if !oracle.avail(q, &x) {
                continue;
            }
            let v = game.add_node(Side::Pathfinder, low);
            game.add_edge(state_nodes[q.index()], v);
            for (i, _) in all_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
            {
                game.add_edge(v, pair_nodes[i]);
            }
        }
    }
    let won = game.solve();
    let automaton = StateSet::from_states(n, a.states().filter(|q| won[state_nodes[q.index()]]));
    let pathfinder = automaton.complement();
    Ok(Regions {
        automaton,
        pathfinder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{LetterId, Transition};
    use crate::catalog;

    fn loop_automaton(one: bool) -> NonzeroAutomaton {
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
            if one {
                StateSet::full(1)
            } else {
                StateSet::empty(1)
            },
            StateSet::empty(1),
        )
        .unwrap()
    }

    #[test]
    fn dense_regions() {
        let r = oracle_explicit_game(&catalog::dense(), 3).unwrap();
        assert_eq!(r.automaton, StateSet::full(3));
    }

    #[test]
    fn single_state_games() {
        assert_eq!(
            oracle_explicit_game(&loop_automaton(false), 3)
                .unwrap()
                .pathfinder,
            StateSet::full(1)
        );
        assert_eq!(
            oracle_explicit_game(&loop_automaton(true), 3)
                .unwrap()
                .automaton,
            StateSet::full(1)
        );
    }

    #[test]
    fn guard_trips() {
        let err = oracle_explicit_game(&catalog::everywhere_positive(), 3).unwrap_err();
        assert_eq!(err.actual, 6);
    }

    #[test]
    fn explicit_zielonka_small() {
        // Automaton node 0 (priority 1) can go to 1 (priority 2, self loop) or 2 (priority 3, self loop)
        let mut g = ExplicitGame::default();
        let v0 = g.add_node(Side::Automaton, 1);
        let v1 = g.add_node(Side::Pathfinder, 2);
        let v2 = g.add_node(Side::Pathfinder, 3);
        g.add_edge(v0, v1);
        g.add_edge(v0, v2);
        g.add_edge(v1, v1);
        g.add_edge(v2, v2);
        assert_eq!(g.solve(), [true, true, false]);
        // a Pathfinder node without moves is lost by Pathfinder
        let v3 = g.add_node(Side::Pathfinder, 1);
        assert!(g.solve()[v3]);
    }
}
