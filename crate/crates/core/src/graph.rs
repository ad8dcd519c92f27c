//! Transition graphs and the graph analyses built on them: strongly connected
//! components, bottom components, maximal end components and almost-sure
//! reachability.
//!
//! A transition `(q, a, l, r)` contributes the edges `q -> l` and `q -> r`.
//! Because a random branch continues to each child with probability one half,
//! an end component must contain *both* successors of each of its transitions.

use std::collections::VecDeque;

use crate::automaton::{StateId, StateSet, Transition};

/// Strongly connected components of a graph given by adjacency lists over
/// `0..n`, restricted to vertices with `active[v]`. Components come out in
/// reverse topological order (sinks first); members are sorted.
pub(crate) fn tarjan(n: usize, succ: &[Vec<usize>], active: &[bool]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0usize;
    // (vertex, next successor position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !active[root] || index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if !active[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                component.sort_unstable();
                components.push(component);
            }
        }
    }
    components
}

/// Directed graph on the states occurring in a set of transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGraph {
    vertices: StateSet,
    succ: Vec<Vec<StateId>>,
}

impl TransitionGraph {
    /// Builds `G_D` for the transition set `transitions` over an automaton
    /// with `num_states` states.
    pub fn new(num_states: usize, transitions: &[Transition]) -> Self {
        let mut vertices = StateSet::empty(num_states);
        let mut succ = vec![Vec::new(); num_states];
        for t in transitions {
            vertices.insert(t.source);
            for r in t.successors() {
                vertices.insert(r);
                succ[t.source.index()].push(r);
            }
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        TransitionGraph { vertices, succ }
    }

    pub fn num_states(&self) -> usize {
        self.succ.len()
    }

    /// `Q_D`, the states occurring in some transition.
    pub fn vertices(&self) -> &StateSet {
        &self.vertices
    }

    pub fn successors(&self, q: StateId) -> &[StateId] {
        &self.succ[q.index()]
    }

    /// Edges in ascending `(from, to)` order.
    pub fn edges(&self) -> Vec<(StateId, StateId)> {
        self.vertices
            .iter()
            .flat_map(|q| self.succ[q.index()].iter().map(move |&r| (q, r)))
            .collect()
    }

    /// Vertices without outgoing edges.
    pub fn dead_ends(&self) -> StateSet {
        StateSet::from_states(
            self.num_states(),
            self.vertices
                .iter()
                .filter(|q| self.succ[q.index()].is_empty()),
        )
    }

    pub fn has_dead_end(&self) -> bool {
        self.vertices
            .iter()
            .any(|q| self.succ[q.index()].is_empty())
    }

    fn index_adjacency(&self) -> Vec<Vec<usize>> {
        self.succ
            .iter()
            .map(|l| l.iter().map(|q| q.index()).collect())
            .collect()
    }

    /// Strongly connected components of the graph restricted to `within`
    /// (intersected with the vertex set), sorted by their least member.
    pub fn sccs_within(&self, within: &StateSet) -> Vec<StateSet> {
        let n = self.num_states();
        let active: Vec<bool> = (0..n)
            .map(|i| {
                let q = StateId::from_index(i);
                self.vertices.contains(q) && within.contains(q)
            })
            .collect();
        let mut out: Vec<StateSet> = tarjan(n, &self.index_adjacency(), &active)
            .into_iter()
            .map(|c| StateSet::from_states(n, c.into_iter().map(StateId::from_index)))
            .collect();
        out.sort_by_key(|c| c.first());
        out
    }

    pub fn sccs(&self) -> Vec<StateSet> {
        self.sccs_within(&StateSet::full(self.num_states()))
    }

    /// Whether the component has an internal edge (size > 1 or a self-loop).
    pub fn is_nontrivial(&self, component: &StateSet) -> bool {
        component.len() > 1 || component.iter().any(|q| self.succ[q.index()].contains(&q))
    }

    /// Bottom strongly connected components: SCCs with no edge leaving them.
    /// A vertex without successors is a dead end, not a BSCC.
    pub fn bsccs(&self) -> Vec<StateSet> {
        self.sccs()
            .into_iter()
            .filter(|c| {
                let closed = c
                    .iter()
                    .all(|q| self.succ[q.index()].iter().all(|r| c.contains(*r)));
                closed && self.is_nontrivial(c)
            })
            .collect()
    }

    /// States of `from ∩ within` that reach some state of `target ∩ within`
    /// by a path staying in `within` (length zero allowed).
    pub fn can_reach_within(&self, within: &StateSet, target: &StateSet) -> StateSet {
        let n = self.num_states();
        let mut pred = vec![Vec::new(); n];
        for q in self.vertices.iter().filter(|q| within.contains(*q)) {
            for &r in &self.succ[q.index()] {
                if within.contains(r) {
                    pred[r.index()].push(q);
                }
            }
        }
        let mut reached = target.intersection(within);
        let mut queue: VecDeque<StateId> = reached.iter().collect();
        while let Some(r) = queue.pop_front() {
            for &q in &pred[r.index()] {
                if reached.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        reached
    }

    /// States reachable from `start` (including it).
    pub fn reachable_from(&self, start: StateId) -> StateSet {
        let mut seen = StateSet::empty(self.num_states());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(q) = stack.pop() {
            for &r in &self.succ[q.index()] {
                if seen.insert(r) {
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// Length of a shortest path (zero allowed) from each state to `target`
    /// staying inside `within`; `None` where the target is unreachable.
    pub fn distances_to(&self, within: &StateSet, target: &StateSet) -> Vec<Option<usize>> {
        let n = self.num_states();
        let mut pred = vec![Vec::new(); n];
        for q in self.vertices.iter().filter(|q| within.contains(*q)) {
            for &r in &self.succ[q.index()] {
                if within.contains(r) {
                    pred[r.index()].push(q);
                }
            }
        }
        let mut dist = vec![None; n];
        let mut queue = VecDeque::new();
        for q in target.iter().filter(|q| within.contains(*q)) {
            dist[q.index()] = Some(0);
            queue.push_back(q);
        }
        while let Some(r) = queue.pop_front() {
            let d = dist[r.index()].unwrap();
            for &q in &pred[r.index()] {
                if dist[q.index()].is_none() {
                    dist[q.index()] = Some(d + 1);
                    queue.push_back(q);
                }
            }
        }
        dist
    }
}

/// Builds the transition graph `G_D`.
pub fn transition_graph(num_states: usize, transitions: &[Transition]) -> TransitionGraph {
    TransitionGraph::new(num_states, transitions)
}

/// Maximal end components of a transition set.
///
/// Repeatedly decomposes the transition graph into SCCs and drops every
/// transition whose source or either successor lies in another SCC, until
/// nothing changes. The surviving transitions, grouped by the SCC of their
/// source, are the maximal sub-transition-sets whose graph is strongly
/// connected, free of dead ends, and closed under both successors.
/// Components are returned sorted by their least state; each is in canonical
/// transition order.
pub fn mec_decompose(num_states: usize, transitions: &[Transition]) -> Vec<Vec<Transition>> {
    let mut current: Vec<Transition> = transitions.to_vec();
    current.sort_unstable();
    current.dedup();
    let component_of = loop {
        let graph = TransitionGraph::new(num_states, &current);
        let mut component_of = vec![usize::MAX; num_states];
        for (i, c) in graph.sccs().iter().enumerate() {
            for q in c.iter() {
                component_of[q.index()] = i;
            }
        }
        let before = current.len();
        current.retain(|t| {
            let c = component_of[t.source.index()];
            component_of[t.left.index()] == c && component_of[t.right.index()] == c
        });
        if current.len() == before {
            break component_of;
        }
    };
    let mut groups: Vec<(usize, Vec<Transition>)> = Vec::new();
    for t in current {
        let c = component_of[t.source.index()];
        match groups.iter_mut().find(|(id, _)| *id == c) {
            Some((_, g)) => g.push(t),
            None => groups.push((c, vec![t])),
        }
    }
    let mut out: Vec<Vec<Transition>> = groups.into_iter().map(|(_, g)| g).collect();
    out.sort_by_key(|g| g.iter().map(|t| t.source).min());
    out
}

/// Transitions of `transitions` whose three states all lie in `within`.
pub fn transitions_inside(transitions: &[Transition], within: &StateSet) -> Vec<Transition> {
    transitions
        .iter()
        .copied()
        .filter(|t| {
            within.contains(t.source) && within.contains(t.left) && within.contains(t.right)
        })
        .collect()
}

/// Greatest `A ⊆ allowed` such that every state of `A` outside `target` has a
/// transition with both successors in `A`, and every state of `A` reaches
/// `target ∩ A` through such transitions. Computed by iterated removal.
pub fn almost_sure_reach(
    transitions: &[Transition],
    allowed: &StateSet,
    target: &StateSet,
) -> StateSet {
    let n = allowed.capacity();
    let target = target.intersection(allowed);
    let mut current = allowed.clone();
    loop {
        let inside = transitions_inside(transitions, &current);
        let mut has_move = StateSet::empty(n);
        for t in &inside {
            has_move.insert(t.source);
        }
        let graph = TransitionGraph::new(n, &inside);
        let mut keep = graph.can_reach_within(&current, &target);
        // reaching the target through a state without moves does not count,
        // but such states are removed this round and the loop re-checks.
        keep.intersect_with(&has_move.union(&target));
        keep.intersect_with(&current);
        if keep == current {
            return current;
        }
        current = keep;
    }
}
