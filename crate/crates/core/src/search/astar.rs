//! Weighted A* over an abstract search space, advanced one pop at a time so
//! that two searches can be interleaved.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::hash::Hash;

use super::SearchMetrics;

/// How generated duplicates of a key are filtered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DuplicatePolicy {
    /// Keep one open entry per key with the lowest g; a strictly better g
    /// re-opens a closed key.
    BestG,
    /// Keep every entry until the key is closed. Used when entries may be
    /// rejected on pop (lazy validation), since a dominated entry can still
    /// turn out to be the best valid one.
    UntilClosed,
}

/// What to do with a popped entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admission {
    Expand,
    /// Drop the entry; `counted` decides whether it shows up as an expansion.
    Discard {
        counted: bool,
    },
}

/// A node popped and accepted by the search.
#[derive(Debug, Clone, Copy)]
pub struct Node<S, L> {
    pub state: S,
    pub g: f64,
    pub parent: Option<u32>,
    pub label: L,
}

pub trait SearchSpace {
    type State: Copy;
    type Key: Copy + Eq + Hash;
    /// Payload of the edge that generated a state (e.g. a primitive id).
    type Label: Copy;

    const POLICY: DuplicatePolicy = DuplicatePolicy::BestG;

    fn key(&self, s: &Self::State) -> Self::Key;
    fn is_goal(&self, s: &Self::State) -> bool;
    fn heuristic(&self, s: &Self::State) -> f64;

    fn admit(
        &mut self,
        _s: &Self::State,
        _label: &Self::Label,
        _metrics: &mut SearchMetrics,
    ) -> Admission {
        Admission::Expand
    }

    /// Successors of the node with arena index `idx`, as `(state, edge cost, label)`.
    fn expand(
        &mut self,
        idx: u32,
        node: &Node<Self::State, Self::Label>,
        out: &mut Vec<(Self::State, f64, Self::Label)>,
        metrics: &mut SearchMetrics,
    );
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Continue,
    Found(u32),
    Exhausted,
}

struct OpenEntry<S, L> {
    state: S,
    g: f64,
    parent: Option<u32>,
    label: L,
}

#[derive(Debug, Clone, Copy)]
struct HeapItem {
    f: f64,
    g: f64,
    seq: u64,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    // max-heap: smallest f first, then larger g, then insertion order
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| self.g.total_cmp(&other.g))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

pub struct WeightedAStar<P: SearchSpace> {
    space: P,
    weight: f64,
    heap: BinaryHeap<HeapItem>,
    entries: Vec<Option<OpenEntry<P::State, P::Label>>>,
    next_seq: u64,
    best_g: HashMap<P::Key, f64>,
    closed: HashMap<P::Key, u32>,
    nodes: Vec<Node<P::State, P::Label>>,
    scratch: Vec<(P::State, f64, P::Label)>,
    metrics: SearchMetrics,
    done: Option<Step>,
}

impl<P: SearchSpace> WeightedAStar<P> {
    pub fn new(space: P, start: P::State, start_label: P::Label, weight: f64) -> Self {
        let mut search = Self {
            space,
            weight,
            heap: BinaryHeap::new(),
            entries: Vec::new(),
            next_seq: 0,
            best_g: HashMap::new(),
            closed: HashMap::new(),
            nodes: Vec::new(),
            scratch: Vec::new(),
            metrics: SearchMetrics::default(),
            done: None,
        };
        search.push(start, 0.0, None, start_label);
        search
    }

    fn push(&mut self, state: P::State, g: f64, parent: Option<u32>, label: P::Label) {
        let key = self.space.key(&state);
        match P::POLICY {
            DuplicatePolicy::BestG => match self.best_g.entry(key) {
                Entry::Occupied(mut e) => {
                    if g >= *e.get() {
                        return;
                    }
                    e.insert(g);
                }
                Entry::Vacant(e) => {
                    e.insert(g);
                }
            },
            DuplicatePolicy::UntilClosed => {
                if self.closed.contains_key(&key) {
                    return;
                }
            }
        }
        let f = g + self.weight * self.space.heuristic(&state);
        let seq = self.next_seq;
        self.next_seq += 1;
        self.entries.push(Some(OpenEntry {
            state,
            g,
            parent,
            label,
        }));
        self.heap.push(HeapItem { f, g, seq });
        self.metrics.generated += 1;
    }

    /// Pop entries until one is processed (expanded, discarded, or found to
    /// be the goal). Stale entries do not count as a step.
    pub fn step(&mut self) -> Step {
        if let Some(done) = self.done {
            return done;
        }
        loop {
            let Some(item) = self.heap.pop() else {
                self.done = Some(Step::Exhausted);
                return Step::Exhausted;
            };
            let entry = self.entries[item.seq as usize]
                .take()
                .expect("heap item has an entry");
            let key = self.space.key(&entry.state);
            match P::POLICY {
                DuplicatePolicy::BestG => {
                    if self.best_g.get(&key).is_some_and(|&b| entry.g > b) {
                        continue;
                    }
                    if let Some(&idx) = self.closed.get(&key) {
                        if self.nodes[idx as usize].g <= entry.g {
                            continue;
                        }
                    }
                }
                DuplicatePolicy::UntilClosed => {
                    if self.closed.contains_key(&key) {
                        continue;
                    }
                }
            }
            match self
                .space
                .admit(&entry.state, &entry.label, &mut self.metrics)
            {
                Admission::Expand => {}
                Admission::Discard { counted } => {
                    if counted {
                        self.metrics.expansions += 1;
                    }
                    return Step::Continue;
                }
            }
            self.metrics.expansions += 1;
            let idx = self.nodes.len() as u32;
            let node = Node {
                state: entry.state,
                g: entry.g,
                parent: entry.parent,
                label: entry.label,
            };
            self.nodes.push(node);
            self.closed.insert(key, idx);
            if self.space.is_goal(&node.state) {
                self.done = Some(Step::Found(idx));
                return Step::Found(idx);
            }
            let mut out = std::mem::take(&mut self.scratch);
            out.clear();
            self.space.expand(idx, &node, &mut out, &mut self.metrics);
            for &(s, c, l) in &out {
                self.push(s, node.g + c, Some(idx), l);
            }
            self.scratch = out;
            return Step::Continue;
        }
    }

    /// Step until the goal is found or the open list runs dry.
    pub fn run(&mut self) -> Option<u32> {
        loop {
            match self.step() {
                Step::Continue => {}
                Step::Found(idx) => return Some(idx),
                Step::Exhausted => return None,
            }
        }
    }

    pub fn node(&self, idx: u32) -> &Node<P::State, P::Label> {
        &self.nodes[idx as usize]
    }

    /// Arena indices from the start to `idx`.
    pub fn path_to(&self, idx: u32) -> Vec<u32> {
        let mut path = vec![idx];
        let mut cur = idx;
        while let Some(p) = self.nodes[cur as usize].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn metrics(&self) -> &SearchMetrics {
        &self.metrics
    }

    pub fn metrics_mut(&mut self) -> &mut SearchMetrics {
        &mut self.metrics
    }

    pub fn space(&self) -> &P {
        &self.space
    }

    pub fn is_done(&self) -> bool {
        self.done.is_some()
    }
}

/// Result of [`weighted_astar`].
#[derive(Debug, Clone)]
pub struct GraphPath<S> {
    pub states: Option<Vec<S>>,
    pub cost: Option<f64>,
    pub metrics: SearchMetrics,
}

/// Plain weighted A* over any [`SearchSpace`] started at `start`.
pub fn weighted_astar<P: SearchSpace>(
    space: P,
    start: P::State,
    start_label: P::Label,
    weight: f64,
) -> GraphPath<P::State> {
    let t0 = std::time::Instant::now();
    let mut search = WeightedAStar::new(space, start, start_label, weight);
    let found = search.run();
    let mut metrics = search.metrics().clone();
    metrics.runtime = t0.elapsed();
    match found {
        Some(idx) => {
            let states = search
                .path_to(idx)
                .into_iter()
                .map(|i| search.node(i).state)
                .collect();
            metrics.solved = true;
            metrics.cost = Some(search.node(idx).g);
            GraphPath {
                states: Some(states),
                cost: metrics.cost,
                metrics,
            }
        }
        None => GraphPath {
            states: None,
            cost: None,
            metrics,
        },
    }
}
