//! Local-improvement solver for four disjoint cut complements.
//!
//! The labeling is kept as a 4-bit mask per vertex, so every state is a
//! cut-complement labeling by construction: edge `uv` carries
//! `!(φ(u) ^ φ(v))`. Switching a set `I` at a vertex xors `I` into its mask.
//! Bad edges are repaired one at a time until every weight is at most 1.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graphs::{Graph, VertexSet};
use crate::labeling::{CoordPermutation, CostTable, Label, Labeling};
use crate::menus::{LabeledTree, Swap};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("vertex {vertex} has degree {degree}; the solver needs maximum degree 3")]
    DegreeTooHigh { vertex: usize, degree: usize },
    #[error("expected {expected} vertex masks, got {found}")]
    MaskCount { expected: usize, found: usize },
}

/// The all-`{1,2,3,4}` labeling, i.e. every vertex mask zero.
pub fn initial_labeling(g: &Graph) -> Labeling {
    Labeling::uniform(g.m(), Label::FULL)
}

/// The bad edges, split so heavy ones can be served first.
#[derive(Clone, Debug, Default)]
pub struct Worklist {
    heavy: BTreeSet<usize>,
    light: BTreeSet<usize>,
}

impl Worklist {
    pub fn from_labeling(x: &Labeling) -> Self {
        let mut w = Worklist::default();
        for e in 0..x.len() {
            w.update(e, x.weight(e));
        }
        w
    }

    pub fn update(&mut self, e: usize, weight: usize) {
        self.heavy.remove(&e);
        self.light.remove(&e);
        match weight {
            0 | 1 => {}
            2 => {
                self.light.insert(e);
            }
            _ => {
                self.heavy.insert(e);
            }
        }
    }

    /// Lowest-id edge of weight at least 3, else lowest-id edge of weight 2.
    pub fn pick(&self) -> Option<usize> {
        self.heavy.first().or_else(|| self.light.first()).copied()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.heavy.contains(&e) || self.light.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.heavy.len() + self.light.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether the list holds exactly the edges of weight above 1.
    pub fn is_exact(&self, x: &Labeling) -> bool {
        (0..x.len()).all(|e| self.contains(e) == (x.weight(e) > 1)) && self.len() <= x.len()
    }
}

/// Switching `mask` at `vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Switch {
    pub vertex: usize,
    pub mask: u8,
    pub delta: i64,
}

/// Best switch of the star with edge labels `labels`: the smallest mask
/// among those with the least cost change. `None` if nothing improves.
pub fn best_star_switch(labels: &[Label], cost: &CostTable) -> Option<(u8, i64)> {
    (1..16u8)
        .map(|i| {
            let delta: i64 = labels
                .iter()
                .map(|&l| (cost.of(l ^ Label::from_mask(i)) - cost.of(l)) as i64)
                .sum();
            (i, delta)
        })
        .filter(|&(_, d)| d < 0)
        .min_by_key(|&(i, d)| (d, i))
}

/// Best single-vertex switch at either end of `e`.
///
/// Ties go to the smaller mask, then to the lower endpoint.
pub fn fix_heavy_edge(g: &Graph, x: &Labeling, e: usize, cost: &CostTable) -> Option<Switch> {
    let (u, v) = g.endpoints(e);
    let mut best: Option<Switch> = None;
    for i in 1..16u8 {
        for w in [u, v] {
            let delta: i64 = g
                .incident(w)
                .iter()
                .map(|&(_, f)| {
                    let l = x.label(f);
                    (cost.of(l ^ Label::from_mask(i)) - cost.of(l)) as i64
                })
                .sum();
            if delta < 0 && best.is_none_or(|b| delta < b.delta) {
                best = Some(Switch { vertex: w, mask: i, delta });
            }
        }
    }
    best
}

/// A copy of `2T_depth` mapped into the graph around a central edge.
///
/// Node 0 is the lower endpoint of the central edge and node 1 the other.
/// Nodes appear in order of their distance from the central edge; those
/// at distance `depth - 1` are leaves and may share images.
#[derive(Clone, Debug)]
pub struct TreeEmbedding {
    pub depth: usize,
    pub vertex: Vec<usize>,
    pub parent: Vec<usize>,
    /// Graph edge to the parent (the central edge for node 1).
    pub edge: Vec<usize>,
    pub level: Vec<usize>,
}

impl TreeEmbedding {
    pub fn len(&self) -> usize {
        self.vertex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex.is_empty()
    }

    pub fn is_interior(&self, x: usize) -> bool {
        self.level[x] + 1 < self.depth
    }

    /// The tree labeled by `x`, with classes renamed by `pi`.
    pub fn labeled(&self, x: &Labeling, pi: &CoordPermutation) -> LabeledTree {
        let mut t = LabeledTree::new();
        for k in 1..self.len() {
            t.push(self.parent[k], x.label(self.edge[k]).permute(pi), self.is_interior(k));
        }
        t
    }
}

/// Embeds `2T_depth` around `e`, or returns a cycle (as a vertex list) of
/// length at most `2 * depth - 2` found where two interior images collide.
pub fn extract_double_tree(g: &Graph, e: usize, depth: usize) -> Result<TreeEmbedding, Vec<usize>> {
    assert!(depth >= 2, "depth must be at least 2");
    let (a, b) = g.endpoints(e);
    let mut emb = TreeEmbedding {
        depth,
        vertex: vec![a, b],
        parent: vec![usize::MAX, 0],
        edge: vec![usize::MAX, e],
        level: vec![0, 0],
    };
    let mut interior: HashMap<usize, usize> = HashMap::from([(a, 0), (b, 1)]);
    let leaf_level = depth - 1;
    let mut k = 0;
    while k < emb.len() {
        let lvl = emb.level[k];
        if lvl >= leaf_level {
            break;
        }
        let x = emb.vertex[k];
        for &(y, f) in g.incident(x) {
            if f == e || (k > 0 && f == emb.edge[k]) {
                continue;
            }
            if let Some(&other) = interior.get(&y) {
                return Err(tree_cycle(&emb, k, other));
            }
            if lvl + 1 < leaf_level {
                interior.insert(y, emb.len());
            }
            emb.vertex.push(y);
            emb.parent.push(k);
            emb.edge.push(f);
            emb.level.push(lvl + 1);
        }
        k += 1;
    }
    Ok(emb)
}

/// `2T_9` around `e`.
pub fn extract_2t9(g: &Graph, e: usize) -> Result<TreeEmbedding, Vec<usize>> {
    extract_double_tree(g, e, 9)
}

/// Cycle closed by the graph edge between the images of tree nodes `x` and `y`.
fn tree_cycle(emb: &TreeEmbedding, x: usize, y: usize) -> Vec<usize> {
    let path = |mut n: usize| {
        let mut p = vec![n];
        while n != 0 {
            n = emb.parent[n];
            p.push(n);
        }
        p
    };
    let mut px = path(x);
    let mut py = path(y);
    // drop the common tail, keeping the lowest common node once
    while px.len() >= 2 && py.len() >= 2 && px[px.len() - 2] == py[py.len() - 2] {
        px.pop();
        py.pop();
    }
    py.pop();
    py.reverse();
    px.extend(py);
    px.into_iter().map(|n| emb.vertex[n]).collect()
}

/// Per-vertex switches realizing the best internal swap on the embedding,
/// with its cost change. `None` when no swap improves.
pub fn fix_weight2_edge(
    x: &Labeling,
    emb: &TreeEmbedding,
    cost: &CostTable,
) -> Option<(Vec<(usize, u8)>, Swap)> {
    let central = x.label(emb.edge[1]);
    let target = Label::from_classes(&[1, 2]);
    let pi = CoordPermutation::all()
        .into_iter()
        .find(|p| central.permute(p) == target)
        .unwrap_or(CoordPermutation::IDENTITY);
    let back = pi.inverse();
    let tree = emb.labeled(x, &pi);
    let mut swap = tree.best_swap(cost);
    if swap.value >= 0 {
        return None;
    }
    for m in swap.masks.iter_mut() {
        *m = Label::from_mask(*m).permute(&back).mask();
    }
    swap.s = swap.s.permute(&back);
    let moves = (0..emb.len())
        .filter(|&k| emb.is_interior(k) && swap.masks[k] != 0)
        .map(|k| (emb.vertex[k], swap.masks[k]))
        .collect();
    Some((moves, swap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepairKind {
    Heavy,
    Weight2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub iter: u64,
    pub edge: usize,
    pub weight: usize,
    pub kind: RepairKind,
    pub cost_before: i64,
    pub cost_after: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StuckReason {
    /// Vertices of a cycle too short for the tree embedding.
    ShortCycle(Vec<usize>),
    NoImprovingSwap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Wonderful,
    Stuck { edge: usize, reason: StuckReason },
    IterationLimit,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub cost: CostTable,
    pub max_iters: Option<u64>,
    /// Re-verify the labeling and the worklist after every step.
    pub check_every_step: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            cost: CostTable::default(),
            max_iters: None,
            check_every_step: cfg!(debug_assertions),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub labeling: Labeling,
    /// Vertex `v` lies in `U_i` iff bit `i - 1` of `masks[v]` is set.
    pub masks: Vec<u8>,
    pub iterations: u64,
    pub trace: Vec<TraceStep>,
    pub outcome: Outcome,
}

impl SolveReport {
    pub fn is_wonderful(&self) -> bool {
        self.outcome == Outcome::Wonderful
    }

    pub fn final_cost(&self, cost: &CostTable) -> i64 {
        self.labeling.cost(cost)
    }

    /// `U_1 .. U_4` with class `i` equal to `E ∖ δ(U_i)`.
    pub fn vertex_sets(&self) -> [VertexSet; 4] {
        let n = self.masks.len();
        let mut out: [VertexSet; 4] = std::array::from_fn(|_| VertexSet::with_capacity(n));
        for (v, &m) in self.masks.iter().enumerate() {
            for (i, set) in out.iter_mut().enumerate() {
                if m >> i & 1 == 1 {
                    set.insert(v);
                }
            }
        }
        out
    }

    /// One line per step: `iter edge weight kind cost_before cost_after`.
    pub fn trace_text(&self) -> String {
        let mut out = String::from("# iter edge weight kind cost_before cost_after\n");
        for s in &self.trace {
            let kind = match s.kind {
                RepairKind::Heavy => "heavy",
                RepairKind::Weight2 => "weight2",
            };
            let _ = writeln!(
                out,
                "{} {} {} {} {} {}",
                s.iter, s.edge, s.weight, kind, s.cost_before, s.cost_after
            );
        }
        out
    }
}

struct State<'g> {
    g: &'g Graph,
    masks: Vec<u8>,
    x: Labeling,
    cost: i64,
    work: Worklist,
}

impl State<'_> {
    /// Switches each `(vertex, mask)`; returns the realized cost change.
    fn apply(&mut self, moves: &[(usize, u8)], a: &CostTable) -> i64 {
        let before = self.cost;
        let mut touched = Vec::new();
        for &(v, i) in moves {
            self.masks[v] ^= i;
            for &(_, f) in self.g.incident(v) {
                let old = self.x.label(f);
                let new = old ^ Label::from_mask(i);
                self.cost += (a.of(new) - a.of(old)) as i64;
                self.x.set(f, new);
                touched.push(f);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for f in touched {
            self.work.update(f, self.x.weight(f));
        }
        self.cost - before
    }
}

/// Runs the solver from the all-`{1,2,3,4}` labeling.
pub fn solve(g: &Graph, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    solve_from(g, &vec![0; g.n()], opts)
}

/// Runs the solver from the cut-complement labeling given by vertex masks.
pub fn solve_from(g: &Graph, masks: &[u8], opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    if masks.len() != g.n() {
        return Err(SolveError::MaskCount {
            expected: g.n(),
            found: masks.len(),
        });
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 3) {
        return Err(SolveError::DegreeTooHigh {
            vertex: v,
            degree: g.degree(v),
        });
    }
    let a = &opts.cost;
    let masks: Vec<u8> = masks.iter().map(|m| m & 15).collect();
    let x = Labeling::from_vertex_masks(g, &masks);
    let mut st = State {
        g,
        cost: x.cost(a),
        work: Worklist::from_labeling(&x),
        masks,
        x,
    };
    let mut trace = Vec::new();
    let mut iter = 0u64;
    let outcome = loop {
        if opts.check_every_step {
            assert!(st.work.is_exact(&st.x), "worklist out of sync");
            assert!(st.x.is_cut_complement_labeling(g).is_some(), "not a cut-complement labeling");
            assert_eq!(st.cost, st.x.cost(a), "cost out of sync");
        }
        let Some(e) = st.work.pick() else {
            break Outcome::Wonderful;
        };
        if opts.max_iters.is_some_and(|m| iter >= m) {
            break Outcome::IterationLimit;
        }
        let weight = st.x.weight(e);
        let before = st.cost;
        let (kind, moves, predicted) = if weight >= 3 {
            match fix_heavy_edge(g, &st.x, e, a) {
                Some(sw) => (RepairKind::Heavy, vec![(sw.vertex, sw.mask)], sw.delta),
                None => {
                    break Outcome::Stuck {
                        edge: e,
                        reason: StuckReason::NoImprovingSwap,
                    }
                }
            }
        } else {
            let emb = match extract_2t9(g, e) {
                Ok(emb) => emb,
                Err(cycle) => {
                    break Outcome::Stuck {
                        edge: e,
                        reason: StuckReason::ShortCycle(cycle),
                    }
                }
            };
            match fix_weight2_edge(&st.x, &emb, a) {
                Some((moves, swap)) => (RepairKind::Weight2, moves, swap.value as i64),
                None => {
                    break Outcome::Stuck {
                        edge: e,
                        reason: StuckReason::NoImprovingSwap,
                    }
                }
            }
        };
        let realized = st.apply(&moves, a);
        assert_eq!(realized, predicted, "swap changed the cost by an unexpected amount");
        iter += 1;
        trace.push(TraceStep {
            iter,
            edge: e,
            weight,
            kind,
            cost_before: before,
            cost_after: st.cost,
        });
    };
    if !opts.check_every_step {
        debug_assert!(st.work.is_exact(&st.x));
    }
    Ok(SolveReport {
        labeling: st.x,
        masks: st.masks,
        iterations: iter,
        trace,
        outcome,
    })
}
