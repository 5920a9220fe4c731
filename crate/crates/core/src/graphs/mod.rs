//! Simple undirected graphs with dense vertex and edge identifiers.

mod construct;
mod cut;
mod generate;
mod io;

pub use construct::{build_cycle, build_hn, build_pq, cubic_completion, ProjectiveCube};
pub use cut::{cut_of, is_cut, CutCheck};
pub use generate::{gen_high_girth_cubic, moore_bound, GenError, GenOptions, GenReport};
pub use io::{load_graph, parse_edge_list, parse_graph6, write_edge_list};

use std::collections::{HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// A subset of `0..n` vertices.
pub type VertexSet = FixedBitSet;
/// A subset of `0..m` edge identifiers.
pub type EdgeSet = FixedBitSet;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Simple undirected graph.
///
/// Edge `e` joins `edges[e].0 < edges[e].1`; edge ids are stable, so edge
/// sets and labelings over the same graph can be combined pointwise.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(usize, usize)>,
    // per vertex: (neighbour, edge id), in insertion order
    adj: Vec<Vec<(usize, usize)>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, parallel edges and out-of-range ends.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            g.push_edge(u, v);
        }
        Ok(g)
    }

    fn push_edge(&mut self, u: usize, v: usize) -> usize {
        let id = self.edges.len();
        self.edges.push((u.min(v), u.max(v)));
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        id
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbour, edge id)` pairs at `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, r: usize) -> bool {
        self.adj.iter().all(|a| a.len() == r)
    }

    pub fn is_cubic(&self) -> bool {
        self.is_regular(3)
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].iter().find(|&&(w, _)| w == b).map(|&(_, e)| e)
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn empty_vertex_set(&self) -> VertexSet {
        FixedBitSet::with_capacity(self.n())
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        FixedBitSet::with_capacity(self.m())
    }

    pub fn all_edges(&self) -> EdgeSet {
        let mut s = self.empty_edge_set();
        s.insert_range(..);
        s
    }

    /// Connected component index of every vertex, numbered in order of first vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        self.shortest_cycle().map(|c| c.len())
    }

    /// Vertices of one shortest cycle in cyclic order.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let mut best: Option<(usize, usize, usize, usize)> = None; // (len, root, x, y)
        let mut search = Bfs::new(self.n());
        for root in 0..self.n() {
            let limit = best.map_or(usize::MAX, |b| b.0);
            if let Some((len, x, y)) = search.shortest_cycle_from(self, root, limit) {
                if len < limit {
                    best = Some((len, root, x, y));
                    if len == 3 {
                        break;
                    }
                }
            }
        }
        let (_, root, x, y) = best?;
        search.shortest_cycle_from(self, root, usize::MAX);
        Some(search.cycle_through(x, y))
    }

    /// A cycle of length `< bound` found by a BFS from `root`, if any.
    ///
    /// Every cycle of length `< bound` through `root` is detected, though the
    /// returned cycle need not pass through `root` itself.
    pub fn short_cycle_near(&self, root: usize, bound: usize) -> Option<Vec<usize>> {
        let mut search = Bfs::new(self.n());
        let (len, x, y) = search.shortest_cycle_from(self, root, bound)?;
        debug_assert!(len < bound);
        Some(search.cycle_through(x, y))
    }

    /// Vertex-disjoint union of `copies` copies of `self`; copy `c` vertex `v`
    /// becomes `c * n + v`.
    pub fn disjoint_copies(&self, copies: usize) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n * copies);
        for c in 0..copies {
            for &(u, v) in &self.edges {
                g.push_edge(c * n + u, c * n + v);
            }
        }
        g
    }

    /// Adds an edge known not to be present. Used by builders that maintain
    /// simplicity themselves.
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) -> usize {
        debug_assert!(u != v && self.find_edge(u, v).is_none());
        self.push_edge(u, v)
    }
}

/// Reusable BFS state sized for one graph.
struct Bfs {
    dist: Vec<usize>,
    parent: Vec<usize>,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Bfs {
            dist: vec![usize::MAX; n],
            parent: vec![usize::MAX; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = usize::MAX;
            self.parent[v] = usize::MAX;
        }
        self.touched.clear();
        self.queue.clear();
    }

    /// Explores from `root` and returns the shortest closing edge found with
    /// cycle length `< limit`.
    fn shortest_cycle_from(
        &mut self,
        g: &Graph,
        root: usize,
        limit: usize,
    ) -> Option<(usize, usize, usize)> {
        self.reset();
        self.dist[root] = 0;
        self.touched.push(root);
        self.queue.push_back(root);
        let mut best: Option<(usize, usize, usize)> = None;
        while let Some(x) = self.queue.pop_front() {
            let dx = self.dist[x];
            let cap = best.map_or(limit, |b| b.0.min(limit));
            if 2 * dx + 1 >= cap {
                break;
            }
            for &(y, _) in &g.adj[x] {
                if y == self.parent[x] {
                    continue;
                }
                if self.dist[y] == usize::MAX {
                    self.dist[y] = dx + 1;
                    self.parent[y] = x;
                    self.touched.push(y);
                    self.queue.push_back(y);
                } else {
                    let len = dx + self.dist[y] + 1;
                    if len < best.map_or(limit, |b| b.0.min(limit)) {
                        best = Some((len, x, y));
                    }
                }
            }
        }
        best
    }

    /// Cycle formed by the tree paths from `x` and `y` to their common
    /// ancestor plus the edge `xy`.
    fn cycle_through(&self, x: usize, y: usize) -> Vec<usize> {
        let mut px = vec![x];
        let mut py = vec![y];
        let (mut a, mut b) = (x, y);
        while self.dist[a] > self.dist[b] {
            a = self.parent[a];
            px.push(a);
        }
        while self.dist[b] > self.dist[a] {
            b = self.parent[b];
            py.push(b);
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
            px.push(a);
            py.push(b);
        }
        // px: x .. ancestor, py: y .. ancestor
        py.pop();
        px.reverse();
        px.extend(py);
        px
    }
}

/// Checks that `cycle` lists distinct vertices forming a closed walk in `g`.
pub fn is_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    let distinct: HashSet<_> = cycle.iter().collect();
    distinct.len() == k
        && (0..k).all(|i| {
            let (u, v) = (cycle[i], cycle[(i + 1) % k]);
            u < g.n() && v < g.n() && g.find_edge(u, v).is_some()
        })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    // Oracle: BFS from every vertex without early exit.
    fn girth_oracle(g: &Graph) -> Option<usize> {
        let mut best = None::<usize>;
        for r in 0..g.n() {
            let mut dist = vec![usize::MAX; g.n()];
            let mut par = vec![usize::MAX; g.n()];
            dist[r] = 0;
            let mut q = VecDeque::from([r]);
            while let Some(x) = q.pop_front() {
                for &(y, e) in g.incident(x) {
                    if par[x] == e {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        par[y] = e;
                        q.push_back(y);
                    } else {
                        let l = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(l, |b| b.min(l)));
                    }
                }
            }
        }
        best
    }

    #[test]
    fn girth_small_graphs() {
        assert_eq!(complete(4).girth(), Some(3));
        let path = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(path.girth(), None);
        assert_eq!(petersen().girth(), Some(5));
        assert_eq!(girth_oracle(&petersen()), Some(5));
        assert_eq!(build_cycle(7).girth(), Some(7));
        assert_eq!(Graph::empty(3).girth(), None);
    }

    #[test]
    fn shortest_cycle_is_a_cycle() {
        for g in [petersen(), complete(4), build_cycle(9), build_hn(4)] {
            let c = g.shortest_cycle().unwrap();
            assert!(is_cycle(&g, &c), "{c:?}");
            assert_eq!(Some(c.len()), girth_oracle(&g));
        }
    }

    #[test]
    fn rejects_non_simple() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn petersen_degrees() {
        let p = petersen();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.is_cubic());
        assert_eq!(p.components().0, 1);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn girth_matches_oracle(n in 3usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..30)) {
            let mut set = std::collections::BTreeSet::new();
            for (u, v) in raw {
                let (u, v) = (u % n, v % n);
                if u != v {
                    set.insert((u.min(v), u.max(v)));
                }
            }
            let edges: Vec<_> = set.into_iter().collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            prop_assert_eq!(g.girth(), girth_oracle(&g));
            if let Some(c) = g.shortest_cycle() {
                prop_assert!(is_cycle(&g, &c));
            }
        }
    }
}
