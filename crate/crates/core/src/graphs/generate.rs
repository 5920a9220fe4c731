//! Random cubic graphs of prescribed girth by short-cycle-breaking 2-swaps.
//!
//! Starts from a uniformly random simple pairing and repeatedly destroys a
//! short cycle: an edge `ab` on it and a random edge `cd` are replaced by
//! `ac` and `bd`, provided neither new edge closes a cycle shorter than the
//! target. Such a swap never creates a short cycle, so the number of short
//! cycles strictly decreases with each accepted swap.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone)]
pub struct GenOptions {
    pub n: usize,
    pub girth: usize,
    pub seed: u64,
    /// Total swap attempts before giving up.
    pub budget: u64,
    /// Consecutive rejected swaps that trigger a restart from a fresh pairing.
    pub restart_after: u64,
}

impl GenOptions {
    pub fn new(n: usize, girth: usize, seed: u64) -> Self {
        GenOptions {
            n,
            girth,
            seed,
            budget: 10_000_000,
            restart_after: 5_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GenReport {
    pub graph: Graph,
    pub attempts: u64,
    pub accepted: u64,
    pub restarts: u64,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("budget of {attempts} swap attempts exhausted (girth reached: {})", .girth.map_or("inf".to_string(), |g| g.to_string()))]
    BudgetExhausted { attempts: u64, girth: Option<usize> },
}

/// Smallest possible order of a cubic graph with girth `g`.
pub fn moore_bound(g: usize) -> usize {
    let d = g / 2;
    if g % 2 == 1 {
        1 + 3 * ((1usize << d) - 1)
    } else {
        2 * ((1usize << d) - 1)
    }
}

/// Generates a cubic graph on `n` vertices with girth at least `g`.
///
/// Deterministic for fixed options.
pub fn gen_high_girth_cubic(opts: &GenOptions) -> Result<GenReport, GenError> {
    let GenOptions { n, girth, .. } = *opts;
    if girth < 3 {
        return Err(GenError::Infeasible("girth target must be at least 3".into()));
    }
    if n % 2 == 1 || n < 4 {
        return Err(GenError::Infeasible(format!("n = {n} must be even and at least 4")));
    }
    if girth > 40 || n < moore_bound(girth) {
        return Err(GenError::Infeasible(format!(
            "n = {n} is below the Moore bound {} for girth {girth}",
            if girth > 40 { usize::MAX } else { moore_bound(girth) }
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut state = Cubic::random(n, &mut rng);
    let mut search = Ball::new(n);
    let mut attempts = 0u64;
    let mut accepted = 0u64;
    let mut restarts = 0u64;
    let mut failures = 0u64;
    let mut v = 0usize;
    while v < n {
        let Some((a, b)) = search.short_cycle_edge(&state, v, girth) else {
            v += 1;
            continue;
        };
        loop {
            if attempts >= opts.budget {
                return Err(GenError::BudgetExhausted {
                    attempts,
                    girth: state.to_graph().girth(),
                });
            }
            attempts += 1;
            let c = rng.gen_range(0..n);
            let d = state.adj[c][rng.gen_range(0..3)];
            if state.try_swap(a, b, c, d, girth, &mut search) {
                accepted += 1;
                failures = 0;
                break;
            }
            failures += 1;
            if failures >= opts.restart_after {
                state = Cubic::random(n, &mut rng);
                restarts += 1;
                failures = 0;
                v = 0;
                break;
            }
        }
    }
    Ok(GenReport {
        graph: state.to_graph(),
        attempts,
        accepted,
        restarts,
    })
}

struct Cubic {
    adj: Vec<[usize; 3]>,
}

impl Cubic {
    fn random(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        'retry: loop {
            points.shuffle(rng);
            let mut adj = vec![[usize::MAX; 3]; n];
            let mut fill = vec![0usize; n];
            for pair in points.chunks(2) {
                let (u, v) = (pair[0], pair[1]);
                if u == v || adj[u][..fill[u]].contains(&v) {
                    continue 'retry;
                }
                adj[u][fill[u]] = v;
                adj[v][fill[v]] = u;
                fill[u] += 1;
                fill[v] += 1;
            }
            return Cubic { adj };
        }
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    fn replace(&mut self, u: usize, old: usize, new: usize) {
        let slot = self.adj[u].iter().position(|&w| w == old).expect("edge present");
        self.adj[u][slot] = new;
    }

    /// Replaces `ab, cd` by `ac, bd` if neither new edge lies on a cycle
    /// shorter than `girth`; leaves the graph unchanged otherwise.
    fn try_swap(&mut self, a: usize, b: usize, c: usize, d: usize, girth: usize, ball: &mut Ball) -> bool {
        if [a, b].contains(&c) || [a, b].contains(&d) || self.has_edge(a, c) || self.has_edge(b, d) {
            return false;
        }
        self.replace(a, b, c);
        self.replace(b, a, d);
        self.replace(c, d, a);
        self.replace(d, c, b);
        let limit = girth - 2;
        let ok = !ball.within(self, a, c, limit) && !ball.within(self, b, d, limit);
        if !ok {
            self.replace(a, c, b);
            self.replace(b, d, a);
            self.replace(c, a, d);
            self.replace(d, b, c);
        }
        ok
    }

    fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.adj.len());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        g
    }
}

/// Bidirectional bounded BFS with generation stamps.
struct Ball {
    stamp: Vec<u32>,
    side: Vec<u8>,
    dist: Vec<usize>,
    parent: Vec<usize>,
    gen: u32,
    frontier: Vec<usize>,
    next: Vec<usize>,
}

impl Ball {
    fn new(n: usize) -> Self {
        Ball {
            stamp: vec![0; n],
            side: vec![0; n],
            dist: vec![0; n],
            parent: vec![0; n],
            gen: 0,
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    fn bump(&mut self) {
        self.gen = self.gen.wrapping_add(1);
        if self.gen == 0 {
            self.stamp.fill(0);
            self.gen = 1;
        }
    }

    /// An edge on a cycle shorter than `girth` found by BFS from `root`.
    fn short_cycle_edge(&mut self, g: &Cubic, root: usize, girth: usize) -> Option<(usize, usize)> {
        self.bump();
        self.stamp[root] = self.gen;
        self.dist[root] = 0;
        self.parent[root] = usize::MAX;
        self.frontier.clear();
        self.frontier.push(root);
        let mut depth = 0;
        while 2 * depth + 1 < girth && !self.frontier.is_empty() {
            self.next.clear();
            for i in 0..self.frontier.len() {
                let u = self.frontier[i];
                for &w in &g.adj[u] {
                    if w == self.parent[u] {
                        continue;
                    }
                    if self.stamp[w] == self.gen {
                        if self.dist[u] + self.dist[w] + 1 < girth {
                            return Some((u, w));
                        }
                    } else {
                        self.stamp[w] = self.gen;
                        self.dist[w] = depth + 1;
                        self.parent[w] = u;
                        self.next.push(w);
                    }
                }
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
            depth += 1;
        }
        None
    }

    /// Whether `x` and `y` are joined by a path of length `<= limit` that
    /// avoids the edge `xy`.
    fn within(&mut self, g: &Cubic, x: usize, y: usize, limit: usize) -> bool {
        self.bump();
        let r1 = limit.div_ceil(2);
        let r2 = limit / 2;
        self.frontier.clear();
        self.frontier.push(x);
        self.stamp[x] = self.gen;
        self.side[x] = 1;
        for _ in 0..r1 {
            self.step(g, x, y, 1);
        }
        if self.stamp[y] == self.gen {
            return true;
        }
        self.frontier.clear();
        self.frontier.push(y);
        self.stamp[y] = self.gen;
        self.side[y] = 2;
        for _ in 0..r2 {
            if self.step(g, y, x, 2) {
                return true;
            }
        }
        false
    }

    /// Expands the frontier by one level, never using the edge `xy`.
    /// Returns true when a vertex of the other side is reached.
    fn step(&mut self, g: &Cubic, x: usize, y: usize, side: u8) -> bool {
        self.next.clear();
        for &u in &self.frontier {
            for &w in &g.adj[u] {
                if u == x && w == y {
                    continue;
                }
                if self.stamp[w] == self.gen {
                    if self.side[w] != side {
                        return true;
                    }
                    continue;
                }
                self.stamp[w] = self.gen;
                self.side[w] = side;
                self.next.push(w);
            }
        }
        std::mem::swap(&mut self.frontier, &mut self.next);
        false
    }
}
