use std::collections::VecDeque;

use super::{EdgeSet, Graph, VertexSet};

/// `δ(U)`: the edges with exactly one end in `U`.
pub fn cut_of(g: &Graph, side: &VertexSet) -> EdgeSet {
    let mut s = g.empty_edge_set();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if side.contains(u) != side.contains(v) {
            s.insert(e);
        }
    }
    s
}

/// Outcome of [`is_cut`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutCheck {
    /// `δ(U) = S` for the returned `U`.
    Cut(VertexSet),
    /// Edge ids of a cycle meeting `S` an odd number of times.
    OddCycle(Vec<usize>),
}

impl CutCheck {
    pub fn is_cut(&self) -> bool {
        matches!(self, CutCheck::Cut(_))
    }

    pub fn witness(self) -> Option<VertexSet> {
        match self {
            CutCheck::Cut(u) => Some(u),
            CutCheck::OddCycle(_) => None,
        }
    }
}

/// Decides whether `S` is a cut by parity propagation.
///
/// Each component is 2-coloured from its lowest vertex, which always lands
/// outside `U`; crossing an `S` edge flips the side.
pub fn is_cut(g: &Graph, s: &EdgeSet) -> CutCheck {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in g.incident(x) {
                let want = side[x] ^ s.contains(e) as u8;
                if side[y] == u8::MAX {
                    side[y] = want;
                    parent_edge[y] = e;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                } else if side[y] != want {
                    return CutCheck::OddCycle(tree_cycle(g, &parent_edge, &depth, x, y, e));
                }
            }
        }
    }
    let mut u = g.empty_vertex_set();
    for (v, &b) in side.iter().enumerate() {
        if b == 1 {
            u.insert(v);
        }
    }
    CutCheck::Cut(u)
}

fn tree_cycle(
    g: &Graph,
    parent_edge: &[usize],
    depth: &[usize],
    x: usize,
    y: usize,
    closing: usize,
) -> Vec<usize> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let (mut a, mut b) = (x, y);
    while depth[a] > depth[b] {
        left.push(parent_edge[a]);
        a = g.other_end(parent_edge[a], a);
    }
    while depth[b] > depth[a] {
        right.push(parent_edge[b]);
        b = g.other_end(parent_edge[b], b);
    }
    while a != b {
        left.push(parent_edge[a]);
        a = g.other_end(parent_edge[a], a);
        right.push(parent_edge[b]);
        b = g.other_end(parent_edge[b], b);
    }
    left.push(closing);
    left.extend(right.into_iter().rev());
    left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::build_cycle;
    use fixedbitset::FixedBitSet;
    use proptest::prelude::*;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn set(n: usize, items: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        for &i in items {
            s.insert(i);
        }
        s
    }

    fn edge_set(g: &Graph, pairs: &[(usize, usize)]) -> EdgeSet {
        let ids: Vec<_> = pairs.iter().map(|&(u, v)| g.find_edge(u, v).unwrap()).collect();
        set(g.m(), &ids)
    }

    #[test]
    fn cut_of_examples() {
        let g = k4();
        let star = cut_of(&g, &set(4, &[0]));
        assert_eq!(star, edge_set(&g, &[(0, 1), (0, 2), (0, 3)]));
        assert_eq!(cut_of(&g, &set(4, &[])).count_ones(..), 0);
        assert_eq!(
            cut_of(&g, &set(4, &[0, 1])),
            edge_set(&g, &[(0, 2), (0, 3), (1, 2), (1, 3)])
        );
    }

    #[test]
    fn is_cut_examples() {
        let g = k4();
        let star = edge_set(&g, &[(0, 1), (0, 2), (0, 3)]);
        match is_cut(&g, &star) {
            CutCheck::Cut(u) => assert_eq!(cut_of(&g, &u), star),
            other => panic!("{other:?}"),
        }
        // K4 cut sizes are 0, 3, 4; a matching of size 2 is none of them
        let matching = edge_set(&g, &[(0, 1), (2, 3)]);
        assert!(!is_cut(&g, &matching).is_cut());
        let c5 = build_cycle(5);
        for e in 0..5 {
            match is_cut(&c5, &set(5, &[e])) {
                CutCheck::OddCycle(cyc) => {
                    assert_eq!(cyc.len(), 5);
                    assert_eq!(cyc.iter().filter(|&&f| f == e).count(), 1);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn refutation_cycles_are_odd_in_s() {
        // every non-cut of K4 is refuted by a closed edge walk meeting S oddly
        let g = k4();
        for mask in 0u32..64 {
            let items: Vec<_> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
            let s = set(6, &items);
            let is_real_cut = (0u32..16).any(|u| {
                let side = set(4, &(0..4).filter(|i| u >> i & 1 == 1).collect::<Vec<_>>());
                cut_of(&g, &side) == s
            });
            match is_cut(&g, &s) {
                CutCheck::Cut(u) => {
                    assert!(is_real_cut);
                    assert_eq!(cut_of(&g, &u), s);
                }
                CutCheck::OddCycle(cyc) => {
                    assert!(!is_real_cut);
                    assert_eq!(cyc.iter().filter(|&&e| s.contains(e)).count() % 2, 1);
                    // consecutive edges share a vertex
                    let k = cyc.len();
                    for i in 0..k {
                        let (a, b) = g.endpoints(cyc[i]);
                        let (c, d) = g.endpoints(cyc[(i + 1) % k]);
                        assert!(a == c || a == d || b == c || b == d);
                    }
                }
            }
        }
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (2usize..=10, proptest::collection::vec((0usize..10, 0usize..10), 0..25)).prop_map(
            |(n, raw)| {
                let mut edges = std::collections::BTreeSet::new();
                for (u, v) in raw {
                    let (u, v) = (u % n, v % n);
                    if u != v {
                        edges.insert((u.min(v), u.max(v)));
                    }
                }
                Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>()).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn every_cut_is_recognised(g in small_graph(), mask in any::<u16>()) {
            let side = set(g.n(), &(0..g.n()).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
            let s = cut_of(&g, &side);
            match is_cut(&g, &s) {
                CutCheck::Cut(u) => prop_assert_eq!(cut_of(&g, &u), s),
                CutCheck::OddCycle(_) => prop_assert!(false),
            }
        }

        #[test]
        fn cut_space_is_closed(g in small_graph(), m1 in any::<u16>(), m2 in any::<u16>()) {
            let side = |m: u16| set(g.n(), &(0..g.n()).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>());
            let mut s = cut_of(&g, &side(m1));
            s.symmetric_difference_with(&cut_of(&g, &side(m2)));
            prop_assert!(is_cut(&g, &s).is_cut());
        }
    }

    #[test]
    fn cut_space_closure_exhaustive_petersen() {
        // all 2^10 sides of the Petersen graph; pairs sampled along a stride
        let p = crate::graphs::tests::petersen();
        let side = |m: u32| set(10, &(0..10).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>());
        let cuts: Vec<_> = (0u32..1024).map(|m| cut_of(&p, &side(m))).collect();
        for (i, a) in cuts.iter().enumerate() {
            for b in cuts.iter().skip(i % 7).step_by(37) {
                let mut s = a.clone();
                s.symmetric_difference_with(b);
                assert!(is_cut(&p, &s).is_cut());
            }
        }
    }
}
