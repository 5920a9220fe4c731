use super::{base_menu, EdgeTransform, Menu};
use crate::labeling::{CostTable, Label};

/// A labeled tree rooted at node 0, with nodes in BFS order.
///
/// Each non-root node records its parent and the label of the edge to it.
/// Interior nodes may move in a swap; the others (leaves of the embedded
/// tree) stay fixed.
#[derive(Clone, Debug, Default)]
pub struct LabeledTree {
    parent: Vec<usize>,
    label: Vec<Label>,
    interior: Vec<bool>,
}

/// An internal swap of a labeled tree: per-node masks with the root at `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Swap {
    pub s: Label,
    pub value: i32,
    pub masks: Vec<u8>,
}

impl LabeledTree {
    pub fn new() -> Self {
        LabeledTree {
            parent: vec![usize::MAX],
            label: vec![Label::EMPTY],
            interior: vec![true],
        }
    }

    /// Adds a node below `parent`, which must be interior.
    pub fn push(&mut self, parent: usize, label: Label, interior: bool) -> usize {
        assert!(parent < self.len() && self.interior[parent], "parent must be an interior node");
        self.parent.push(parent);
        self.label.push(label);
        self.interior.push(interior);
        self.len() - 1
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        (x > 0).then(|| self.parent[x])
    }

    pub fn label(&self, x: usize) -> Label {
        self.label[x]
    }

    pub fn is_interior(&self, x: usize) -> bool {
        self.interior[x]
    }

    /// Per node, the sum of the menus of the edges hanging below it.
    fn child_sums(&self, cost: &CostTable) -> Vec<Menu> {
        let cm = cost.by_mask();
        let mut sums = vec![Menu::ZERO; self.len()];
        for x in (1..self.len()).rev() {
            let m = if self.interior[x] {
                EdgeTransform::new(&sums[x], &cm).with_label(self.label[x], cost)
            } else {
                base_menu(self.label[x], cost)
            };
            let p = self.parent[x];
            sums[p] = sums[p] + m;
        }
        sums
    }

    /// Menu of the whole tree at its root.
    pub fn root_menu(&self, cost: &CostTable) -> Menu {
        self.child_sums(cost)[0]
    }

    /// The cheapest internal swap with the root in exactly the classes `s`.
    /// Ties are broken towards the smallest mask at each node.
    pub fn swap_for(&self, s: Label, cost: &CostTable) -> Swap {
        let sums = self.child_sums(cost);
        self.reconstruct(&sums, s, cost)
    }

    /// The swap minimizing the root menu, smallest `S` on ties.
    pub fn best_swap(&self, cost: &CostTable) -> Swap {
        let sums = self.child_sums(cost);
        let root = sums[0];
        let s = (0..16).min_by_key(|&k| (root.0[k], k)).unwrap();
        self.reconstruct(&sums, Label::from_mask(s as u8), cost)
    }

    fn reconstruct(&self, sums: &[Menu], s: Label, cost: &CostTable) -> Swap {
        let cm = cost.by_mask();
        let mut masks = vec![0u8; self.len()];
        masks[0] = s.mask();
        for x in 1..self.len() {
            if !self.interior[x] {
                continue;
            }
            let t = (self.label[x].mask() ^ masks[self.parent[x]]) as usize;
            let q = (0..16)
                .min_by_key(|&q| (sums[x].0[q] + cm[t ^ q], q))
                .unwrap();
            masks[x] = q as u8;
        }
        Swap {
            s,
            value: sums[0].0[s.index()],
            masks,
        }
    }

    /// Cost change of applying per-node masks, computed edge by edge.
    pub fn swap_cost(&self, masks: &[u8], cost: &CostTable) -> i64 {
        (1..self.len())
            .map(|x| {
                let l = self.label[x];
                let moved = Label::from_mask(l.mask() ^ masks[x] ^ masks[self.parent[x]]);
                (cost.of(moved) - cost.of(l)) as i64
            })
            .sum()
    }
}

/// The complete binary tree `T_i` whose root has a single child.
///
/// Edges are numbered in heap order: edge 0 leaves the root and edge `k`
/// has children `2k+1` and `2k+2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub depth: usize,
}

impl RootedTree {
    pub fn new(depth: usize) -> Self {
        assert!((1..=24).contains(&depth), "depth out of range");
        RootedTree { depth }
    }

    pub fn edges(&self) -> usize {
        (1 << self.depth) - 1
    }

    /// Interior vertices, including the root.
    pub fn interior_vertices(&self) -> usize {
        1 << (self.depth - 1)
    }

    pub fn children(&self, k: usize) -> Option<(usize, usize)> {
        (2 * k + 2 < self.edges()).then_some((2 * k + 1, 2 * k + 2))
    }

    /// Node `k + 1` is the lower end of edge `k`.
    pub fn labeled(&self, labels: &[Label]) -> LabeledTree {
        assert_eq!(labels.len(), self.edges(), "one label per edge");
        let mut t = LabeledTree::new();
        for (k, &l) in labels.iter().enumerate() {
            let parent = if k == 0 { 0 } else { (k - 1) / 2 + 1 };
            t.push(parent, l, self.children(k).is_some());
        }
        t
    }
}

/// Menu of `T_depth` labeled by `labels` in heap order.
pub fn menu_of_tree(depth: usize, labels: &[Label], cost: &CostTable) -> Menu {
    RootedTree::new(depth).labeled(labels).root_menu(cost)
}
