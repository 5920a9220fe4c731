//! Edge labelings by subsets of `{1,2,3,4}` and their cost.
//!
//! A labeling is the 4-tuple `(X1, X2, X3, X4)` of edge sets stored edge-wise:
//! edge `e` carries the 4-bit mask of the classes containing it, bit `i - 1`
//! standing for class `i`.

use std::fmt::{self, Write as _};
use std::ops::BitXor;

use thiserror::Error;

use crate::graphs::{is_cut, EdgeSet, Graph, VertexSet};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("labeling has {labels} labels but the graph has {edges} edges")]
    GraphMismatch { labels: usize, edges: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid cost table: {0}")]
    CostTable(String),
}

/// A subset of `{1,2,3,4}` as a 4-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Label(u8);

impl Label {
    pub const EMPTY: Label = Label(0);
    pub const FULL: Label = Label(15);

    pub fn from_mask(mask: u8) -> Label {
        assert!(mask < 16, "label mask {mask} out of range");
        Label(mask)
    }

    /// Label from 1-based class numbers.
    pub fn from_classes(classes: &[usize]) -> Label {
        Label(classes.iter().fold(0u8, |m, &i| {
            assert!((1..=4).contains(&i), "class {i} not in 1..=4");
            m | 1 << (i - 1)
        }))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn weight(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, class: usize) -> bool {
        (1..=4).contains(&class) && self.0 >> (class - 1) & 1 == 1
    }

    pub fn all() -> impl Iterator<Item = Label> {
        (0..16).map(Label)
    }

    /// The 11 labels of weight at most 2.
    pub fn light() -> impl Iterator<Item = Label> {
        Label::all().filter(|l| l.weight() <= 2)
    }

    pub fn permute(self, pi: &CoordPermutation) -> Label {
        let mut out = 0u8;
        for i in 0..4 {
            if self.0 >> i & 1 == 1 {
                out |= 1 << pi.0[i];
            }
        }
        Label(out)
    }
}

impl BitXor for Label {
    type Output = Label;
    fn bitxor(self, rhs: Label) -> Label {
        Label(self.0 ^ rhs.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = (1..=4).filter(|&i| self.contains(i)).map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A permutation of the four classes; entry `i` is the image of class `i + 1`
/// minus one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoordPermutation([usize; 4]);

impl CoordPermutation {
    pub const IDENTITY: CoordPermutation = CoordPermutation([0, 1, 2, 3]);

    /// From 1-based images of classes 1..4.
    pub fn new(images: [usize; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        let mut zero = [0; 4];
        for (i, &x) in images.iter().enumerate() {
            if !(1..=4).contains(&x) || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
            zero[i] = x - 1;
        }
        Some(CoordPermutation(zero))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        CoordPermutation(inv)
    }

    /// All 24 permutations.
    pub fn all() -> Vec<CoordPermutation> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        if (0..4).all(|x| p.contains(&x)) {
                            out.push(CoordPermutation(p));
                        }
                    }
                }
            }
        }
        out
    }
}

/// The weight-to-cost function `a(0..=4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostTable([i32; 5]);

impl Default for CostTable {
    fn default() -> Self {
        CostTable([0, 1, 10, 40, 1000])
    }
}

impl CostTable {
    /// Accepts any nonnegative, nondecreasing table with `a(0) = 0`.
    pub fn new(a: [i32; 5]) -> Result<Self, LabelingError> {
        if a[0] != 0 {
            return Err(LabelingError::CostTable("a(0) must be 0".into()));
        }
        if a.windows(2).any(|w| w[1] < w[0]) {
            return Err(LabelingError::CostTable("a must be nondecreasing".into()));
        }
        if a[4] > 1_000_000 {
            return Err(LabelingError::CostTable("a(4) above 10^6 risks overflow".into()));
        }
        Ok(CostTable(a))
    }

    /// Strictly increasing with `a(1) > 0`, the tables the solver's
    /// termination argument covers.
    pub fn is_conforming(&self) -> bool {
        self.0.windows(2).all(|w| w[1] > w[0])
    }

    pub fn values(&self) -> [i32; 5] {
        self.0
    }

    #[inline]
    pub fn a(&self, weight: usize) -> i32 {
        self.0[weight]
    }

    #[inline]
    pub fn of(&self, label: Label) -> i32 {
        self.0[label.weight()]
    }

    /// Cost indexed by label mask.
    pub fn by_mask(&self) -> [i32; 16] {
        let mut out = [0; 16];
        for l in Label::all() {
            out[l.index()] = self.of(l);
        }
        out
    }
}

impl fmt::Display for CostTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(i32::to_string).collect();
        f.write_str(&v.join(","))
    }
}

impl std::str::FromStr for CostTable {
    type Err = LabelingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(LabelingError::CostTable("expected five comma-separated integers".into()));
        }
        let mut a = [0; 5];
        for (slot, p) in a.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| LabelingError::CostTable(format!("not an integer: {p:?}")))?;
        }
        CostTable::new(a)
    }
}

/// One label per edge of some graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Labeling {
    labels: Vec<Label>,
}

impl Labeling {
    pub fn uniform(m: usize, label: Label) -> Self {
        Labeling {
            labels: vec![label; m],
        }
    }

    pub fn from_labels(labels: Vec<Label>) -> Self {
        Labeling { labels }
    }

    /// Builds the edge-wise view of `(X1, .., X4)`.
    pub fn from_classes(m: usize, classes: &[EdgeSet; 4]) -> Self {
        let labels = (0..m)
            .map(|e| {
                Label(
                    (0..4).fold(0u8, |acc, i| acc | (classes[i].contains(e) as u8) << i),
                )
            })
            .collect();
        Labeling { labels }
    }

    /// The cut complement labeling `(E ∖ δ(U1), .., E ∖ δ(U4))` given as a
    /// 4-bit mask per vertex.
    pub fn from_vertex_masks(g: &Graph, masks: &[u8]) -> Self {
        let labels = g
            .edges()
            .iter()
            .map(|&(u, v)| Label(!(masks[u] ^ masks[v]) & 15))
            .collect();
        Labeling { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> Label {
        self.labels[e]
    }

    pub fn set(&mut self, e: usize, l: Label) {
        self.labels[e] = l;
    }

    pub fn weight(&self, e: usize) -> usize {
        self.labels[e].weight()
    }

    pub fn cost_edge(&self, e: usize, a: &CostTable) -> i32 {
        a.of(self.labels[e])
    }

    pub fn cost(&self, a: &CostTable) -> i64 {
        self.labels.iter().map(|&l| a.of(l) as i64).sum()
    }

    /// Edge-wise symmetric difference.
    pub fn delta(&self, other: &Labeling) -> Result<Labeling, LabelingError> {
        if self.len() != other.len() {
            return Err(LabelingError::GraphMismatch {
                labels: other.len(),
                edges: self.len(),
            });
        }
        Ok(Labeling {
            labels: self.labels.iter().zip(&other.labels).map(|(&a, &b)| a ^ b).collect(),
        })
    }

    /// Class `i` (1-based) as an edge set.
    pub fn class(&self, i: usize) -> EdgeSet {
        let mut s = EdgeSet::with_capacity(self.len());
        for (e, l) in self.labels.iter().enumerate() {
            if l.contains(i) {
                s.insert(e);
            }
        }
        s
    }

    fn check_graph(&self, g: &Graph) -> Result<(), LabelingError> {
        if self.len() != g.m() {
            return Err(LabelingError::GraphMismatch {
                labels: self.len(),
                edges: g.m(),
            });
        }
        Ok(())
    }

    /// Witnesses `U_i` with `X_i = δ(U_i)`, if every class is a cut.
    pub fn is_cut_labeling(&self, g: &Graph) -> Option<[VertexSet; 4]> {
        self.check_graph(g).ok()?;
        let mut out: [VertexSet; 4] = Default::default();
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = is_cut(g, &self.class(i + 1)).witness()?;
        }
        Some(out)
    }

    /// Witnesses `U_i` with `X_i = E ∖ δ(U_i)`, if every class is a cut complement.
    pub fn is_cut_complement_labeling(&self, g: &Graph) -> Option<[VertexSet; 4]> {
        self.check_graph(g).ok()?;
        let mut out: [VertexSet; 4] = Default::default();
        for (i, slot) in out.iter_mut().enumerate() {
            let mut s = self.class(i + 1);
            s.toggle_range(..);
            *slot = is_cut(g, &s).witness()?;
        }
        Some(out)
    }

    /// All weights at most 1, i.e. the four classes are pairwise disjoint.
    pub fn is_wonderful(&self) -> bool {
        self.labels.iter().all(|l| l.weight() <= 1)
    }

    pub fn permute_coordinates(&self, pi: &CoordPermutation) -> Labeling {
        Labeling {
            labels: self.labels.iter().map(|l| l.permute(pi)).collect(),
        }
    }

    /// `n m` header, then `u v mask` per edge in id order.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", g.n(), g.m());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let _ = writeln!(out, "{u} {v} {}", self.labels[e].mask());
        }
        out
    }

    /// Parses the `u v mask` format against `g`; edge lines may come in any order.
    pub fn parse(g: &Graph, text: &str) -> Result<Labeling, LabelingError> {
        let mut labels = vec![None; g.m()];
        let mut header_seen = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') || l == "labeling" {
                continue;
            }
            let bad = |msg: String| LabelingError::Parse { line, msg };
            let toks: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(format!("not an integer: {t:?}"))))
                .collect::<Result<_, _>>()?;
            if !header_seen && toks.len() == 2 {
                if toks[0] != g.n() || toks[1] != g.m() {
                    return Err(bad(format!("header {} {} does not match graph {} {}", toks[0], toks[1], g.n(), g.m())));
                }
                header_seen = true;
                continue;
            }
            if toks.len() != 3 {
                return Err(bad(format!("expected \"u v mask\", got {l:?}")));
            }
            let (u, v, mask) = (toks[0], toks[1], toks[2]);
            if mask >= 16 {
                return Err(bad(format!("mask {mask} out of range 0..16")));
            }
            if u >= g.n() || v >= g.n() {
                return Err(bad(format!("vertex out of range 0..{}", g.n())));
            }
            let e = g.find_edge(u, v).ok_or_else(|| bad(format!("{u} {v} is not an edge")))?;
            if labels[e].replace(Label(mask as u8)).is_some() {
                return Err(bad(format!("edge {u} {v} labeled twice")));
            }
        }
        let labels: Option<Vec<Label>> = labels.into_iter().collect();
        labels.map(Labeling::from_labels).ok_or(LabelingError::Parse {
            line: text.lines().count(),
            msg: "some edges carry no label".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_cycle, cut_of, is_cut};
    use fixedbitset::FixedBitSet;
    use proptest::prelude::*;

    fn vset(n: usize, mask: u32) -> VertexSet {
        let mut s = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                s.insert(i);
            }
        }
        s
    }

    #[test]
    fn weights_and_costs() {
        let a = CostTable::default();
        let x = Labeling::from_labels(vec![
            Label::EMPTY,
            Label::FULL,
            Label::from_classes(&[2, 3]),
        ]);
        assert_eq!((x.weight(0), x.cost_edge(0, &a)), (0, 0));
        assert_eq!((x.weight(1), x.cost_edge(1, &a)), (4, 1000));
        assert_eq!((x.weight(2), x.cost_edge(2, &a)), (2, 10));
        assert_eq!(x.cost(&a), 1010);
    }

    #[test]
    fn initial_cost_on_petersen() {
        let p = crate::graphs::tests::petersen();
        let x = Labeling::uniform(p.m(), Label::FULL);
        assert_eq!(x.cost(&CostTable::default()), 15000);
        assert!(x.is_cut_complement_labeling(&p).unwrap().iter().all(|u| u.is_clear()));
        assert_eq!(Labeling::uniform(p.m(), Label::EMPTY).cost(&CostTable::default()), 0);
    }

    #[test]
    fn empty_labeling_is_complement_iff_bipartite() {
        let c4 = build_cycle(4);
        assert!(Labeling::uniform(4, Label::EMPTY).is_cut_complement_labeling(&c4).is_some());
        let c5 = build_cycle(5);
        assert!(Labeling::uniform(5, Label::EMPTY).is_cut_complement_labeling(&c5).is_none());
    }

    #[test]
    fn single_edge_class_on_c5_is_not_a_cut() {
        let c5 = build_cycle(5);
        let mut x = Labeling::uniform(5, Label::EMPTY);
        x.set(2, Label::from_classes(&[1]));
        assert!(x.is_cut_labeling(&c5).is_none());
        x.set(2, Label::EMPTY);
        assert!(x.is_cut_labeling(&c5).is_some());
    }

    #[test]
    fn delta_with_cut_labeling_stays_complement_exhaustive() {
        // every cut complement labeling Δ every cut labeling, single class varied
        // over all vertex subsets, on C4, C5 and K4
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for g in [build_cycle(4), build_cycle(5), k4] {
            let n = g.n();
            for um in 0..1u32 << n {
                let mut comp = cut_of(&g, &vset(n, um));
                comp.toggle_range(..);
                for zm in 0..1u32 << n {
                    let cut = cut_of(&g, &vset(n, zm));
                    let classes_x = [comp.clone(), g.all_edges(), comp.clone(), g.all_edges()];
                    let classes_y = [cut.clone(), cut.clone(), g.empty_edge_set(), cut.clone()];
                    let x = Labeling::from_classes(g.m(), &classes_x);
                    let y = Labeling::from_classes(g.m(), &classes_y);
                    assert!(x.is_cut_complement_labeling(&g).is_some());
                    assert!(y.is_cut_labeling(&g).is_some());
                    assert!(x.delta(&y).unwrap().is_cut_complement_labeling(&g).is_some());
                }
            }
        }
    }

    #[test]
    fn delta_mismatch() {
        let x = Labeling::uniform(3, Label::EMPTY);
        let y = Labeling::uniform(4, Label::EMPTY);
        assert!(matches!(x.delta(&y), Err(LabelingError::GraphMismatch { .. })));
    }

    #[test]
    fn wonderful() {
        assert!(Labeling::uniform(5, Label::EMPTY).is_wonderful());
        let mut x = Labeling::uniform(5, Label::from_classes(&[3]));
        assert!(x.is_wonderful());
        x.set(0, Label::from_classes(&[1, 2]));
        assert!(!x.is_wonderful());
    }

    #[test]
    fn permutation() {
        let pi = CoordPermutation::new([2, 1, 4, 3]).unwrap();
        assert_eq!(Label::from_classes(&[1, 3]).permute(&pi), Label::from_classes(&[2, 4]));
        assert_eq!(Label::from_classes(&[1, 3]).permute(&CoordPermutation::IDENTITY), Label::from_classes(&[1, 3]));
        assert!(CoordPermutation::new([1, 1, 2, 3]).is_none());
        assert_eq!(CoordPermutation::all().len(), 24);
    }

    #[test]
    fn cost_is_permutation_invariant_on_c6() {
        let a = CostTable::default();
        let x = Labeling::from_labels([3u8, 15, 0, 9, 6, 1].map(Label::from_mask).to_vec());
        for pi in CoordPermutation::all() {
            let y = x.permute_coordinates(&pi);
            assert_eq!(y.cost(&a), x.cost(&a));
            assert_eq!(y.permute_coordinates(&pi.inverse()), x);
        }
    }

    #[test]
    fn vertex_masks_give_complement_labelings() {
        let p = crate::graphs::tests::petersen();
        let masks: Vec<u8> = (0..10).map(|v| (v * 7 % 16) as u8).collect();
        let x = Labeling::from_vertex_masks(&p, &masks);
        let w = x.is_cut_complement_labeling(&p).unwrap();
        for (i, u) in w.iter().enumerate() {
            let mut c = cut_of(&p, u);
            c.toggle_range(..);
            assert_eq!(c, x.class(i + 1));
        }
    }

    #[test]
    fn text_round_trip() {
        let p = crate::graphs::tests::petersen();
        let x = Labeling::from_labels((0..15).map(|e| Label::from_mask((e % 16) as u8)).collect());
        assert_eq!(Labeling::parse(&p, &x.to_text(&p)).unwrap(), x);
        assert!(Labeling::parse(&p, "10 15\n0 1 16\n").is_err());
        assert!(Labeling::parse(&p, "10 15\n0 1 3\n").is_err());
    }

    #[test]
    fn cost_table_validation() {
        assert!(CostTable::new([1, 1, 10, 40, 1000]).is_err());
        assert!(CostTable::new([0, 5, 1, 40, 1000]).is_err());
        let flat = CostTable::new([0, 0, 10, 40, 1000]).unwrap();
        assert!(!flat.is_conforming());
        assert!(CostTable::default().is_conforming());
        assert_eq!("0,1,10,40,1000".parse::<CostTable>().unwrap(), CostTable::default());
    }

    fn labeling(m: usize) -> impl Strategy<Value = Labeling> {
        proptest::collection::vec(0u8..16, m).prop_map(|v| Labeling::from_labels(v.into_iter().map(Label::from_mask).collect()))
    }

    proptest! {
        #[test]
        fn delta_laws(x in labeling(12), y in labeling(12), z in labeling(12)) {
            let xy = x.delta(&y).unwrap();
            prop_assert_eq!(&xy, &y.delta(&x).unwrap());
            prop_assert_eq!(xy.delta(&z).unwrap(), x.delta(&y.delta(&z).unwrap()).unwrap());
            prop_assert_eq!(xy.delta(&y).unwrap(), x.clone());
            prop_assert!(x.delta(&x).unwrap().labels().iter().all(|&l| l == Label::EMPTY));
        }

        #[test]
        fn cost_nonnegative_and_zero_iff_empty(x in labeling(10)) {
            let c = x.cost(&CostTable::default());
            prop_assert!(c >= 0);
            prop_assert_eq!(c == 0, x.labels().iter().all(|&l| l == Label::EMPTY));
        }

        #[test]
        fn closure_under_cut_delta_on_petersen(um in proptest::array::uniform4(0u32..1024), zm in proptest::array::uniform4(0u32..1024)) {
            let p = crate::graphs::tests::petersen();
            let mut ucls: [EdgeSet; 4] = Default::default();
            let mut zcls: [EdgeSet; 4] = Default::default();
            for i in 0..4 {
                let mut c = cut_of(&p, &vset(10, um[i]));
                c.toggle_range(..);
                ucls[i] = c;
                zcls[i] = cut_of(&p, &vset(10, zm[i]));
            }
            let x = Labeling::from_classes(15, &ucls);
            let y = Labeling::from_classes(15, &zcls);
            let d = x.delta(&y).unwrap();
            prop_assert!(d.is_cut_complement_labeling(&p).is_some());
            prop_assert!(is_cut(&p, &y.class(1)).is_cut());
        }
    }
}
