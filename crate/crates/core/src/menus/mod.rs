//! Menus of labeled rooted trees.
//!
//! For a labeled tree rooted at `r`, the menu records, for every `S ⊆ [4]`,
//! the cheapest change of cost achievable by an internal cut labeling in
//! which `r` lies exactly in the classes of `S`. Menus of `T_i` are built
//! bottom-up with [`parent_menu`]; the worst menus over all light labelings
//! of `T_i` form the antichains searched in [`search`].

mod antichain;
pub mod search;
mod tree;

pub use antichain::{maximal_elements, MenuSet, RootMode};
pub use search::{
    compute_levels, compute_w, final_test, fixed_root_label, level_one, next_level,
    prune_nonneg, verify_claim, ClaimConfig, ClaimReport, Counterexample, FinalOutcome,
    SearchConfig,
};
pub use tree::{menu_of_tree, LabeledTree, RootedTree, Swap};

#[cfg(test)]
pub(crate) use tree::tests as tests_support;

use std::fmt;
use std::ops::Add;

use thiserror::Error;

use crate::labeling::{CostTable, Label};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MenuError {
    #[error("menu set at depth {depth} has {size} menus, above the capacity {capacity}")]
    CapacityExceeded {
        depth: usize,
        size: usize,
        capacity: usize,
    },
    #[error("menu value {value} at depth {depth} exceeds the bound {bound}")]
    BoundViolated { depth: usize, value: i32, bound: i64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A map from the 16 subsets of `[4]` (by mask) to integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Menu(pub [i32; 16]);

/// Result of comparing two menus coordinatewise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MenuOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Menu {
    pub const ZERO: Menu = Menu([0; 16]);

    #[inline]
    pub fn get(&self, s: Label) -> i32 {
        self.0[s.index()]
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn max_abs(&self) -> i32 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// `self ≼ other`.
    #[inline]
    pub fn le(&self, other: &Menu) -> bool {
        let mut ok = true;
        for k in 0..16 {
            ok &= self.0[k] <= other.0[k];
        }
        ok
    }

    #[inline]
    pub fn compare(&self, other: &Menu) -> MenuOrder {
        let mut le = true;
        let mut ge = true;
        for k in 0..16 {
            le &= self.0[k] <= other.0[k];
            ge &= self.0[k] >= other.0[k];
        }
        match (le, ge) {
            (true, true) => MenuOrder::Equal,
            (true, false) => MenuOrder::Less,
            (false, true) => MenuOrder::Greater,
            (false, false) => MenuOrder::Incomparable,
        }
    }

    /// Smallest `S` with a negative entry, if any.
    pub fn first_negative(&self) -> Option<Label> {
        self.0.iter().position(|&x| x < 0).map(|s| Label::from_mask(s as u8))
    }
}

impl Add for Menu {
    type Output = Menu;
    #[inline]
    fn add(self, rhs: Menu) -> Menu {
        let mut out = [0; 16];
        for k in 0..16 {
            out[k] = self.0[k] + rhs.0[k];
        }
        Menu(out)
    }
}

impl fmt::Debug for Menu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Menu{:?}", self.0)
    }
}

impl fmt::Display for Menu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// `compare` as a free function.
pub fn menu_cmp(a: &Menu, b: &Menu) -> MenuOrder {
    a.compare(b)
}

/// Menu of the single edge `T_1` labeled `r`: `M(S) = a(|R Δ S|) - a(|R|)`.
pub fn base_menu(r: Label, cost: &CostTable) -> Menu {
    let mut out = [0; 16];
    for s in Label::all() {
        out[s.index()] = cost.of(r ^ s) - cost.of(r);
    }
    Menu(out)
}

/// Precomputed min-plus transform of a child sum across one edge.
///
/// `t[T] = min_Q children(Q) + a(|T Δ Q|)`, so that
/// `Parent_menu(M, N, R)(S) = t[R Δ S] - a(|R|)` with `children = M + N`.
#[derive(Clone, Copy)]
pub struct EdgeTransform(pub [i32; 16]);

impl EdgeTransform {
    #[inline]
    pub fn new(children: &Menu, cost_by_mask: &[i32; 16]) -> Self {
        let mut t = [i32::MAX; 16];
        for q in 0..16 {
            let c = children.0[q];
            for (tt, slot) in t.iter_mut().enumerate() {
                let v = c + cost_by_mask[tt ^ q];
                if v < *slot {
                    *slot = v;
                }
            }
        }
        EdgeTransform(t)
    }

    #[inline]
    pub fn with_label(&self, r: Label, cost: &CostTable) -> Menu {
        let base = cost.of(r);
        let rm = r.index();
        let mut out = [0; 16];
        for (s, slot) in out.iter_mut().enumerate() {
            *slot = self.0[rm ^ s] - base;
        }
        Menu(out)
    }
}

/// `Parent_menu(M, N, R)(S) = min_Q (M(Q) + N(Q) + a(|R Δ S Δ Q|) - a(|R|))`.
pub fn parent_menu(m: &Menu, n: &Menu, r: Label, cost: &CostTable) -> Menu {
    EdgeTransform::new(&(*m + *n), &cost.by_mask()).with_label(r, cost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(c: &[usize]) -> Label {
        Label::from_classes(c)
    }

    #[test]
    fn base_menu_examples() {
        let a = CostTable::default();
        let m = base_menu(Label::EMPTY, &a);
        assert_eq!(m.get(Label::EMPTY), 0);
        assert_eq!(m.get(l(&[1])), 1);
        assert_eq!(m.get(Label::FULL), 1000);
        let m = base_menu(l(&[1, 2]), &a);
        assert_eq!(m.get(Label::EMPTY), 0);
        assert_eq!(m.get(l(&[1])), -9);
        assert_eq!(m.get(l(&[1, 2])), -10);
        assert_eq!(m.get(l(&[3, 4])), 990);
        for r in Label::all() {
            assert_eq!(base_menu(r, &a).get(Label::EMPTY), 0);
        }
    }

    #[test]
    fn parent_of_empty_leaves() {
        let a = CostTable::default();
        let b = base_menu(Label::EMPTY, &a);
        assert_eq!(parent_menu(&b, &b, Label::EMPTY, &a).get(Label::EMPTY), 0);
    }

    #[test]
    fn comparisons() {
        let a = CostTable::default();
        let m = base_menu(Label::EMPTY, &a);
        assert_eq!(m.compare(&m), MenuOrder::Equal);
        let bumped = m + Menu([1; 16]);
        assert_eq!(m.compare(&bumped), MenuOrder::Less);
        assert_eq!(bumped.compare(&m), MenuOrder::Greater);
        let m1 = base_menu(l(&[1]), &a);
        let m2 = base_menu(l(&[2]), &a);
        assert_eq!(menu_cmp(&m1, &m2), MenuOrder::Incomparable);
    }

    fn menu() -> impl Strategy<Value = Menu> {
        proptest::array::uniform16(-3000i32..3000).prop_map(Menu)
    }

    fn label() -> impl Strategy<Value = Label> {
        (0u8..16).prop_map(Label::from_mask)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn parent_bounded_by_sum(m in menu(), n in menu(), r in label()) {
            let a = CostTable::default();
            let p = parent_menu(&m, &n, r, &a);
            prop_assert!(p.le(&(m + n)));
        }

        #[test]
        fn parent_is_monotone(m in menu(), n in menu(), dm in proptest::array::uniform16(0i32..50), dn in proptest::array::uniform16(0i32..50), r in label()) {
            let a = CostTable::default();
            let m2 = m + Menu(dm);
            let n2 = n + Menu(dn);
            prop_assert!(parent_menu(&m, &n, r, &a).le(&parent_menu(&m2, &n2, r, &a)));
        }

        #[test]
        fn parent_matches_direct_formula(m in menu(), n in menu(), r in label()) {
            let a = CostTable::default();
            let p = parent_menu(&m, &n, r, &a);
            for s in Label::all() {
                let direct = Label::all()
                    .map(|q| m.get(q) + n.get(q) + a.of(r ^ s ^ q) - a.of(r))
                    .min()
                    .unwrap();
                prop_assert_eq!(p.get(s), direct);
            }
        }
    }
}
