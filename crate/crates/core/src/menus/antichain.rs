use std::fmt::{self, Write as _};

use super::{Menu, MenuError, MenuOrder};
use crate::labeling::{CostTable, Label};

/// Which root labels a level of the search ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootMode {
    /// Every label of weight at most 2.
    Full,
    /// A single fixed root label.
    Fixed(Label),
}

impl RootMode {
    pub fn labels(&self) -> Vec<Label> {
        match self {
            RootMode::Full => Label::light().collect(),
            RootMode::Fixed(r) => vec![*r],
        }
    }
}

impl fmt::Display for RootMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootMode::Full => f.write_str("full"),
            RootMode::Fixed(r) => {
                let items: Vec<String> = (1..=4).filter(|&i| r.contains(i)).map(|i| i.to_string()).collect();
                write!(f, "root-fixed-{{{}}}", items.join(","))
            }
        }
    }
}

/// An antichain of menus under `≼`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MenuSet {
    pub depth: usize,
    pub mode: RootMode,
    menus: Vec<Menu>,
    capacity: usize,
}

impl MenuSet {
    pub const DEFAULT_CAPACITY: usize = 20_000;

    pub fn new(depth: usize, mode: RootMode, capacity: usize) -> Self {
        MenuSet {
            depth,
            mode,
            menus: Vec::new(),
            capacity,
        }
    }

    /// Wraps menus that already form an antichain.
    pub(crate) fn from_antichain(depth: usize, mode: RootMode, capacity: usize, menus: Vec<Menu>) -> Result<Self, MenuError> {
        if menus.len() > capacity {
            return Err(MenuError::CapacityExceeded {
                depth,
                size: menus.len(),
                capacity,
            });
        }
        let mut set = MenuSet {
            depth,
            mode,
            menus,
            capacity,
        };
        set.canonicalize();
        Ok(set)
    }

    pub fn menus(&self) -> &[Menu] {
        &self.menus
    }

    pub fn len(&self) -> usize {
        self.menus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.menus.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Inserts `m` unless some member dominates it; removes the members it
    /// dominates. Returns whether `m` was added.
    pub fn insert(&mut self, m: Menu) -> Result<bool, MenuError> {
        if !insert_menu(&mut self.menus, m) {
            return Ok(false);
        }
        if self.menus.len() > self.capacity {
            return Err(MenuError::CapacityExceeded {
                depth: self.depth,
                size: self.menus.len(),
                capacity: self.capacity,
            });
        }
        Ok(true)
    }

    /// Some member `W` with `m ≼ W`.
    pub fn dominator(&self, m: &Menu) -> Option<&Menu> {
        self.menus.iter().find(|w| m.le(w))
    }

    pub fn is_antichain(&self) -> bool {
        self.menus.iter().enumerate().all(|(i, a)| {
            self.menus
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || a.compare(b) == MenuOrder::Incomparable)
        })
    }

    /// Sorts lexicographically so equal sets compare and print identically.
    pub fn canonicalize(&mut self) {
        self.menus.sort_unstable();
    }

    pub fn retain(&mut self, f: impl FnMut(&Menu) -> bool) {
        self.menus.retain(f);
    }

    /// Header line, then one menu per line (16 integers in mask order).
    pub fn dump(&self, cost: &CostTable) -> String {
        let mut sorted = self.menus.clone();
        sorted.sort_unstable();
        let mut out = String::with_capacity(80 * sorted.len() + 80);
        let _ = writeln!(
            out,
            "# depth={} mode={} cost={} count={}",
            self.depth,
            self.mode,
            cost,
            sorted.len()
        );
        for m in &sorted {
            let _ = writeln!(out, "{m}");
        }
        out
    }

    /// Reads a [`dump`](Self::dump); the header's count must match.
    pub fn parse_dump(text: &str) -> Result<(MenuSet, CostTable), MenuError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(MenuError::Parse {
            line: 1,
            msg: "empty dump".into(),
        })?;
        let bad = |line: usize, msg: String| MenuError::Parse { line, msg };
        let mut depth = None;
        let mut mode = None;
        let mut cost = None;
        let mut count = None;
        for tok in header.trim_start_matches('#').split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad(1, format!("bad header field {tok:?}")))?;
            match k {
                "depth" => depth = v.parse::<usize>().ok(),
                "count" => count = v.parse::<usize>().ok(),
                "cost" => cost = v.parse::<CostTable>().ok(),
                "mode" => {
                    mode = if v == "full" {
                        Some(RootMode::Full)
                    } else {
                        v.strip_prefix("root-fixed-{")
                            .and_then(|r| r.strip_suffix('}'))
                            .and_then(|r| {
                                let classes: Option<Vec<usize>> = if r.is_empty() {
                                    Some(vec![])
                                } else {
                                    r.split(',').map(|c| c.parse().ok()).collect()
                                };
                                classes.filter(|c| c.iter().all(|i| (1..=4).contains(i)))
                            })
                            .map(|c| RootMode::Fixed(Label::from_classes(&c)))
                    }
                }
                _ => return Err(bad(1, format!("unknown header field {k:?}"))),
            }
        }
        let (Some(depth), Some(mode), Some(cost), Some(count)) = (depth, mode, cost, count) else {
            return Err(bad(1, "header needs depth, mode, cost and count".into()));
        };
        let mut menus = Vec::with_capacity(count);
        for (i, l) in lines {
            if l.trim().is_empty() {
                continue;
            }
            let vals: Vec<i32> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(i + 1, format!("not an integer: {t:?}"))))
                .collect::<Result<_, _>>()?;
            let arr: [i32; 16] = vals
                .try_into()
                .map_err(|_| bad(i + 1, "expected 16 integers".into()))?;
            menus.push(Menu(arr));
        }
        if menus.len() != count {
            return Err(bad(1, format!("header count {count} but {} menus", menus.len())));
        }
        let set = MenuSet::from_antichain(depth, mode, count.max(MenuSet::DEFAULT_CAPACITY), menus)?;
        Ok((set, cost))
    }
}

/// Antichain insertion with swap-with-last deletion. Returns whether `m`
/// was added. Member order is not preserved.
pub(crate) fn insert_menu(menus: &mut Vec<Menu>, m: Menu) -> bool {
    let mut i = 0;
    while i < menus.len() {
        match m.compare(&menus[i]) {
            MenuOrder::Less | MenuOrder::Equal => {
                // dominators tend to reject many later candidates
                menus.swap(i / 2, i);
                return false;
            }
            MenuOrder::Greater => {
                menus.swap_remove(i);
            }
            MenuOrder::Incomparable => i += 1,
        }
    }
    menus.push(m);
    true
}

/// Maximal elements of `menus` under `≼`, deduplicated and sorted.
///
/// Candidates are visited by decreasing coordinate sum: a strict dominator
/// always has a larger sum, so nothing kept is ever removed.
pub fn maximal_elements(mut menus: Vec<Menu>) -> Vec<Menu> {
    menus.sort_unstable_by(|a, b| b.sum().cmp(&a.sum()).then_with(|| a.cmp(b)));
    menus.dedup();
    let mut kept: Vec<Menu> = Vec::new();
    for m in menus {
        if !kept.iter().any(|k| m.le(k)) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    kept
}

/// Maximal elements of the union of two antichains.
pub(crate) fn merge_antichains(a: Vec<Menu>, b: Vec<Menu>) -> Vec<Menu> {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out: Vec<Menu> = large
        .iter()
        .filter(|x| !small.iter().any(|y| x.compare(y) == MenuOrder::Less))
        .copied()
        .collect();
    out.extend(small.into_iter().filter(|y| !large.iter().any(|x| y.le(x))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::menus::base_menu;
    use proptest::prelude::*;

    #[test]
    fn insert_examples() {
        let a = CostTable::default();
        let mut w = MenuSet::new(1, RootMode::Full, 10);
        let m1 = base_menu(Label::from_classes(&[1]), &a);
        assert!(w.insert(m1).unwrap());
        assert!(!w.insert(m1).unwrap());
        assert_eq!(w.menus(), &[m1]);
        let m2 = base_menu(Label::from_classes(&[2]), &a);
        assert!(w.insert(m2).unwrap());
        assert_eq!(w.len(), 2);
        let mut top = [0; 16];
        for k in 0..16 {
            top[k] = m1.0[k].max(m2.0[k]);
        }
        assert!(w.insert(Menu(top)).unwrap());
        assert_eq!(w.menus(), &[Menu(top)]);
    }

    #[test]
    fn capacity_guard() {
        let mut w = MenuSet::new(3, RootMode::Full, 1);
        let mut a = [0; 16];
        a[0] = 1;
        let mut b = [0; 16];
        b[1] = 1;
        w.insert(Menu(a)).unwrap();
        assert!(matches!(w.insert(Menu(b)), Err(MenuError::CapacityExceeded { .. })));
    }

    #[test]
    fn dump_round_trip() {
        let a = CostTable::default();
        let mut w = MenuSet::new(1, RootMode::Fixed(Label::from_classes(&[1, 2])), 20);
        for r in Label::light() {
            w.insert(base_menu(r, &a)).unwrap();
        }
        w.canonicalize();
        let text = w.dump(&a);
        let (back, cost) = MenuSet::parse_dump(&text).unwrap();
        assert_eq!(cost, a);
        assert_eq!(back.menus(), w.menus());
        assert_eq!(back.mode, w.mode);
        assert_eq!(back.dump(&a), text);
    }

    fn menus() -> impl Strategy<Value = Vec<Menu>> {
        proptest::collection::vec(proptest::array::uniform16(-3i32..3).prop_map(Menu), 0..60)
    }

    proptest! {
        #[test]
        fn insertion_order_is_irrelevant(ms in menus()) {
            let mut w = Vec::new();
            for &m in &ms {
                insert_menu(&mut w, m);
            }
            w.sort_unstable();
            let mut rev = Vec::new();
            for &m in ms.iter().rev() {
                insert_menu(&mut rev, m);
            }
            rev.sort_unstable();
            prop_assert_eq!(&w, &rev);
            prop_assert_eq!(&w, &maximal_elements(ms.clone()));
            // every input has a dominator, and the result is an antichain
            for m in &ms {
                prop_assert!(w.iter().any(|k| m.le(k)));
            }
            for (i, a) in w.iter().enumerate() {
                for (j, b) in w.iter().enumerate() {
                    prop_assert!(i == j || a.compare(b) == MenuOrder::Incomparable);
                }
            }
        }

        #[test]
        fn merge_equals_maximal_of_union(xs in menus(), ys in menus()) {
            let a = maximal_elements(xs.clone());
            let b = maximal_elements(ys.clone());
            let mut merged = merge_antichains(a, b);
            merged.sort_unstable();
            let mut all = xs;
            all.extend(ys);
            prop_assert_eq!(merged, maximal_elements(all));
        }
    }
}
