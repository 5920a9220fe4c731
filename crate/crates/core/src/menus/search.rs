//! Level-by-level computation of the worst menus and the final pairing test.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::antichain::{insert_menu, merge_antichains};
use super::{base_menu, EdgeTransform, Menu, MenuError, MenuSet, RootMode};
use crate::labeling::{CostTable, Label};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub cost: CostTable,
    pub capacity: usize,
    /// Drop menus with `M(∅) < 0` after every level.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cost: CostTable::default(),
            capacity: MenuSet::DEFAULT_CAPACITY,
            prune: false,
        }
    }
}

/// Removes the menus whose tree already improves with the root held fixed.
pub fn prune_nonneg(set: &mut MenuSet) {
    set.retain(|m| m.0[0] >= 0);
}

fn check_bound(set: &MenuSet, cost: &CostTable) -> Result<(), MenuError> {
    let bound = (1i64 << (set.depth - 1)) * cost.a(4) as i64;
    for m in set.menus() {
        if m.max_abs() as i64 > bound {
            return Err(MenuError::BoundViolated {
                depth: set.depth,
                value: m.max_abs(),
                bound,
            });
        }
    }
    Ok(())
}

fn finish(depth: usize, mode: RootMode, menus: Vec<Menu>, cfg: &SearchConfig) -> Result<MenuSet, MenuError> {
    let mut set = MenuSet::from_antichain(depth, mode, cfg.capacity, menus)?;
    check_bound(&set, &cfg.cost)?;
    if cfg.prune {
        prune_nonneg(&mut set);
    }
    Ok(set)
}

/// `W_1`, or its root-fixed variant.
pub fn level_one(mode: RootMode, cfg: &SearchConfig) -> Result<MenuSet, MenuError> {
    let mut menus = Vec::new();
    for r in mode.labels() {
        insert_menu(&mut menus, base_menu(r, &cfg.cost));
    }
    finish(1, mode, menus, cfg)
}

/// Maximal menus of `Parent_menu(M, N, R)` over unordered pairs from `prev`
/// and root labels from `mode`.
pub fn next_level(prev: &MenuSet, mode: RootMode, cfg: &SearchConfig) -> Result<MenuSet, MenuError> {
    let labels = mode.labels();
    let ms = prev.menus();
    let cm = cfg.cost.by_mask();
    let cost = &cfg.cost;
    let menus = (0..ms.len())
        .into_par_iter()
        .fold(Vec::new, |mut acc, p| {
            for q in p..ms.len() {
                let t = EdgeTransform::new(&(ms[p] + ms[q]), &cm);
                for &r in &labels {
                    insert_menu(&mut acc, t.with_label(r, cost));
                }
            }
            acc
        })
        .reduce(Vec::new, merge_antichains);
    finish(prev.depth + 1, mode, menus, cfg)
}

/// `W_1, ..., W_depth` with every light root label.
pub fn compute_levels(depth: usize, cfg: &SearchConfig) -> Result<Vec<MenuSet>, MenuError> {
    if depth == 0 {
        return Err(MenuError::Config("depth must be at least 1".into()));
    }
    let mut levels = vec![level_one(RootMode::Full, cfg)?];
    while levels.len() < depth {
        let next = next_level(levels.last().unwrap(), RootMode::Full, cfg)?;
        levels.push(next);
    }
    Ok(levels)
}

/// `W_depth` for the given root mode.
pub fn compute_w(depth: usize, mode: RootMode, cfg: &SearchConfig) -> Result<MenuSet, MenuError> {
    if depth == 1 {
        return level_one(mode, cfg);
    }
    let levels = compute_levels(depth - 1, cfg)?;
    next_level(levels.last().unwrap(), mode, cfg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub w1: Menu,
    pub w2: Menu,
    pub w3: Menu,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinalOutcome {
    pub counterexample: Option<Counterexample>,
    /// Number of triples checked.
    pub triples: u64,
    /// For each `S`, how many triples had `S` as the smallest coordinate
    /// with a negative total.
    pub histogram: [u64; 16],
}

impl FinalOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Bit `S` is set when `a(S) + b(S) < 0`.
#[inline]
fn negative_mask(a: &Menu, b: &Menu) -> u32 {
    let mut m = 0u32;
    for k in 0..16 {
        m |= ((a.0[k].wrapping_add(b.0[k]) as u32) >> 31) << k;
    }
    m
}

/// Checks that every `W1 + W2 + W3` with `W1 ∈ first` and `W2, W3 ∈ second`
/// has a negative coordinate. On failure the lexicographically smallest
/// violating triple (with `W2 <= W3`) is returned.
pub fn final_test(first: &MenuSet, second: &MenuSet) -> FinalOutcome {
    let ms = second.menus();
    let (histogram, failure) = first
        .menus()
        .par_iter()
        .map(|w1| {
            let mut hist = [0u64; 16];
            let mut fail: Option<(Menu, Menu, Menu)> = None;
            for (i, w2) in ms.iter().enumerate() {
                let a = *w1 + *w2;
                for w3 in &ms[i..] {
                    let mask = negative_mask(&a, w3);
                    if mask == 0 {
                        let (x, y) = if w2 <= w3 { (*w2, *w3) } else { (*w3, *w2) };
                        let t = (*w1, x, y);
                        if fail.is_none_or(|f| t < f) {
                            fail = Some(t);
                        }
                    } else {
                        hist[mask.trailing_zeros() as usize] += 1;
                    }
                }
            }
            (hist, fail)
        })
        .reduce(
            || ([0u64; 16], None),
            |(mut h, f), (h2, f2)| {
                for k in 0..16 {
                    h[k] += h2[k];
                }
                let f = match (f, f2) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                (h, f)
            },
        );
    let n = ms.len() as u64;
    FinalOutcome {
        counterexample: failure.map(|(w1, w2, w3)| Counterexample { w1, w2, w3 }),
        triples: first.len() as u64 * n * (n + 1) / 2,
        histogram,
    }
}

#[derive(Clone, Debug)]
pub struct ClaimConfig {
    /// Depth of the branch through the edge itself.
    pub d1: usize,
    /// Depth of the two side branches.
    pub d2: usize,
    pub search: SearchConfig,
    /// Also rerun with the opposite pruning setting and compare verdicts.
    pub cross_check: bool,
}

impl Default for ClaimConfig {
    fn default() -> Self {
        ClaimConfig {
            d1: 9,
            d2: 8,
            search: SearchConfig::default(),
            cross_check: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClaimReport {
    /// `W_1 .. W_max(d1-1, d2)` in order.
    pub levels: Vec<MenuSet>,
    /// The root-fixed level `W'_d1`.
    pub root_fixed: MenuSet,
    pub outcome: FinalOutcome,
    pub elapsed: Duration,
    /// Verdict of the rerun with the other pruning setting, if requested.
    pub cross_check: Option<bool>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.outcome.passed() && self.cross_check.is_none_or(|v| v)
    }
}

/// The label `{1, 2}` used for the root-fixed branch.
pub fn fixed_root_label() -> Label {
    Label::from_classes(&[1, 2])
}

/// Verifies that every light labeling of `T'_d1 ∪ 2T_d2` glued at the root
/// (with the edge labeled `{1,2}`) has an improving internal swap.
pub fn verify_claim(cfg: &ClaimConfig) -> Result<ClaimReport, MenuError> {
    let report = run_claim(cfg.d1, cfg.d2, &cfg.search)?;
    if !cfg.cross_check {
        return Ok(report);
    }
    let other = SearchConfig {
        prune: !cfg.search.prune,
        ..cfg.search.clone()
    };
    let again = run_claim(cfg.d1, cfg.d2, &other)?;
    let agree = again.outcome.passed() == report.outcome.passed();
    Ok(ClaimReport {
        cross_check: Some(agree),
        elapsed: report.elapsed + again.elapsed,
        ..report
    })
}

fn run_claim(d1: usize, d2: usize, cfg: &SearchConfig) -> Result<ClaimReport, MenuError> {
    if d1 == 0 || d2 == 0 {
        return Err(MenuError::Config("depths must be at least 1".into()));
    }
    let start = Instant::now();
    let top = (d1 - 1).max(d2);
    let levels = compute_levels(top, cfg)?;
    let fixed = RootMode::Fixed(fixed_root_label());
    let root_fixed = if d1 == 1 {
        level_one(fixed, cfg)?
    } else {
        next_level(&levels[d1 - 2], fixed, cfg)?
    };
    let outcome = final_test(&root_fixed, &levels[d2 - 1]);
    Ok(ClaimReport {
        levels,
        root_fixed,
        outcome,
        elapsed: start.elapsed(),
        cross_check: None,
    })
}
