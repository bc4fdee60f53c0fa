//! Finite-budget checkers for the translate-intersection and
//! translate-union largeness conditions.
//!
//! The conditions quantify over all finite subsets `F` of a set (or of its
//! complement); at window scope the quantifier is truncated by an explicit
//! [`CssdBudget`]: `F` is drawn from a bounded prefix, `|F|` is capped, and
//! syndeticity is demanded at a fixed covering gap.  Budgets are always
//! caller-supplied; nothing is inferred.
//!
//! The checked sets model subsets of the positive integers carried on ℕ₀
//! windows with index 0 vacant, so every syndetic subcheck here is measured
//! on the positive part `[1, E)` of the window.
//!
//! Enumeration order (and hence every returned witness) is deterministic:
//! the empty set first, then sets grouped by their maximum element in
//! ascending order, each group explored smallest-extension-first.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::classify::{syndetic_on_window, thick_on_window, SearchResult, Witness, WindowVerdict};
use crate::window::WindowSet;

/// Truncation parameters for the finite-`F` quantifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CssdBudget {
    /// Maximum size of the translate family `F`.
    pub f_max: u32,
    /// `F` is drawn from the set's members below this bound.
    pub f_bound: u32,
    /// Required covering gap of every intersection.
    pub gap_bound: u32,
}

impl CssdBudget {
    pub fn new(f_max: u32, f_bound: u32, gap_bound: u32) -> Self {
        assert!(f_max >= 1 && gap_bound >= 1);
        CssdBudget {
            f_max,
            f_bound,
            gap_bound,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FilterCheckError {
    #[error(
        "budget infeasible: intersection window {window} cannot host gap bound {gap_bound} (F = {f:?})"
    )]
    BudgetInfeasible {
        f: Vec<u32>,
        window: u32,
        gap_bound: u32,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

// Syndeticity measured on the positive part [1, E); witness indices are
// reported in the original coordinates.  Err carries (window, gap) when the
// positive window cannot host the gap bound.
fn syndetic_positive(a: &WindowSet, gap: u32) -> Result<WindowVerdict, (u32, u32)> {
    let shifted = a.translate_down(1);
    if gap > shifted.effective_horizon() {
        return Err((shifted.effective_horizon(), gap));
    }
    Ok(
        match syndetic_on_window(&shifted, gap).expect("gap validated") {
            WindowVerdict::HoldsOnWindow { witness } => WindowVerdict::HoldsOnWindow { witness },
            WindowVerdict::FailsOnWindow {
                witness: Witness::EmptyInterval { start, len },
            } => WindowVerdict::FailsOnWindow {
                witness: Witness::EmptyInterval {
                    start: start + 1,
                    len,
                },
            },
            fails => fails,
        },
    )
}

/// Visits subsets of `elements` of size at most `max_size` in a fixed order:
/// `∅` first, then groups by maximum element ascending, each group explored
/// smallest-extension-first.  Stops at the first `Break`.
pub(crate) fn for_each_bounded_subset<R>(
    elements: &[u32],
    max_size: u32,
    visit: &mut impl FnMut(&[u32]) -> ControlFlow<R>,
) -> Option<R> {
    if let ControlFlow::Break(r) = visit(&[]) {
        return Some(r);
    }
    if max_size == 0 {
        return None;
    }
    let mut below: Vec<u32> = Vec::new();
    for top in 0..elements.len() {
        if let Some(r) = grow_group(elements, top, max_size, &mut below, visit) {
            return Some(r);
        }
        debug_assert!(below.is_empty());
    }
    None
}

// Visits {below… , elements[top]} and then all extensions of `below` by
// further elements strictly between the last one taken and the top.
fn grow_group<R>(
    elements: &[u32],
    top: usize,
    max_size: u32,
    below: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]) -> ControlFlow<R>,
) -> Option<R> {
    let mut f: Vec<u32> = below.clone();
    f.push(elements[top]);
    if let ControlFlow::Break(r) = visit(&f) {
        return Some(r);
    }
    if f.len() as u32 >= max_size {
        return None;
    }
    let resume = below
        .last()
        .map_or(0, |&last| elements.iter().position(|&e| e == last).unwrap() + 1);
    for next in resume..top {
        below.push(elements[next]);
        if let Some(r) = grow_group(elements, top, max_size, below, visit) {
            return Some(r);
        }
        below.pop();
    }
    None
}

// B ∩ ⋂_{f∈F}(B−f), or just the intersection when `include_base` is false
// (the empty intersection is the full window by convention).
fn translate_intersection(b: &WindowSet, f: &[u32], include_base: bool) -> WindowSet {
    let horizon = b.effective_horizon() - f.iter().max().copied().unwrap_or(0);
    let mut acc = if include_base {
        b.shrink_to(horizon)
    } else {
        WindowSet::full(horizon)
    };
    for &t in f {
        acc = acc.intersection(&b.translate_down(t));
    }
    acc
}

fn check_translate_condition(
    b: &WindowSet,
    budget: CssdBudget,
    include_base: bool,
    extra: Option<&WindowSet>,
) -> Result<WindowVerdict, FilterCheckError> {
    if b.is_empty_on_window() {
        return Err(FilterCheckError::Precondition(
            "set is empty on the window".into(),
        ));
    }
    let elements: Vec<u32> = b
        .members()
        .take_while(|&m| m < budget.f_bound.min(b.effective_horizon()))
        .collect();
    let outcome = for_each_bounded_subset(&elements, budget.f_max, &mut |f: &[u32]| {
        let mut set = translate_intersection(b, f, include_base);
        if let Some(extra) = extra {
            set = set.intersection(extra);
        }
        match syndetic_positive(&set, budget.gap_bound) {
            Err((window, gap_bound)) => {
                ControlFlow::Break(Err(FilterCheckError::BudgetInfeasible {
                    f: f.to_vec(),
                    window,
                    gap_bound,
                }))
            }
            Ok(WindowVerdict::FailsOnWindow { witness }) => {
                ControlFlow::Break(Ok(WindowVerdict::FailsOnWindow {
                    witness: compose_witness(f, witness),
                }))
            }
            Ok(WindowVerdict::HoldsOnWindow { .. }) => ControlFlow::Continue(()),
        }
    });
    match outcome {
        Some(result) => result,
        None => Ok(WindowVerdict::HoldsOnWindow { witness: None }),
    }
}

fn compose_witness(f: &[u32], gap: Witness) -> Witness {
    match gap {
        Witness::EmptyInterval { start, len } => Witness::FamilyGap {
            family: f.to_vec(),
            start,
            len,
        },
        other => other,
    }
}

/// Checks that for every `F ⊆ B ∩ [0, f_bound)` with `|F| ≤ f_max`, the set
/// `B ∩ ⋂_{f∈F}(B−f)` is syndetic at the budget's gap bound.
///
/// A failing verdict names the violating family and its empty interval;
/// an intersection window too small for the gap bound is an error, never a
/// verdict.
pub fn cssd_check(b: &WindowSet, budget: CssdBudget) -> Result<WindowVerdict, FilterCheckError> {
    check_translate_condition(b, budget, true, None)
}

/// As [`cssd_check`], additionally intersecting with the positive multiples
/// of `m`.
pub fn cssd_upgraded_check(
    b: &WindowSet,
    budget: CssdBudget,
    m: u32,
) -> Result<WindowVerdict, FilterCheckError> {
    assert!(m >= 1);
    let multiples = WindowSet::from_fn(b.effective_horizon(), |i| i >= m && i % m == 0);
    check_translate_condition(b, budget, true, Some(&multiples))
}

/// Checks that for every `F ⊆ B ∩ [0, f_bound)` with `|F| ≤ f_max`, the set
/// `⋂_{f∈F}(B−f)` is syndetic at the budget's gap bound (`B ⊆ A` required).
pub fn ds_check(
    a: &WindowSet,
    b: &WindowSet,
    budget: CssdBudget,
) -> Result<WindowVerdict, FilterCheckError> {
    if !b.is_subset_of(a) {
        return Err(FilterCheckError::Precondition("B ⊄ A".into()));
    }
    check_translate_condition(b, budget, false, None)
}

/// Searches for `F ⊆ (ℕ ∖ B) ∩ [1, f_bound)` with `|F| ≤ f_max` such that
/// `B − F` contains a run of length `l`.  `B` must not be the full window.
pub fn dthick_search(
    b: &WindowSet,
    f_max: u32,
    f_bound: u32,
    l: u32,
) -> Result<SearchResult<Vec<u32>>, FilterCheckError> {
    if b.complement().is_empty_on_window() {
        return Err(FilterCheckError::Precondition(
            "B is the full window".into(),
        ));
    }
    Ok(translate_union_search(b, f_max, f_bound, l, false))
}

/// Searches for `F ⊆ (ℕ ∖ B) ∩ [1, f_bound)` with `|F| ≤ f_max` such that
/// `B ∪ (B − F)` contains a run of length `l`.
pub fn dct_search(b: &WindowSet, f_max: u32, f_bound: u32, l: u32) -> SearchResult<Vec<u32>> {
    translate_union_search(b, f_max, f_bound, l, true)
}

fn translate_union_search(
    b: &WindowSet,
    f_max: u32,
    f_bound: u32,
    l: u32,
    include_base: bool,
) -> SearchResult<Vec<u32>> {
    let candidates: Vec<u32> = b
        .complement()
        .members()
        .filter(|&m| m >= 1)
        .take_while(|&m| m < f_bound.min(b.effective_horizon()))
        .collect();

    // The target only grows with F, so if the union over every candidate
    // fails there is nothing to enumerate.
    if !thick_passes(&assemble(b, &candidates, include_base), l) {
        return SearchResult::NotFoundWithinBudget;
    }

    let hit = for_each_bounded_subset(&candidates, f_max, &mut |f: &[u32]| {
        if thick_passes(&assemble(b, f, include_base), l) {
            ControlFlow::Break(f.to_vec())
        } else {
            ControlFlow::Continue(())
        }
    });
    match hit {
        Some(f) => SearchResult::Found(f),
        None => SearchResult::NotFoundWithinBudget,
    }
}

fn assemble(b: &WindowSet, f: &[u32], include_base: bool) -> WindowSet {
    let union = b.difference_union(f);
    if include_base {
        b.union(&union)
    } else {
        union
    }
}

fn thick_passes(a: &WindowSet, l: u32) -> bool {
    a.effective_horizon() >= l && thick_on_window(a, l).expect("l ≥ 1").holds()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq11_set(e: u32) -> WindowSet {
        // evens on even dyadic blocks, odds on odd dyadic blocks
        WindowSet::from_fn(e, |i| {
            if i == 0 {
                return false;
            }
            let residue = i.ilog2() % 2;
            i % 2 == residue && i >= 2 + residue
        })
    }

    #[test]
    fn eq11_prefix_matches_hand_evaluation() {
        let a = eq11_set(32);
        assert_eq!(
            a.members().collect::<Vec<_>>(),
            vec![3, 4, 6, 9, 11, 13, 15, 16, 18, 20, 22, 24, 26, 28, 30]
        );
    }

    #[test]
    fn subset_enumeration_order() {
        let mut seen: Vec<Vec<u32>> = Vec::new();
        for_each_bounded_subset::<()>(&[2, 5, 9], 2, &mut |f| {
            seen.push(f.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(
            seen,
            vec![
                vec![],
                vec![2],
                vec![5],
                vec![2, 5],
                vec![9],
                vec![2, 9],
                vec![5, 9],
            ]
        );
    }

    #[test]
    fn subset_enumeration_respects_size_cap() {
        let mut count = 0u32;
        for_each_bounded_subset::<()>(&[1, 2, 3, 4], 3, &mut |f| {
            assert!(f.len() <= 3);
            count += 1;
            ControlFlow::Continue(())
        });
        // all subsets of a 4-element set of size ≤ 3
        assert_eq!(count, 15);
    }

    #[test]
    fn cssd_holds_for_positive_evens() {
        let b = WindowSet::from_fn(256, |i| i >= 2 && i % 2 == 0);
        assert!(cssd_check(&b, CssdBudget::new(2, 16, 2)).unwrap().holds());
    }

    #[test]
    fn cssd_fails_on_the_block_parity_set() {
        let b = eq11_set(1 << 12);
        let v = cssd_check(&b, CssdBudget::new(2, 64, 64)).unwrap();
        match v {
            WindowVerdict::FailsOnWindow {
                witness: Witness::FamilyGap { family, len, .. },
            } => {
                // the first violation in enumeration order: a translate by
                // the odd member 3 already empties whole parity blocks
                assert_eq!(family, vec![3]);
                assert_eq!(len, 64);
            }
            other => panic!("expected a family gap witness, got {other:?}"),
        }
        // the mixed-parity argument: every even/odd translate pair from the
        // set leaves a gap of at least 64
        let evens: Vec<u32> = b.members().take_while(|&m| m < 64).filter(|m| m % 2 == 0).collect();
        let odds: Vec<u32> = b.members().take_while(|&m| m < 64).filter(|m| m % 2 == 1).collect();
        assert!(!evens.is_empty() && !odds.is_empty());
        for &b0 in &evens {
            for &b1 in &odds {
                let cut = b.translate_down(b0).intersection(&b.translate_down(b1));
                let longest_gap = cut
                    .gap_profile()
                    .covering_gap
                    .map_or(cut.effective_horizon(), |g| g - 1);
                assert!(longest_gap >= 64, "pair ({b0}, {b1}) has gap {longest_gap}");
            }
        }
    }

    #[test]
    fn cssd_upgraded_on_evens() {
        let b = WindowSet::from_fn(256, |i| i >= 2 && i % 2 == 0);
        assert!(cssd_upgraded_check(&b, CssdBudget::new(2, 16, 4), 2)
            .unwrap()
            .holds());
        // intersecting with 3ℕ leaves 6ℕ, syndetic at gap 6 in the positives
        assert!(cssd_upgraded_check(&b, CssdBudget::new(2, 16, 6), 3)
            .unwrap()
            .holds());
        assert!(!cssd_upgraded_check(&b, CssdBudget::new(2, 16, 5), 3)
            .unwrap()
            .holds());
    }

    #[test]
    fn ds_check_on_odds_and_singleton() {
        let odds = WindowSet::from_fn(128, |i| i % 2 == 1);
        assert!(ds_check(&odds, &odds, CssdBudget::new(2, 16, 2))
            .unwrap()
            .holds());
        let singleton = WindowSet::from_members(64, &[0]);
        let v = ds_check(&singleton, &singleton, CssdBudget::new(1, 8, 4)).unwrap();
        assert!(!v.holds());
    }

    #[test]
    fn budget_starvation_is_an_error() {
        let b = WindowSet::from_fn(32, |i| i % 2 == 0);
        let r = cssd_check(&b, CssdBudget::new(2, 31, 16));
        assert!(matches!(r, Err(FilterCheckError::BudgetInfeasible { .. })));
    }

    #[test]
    fn dthick_parity_obstruction() {
        let b = WindowSet::from_fn(256, |i| i >= 2 && i % 2 == 0);
        // every candidate f is odd, so B−F stays inside the odds
        assert_eq!(
            dthick_search(&b, 8, 64, 8).unwrap(),
            SearchResult::NotFoundWithinBudget
        );
    }

    #[test]
    fn dthick_finds_the_obvious_hole() {
        let b = WindowSet::from_fn(64, |i| i != 5);
        let r = dthick_search(&b, 2, 32, 58).unwrap();
        assert_eq!(r, SearchResult::Found(vec![5]));
    }

    #[test]
    fn dct_fills_evens_with_a_single_shift() {
        let b = WindowSet::from_fn(256, |i| i >= 2 && i % 2 == 0);
        assert_eq!(dct_search(&b, 4, 64, 64), SearchResult::Found(vec![1]));
    }

    #[test]
    fn dct_full_window_needs_nothing() {
        let b = WindowSet::full(64);
        assert_eq!(dct_search(&b, 4, 16, 32), SearchResult::Found(vec![]));
    }

    #[test]
    fn dthick_and_dct_on_the_block_parity_sets() {
        let b = eq11_set(1 << 14).complement();
        let found = dthick_search(&b, 4, 64, 64).unwrap();
        let f = found.found().expect("block-parity complement is fillable");
        assert!(thick_passes(&b.difference_union(f), 64));
        // the block-parity set itself passes the union form
        let a = eq11_set(1 << 14);
        assert!(dct_search(&a, 4, 64, 64).is_found());
    }

    #[test]
    fn cssd_implies_ds_at_same_budget() {
        let sets = [
            WindowSet::from_fn(512, |i| i >= 2 && i % 2 == 0),
            WindowSet::from_fn(512, |i| i % 3 == 1),
            WindowSet::from_fn(512, |i| i % 4 != 2 && i > 0),
        ];
        let budget = CssdBudget::new(2, 12, 8);
        for b in &sets {
            if cssd_check(b, budget).unwrap().holds() {
                assert!(ds_check(b, b, budget).unwrap().holds());
            }
        }
    }

    #[test]
    fn cssd_is_stable_under_dilation() {
        // a passing set keeps passing after dilation by k with the budget
        // scaled by k, for k ≤ 4; 50 random passing inputs drawn from
        // random residue-class unions (noise sets never pass the gap bound)
        let budget = CssdBudget::new(2, 12, 8);
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(11);
            (state >> 33) as u32
        };
        let mut passing = 0u32;
        let mut attempts = 0u32;
        while passing < 50 && attempts < 4000 {
            attempts += 1;
            let modulus = 2 + next() % 3;
            let picks = next();
            let residues: Vec<u32> = (0..modulus).filter(|r| picks >> r & 1 == 1).collect();
            if residues.is_empty() {
                continue;
            }
            let b = WindowSet::from_fn(512, |i| residues.contains(&(i % modulus)));
            if !matches!(cssd_check(&b, budget), Ok(v) if v.holds()) {
                continue;
            }
            passing += 1;
            for k in 2..=4u32 {
                let scaled =
                    CssdBudget::new(budget.f_max, k * budget.f_bound, k * budget.gap_bound);
                let v = cssd_check(&b.dilate(k), scaled).unwrap();
                assert!(v.holds(), "dilation by {k} broke a passing set");
            }
        }
        assert_eq!(passing, 50, "not enough passing samples ({attempts} tries)");
    }

    #[test]
    fn dthick_witness_refutes_ds_on_the_complement() {
        // a translate family F that makes B−F thick exposes, on the
        // complement side, a family whose intersection of translates has an
        // L-gap, so the ds condition must fail there at that budget
        let b = eq11_set(1 << 12).complement();
        let l = 64;
        let f = match dthick_search(&b, 4, 64, l).unwrap() {
            SearchResult::Found(f) => f,
            r => panic!("expected a witness, got {r:?}"),
        };
        let host = eq11_set(1 << 12);
        let f_max = f.len() as u32;
        let f_bound = f.iter().max().unwrap() + 1;
        let v = ds_check(&host, &host, CssdBudget::new(f_max, f_bound, l)).unwrap();
        assert!(!v.holds());
    }
}
