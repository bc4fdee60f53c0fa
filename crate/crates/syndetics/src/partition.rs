//! Constructive two-way splitters that preserve largeness.

use thiserror::Error;

use crate::generate::{rotation_returns, GenerateError, Rational};
use crate::window::WindowSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("input set is empty on the window")]
    EmptyInput,
    #[error("input has no run of length {needed}")]
    NotThickEnough { needed: u32 },
    #[error("chunk chain exhausted at level {level}")]
    ChainExhausted { level: u32 },
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

/// Splits a nonempty set into two by alternating its members in increasing
/// order.  Both halves cover the input disjointly and their covering gaps at
/// most double.
pub fn split_syndetic(a: &WindowSet) -> Result<(WindowSet, WindowSet), PartitionError> {
    if a.is_empty_on_window() {
        return Err(PartitionError::EmptyInput);
    }
    let e = a.effective_horizon();
    let mut first = WindowSet::empty(e);
    let mut second = WindowSet::empty(e);
    for (i, m) in a.members().enumerate() {
        if i % 2 == 0 {
            first = first.union(&WindowSet::from_members(e, &[m]));
        } else {
            second = second.union(&WindowSet::from_members(e, &[m]));
        }
    }
    Ok((first, second))
}

/// Greedy chunk splitter against a caller-supplied chain of witness finders.
///
/// For levels `1, …, levels`, `find(a, level, cursor)` must locate the end
/// (exclusive) of the earliest chunk of `a` at or past `cursor` witnessing
/// membership in the level's dual class; chunks go alternately to the two
/// halves and the remainder joins the first.  Fails with `ChainExhausted`
/// when a level cannot be served.
pub fn split_greedy_by_chain(
    a: &WindowSet,
    levels: u32,
    find: impl Fn(&WindowSet, u32, u32) -> Option<u32>,
) -> Result<(WindowSet, WindowSet), PartitionError> {
    let e = a.effective_horizon();
    let mut cursor = 0u32;
    let mut cuts: Vec<(u32, bool)> = Vec::new(); // (chunk end, goes to first half)
    for level in 1..=levels {
        match find(a, level, cursor) {
            None => return Err(PartitionError::ChainExhausted { level }),
            Some(end) => {
                cuts.push((end, level % 2 == 1));
                cursor = end;
            }
        }
    }
    let mut first = WindowSet::empty(e);
    let mut second = WindowSet::empty(e);
    let mut start = 0u32;
    for &(end, to_first) in &cuts {
        let chunk = WindowSet::from_fn(e, |i| i >= start && i < end && a.contains(i));
        if to_first {
            first = first.union(&chunk);
        } else {
            second = second.union(&chunk);
        }
        start = end;
    }
    // remainder to the first half
    let rest = WindowSet::from_fn(e, |i| i >= cursor && a.contains(i));
    first = first.union(&rest);
    Ok((first, second))
}

// Earliest s ≥ cursor with [s, s+level) ⊆ a, returning the consume-end.
fn find_run_chunk(a: &WindowSet, level: u32, cursor: u32) -> Option<u32> {
    let e = a.effective_horizon();
    let mut run = 0u32;
    for i in cursor..e {
        if a.contains(i) {
            run += 1;
            if run == level {
                return Some(i + 1);
            }
        } else {
            run = 0;
        }
    }
    None
}

/// Splits a set with a run of length `l_max` into halves that both contain
/// runs of every length up to `⌊l_max/2⌋`.
///
/// The greedy schedule serves run lengths `1, …, l_max` alternately from the
/// left; when the window cannot host the whole schedule (the degenerate
/// single-run case), the earliest maximal run of length ≥ `l_max` is split
/// at its midpoint instead.
pub fn split_thick_greedy(
    a: &WindowSet,
    l_max: u32,
) -> Result<(WindowSet, WindowSet), PartitionError> {
    assert!(l_max >= 1);
    let e = a.effective_horizon();
    let host = find_run_chunk(a, l_max, 0).ok_or(PartitionError::NotThickEnough {
        needed: l_max,
    })?;
    match split_greedy_by_chain(a, l_max, find_run_chunk) {
        Ok(halves) => Ok(halves),
        Err(PartitionError::ChainExhausted { .. }) => {
            // midpoint split of the earliest run of length ≥ l_max
            let start = host - l_max;
            let mut end = host;
            while end < e && a.contains(end) {
                end += 1;
            }
            let mid = start + (end - start).div_ceil(2);
            let first = WindowSet::from_fn(e, |i| i < mid && a.contains(i));
            let second = WindowSet::from_fn(e, |i| i >= mid && a.contains(i));
            Ok((first, second))
        }
        Err(other) => Err(other),
    }
}

/// The two rotation return-time sets over the open halves `(0, 1/2)` and
/// `(1/2, 1)`: disjoint sets covering the positive window exactly.
pub fn rotation_partition_pair(
    alpha: &Rational,
    horizon: u32,
) -> Result<(WindowSet, WindowSet), PartitionError> {
    let zero = Rational::new(0, 1);
    let half = Rational::new(1, 2);
    let one = Rational::new(1, 1);
    let first = rotation_returns(alpha, &zero, &[(zero, half)], horizon)?;
    let second = rotation_returns(alpha, &zero, &[(half, one)], horizon)?;
    debug_assert!(first.intersection(&second).is_empty_on_window());
    debug_assert_eq!(first.union(&second).count(), horizon - 1);
    Ok((first, second))
}
