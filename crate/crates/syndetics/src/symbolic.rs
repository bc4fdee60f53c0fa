//! Pattern return sets over 0–1 words.
//!
//! A [`WindowSet`] doubles as a finite prefix of a point of the full shift:
//! bit `i` is the letter at position `i`.  The functions here compute the
//! times `m ≥ 1` at which a pattern (or the word's own prefix) reappears,
//! and the gap statistics of those return-time sets.

use thiserror::Error;

use crate::window::{GapProfile, WindowSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("pattern position {pos} outside window [0, {e})")]
    PatternPastWindow { pos: u32, e: u32 },
    #[error("depth {depth} too large for window {e} (need depth + 1 ≤ E/2)")]
    DepthTooLarge { depth: u32, e: u32 },
}

/// `{m ≥ 1 | x(m+i) = b for every (i, b) in the pattern}`.
///
/// The effective horizon of the result is `E − max position`; an empty
/// pattern yields the full positive window.
pub fn pattern_return_set(
    x: &WindowSet,
    pattern: &[(u32, bool)],
) -> Result<WindowSet, SymbolicError> {
    let e = x.effective_horizon();
    let mut out = match pattern.iter().map(|&(i, _)| i).max() {
        None => WindowSet::full(e),
        Some(maxpos) => {
            if maxpos >= e {
                return Err(SymbolicError::PatternPastWindow { pos: maxpos, e });
            }
            let mut acc = WindowSet::full(e - maxpos);
            for &(i, b) in pattern {
                let shifted = x.translate_down(i);
                let constraint = if b { shifted } else { shifted.complement() };
                acc = acc.intersection(&constraint);
            }
            acc
        }
    };
    if out.effective_horizon() > 0 {
        out = out.difference(&WindowSet::from_members(out.effective_horizon(), &[0]));
    }
    Ok(out)
}

/// Depth-`L` self-return set: `{m ≥ 1 | x(m+i) = x(i) for 0 ≤ i ≤ L}`.
pub fn recurrence_return_set(x: &WindowSet, depth: u32) -> Result<WindowSet, SymbolicError> {
    let e = x.effective_horizon();
    if depth + 1 > e / 2 {
        return Err(SymbolicError::DepthTooLarge { depth, e });
    }
    let pattern: Vec<(u32, bool)> = (0..=depth).map(|i| (i, x.contains(i))).collect();
    pattern_return_set(x, &pattern)
}

/// Gap statistics of the depth-`L` self-return sets, one entry per requested
/// depth, in input order.
///
/// Return sets live in ℕ, so the statistics are measured on the positive part
/// `[1, E)` of the window; `head` still reports the first return time itself.
pub fn uniform_recurrence_gaps(
    x: &WindowSet,
    depths: &[u32],
) -> Result<Vec<(u32, GapProfile)>, SymbolicError> {
    let mut out = Vec::with_capacity(depths.len());
    for &depth in depths {
        let returns = recurrence_return_set(x, depth)?;
        out.push((depth, positive_part_profile(&returns)));
    }
    Ok(out)
}

/// Gap profile of a set of positive integers, ignoring the index-0 slot of
/// its ℕ₀ window; `head` reports the least member (not its shifted index).
pub fn positive_part_profile(a: &WindowSet) -> GapProfile {
    let shifted = a.translate_down(1);
    let mut p = shifted.gap_profile();
    p.head = p.head.map(|h| h + 1);
    p
}
