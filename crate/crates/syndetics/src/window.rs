//! Dense finite-window integer sets and their gap statistics.
//!
//! A [`WindowSet`] represents a subset of ℕ₀ whose membership is known
//! exactly on `[0, E)` for an *effective horizon* `E`.  The *coded horizon*
//! `H ≥ E` records the window the set was originally produced on; every
//! operation that loses tail information shrinks `E` and never fabricates
//! membership beyond it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Hard cap on horizons; dense bit storage only, no run-length compression.
pub const MAX_HORIZON: u32 = 1 << 22;

const WORD: u32 = 64;

/// A subset of ℕ₀ known exactly on `[0, effective_horizon)`.
///
/// Equality compares the effective window and its bits; the coded horizon is
/// provenance metadata and does not participate.
#[derive(Clone, Eq)]
pub struct WindowSet {
    coded: u32,
    len: u32,
    words: Vec<u64>,
}

impl PartialEq for WindowSet {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.words == other.words
    }
}

fn words_for(len: u32) -> usize {
    (len as usize).div_ceil(WORD as usize)
}

impl WindowSet {
    /// Empty set on the window `[0, h)`.
    pub fn empty(h: u32) -> Self {
        assert!(h <= MAX_HORIZON, "horizon {h} exceeds cap {MAX_HORIZON}");
        WindowSet {
            coded: h,
            len: h,
            words: vec![0; words_for(h)],
        }
    }

    /// The full window `[0, h)`.
    pub fn full(h: u32) -> Self {
        let mut s = WindowSet::empty(h);
        for w in &mut s.words {
            *w = !0;
        }
        s.trim();
        s
    }

    /// Builds a set from a membership predicate evaluated on `[0, h)`.
    pub fn from_fn(h: u32, mut f: impl FnMut(u32) -> bool) -> Self {
        let mut s = WindowSet::empty(h);
        for i in 0..h {
            if f(i) {
                s.set(i);
            }
        }
        s
    }

    /// Builds a set from explicit members; panics on members outside `[0, h)`.
    pub fn from_members(h: u32, members: &[u32]) -> Self {
        let mut s = WindowSet::empty(h);
        for &m in members {
            assert!(m < h, "member {m} outside window [0, {h})");
            s.set(m);
        }
        s
    }

    fn set(&mut self, i: u32) {
        debug_assert!(i < self.len);
        self.words[(i / WORD) as usize] |= 1u64 << (i % WORD);
    }

    pub(crate) fn assign(&mut self, i: u32, value: bool) {
        debug_assert!(i < self.len);
        let (w, b) = ((i / WORD) as usize, i % WORD);
        if value {
            self.words[w] |= 1u64 << b;
        } else {
            self.words[w] &= !(1u64 << b);
        }
    }

    /// Membership test; `i` must lie inside the effective window.
    pub fn contains(&self, i: u32) -> bool {
        assert!(
            i < self.len,
            "index {i} outside effective window [0, {})",
            self.len
        );
        self.words[(i / WORD) as usize] >> (i % WORD) & 1 == 1
    }

    /// Effective horizon `E`: membership is defined only on `[0, E)`.
    pub fn effective_horizon(&self) -> u32 {
        self.len
    }

    /// Coded horizon `H ≥ E` of the window the set was produced on.
    pub fn coded_horizon(&self) -> u32 {
        self.coded
    }

    pub fn is_empty_on_window(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn first_member(&self) -> Option<u32> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k as u32 * WORD + w.trailing_zeros());
            }
        }
        None
    }

    pub fn last_member(&self) -> Option<u32> {
        for (k, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(k as u32 * WORD + (WORD - 1 - w.leading_zeros()));
            }
        }
        None
    }

    /// Ascending iterator over members.
    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let base = k as u32 * WORD;
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros();
                    rest &= rest - 1;
                    Some(base + b)
                }
            })
        })
    }

    // Zero out storage bits at or past the effective horizon.
    fn trim(&mut self) {
        let tail = self.len % WORD;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        let n = words_for(self.len);
        self.words.truncate(n);
    }

    /// `A − n = {m | m + n ∈ A}`; the effective horizon shrinks by `n`.
    pub fn translate_down(&self, n: u32) -> WindowSet {
        let len = self.len.saturating_sub(n);
        let mut out = WindowSet {
            coded: self.coded,
            len,
            words: vec![0; words_for(len)],
        };
        let (wshift, bshift) = ((n / WORD) as usize, n % WORD);
        for k in 0..out.words.len() {
            let lo = self.words.get(k + wshift).copied().unwrap_or(0);
            out.words[k] = if bshift == 0 {
                lo
            } else {
                let hi = self.words.get(k + wshift + 1).copied().unwrap_or(0);
                lo >> bshift | hi << (WORD - bshift)
            };
        }
        out.trim();
        out
    }

    /// `A + n = {a + n | a ∈ A}`; indices in `[0, n)` are definite non-members.
    pub fn translate_up(&self, n: u32) -> WindowSet {
        let len = self.len + n;
        assert!(len <= MAX_HORIZON, "translate_up past horizon cap");
        let mut out = WindowSet {
            coded: self.coded + n,
            len,
            words: vec![0; words_for(len)],
        };
        let (wshift, bshift) = ((n / WORD) as usize, n % WORD);
        for (k, &w) in self.words.iter().enumerate() {
            if bshift == 0 {
                out.words[k + wshift] |= w;
            } else {
                out.words[k + wshift] |= w << bshift;
                if k + wshift + 1 < out.words.len() {
                    out.words[k + wshift + 1] |= w >> (WORD - bshift);
                }
            }
        }
        out.trim();
        out
    }

    /// `kA = {ka | a ∈ A}` on the window `[0, k(E−1)+1)`.
    pub fn dilate(&self, k: u32) -> WindowSet {
        assert!(k >= 1);
        if self.len == 0 {
            return WindowSet {
                coded: 0,
                len: 0,
                words: vec![],
            };
        }
        let len = k * (self.len - 1) + 1;
        assert!(len <= MAX_HORIZON, "dilate past horizon cap");
        let mut out = WindowSet {
            coded: k * (self.coded.max(1) - 1) + 1,
            len,
            words: vec![0; words_for(len)],
        };
        for m in self.members() {
            out.set(k * m);
        }
        out
    }

    /// `A / k = {m | mk ∈ A}` on the window `[0, ⌊(E−1)/k⌋+1)`.
    pub fn contract(&self, k: u32) -> WindowSet {
        assert!(k >= 1);
        if self.len == 0 {
            return WindowSet {
                coded: 0,
                len: 0,
                words: vec![],
            };
        }
        let len = (self.len - 1) / k + 1;
        let coded = (self.coded.max(1) - 1) / k + 1;
        let mut out = WindowSet {
            coded,
            len,
            words: vec![0; words_for(len)],
        };
        for m in 0..len {
            if self.contains(m * k) {
                out.set(m);
            }
        }
        out
    }

    fn zip(&self, other: &WindowSet, f: impl Fn(u64, u64) -> u64) -> WindowSet {
        let len = self.len.min(other.len);
        let mut out = WindowSet {
            coded: self.coded.min(other.coded),
            len,
            words: vec![0; words_for(len)],
        };
        for k in 0..out.words.len() {
            out.words[k] = f(self.words[k], other.words[k]);
        }
        out.trim();
        out
    }

    pub fn union(&self, other: &WindowSet) -> WindowSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &WindowSet) -> WindowSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &WindowSet) -> WindowSet {
        self.zip(other, |a, b| a & !b)
    }

    /// Complement relative to the effective window.
    pub fn complement(&self) -> WindowSet {
        let mut out = WindowSet {
            coded: self.coded,
            len: self.len,
            words: self.words.iter().map(|&w| !w).collect(),
        };
        out.trim();
        out
    }

    /// `A − F = ⋃_{f∈F} (A − f)`; the empty union is the empty set.
    pub fn difference_union(&self, f: &[u32]) -> WindowSet {
        match f.iter().max() {
            None => WindowSet::empty(self.len),
            Some(&fmax) => {
                let mut acc = self.translate_down(fmax);
                for &t in f {
                    if t != fmax {
                        acc = acc.union(&self.translate_down(t).shrink_to(acc.len));
                    }
                }
                acc
            }
        }
    }

    /// Restricts the effective horizon to `min(E, e)`.
    pub fn shrink_to(&self, e: u32) -> WindowSet {
        if e >= self.len {
            return self.clone();
        }
        let mut out = WindowSet {
            coded: self.coded,
            len: e,
            words: self.words[..words_for(e)].to_vec(),
        };
        out.trim();
        out
    }

    /// `A ∪ {0}` on the same window; panics on an empty window.
    pub fn with_zero(&self) -> WindowSet {
        assert!(self.len >= 1, "empty window has no index 0");
        let mut out = self.clone();
        out.words[0] |= 1;
        out
    }

    pub fn is_subset_of(&self, other: &WindowSet) -> bool {
        let e = self.len.min(other.len);
        let probe = self.shrink_to(e);
        let host = other.shrink_to(e);
        probe
            .words
            .iter()
            .zip(host.words.iter())
            .all(|(&a, &b)| a & !b == 0)
            && self.members().all(|m| m < e)
    }

    /// Exact gap and run statistics on `[0, E)`.
    pub fn gap_profile(&self) -> GapProfile {
        let first = self.first_member();
        let last = self.last_member();
        let mut longest_run = 0u32;
        let mut longest_gap = 0u32;
        let mut run = 0u32;
        let mut gap = 0u32;
        for i in 0..self.len {
            if self.contains(i) {
                run += 1;
                longest_gap = longest_gap.max(gap);
                gap = 0;
            } else {
                gap += 1;
                longest_run = longest_run.max(run);
                run = 0;
            }
        }
        longest_run = longest_run.max(run);
        longest_gap = longest_gap.max(gap);
        GapProfile {
            covering_gap: first.map(|_| longest_gap + 1),
            longest_run,
            head: first,
            tail_slack: last.map(|m| self.len - 1 - m),
        }
    }
}

impl fmt::Debug for WindowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WindowSet(H={}, E={}, |A|={})",
            self.coded,
            self.len,
            self.count()
        )
    }
}

/// Gap and run statistics of a window set.
///
/// `covering_gap` is the smallest `N` such that every length-`N` subinterval
/// of `[0, E)` meets the set; it is absent exactly when the set is empty on
/// the window.  `longest_run` is the length of the longest block of
/// consecutive members (`0` iff empty).  `head` is the least member and
/// `tail_slack` is `E − 1 − max(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapProfile {
    pub covering_gap: Option<u32>,
    pub longest_run: u32,
    pub head: Option<u32>,
    pub tail_slack: Option<u32>,
}

/// Errors from the set text format parser.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SetTextError {
    #[error("missing header line `H=<h> E=<e>`")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("effective horizon {e} exceeds coded horizon {h}")]
    EffectivePastCoded { h: u32, e: u32 },
    #[error("horizon {0} exceeds cap {MAX_HORIZON}")]
    HorizonTooLarge(u32),
    #[error("missing body line `members: …` or `runs: …`")]
    MissingBody,
    #[error("unrecognized body line: {0}")]
    BadBody(String),
    #[error("bad integer `{0}`")]
    BadInteger(String),
    #[error("index {index} outside effective window [0, {e})")]
    OutOfWindow { index: u32, e: u32 },
    #[error("members/runs not strictly increasing at `{0}`")]
    NotIncreasing(String),
    #[error("bad run `{0}` (want `a-b` with a ≤ b)")]
    BadRun(String),
}

/// Set text format.
///
/// Line 1: `H=<coded_horizon> E=<effective_horizon>`.
/// Line 2: either `members: n1 n2 …` (strictly increasing) or
/// `runs: a1-b1 a2-b2 …` (inclusive, disjoint, increasing).
impl fmt::Display for WindowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "H={} E={}", self.coded, self.len)?;
        write!(f, "runs:")?;
        let mut run_start: Option<u32> = None;
        let mut prev = 0u32;
        for m in self.members() {
            match run_start {
                None => run_start = Some(m),
                Some(s) => {
                    if m != prev + 1 {
                        write!(f, " {}-{}", s, prev)?;
                        run_start = Some(m);
                    }
                }
            }
            prev = m;
        }
        if let Some(s) = run_start {
            write!(f, " {}-{}", s, prev)?;
        }
        Ok(())
    }
}

fn parse_u32(tok: &str) -> Result<u32, SetTextError> {
    tok.parse::<u32>()
        .map_err(|_| SetTextError::BadInteger(tok.to_string()))
}

impl FromStr for WindowSet {
    type Err = SetTextError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or(SetTextError::MissingHeader)?;
        let mut h: Option<u32> = None;
        let mut e: Option<u32> = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("H=") {
                h = Some(parse_u32(v)?);
            } else if let Some(v) = tok.strip_prefix("E=") {
                e = Some(parse_u32(v)?);
            } else {
                return Err(SetTextError::BadHeader(header.to_string()));
            }
        }
        let (h, e) = match (h, e) {
            (Some(h), Some(e)) => (h, e),
            _ => return Err(SetTextError::BadHeader(header.to_string())),
        };
        if e > h {
            return Err(SetTextError::EffectivePastCoded { h, e });
        }
        if h > MAX_HORIZON {
            return Err(SetTextError::HorizonTooLarge(h));
        }

        let body = lines.next().ok_or(SetTextError::MissingBody)?;
        let mut out = WindowSet {
            coded: h,
            len: e,
            words: vec![0; words_for(e)],
        };
        if let Some(rest) = body.strip_prefix("members:") {
            let mut prev: Option<u32> = None;
            for tok in rest.split_whitespace() {
                let m = parse_u32(tok)?;
                if m >= e {
                    return Err(SetTextError::OutOfWindow { index: m, e });
                }
                if prev.is_some_and(|p| m <= p) {
                    return Err(SetTextError::NotIncreasing(tok.to_string()));
                }
                prev = Some(m);
                out.set(m);
            }
        } else if let Some(rest) = body.strip_prefix("runs:") {
            let mut prev_end: Option<u32> = None;
            for tok in rest.split_whitespace() {
                let (a, b) = tok
                    .split_once('-')
                    .ok_or_else(|| SetTextError::BadRun(tok.to_string()))?;
                let (a, b) = (parse_u32(a)?, parse_u32(b)?);
                if a > b {
                    return Err(SetTextError::BadRun(tok.to_string()));
                }
                if b >= e {
                    return Err(SetTextError::OutOfWindow { index: b, e });
                }
                if prev_end.is_some_and(|p| a <= p) {
                    return Err(SetTextError::NotIncreasing(tok.to_string()));
                }
                prev_end = Some(b);
                for i in a..=b {
                    out.set(i);
                }
            }
        } else {
            return Err(SetTextError::BadBody(body.to_string()));
        }
        Ok(out)
    }
}
