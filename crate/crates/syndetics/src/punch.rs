//! Exact finite-horizon simulation of the shift-punch system.
//!
//! Starting from a set `A ∋ 0` coded on `[0, E)`, the system repeatedly
//! shifts the current 0–1 word left and then *punches* it: the punch at step
//! `n` rewrites the prefix `[2^s]` of the word to match `1_A`, where
//! `s = min(ν_A(word), ν₂(n))` and `ν_A(word)` is the largest `k` with
//! `A ∩ [2^k] ⊆ supp(word)`.  The rewritten block, placed back at the
//! original coordinates, is the dyadic *punch window* `W(n)`.  Bit 0 of the
//! word after the punch at step `n` defines the derived set `B(n)`; the
//! derived set collects what survives all punches.
//!
//! Every step is bit-exact as long as `n + 2^{ν₂(n)} ≤ E`; runs past that
//! bound are refused.  [`verify_trace`] recomputes the words of a finished
//! run through an independent closed-form route (intersections of translates
//! of `A` masked by the recorded windows) and cross-checks the two.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::window::WindowSet;

/// `ν_A(ω)`: the largest `n` with `A ∩ [2ⁿ] ⊆ supp(ω)`, three-valued at
/// finite horizon.
///
/// `MinusInfinity` iff `0 ∈ A` and `ω(0) = 0` (no level holds);
/// `AtLeastHorizonCap` when every level checkable inside the common window
/// holds, so the true value is only bounded below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuValue {
    MinusInfinity,
    Finite(u32),
    AtLeastHorizonCap,
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuValue::MinusInfinity => write!(f, "-inf"),
            NuValue::Finite(v) => write!(f, "{v}"),
            NuValue::AtLeastHorizonCap => write!(f, "cap"),
        }
    }
}

/// A dyadic interval `start + [2^log_size]` with `2^log_size | start`, or
/// the distinguished full window ℕ₀.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DyadicInterval {
    Full,
    Block { start: u32, log_size: u32 },
}

impl DyadicInterval {
    pub fn block(start: u32, log_size: u32) -> DyadicInterval {
        assert!(
            start.is_multiple_of(1u32 << log_size),
            "2^{log_size} must divide {start}"
        );
        DyadicInterval::Block { start, log_size }
    }

    pub fn len(&self) -> Option<u32> {
        match self {
            DyadicInterval::Full => None,
            DyadicInterval::Block { log_size, .. } => Some(1 << log_size),
        }
    }

    pub fn contains(&self, i: u32) -> bool {
        match *self {
            DyadicInterval::Full => true,
            DyadicInterval::Block { start, log_size } => {
                i >= start && i - start < (1 << log_size)
            }
        }
    }
}

/// Per-step record of a shift-punch run (steps are numbered from 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PunchStep {
    pub n: u32,
    pub nu2: u32,
    pub nu_a: NuValue,
    /// `W(n)`; `None` when the punch interval is empty.
    pub window: Option<DyadicInterval>,
    /// Bit 0 of the word after this step's punch; equals membership of `n`
    /// in the derived set.
    pub alpha0: bool,
}

/// Complete record of a shift-punch run.
#[derive(Clone, Debug)]
pub struct PunchTrace {
    /// The input set `A` (with `0 ∈ A`).
    pub input: WindowSet,
    pub steps: Vec<PunchStep>,
    /// The derived set `B` on `[0, steps]`: what survives all punches.
    pub derived_b: WindowSet,
    /// Largest step count for which every punch stays inside the window.
    pub exactness_bound: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PunchError {
    #[error("0 ∉ A: the run would derive the empty set; refusing")]
    ZeroNotInSet,
    #[error("requested {steps} steps but only {bound} are exact at this horizon")]
    StepsBeyondExactness { steps: u32, bound: u32 },
    #[error("punch interval cannot be resolved exactly within the window")]
    ExactnessLost,
    #[error("incompatible windows: both sets must be nonempty on the window")]
    EmptyWindow,
}

/// Punch depth parameter: the `n` of the punch map, possibly unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PunchDepth {
    Level(u32),
    Unbounded,
}

/// Computes `ν_A(ω)` on the common window of `a` and `omega`.
pub fn nu_a(a: &WindowSet, omega: &WindowSet) -> Result<NuValue, PunchError> {
    let e = a.effective_horizon().min(omega.effective_horizon());
    if e == 0 {
        return Err(PunchError::EmptyWindow);
    }
    let cap = e.ilog2();
    let mut lo = 0u32;
    for level in 0..=cap {
        let hi = 1u32 << level;
        if !contained_on(a, omega, lo, hi) {
            return Ok(if level == 0 {
                NuValue::MinusInfinity
            } else {
                NuValue::Finite(level - 1)
            });
        }
        lo = hi;
    }
    Ok(NuValue::AtLeastHorizonCap)
}

// A ∩ [lo, hi) ⊆ supp(ω)?
fn contained_on(a: &WindowSet, omega: &WindowSet, lo: u32, hi: u32) -> bool {
    (lo..hi).all(|i| !a.contains(i) || omega.contains(i))
}

/// Applies the punch map `π_n` for the set `a` to the word `omega`.
///
/// The result equals `1_A` on the punch interval `[2^{min(ν_A(ω), n)}]` and
/// `ω` elsewhere; the interval is empty when `ν_A = −∞`.  Fails when the
/// interval cannot be pinned down inside the window.
pub fn apply_punch(
    a: &WindowSet,
    omega: &WindowSet,
    depth: PunchDepth,
) -> Result<WindowSet, PunchError> {
    let nu = nu_a(a, omega)?;
    let log_size = punch_log_size(nu, depth, a, omega)?;
    Ok(match log_size {
        None => omega.clone(),
        Some(s) => splice_prefix(a, omega, 1u32 << s),
    })
}

// Resolves 2^{min(ν_A, depth)} or fails when the cap hides the answer.
fn punch_log_size(
    nu: NuValue,
    depth: PunchDepth,
    a: &WindowSet,
    omega: &WindowSet,
) -> Result<Option<u32>, PunchError> {
    let cap = a
        .effective_horizon()
        .min(omega.effective_horizon())
        .ilog2();
    match (nu, depth) {
        (NuValue::MinusInfinity, _) => Ok(None),
        (NuValue::Finite(v), PunchDepth::Level(n)) => Ok(Some(v.min(n))),
        (NuValue::Finite(v), PunchDepth::Unbounded) => Ok(Some(v)),
        (NuValue::AtLeastHorizonCap, PunchDepth::Level(n)) => {
            if n <= cap {
                Ok(Some(n))
            } else {
                Err(PunchError::ExactnessLost)
            }
        }
        (NuValue::AtLeastHorizonCap, PunchDepth::Unbounded) => Err(PunchError::ExactnessLost),
    }
}

// Word equal to 1_A on [0, len) and to ω elsewhere, on ω's window.
fn splice_prefix(a: &WindowSet, omega: &WindowSet, len: u32) -> WindowSet {
    debug_assert!(len <= omega.effective_horizon() && len <= a.effective_horizon());
    let mut out = omega.clone();
    for i in 0..len {
        out.assign(i, a.contains(i));
    }
    out
}

/// Largest `S` such that every step `n ≤ S` satisfies `n + 2^{ν₂(n)} ≤ E`.
pub fn exactness_bound(e: u32) -> u32 {
    let mut n = 1u32;
    while n < e && n + (1u32 << n.trailing_zeros()) <= e {
        n += 1;
    }
    n - 1
}

/// Runs the shift-punch system for `steps` steps on the set `a` (which must
/// contain 0) and records the full trace.
pub fn run(a: &WindowSet, steps: u32) -> Result<PunchTrace, PunchError> {
    let e = a.effective_horizon();
    if e == 0 || !a.contains(0) {
        return Err(PunchError::ZeroNotInSet);
    }
    let bound = exactness_bound(e);
    if steps > bound {
        return Err(PunchError::StepsBeyondExactness { steps, bound });
    }

    let mut records = Vec::with_capacity(steps as usize);
    let mut derived = vec![false; steps as usize + 1];
    derived[0] = true;
    let mut word = a.clone(); // the word after step 0's punch is 1_A itself
    for n in 1..=steps {
        let beta = word.translate_down(1);
        let nu2 = n.trailing_zeros();
        let nu = nu_a(a, &beta)?;
        let log_size = punch_log_size(nu, PunchDepth::Level(nu2), a, &beta)?;
        let alpha = match log_size {
            None => beta,
            Some(s) => splice_prefix(a, &beta, 1u32 << s),
        };
        let alpha0 = alpha.contains(0);
        derived[n as usize] = alpha0;
        records.push(PunchStep {
            n,
            nu2,
            nu_a: nu,
            window: log_size.map(|s| DyadicInterval::block(n, s)),
            alpha0,
        });
        word = alpha;
    }

    let derived_b = WindowSet::from_fn(steps + 1, |i| derived[i as usize]);
    debug_assert!(derived_b.is_subset_of(a));
    Ok(PunchTrace {
        input: a.clone(),
        steps: records,
        derived_b,
        exactness_bound: bound,
    })
}

/// `L(ℓ) = {n ≥ 1 | |W(n)| ≥ 2^ℓ}` on `[0, steps]`.
pub fn l_set(trace: &PunchTrace, ell: u32) -> WindowSet {
    let steps = trace.steps.len() as u32;
    assert!(
        steps == 0 || ell <= steps.ilog2(),
        "ℓ = {ell} exceeds log₂(steps)"
    );
    WindowSet::from_fn(steps + 1, |i| {
        i >= 1
            && trace.steps[i as usize - 1]
                .window
                .and_then(|w| w.len())
                .is_some_and(|l| l >= (1 << ell))
    })
}

/// Recomputes the derived set from the record-level closed form
/// `B = ⋂ₙ ((A + n) ∪ (ℕ₀ ∖ W(n)))`, using only `A` and the recorded
/// windows.  Serves as an independent oracle for `derived_b`.
pub fn derived_set_formula(trace: &PunchTrace) -> WindowSet {
    let steps = trace.steps.len() as u32;
    let a = &trace.input;
    let mut bits: Vec<bool> = (0..=steps).map(|i| a.contains(i)).collect(); // the m = 0 term
    for rec in &trace.steps {
        if let Some(DyadicInterval::Block { start, log_size }) = rec.window {
            let end = (start + (1 << log_size)).min(steps + 1);
            for n in start..end {
                bits[n as usize] = bits[n as usize] && a.contains(n - rec.n);
            }
        }
    }
    WindowSet::from_fn(steps + 1, |i| bits[i as usize])
}

/// One verification finding; names the structural property that broke and
/// the indices where it did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    /// Closed-form support of the pre-punch word disagrees with the replay.
    BetaFormulaMismatch { n: u32 },
    /// Closed-form support of the post-punch word disagrees with the replay.
    AlphaFormulaMismatch { n: u32 },
    /// `W(n) − m ≠ W(n−m)` although `m < n ∈ W(m)`.
    WindowFractality { m: u32, n: u32 },
    /// Post-punch words at steps `i` and `m+i` disagree inside `W(m)−m−i`.
    WindowAgreement { m: u32, i: u32 },
    /// The shift recurrence (pre-punch word = shifted previous word) broke.
    ShiftRecurrence { n: u32 },
    /// The punch recurrence (post-punch word = punched pre-punch word) broke.
    PunchRecurrence { n: u32 },
    /// Two recorded punch windows are neither nested nor disjoint.
    WindowNesting { m: u32, n: u32 },
    /// The record-level derived-set formula disagrees with the derived set.
    DerivedSetFormula { n: u32 },
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: u64,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Closed-form support of the pre-punch word at step `n`, computed from `A`
/// and the recorded windows only:
/// `⋂_{m<n} ((A − (n−m)) ∪ (ℕ₀ ∖ (W(m) − n)))` on `[0, E−n)`.
pub fn beta_formula(trace: &PunchTrace, n: u32) -> WindowSet {
    word_formula(trace, n, false)
}

/// Closed-form support of the post-punch word at step `n` (the `m = n` term
/// included).
pub fn alpha_formula(trace: &PunchTrace, n: u32) -> WindowSet {
    word_formula(trace, n, true)
}

fn word_formula(trace: &PunchTrace, n: u32, include_own: bool) -> WindowSet {
    let a = &trace.input;
    let e = a.effective_horizon();
    assert!(n >= 1 && n <= trace.steps.len() as u32);
    let len = e - n;
    let mut acc = a.translate_down(n); // the m = 0 term, W(0) = ℕ₀
    let top = if include_own { n } else { n - 1 };
    for m in 1..=top {
        let rec = &trace.steps[m as usize - 1];
        if let Some(DyadicInterval::Block { start, log_size }) = rec.window {
            let end = start + (1 << log_size);
            if end <= n {
                continue; // window entirely below the shifted origin
            }
            // positions < end−n must match A−(n−m); the rest are free
            let cut = end.saturating_sub(n).min(len);
            let shifted = a.translate_down(n - m);
            acc = WindowSet::from_fn(len, |i| {
                let constrained = i < cut;
                let inherited = acc.contains(i);
                if constrained {
                    inherited && shifted.contains(i)
                } else {
                    inherited
                }
            });
        }
    }
    acc.shrink_to(len)
}

/// Replays and cross-checks a finished run at the sampled steps.
///
/// Four families of assertions are checked per sampled step `n`:
/// closed-form vs. replayed words (pre- and post-punch), window fractality
/// (`W(n)−m = W(n−m)` whenever `m < n ∈ W(m)`), agreement of post-punch
/// words along each sampled window, and the shift/punch step recurrences.
/// On top of those, the nesting/disjointness of all recorded windows and
/// the record-level derived-set formula are checked globally.
pub fn verify_trace(trace: &PunchTrace, samples: &[u32]) -> VerifyReport {
    let steps = trace.steps.len() as u32;
    let a = &trace.input;
    let mut report = VerifyReport::default();
    let mut samples: Vec<u32> = samples
        .iter()
        .copied()
        .filter(|&s| s >= 1 && s <= steps)
        .collect();
    samples.sort_unstable();
    samples.dedup();

    // Which steps need replayed words captured.
    let mut wanted: Vec<u32> = Vec::new();
    for &n in &samples {
        wanted.push(n);
        wanted.push(n - 1);
        if let Some(DyadicInterval::Block { start, log_size }) = trace.steps[n as usize - 1].window
        {
            debug_assert_eq!(start, n);
            let width = 1u32 << log_size;
            for i in 0..width {
                if n + i <= steps {
                    wanted.push(i);
                    wanted.push(n + i);
                }
            }
        }
    }
    wanted.sort_unstable();
    wanted.dedup();

    let captured = replay_words(a, steps, &wanted);

    for &n in &samples {
        let (replay_beta, replay_alpha) = &captured[&n];
        let f_beta = beta_formula(trace, n);
        let f_alpha = alpha_formula(trace, n);
        report.checks += 2;
        if &f_beta != replay_beta {
            report.failures.push(VerifyFailure::BetaFormulaMismatch { n });
        }
        if &f_alpha != replay_alpha {
            report
                .failures
                .push(VerifyFailure::AlphaFormulaMismatch { n });
        }

        // Step recurrences on the closed-form route: the pre-punch word is
        // the shifted previous post-punch word, and the post-punch word is
        // the punched pre-punch word.
        report.checks += 2;
        let prev_alpha = if n == 1 {
            a.clone()
        } else {
            alpha_formula(trace, n - 1)
        };
        if prev_alpha.translate_down(1) != f_beta {
            report.failures.push(VerifyFailure::ShiftRecurrence { n });
        }
        match apply_punch(a, &f_beta, PunchDepth::Level(n.trailing_zeros())) {
            Ok(punched) if punched == f_alpha => {}
            _ => report.failures.push(VerifyFailure::PunchRecurrence { n }),
        }

        // Fractality: whenever m < n lies below n and W(m) ∋ n, the window
        // at n is the window at n−m shifted by m.
        for m in 1..n {
            let wm = trace.steps[m as usize - 1].window;
            if let Some(w) = wm {
                if w.contains(n) {
                    report.checks += 1;
                    let at_n = trace.steps[n as usize - 1].window.and_then(|w| w.len());
                    let at_diff = trace.steps[(n - m) as usize - 1]
                        .window
                        .and_then(|w| w.len());
                    if at_n != at_diff {
                        report.failures.push(VerifyFailure::WindowFractality { m, n });
                    }
                }
            }
        }

        // Agreement along the sampled window: post-punch words at i and
        // m+i agree on the remaining stretch of W(m).
        if let Some(DyadicInterval::Block { log_size, .. }) = trace.steps[n as usize - 1].window {
            let m = n;
            let width = 1u32 << log_size;
            for i in 0..width {
                if m + i > steps {
                    break;
                }
                report.checks += 1;
                let wi = if i == 0 { a } else { &captured[&i].1 };
                let wmi = &captured[&(m + i)].1;
                let stretch = width - i;
                let common = stretch
                    .min(wi.effective_horizon())
                    .min(wmi.effective_horizon());
                if (0..common).any(|j| wi.contains(j) != wmi.contains(j)) {
                    report.failures.push(VerifyFailure::WindowAgreement { m, i });
                }
            }
        }
    }

    // Any two recorded windows are nested or disjoint.  Starts increase
    // with the step index, so a stack sweep suffices.
    let mut open: Vec<(u32, u32, u32)> = Vec::new(); // (start, end, step)
    for rec in &trace.steps {
        if let Some(DyadicInterval::Block { start, log_size }) = rec.window {
            let end = start + (1 << log_size);
            while open.last().is_some_and(|&(_, e, _)| e <= start) {
                open.pop();
            }
            report.checks += 1;
            if let Some(&(_, host_end, host_step)) = open.last() {
                if end > host_end {
                    report.failures.push(VerifyFailure::WindowNesting {
                        m: host_step,
                        n: rec.n,
                    });
                }
            }
            open.push((start, end, rec.n));
        }
    }

    report.checks += 1;
    let formula_b = derived_set_formula(trace);
    if formula_b != trace.derived_b {
        let bad = (0..=steps)
            .find(|&i| formula_b.contains(i) != trace.derived_b.contains(i))
            .unwrap_or(0);
        report
            .failures
            .push(VerifyFailure::DerivedSetFormula { n: bad });
    }

    report
}

// Replays the run from scratch, capturing (pre-punch, post-punch) words at
// the wanted steps.  Step 0 is represented by (full word, 1_A).
fn replay_words(a: &WindowSet, steps: u32, wanted: &[u32]) -> HashMap<u32, (WindowSet, WindowSet)> {
    let mut captured = HashMap::new();
    let want: std::collections::HashSet<u32> = wanted.iter().copied().collect();
    if want.contains(&0) {
        captured.insert(0, (WindowSet::full(a.effective_horizon()), a.clone()));
    }
    let top = wanted.iter().copied().max().unwrap_or(0).min(steps);
    let mut word = a.clone();
    for n in 1..=top {
        let beta = word.translate_down(1);
        let alpha = apply_punch(a, &beta, PunchDepth::Level(n.trailing_zeros()))
            .expect("replay within exactness bound");
        if want.contains(&n) {
            captured.insert(n, (beta.clone(), alpha.clone()));
        }
        word = alpha;
    }
    captured
}

/// Writes the trace as CSV: `n,nu2,nuA,wstart,wlen,alpha0`, one row per step.
pub fn write_csv(trace: &PunchTrace, out: &mut impl std::io::Write) -> std::io::Result<()> {
    writeln!(out, "n,nu2,nuA,wstart,wlen,alpha0")?;
    for rec in &trace.steps {
        let (wstart, wlen) = match rec.window {
            Some(DyadicInterval::Block { start, log_size }) => (start, 1u32 << log_size),
            _ => (rec.n, 0),
        };
        writeln!(
            out,
            "{},{},{},{},{},{}",
            rec.n,
            rec.nu2,
            rec.nu_a,
            wstart,
            wlen,
            rec.alpha0 as u8
        )?;
    }
    Ok(())
}

/// Parses a trace CSV back into step records (the reverse of [`write_csv`]).
pub fn parse_csv(text: &str) -> Result<Vec<PunchStep>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty csv")?;
    if header.trim() != "n,nu2,nuA,wstart,wlen,alpha0" {
        return Err(format!("unexpected header: {header}"));
    }
    let mut steps = Vec::new();
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 6 {
            return Err(format!("bad row: {line}"));
        }
        let parse = |s: &str| s.parse::<u32>().map_err(|_| format!("bad integer {s}"));
        let n = parse(cols[0])?;
        let nu2 = parse(cols[1])?;
        let nu_a = match cols[2] {
            "-inf" => NuValue::MinusInfinity,
            "cap" => NuValue::AtLeastHorizonCap,
            v => NuValue::Finite(parse(v)?),
        };
        let wstart = parse(cols[3])?;
        let wlen = parse(cols[4])?;
        let window = if wlen == 0 {
            None
        } else {
            if !wlen.is_power_of_two() {
                return Err(format!("window length {wlen} is not a power of two"));
            }
            Some(DyadicInterval::block(wstart, wlen.ilog2()))
        };
        let alpha0 = match cols[5] {
            "0" => false,
            "1" => true,
            v => return Err(format!("bad alpha0 {v}")),
        };
        steps.push(PunchStep {
            n,
            nu2,
            nu_a,
            window,
            alpha0,
        });
    }
    Ok(steps)
}
