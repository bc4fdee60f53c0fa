//! Exact construction of the example sets as window sets.
//!
//! Irrational rotation numbers are represented by continued-fraction
//! convergents whose denominator is at least the square of the horizon;
//! with rational interval endpoints this makes every membership decision
//! exact for the surrogate, and an orbit point landing exactly on an
//! endpoint is an error, never a silent rounding.
//!
//! All generated sets model subsets of ℕ (index 0 is vacant), except
//! [`Variant::ThickSchedule`], whose blocks are caller-supplied.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::window::{WindowSet, MAX_HORIZON};

type Rat = Ratio<i128>;

/// An exact rational, kept in reduced form with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub numerator: i128,
    pub denominator: i128,
}

impl Rational {
    pub fn new(numerator: i128, denominator: i128) -> Self {
        assert!(denominator > 0, "denominator must be positive");
        let g = numerator.gcd(&denominator);
        Rational {
            numerator: numerator / g,
            denominator: denominator / g,
        }
    }

    fn ratio(&self) -> Rat {
        Rat::new(self.numerator, self.denominator)
    }
}

/// Declarative description of one generated example set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub variant: Variant,
    pub horizon: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Variant {
    /// `{n ≥ 1 | x0 + n·alpha mod 1 ∈ ⋃ intervals}` with open rational
    /// intervals inside `[0, 1]`.
    RotationReturns {
        alpha: Rational,
        x0: Rational,
        intervals: Vec<(Rational, Rational)>,
    },
    /// Image of `n ↦ ⌊n·alpha⌋`, `n ≥ 1`, for `alpha > 1`.
    Beatty { alpha: Rational },
    /// `{n ≥ 1 | the 2-adic valuation of n is even}`.
    EvenNu2,
    /// Positions of the 1s in the fixed point of `0 ↦ 0010`, `1 ↦ 1`.
    Chacon,
    /// On the dyadic block `[2^j, 2^{j+1})`, keep the residue class
    /// `block_parity_rule[j mod len] (mod k)` of `kℕ + r`.
    DyadicBlocks {
        k: u32,
        block_parity_rule: Vec<u32>,
    },
    /// `⋃ᵢ ((pᵢℕ + cᵢ) ∩ Hᵢ)` with `Hᵢ` the half-open schedule blocks.
    ResidueThickUnion {
        moduli: Vec<u32>,
        residues: Vec<u32>,
        schedule: Vec<(u32, u32)>,
    },
    /// All nonempty subset sums of the generators.
    FsSet { generators: Vec<u32> },
    /// Union of half-open blocks `[a, b)`.
    ThickSchedule { blocks: Vec<(u32, u32)> },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("orbit point at n = {n} hits an interval endpoint exactly")]
    EndpointHit { n: u32 },
    #[error("precision violation: denominator {denominator} below the required {required}")]
    PrecisionViolation { denominator: i128, required: i128 },
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
}

fn invalid(msg: impl Into<String>) -> GenerateError {
    GenerateError::InvalidSpec(msg.into())
}

/// Evaluates a generator spec to exact membership on `[0, horizon)`.
pub fn generate(spec: &GeneratorSpec) -> Result<WindowSet, GenerateError> {
    let h = spec.horizon;
    if h == 0 || h > MAX_HORIZON {
        return Err(invalid(format!("horizon {h} outside (0, {MAX_HORIZON}]")));
    }
    match &spec.variant {
        Variant::RotationReturns {
            alpha,
            x0,
            intervals,
        } => rotation_returns(alpha, x0, intervals, h),
        Variant::Beatty { alpha } => beatty(alpha, h),
        Variant::EvenNu2 => Ok(WindowSet::from_fn(h, |i| {
            i >= 1 && i.trailing_zeros() % 2 == 0
        })),
        Variant::Chacon => Ok(chacon(h)),
        Variant::DyadicBlocks {
            k,
            block_parity_rule,
        } => dyadic_blocks(*k, block_parity_rule, h),
        Variant::ResidueThickUnion {
            moduli,
            residues,
            schedule,
        } => residue_thick_union(moduli, residues, schedule, h),
        Variant::FsSet { generators } => fs_set(generators, h),
        Variant::ThickSchedule { blocks } => thick_schedule(blocks, h),
    }
}

fn require_precision(alpha: &Rational, h: u32) -> Result<(), GenerateError> {
    let required = (h as i128) * (h as i128);
    if alpha.denominator < required {
        return Err(GenerateError::PrecisionViolation {
            denominator: alpha.denominator,
            required,
        });
    }
    Ok(())
}

fn frac(x: Rat) -> Rat {
    let f = x.fract();
    if f < Rat::from_integer(0) {
        f + Rat::from_integer(1)
    } else {
        f
    }
}

/// `{n ≥ 1 | {x0 + n·alpha} ∈ ⋃ intervals}` by exact rational evaluation.
pub fn rotation_returns(
    alpha: &Rational,
    x0: &Rational,
    intervals: &[(Rational, Rational)],
    h: u32,
) -> Result<WindowSet, GenerateError> {
    require_precision(alpha, h)?;
    let zero = Rat::from_integer(0);
    let one = Rat::from_integer(1);
    for (lo, hi) in intervals {
        let (lo, hi) = (lo.ratio(), hi.ratio());
        if lo < zero || hi > one || lo >= hi {
            return Err(invalid("intervals must satisfy 0 ≤ lo < hi ≤ 1"));
        }
    }
    let step = alpha.ratio();
    let mut point = x0.ratio();
    let mut members: Vec<u32> = Vec::new();
    for n in 1..h {
        point = frac(point + step);
        let mut member = false;
        for (lo, hi) in intervals {
            let (lo, hi) = (lo.ratio(), hi.ratio());
            let hit_low = point == lo;
            let hit_high = if hi == one {
                point == zero
            } else {
                point == hi
            };
            if hit_low || hit_high {
                return Err(GenerateError::EndpointHit { n });
            }
            if point > lo && point < hi {
                member = true;
            }
        }
        if member {
            members.push(n);
        }
    }
    Ok(WindowSet::from_members(h, &members))
}

/// `{⌊n·alpha⌋ | n ≥ 1} ∩ [0, h)` for `alpha > 1`.
pub fn beatty(alpha: &Rational, h: u32) -> Result<WindowSet, GenerateError> {
    require_precision(alpha, h)?;
    let a = alpha.ratio();
    if a <= Rat::from_integer(1) {
        return Err(invalid("Beatty modulus must exceed 1"));
    }
    let mut members: Vec<u32> = Vec::new();
    let mut n: i128 = 1;
    loop {
        let m = (a * Rat::from_integer(n)).floor().to_integer();
        if m >= h as i128 {
            break;
        }
        members.push(m as u32);
        n += 1;
    }
    Ok(WindowSet::from_members(h, &members))
}

/// Prefix of the fixed point of the substitution `0 ↦ 0010`, `1 ↦ 1`,
/// seeded from `0`; returns the set of 1-positions.
pub fn chacon(h: u32) -> WindowSet {
    let mut word: Vec<u8> = vec![0];
    while (word.len() as u32) < h {
        let mut next = Vec::with_capacity(word.len() * 4);
        for &c in &word {
            if c == 0 {
                next.extend_from_slice(&[0, 0, 1, 0]);
            } else {
                next.push(1);
            }
        }
        word = next;
    }
    WindowSet::from_fn(h, |i| word[i as usize] == 1)
}

/// The substitution underlying [`chacon`], exposed for invariance checks.
pub fn chacon_substitute(word: &[u8]) -> Vec<u8> {
    let mut next = Vec::with_capacity(word.len() * 4);
    for &c in word {
        if c == 0 {
            next.extend_from_slice(&[0, 0, 1, 0]);
        } else {
            next.push(1);
        }
    }
    next
}

fn dyadic_blocks(k: u32, rule: &[u32], h: u32) -> Result<WindowSet, GenerateError> {
    if k == 0 {
        return Err(invalid("modulus must be positive"));
    }
    if rule.is_empty() {
        return Err(invalid("block rule must be nonempty"));
    }
    if rule.iter().any(|&r| r >= k) {
        return Err(invalid("residues must lie below the modulus"));
    }
    Ok(WindowSet::from_fn(h, |m| {
        if m == 0 {
            return false;
        }
        let block = m.ilog2();
        let r = rule[(block as usize) % rule.len()];
        m % k == r && m >= k + r
    }))
}

/// The block-parity preset: modulus 2, even blocks keep the evens, odd
/// blocks the odds.
pub fn block_parity_preset(h: u32) -> GeneratorSpec {
    GeneratorSpec {
        variant: Variant::DyadicBlocks {
            k: 2,
            block_parity_rule: vec![0, 1],
        },
        horizon: h,
    }
}

fn residue_thick_union(
    moduli: &[u32],
    residues: &[u32],
    schedule: &[(u32, u32)],
    h: u32,
) -> Result<WindowSet, GenerateError> {
    if moduli.len() != residues.len() || moduli.len() != schedule.len() {
        return Err(invalid("moduli, residues, and schedule must align"));
    }
    if moduli.contains(&0) {
        return Err(invalid("moduli must be positive"));
    }
    if moduli
        .iter()
        .zip(residues.iter())
        .any(|(&p, &c)| c >= p)
    {
        return Err(invalid("residues must lie below their moduli"));
    }
    validate_blocks(schedule)?;
    let mut out = WindowSet::empty(h);
    for ((&p, &c), &(lo, hi)) in moduli.iter().zip(residues).zip(schedule) {
        let piece = WindowSet::from_fn(h, |m| m >= lo && m < hi && m % p == c && m >= p + c);
        out = out.union(&piece);
    }
    Ok(out)
}

fn fs_set(generators: &[u32], h: u32) -> Result<WindowSet, GenerateError> {
    if generators.contains(&0) {
        return Err(invalid("generators must be positive"));
    }
    let mut sums = WindowSet::empty(h);
    for &g in generators {
        if g >= h {
            continue;
        }
        let mut next = sums.union(&sums.translate_up(g).shrink_to(h));
        next = next.union(&WindowSet::from_members(h, &[g]));
        sums = next;
    }
    Ok(sums)
}

fn thick_schedule(blocks: &[(u32, u32)], h: u32) -> Result<WindowSet, GenerateError> {
    validate_blocks(blocks)?;
    Ok(WindowSet::from_fn(h, |m| {
        blocks.iter().any(|&(lo, hi)| m >= lo && m < hi)
    }))
}

fn validate_blocks(blocks: &[(u32, u32)]) -> Result<(), GenerateError> {
    let mut prev_end = 0u32;
    for (i, &(lo, hi)) in blocks.iter().enumerate() {
        if lo >= hi {
            return Err(invalid(format!("block {i} is empty or reversed")));
        }
        if i > 0 && lo < prev_end {
            return Err(invalid(format!("block {i} overlaps its predecessor")));
        }
        prev_end = hi;
    }
    Ok(())
}

/// Convergent `p/q` of the periodic continued fraction `[0; k, k, k, …]`
/// (the surd `(−k + √(k²+4))/2`) with denominator at least `min_den`.
pub fn surd_convergent(k: u32, min_den: i128) -> Rational {
    let k = k as i128;
    let (mut p_prev, mut p) = (1i128, 0i128);
    let (mut q_prev, mut q) = (0i128, 1i128);
    while q < min_den {
        let (np, nq) = (k * p + p_prev, k * q + q_prev);
        p_prev = p;
        q_prev = q;
        p = np;
        q = nq;
    }
    Rational::new(p, q)
}

/// The twenty-set rotation battery: five quadratic-surd convergents crossed
/// with the four open quarter intervals, each at surrogate precision for the
/// horizon.  Names are stable and sorted.
pub fn rotation_battery(h: u32) -> Result<Vec<(String, WindowSet)>, GenerateError> {
    let min_den = (h as i128) * (h as i128);
    let quarters = [
        (Rational::new(0, 1), Rational::new(1, 4)),
        (Rational::new(1, 4), Rational::new(1, 2)),
        (Rational::new(1, 2), Rational::new(3, 4)),
        (Rational::new(3, 4), Rational::new(1, 1)),
    ];
    let mut out = Vec::with_capacity(20);
    for k in 1..=5u32 {
        let alpha = surd_convergent(k, min_den);
        for (j, &(lo, hi)) in quarters.iter().enumerate() {
            let set = rotation_returns(&alpha, &Rational::new(0, 1), &[(lo, hi)], h)?;
            out.push((format!("surd{k}_quarter{j}"), set));
        }
    }
    Ok(out)
}
