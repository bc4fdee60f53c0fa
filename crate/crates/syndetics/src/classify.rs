//! Window-scope largeness predicates and small witness searches.
//!
//! Every predicate here is two-valued *at explicit parameters*: syndeticity
//! asks for a covering gap `N`, thickness for a run length `L`, and so on.
//! Verdicts carry witnesses: a failing syndeticity check names an empty
//! interval, a holding thickness check names a run.  Nothing in this module
//! ever claims the corresponding infinite-set property.

use thiserror::Error;

use crate::window::WindowSet;

/// Outcome of a window-scope predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowVerdict {
    HoldsOnWindow { witness: Option<Witness> },
    FailsOnWindow { witness: Witness },
}

impl WindowVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, WindowVerdict::HoldsOnWindow { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            WindowVerdict::HoldsOnWindow { witness } => witness.as_ref(),
            WindowVerdict::FailsOnWindow { witness } => Some(witness),
        }
    }
}

/// Checkable evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A subinterval `[start, start+len)` disjoint from the set.
    EmptyInterval { start: u32, len: u32 },
    /// A block `[start, start+len)` contained in the set.
    Run { start: u32, len: u32 },
    /// A finite element set (e.g. a violating translate family).
    Elements(Vec<u32>),
    /// A translate family together with the empty interval it produces.
    FamilyGap {
        family: Vec<u32>,
        start: u32,
        len: u32,
    },
}

/// Outcome of a bounded witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult<T> {
    Found(T),
    NotFoundWithinBudget,
}

impl<T> SearchResult<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchResult::Found(t) => Some(t),
            SearchResult::NotFoundWithinBudget => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.found().is_some()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("window too small: parameter {needed} exceeds usable window {have}")]
    WindowTooSmall { needed: u32, have: u32 },
    #[error("parameter must be at least 1")]
    ZeroParameter,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Holds iff every length-`N` subinterval of `[0, E)` meets `A`.
pub fn syndetic_on_window(a: &WindowSet, n: u32) -> Result<WindowVerdict, ClassifyError> {
    if n == 0 {
        return Err(ClassifyError::ZeroParameter);
    }
    let e = a.effective_horizon();
    if n > e {
        return Err(ClassifyError::WindowTooSmall { needed: n, have: e });
    }
    let mut zero_run = 0u32;
    for i in 0..e {
        if a.contains(i) {
            zero_run = 0;
        } else {
            zero_run += 1;
            if zero_run == n {
                return Ok(WindowVerdict::FailsOnWindow {
                    witness: Witness::EmptyInterval {
                        start: i + 1 - n,
                        len: n,
                    },
                });
            }
        }
    }
    Ok(WindowVerdict::HoldsOnWindow { witness: None })
}

/// Holds iff `A` contains a run of at least `L` consecutive members.
pub fn thick_on_window(a: &WindowSet, l: u32) -> Result<WindowVerdict, ClassifyError> {
    if l == 0 {
        return Err(ClassifyError::ZeroParameter);
    }
    let e = a.effective_horizon();
    let mut best = (0u32, 0u32);
    let mut run = 0u32;
    for i in 0..e {
        if a.contains(i) {
            run += 1;
            if run == l {
                return Ok(WindowVerdict::HoldsOnWindow {
                    witness: Some(Witness::Run {
                        start: i + 1 - l,
                        len: l,
                    }),
                });
            }
            if run > best.1 {
                best = (i + 1 - run, run);
            }
        } else {
            run = 0;
        }
    }
    Ok(WindowVerdict::FailsOnWindow {
        witness: Witness::Run {
            start: best.0,
            len: best.1,
        },
    })
}

/// Holds iff `A ∪ (A−1) ∪ ⋯ ∪ (A−N)` contains a run of length `L`.
pub fn piecewise_syndetic_on_window(
    a: &WindowSet,
    n: u32,
    l: u32,
) -> Result<WindowVerdict, ClassifyError> {
    let translates: Vec<u32> = (0..=n).collect();
    let union = a.difference_union(&translates);
    thick_on_window(&union, l)
}

/// Holds iff the set `{t | [t, t+k] ⊆ A}` is `N`-syndetic on its window;
/// witnesses the `F + S ⊆ A` characterization with `F = {0, …, k}`.
pub fn thickly_syndetic_on_window(
    a: &WindowSet,
    k: u32,
    n: u32,
) -> Result<WindowVerdict, ClassifyError> {
    let mut core = a.clone();
    for i in 1..=k {
        core = core.intersection(&a.translate_down(i));
    }
    syndetic_on_window(&core, n)
}

/// Holds iff `A` meets every complete dyadic interval of size `2^k` in `[0, E)`.
pub fn dyadic_cover_check(a: &WindowSet, k: u32) -> Result<WindowVerdict, ClassifyError> {
    let e = a.effective_horizon();
    let size = 1u32
        .checked_shl(k)
        .filter(|&s| s <= e)
        .ok_or(ClassifyError::WindowTooSmall { needed: k, have: e })?;
    let blocks = e / size;
    for b in 0..blocks {
        let start = b * size;
        if (start..start + size).all(|i| !a.contains(i)) {
            return Ok(WindowVerdict::FailsOnWindow {
                witness: Witness::EmptyInterval { start, len: size },
            });
        }
    }
    Ok(WindowVerdict::HoldsOnWindow { witness: None })
}

/// Searches for `x₁ < ⋯ < x_n ≤ bound` with every nonempty subset sum in `A`.
///
/// Tuples are explored in ascending lexicographic order; the first hit wins.
pub fn ip_n_member(a: &WindowSet, n: u32, bound: u32) -> SearchResult<Vec<u32>> {
    assert!(n >= 1);
    let mut chain: Vec<u32> = Vec::with_capacity(n as usize);
    let mut sums: Vec<u32> = Vec::new();
    if extend_ip_chain(a, n, bound, &mut chain, &mut sums) {
        SearchResult::Found(chain)
    } else {
        SearchResult::NotFoundWithinBudget
    }
}

fn extend_ip_chain(
    a: &WindowSet,
    n: u32,
    bound: u32,
    chain: &mut Vec<u32>,
    sums: &mut Vec<u32>,
) -> bool {
    if chain.len() == n as usize {
        return true;
    }
    let start = chain.last().map_or(1, |&x| x + 1);
    let e = a.effective_horizon();
    for x in start..=bound {
        if x >= e || !a.contains(x) {
            continue;
        }
        let mut new_sums: Vec<u32> = Vec::with_capacity(sums.len() + 1);
        new_sums.push(x);
        let mut ok = true;
        for &s in sums.iter() {
            let t = s + x;
            if t >= e || !a.contains(t) {
                ok = false;
                break;
            }
            new_sums.push(t);
        }
        if !ok {
            continue;
        }
        chain.push(x);
        let keep = sums.len();
        sums.extend(new_sums);
        if extend_ip_chain(a, n, bound, chain, sums) {
            return true;
        }
        sums.truncate(keep);
        chain.pop();
    }
    false
}

/// Given that `A` is `(N, L)`-piecewise syndetic on the window, searches for
/// `n ≤ N+1` such that `A ∩ (A−n)` stays piecewise syndetic at the relaxed
/// parameters `N' = N(N+2)`, `L' = max(1, L/(N+2))`.
///
/// The relaxation constants come from the union-bound argument that one of
/// the `N+1` shifted intersections inherits a `1/(N+2)` share of the runs.
pub fn ps_shift_witness(
    a: &WindowSet,
    n: u32,
    l: u32,
) -> Result<SearchResult<u32>, ClassifyError> {
    if !piecewise_syndetic_on_window(a, n, l)?.holds() {
        return Err(ClassifyError::Precondition(format!(
            "set is not ({n}, {l})-piecewise syndetic on the window"
        )));
    }
    let relaxed_n = n * (n + 2);
    let relaxed_l = (l / (n + 2)).max(1);
    for shift in 1..=n + 1 {
        let cut = a.intersection(&a.translate_down(shift));
        if cut.effective_horizon() < relaxed_l.max(1) {
            continue;
        }
        if piecewise_syndetic_on_window(&cut, relaxed_n, relaxed_l)?.holds() {
            return Ok(SearchResult::Found(shift));
        }
    }
    Ok(SearchResult::NotFoundWithinBudget)
}

/// Integer polynomial with zero constant term, coefficients in ascending
/// degree order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    /// `coeffs[d]` is the degree-`d` coefficient; `coeffs[0]` must be zero.
    pub fn new(coeffs: Vec<i64>) -> Result<Self, ClassifyError> {
        if coeffs.first().copied().unwrap_or(0) != 0 {
            return Err(ClassifyError::Precondition(
                "polynomial must have zero constant term".into(),
            ));
        }
        Ok(IntPoly { coeffs })
    }

    /// The monomial `k·y`.
    pub fn linear(k: i64) -> Self {
        IntPoly { coeffs: vec![0, k] }
    }

    pub fn eval(&self, y: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| acc * y + c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

/// Searches for `x, y ≥ 1` with `x, y, x+p₁(y), …, x+p_k(y)` all in `A`.
///
/// Iterates `y` ascending, then `x` ascending; the first hit wins.
pub fn brauer_search(a: &WindowSet, polys: &[IntPoly]) -> SearchResult<(u32, u32)> {
    let e = a.effective_horizon() as i64;
    let members: Vec<u32> = a.members().filter(|&m| m >= 1).collect();
    for &y in &members {
        let offsets: Vec<i64> = polys.iter().map(|p| p.eval(y as i64)).collect();
        for &x in &members {
            let ok = offsets.iter().all(|&d| {
                let t = x as i64 + d;
                (0..e).contains(&t) && a.contains(t as u32)
            });
            if ok {
                return SearchResult::Found((x, y));
            }
        }
    }
    SearchResult::NotFoundWithinBudget
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::window::WindowSet;

    fn evens(e: u32) -> WindowSet {
        WindowSet::from_fn(e, |i| i % 2 == 0)
    }

    #[test]
    fn syndetic_evens() {
        assert!(syndetic_on_window(&evens(64), 2).unwrap().holds());
        let v = syndetic_on_window(&evens(64), 1).unwrap();
        assert!(!v.holds());
        assert_eq!(
            v.witness(),
            Some(&Witness::EmptyInterval { start: 1, len: 1 })
        );
        assert!(matches!(
            syndetic_on_window(&evens(4), 9),
            Err(ClassifyError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn thick_interval_and_evens() {
        let block = WindowSet::from_fn(10, |_| true);
        assert!(thick_on_window(&block, 10).unwrap().holds());
        assert!(!thick_on_window(&evens(64), 2).unwrap().holds());
    }

    #[test]
    fn piecewise_syndetic_examples() {
        assert!(piecewise_syndetic_on_window(&evens(64), 1, 63)
            .unwrap()
            .holds());
        let singleton = WindowSet::from_members(64, &[0]);
        assert!(!piecewise_syndetic_on_window(&singleton, 3, 5)
            .unwrap()
            .holds());
        // evens restricted to the first half window stay piecewise syndetic
        let half = evens(64).intersection(&WindowSet::from_fn(64, |i| i < 32));
        assert!(piecewise_syndetic_on_window(&half, 1, 16).unwrap().holds());
    }

    #[test]
    fn thickly_syndetic_examples() {
        let full = WindowSet::full(64);
        assert!(thickly_syndetic_on_window(&full, 3, 4).unwrap().holds());
        assert!(!thickly_syndetic_on_window(&evens(64), 1, 8).unwrap().holds());
        // the complement of {n ≥ 1 | ν₂(n) ≥ 4} keeps a 15-run between
        // consecutive positive multiples of 16
        let a = WindowSet::from_fn(1 << 12, |i| i == 0 || i % 16 != 0);
        assert!(thickly_syndetic_on_window(&a, 7, 16).unwrap().holds());
    }

    #[test]
    fn dyadic_cover_examples() {
        assert!(dyadic_cover_check(&evens(64), 1).unwrap().holds());
        let odds = evens(64).complement();
        let v = dyadic_cover_check(&odds, 0).unwrap();
        assert!(!v.holds());
        assert_eq!(
            v.witness(),
            Some(&Witness::EmptyInterval { start: 0, len: 1 })
        );
    }

    #[test]
    fn ip_search_examples() {
        let full = WindowSet::full(64);
        let found = ip_n_member(&full, 3, 32);
        let xs = found.found().unwrap();
        assert_eq!(xs.len(), 3);
        // parity blocks IP₂ in the odds
        let odds = evens(64).complement();
        assert_eq!(
            ip_n_member(&odds, 2, 32),
            SearchResult::NotFoundWithinBudget
        );
    }

    #[test]
    fn ps_shift_examples() {
        assert_eq!(
            ps_shift_witness(&evens(256), 1, 32).unwrap(),
            SearchResult::Found(2)
        );
        let full = WindowSet::full(256);
        assert_eq!(
            ps_shift_witness(&full, 1, 32).unwrap(),
            SearchResult::Found(1)
        );
        let singleton = WindowSet::from_members(64, &[0]);
        assert!(ps_shift_witness(&singleton, 1, 8).is_err());
    }

    #[test]
    fn brauer_on_full_and_evens() {
        let full = WindowSet::full(64);
        let p = vec![IntPoly::linear(1)];
        assert_eq!(brauer_search(&full, &p), SearchResult::Found((1, 1)));
        let e = evens(64);
        let (x, y) = *brauer_search(&e, &p).found().unwrap();
        assert!(x % 2 == 0 && y % 2 == 0);
        assert!(e.contains(x + y));
    }

    #[test]
    fn syndetic_thick_duality() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..100 {
            let a = WindowSet::from_fn(97, |_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(99);
                state >> 35 & 1 == 1
            });
            for n in 1..=16 {
                let s = syndetic_on_window(&a, n).unwrap().holds();
                let t = thick_on_window(&a.complement(), n).unwrap().holds();
                assert_eq!(s, !t, "duality at N={n}");
            }
        }
    }

    #[test]
    fn syndetic_monotone_in_n() {
        let a = WindowSet::from_members(40, &[0, 3, 9, 12, 20, 26, 33, 39]);
        let mut prev = false;
        for n in 1..=40 {
            let cur = syndetic_on_window(&a, n).unwrap().holds();
            assert!(!prev || cur, "monotonicity broke at N={n}");
            prev = cur;
        }
    }

    #[test]
    fn dyadic_cover_implies_syndetic_at_doubled_scale() {
        let mut state = 0xdeadbeefcafef00du64;
        for _ in 0..60 {
            let a = WindowSet::from_fn(128, |_| {
                state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                state >> 37 & 3 == 0
            });
            for k in 0..=5u32 {
                if dyadic_cover_check(&a, k).unwrap().holds() {
                    assert!(syndetic_on_window(&a, 1 << (k + 1)).unwrap().holds());
                }
            }
        }
    }

    #[test]
    fn thickly_syndetic_implies_piecewise() {
        let a = WindowSet::from_fn(1 << 10, |i| !(i > 0 && i % 16 == 0));
        let (k, n) = (7u32, 16u32);
        assert!(thickly_syndetic_on_window(&a, k, n).unwrap().holds());
        for l in [2u32, 8, 32, 64] {
            assert!(piecewise_syndetic_on_window(&a, n + k, l).unwrap().holds());
        }
    }
}
