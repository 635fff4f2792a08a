//! Riemann–Hurwitz arithmetic.
//!
//! For a group of order `N` acting on a surface of genus `σ` with signature
//! `(h; n_1, …, n_r)`:
//!
//! ```text
//! σ − 1 = N · (h − 1 + r/2 − ½ Σ 1/n_j)
//! ```
//!
//! Everything here is exact. The period searches invert the formula: for a
//! fixed skeleton `(h, r)` and order `N` the periods must satisfy
//! `Σ 1/n_j = 2(h − 1) + r − 2(σ − 1)/N`.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::divisors;
use crate::rational::Rational;

/// Signature `(h; n_1, …, n_r)` of an action: quotient genus and branching periods.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbifoldSignature {
    pub h: u64,
    pub periods: Vec<u64>,
}

impl OrbifoldSignature {
    /// Panics if any period is below 2.
    pub fn new(h: u64, periods: Vec<u64>) -> Self {
        assert!(periods.iter().all(|&n| n >= 2), "periods must be >= 2");
        OrbifoldSignature { h, periods }
    }

    pub fn try_new(h: u64, periods: Vec<u64>) -> Result<Self> {
        if let Some(&n) = periods.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidParameter(format!("period {n} is below 2")));
        }
        Ok(OrbifoldSignature { h, periods })
    }

    pub fn r(&self) -> usize {
        self.periods.len()
    }

    pub fn skeleton(&self) -> SkeletalSignature {
        SkeletalSignature::new(self.h, self.periods.len() as u64)
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.h)?;
        for (i, n) in self.periods.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str(")")
    }
}

/// Parse error for the `(h;n1,n2,...)` literal, with the byte offset of the fault.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("signature parse error at position {position}: {message}")]
pub struct SignatureParseError {
    pub position: usize,
    pub message: String,
}

impl std::str::FromStr for OrbifoldSignature {
    type Err = SignatureParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = |position: usize, message: &str| SignatureParseError {
            position,
            message: message.to_string(),
        };
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let number = |pos: &mut usize| -> std::result::Result<u64, SignatureParseError> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return Err(err(start, "expected a non-negative integer"));
            }
            s[start..*pos]
                .parse()
                .map_err(|_| err(start, "integer out of range"))
        };

        skip_ws(&mut pos);
        if bytes.get(pos) != Some(&b'(') {
            return Err(err(pos, "expected '('"));
        }
        pos += 1;
        skip_ws(&mut pos);
        let h = number(&mut pos)?;
        skip_ws(&mut pos);
        let mut periods = Vec::new();
        match bytes.get(pos) {
            Some(b';') => {
                pos += 1;
                skip_ws(&mut pos);
                if bytes.get(pos) != Some(&b')') {
                    loop {
                        skip_ws(&mut pos);
                        let at = pos;
                        let n = number(&mut pos)?;
                        if n < 2 {
                            return Err(err(at, "periods must be at least 2"));
                        }
                        periods.push(n);
                        skip_ws(&mut pos);
                        match bytes.get(pos) {
                            Some(b',') => pos += 1,
                            Some(b')') => break,
                            _ => return Err(err(pos, "expected ',' or ')'")),
                        }
                    }
                }
            }
            Some(b')') => {}
            _ => return Err(err(pos, "expected ';' or ')'")),
        }
        // at ')'
        pos += 1;
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(err(pos, "trailing characters"));
        }
        Ok(OrbifoldSignature { h, periods })
    }
}

/// The pair `(h, r)`: quotient genus and number of branch points.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct SkeletalSignature {
    pub h: u64,
    pub r: u64,
}

impl SkeletalSignature {
    pub const fn new(h: u64, r: u64) -> Self {
        SkeletalSignature { h, r }
    }
}

impl fmt::Display for SkeletalSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, self.r)
    }
}

/// Outcome of an exhaustive search.
///
/// `NotExists` is only produced when the search space was provably exhausted;
/// running out of budget yields `Unknown`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum SearchVerdict<T> {
    Exists(T),
    NotExists,
    Unknown,
}

impl<T> SearchVerdict<T> {
    pub fn is_exists(&self) -> bool {
        matches!(self, SearchVerdict::Exists(_))
    }

    pub fn is_not_exists(&self) -> bool {
        matches!(self, SearchVerdict::NotExists)
    }

    pub fn witness(&self) -> Option<&T> {
        match self {
            SearchVerdict::Exists(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchVerdict<U> {
        match self {
            SearchVerdict::Exists(w) => SearchVerdict::Exists(f(w)),
            SearchVerdict::NotExists => SearchVerdict::NotExists,
            SearchVerdict::Unknown => SearchVerdict::Unknown,
        }
    }

    /// Combines verdicts of disjoint sub-searches: `Exists` dominates, then
    /// `Unknown`, and `NotExists` only if both sides are `NotExists`.
    pub fn or(self, other: SearchVerdict<T>) -> SearchVerdict<T> {
        match (self, other) {
            (SearchVerdict::Exists(w), _) | (_, SearchVerdict::Exists(w)) => {
                SearchVerdict::Exists(w)
            }
            (SearchVerdict::NotExists, SearchVerdict::NotExists) => SearchVerdict::NotExists,
            _ => SearchVerdict::Unknown,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchVerdict::Exists(_) => "exists",
            SearchVerdict::NotExists => "not_exists",
            SearchVerdict::Unknown => "unknown",
        }
    }
}

pub(crate) fn check_genus(sigma: u64) -> Result<()> {
    if sigma < 2 {
        return Err(Error::GenusTooSmall(sigma));
    }
    Ok(())
}

pub(crate) fn check_order(order: u64) -> Result<()> {
    if order < 2 {
        return Err(Error::OrderTooSmall(order));
    }
    Ok(())
}

/// Genus of the covering surface: `1 + N(h − 1 + r/2 − ½ Σ 1/n_j)`.
///
/// The result may be non-integral or below 2; the caller decides what that means.
pub fn rh_genus(order: u64, sig: &OrbifoldSignature) -> Rational {
    let half = Rational::new(1, 2);
    let reciprocal_sum: Rational = sig
        .periods
        .iter()
        .map(|&n| Rational::new(1, n as i128))
        .sum();
    let bracket = Rational::from_int(sig.h as i128 - 1) + half * (sig.r() as i128)
        - half * reciprocal_sum;
    Rational::ONE + bracket * (order as i128)
}

pub fn rh_holds(sigma: u64, order: u64, sig: &OrbifoldSignature) -> bool {
    rh_genus(order, sig) == sigma as i128
}

/// The value `Σ 1/n_j` that the periods of an order-`N` action with skeleton
/// `(h, r)` on genus `σ` must attain.
pub fn required_reciprocal_sum(sigma: u64, skel: SkeletalSignature, order: u64) -> Rational {
    Rational::from_int(2 * (skel.h as i128 - 1) + skel.r as i128)
        - Rational::new(2 * (sigma as i128 - 1), order as i128)
}

/// Which periods the search may draw on for a group of order `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodDomain {
    /// Divisors of `N` that are at least 2. A period is the order of a group
    /// element, so it divides `|G|`.
    #[default]
    Divisors,
    /// Every integer in `[2, N]`: the cruder bound that defines the triangles.
    Interval,
}

impl PeriodDomain {
    pub fn candidates(self, order: u64) -> Vec<u64> {
        match self {
            PeriodDomain::Divisors => divisors(order).into_iter().filter(|&d| d >= 2).collect(),
            PeriodDomain::Interval => (2..=order).collect(),
        }
    }
}

/// Direction in which the period search walks the candidate list.
///
/// Results are reported in non-decreasing order either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Enumeration {
    #[default]
    Ascending,
    Descending,
}

/// Walks every multiset of `count` values from `candidates` (sorted, distinct)
/// whose reciprocals sum to `target`, calling `visit` with each one in
/// non-decreasing order.
///
/// Branches are cut as soon as the remaining target leaves the interval
/// `[k / max, k / min]` spanned by the values still allowed.
pub fn for_each_period_multiset<B>(
    candidates: &[u64],
    count: usize,
    target: Rational,
    enumeration: Enumeration,
    mut visit: impl FnMut(&[u64]) -> ControlFlow<B>,
) -> Option<B> {
    if count == 0 {
        return if target.is_zero() {
            match visit(&[]) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            }
        } else {
            None
        };
    }
    if candidates.is_empty() {
        return None;
    }
    let mut stack = Vec::with_capacity(count);
    let walker = PeriodWalker {
        candidates,
        enumeration,
    };
    match walker.descend(0, candidates.len() - 1, count, target, &mut stack, &mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

struct PeriodWalker<'a> {
    candidates: &'a [u64],
    enumeration: Enumeration,
}

impl PeriodWalker<'_> {
    fn value(&self, i: usize) -> Rational {
        Rational::from_int(self.candidates[i] as i128)
    }

    fn feasible(&self, lo: usize, hi: usize, k: usize, target: Rational) -> bool {
        let k = k as i128;
        // k / max <= target <= k / min
        target * self.value(hi) >= k && target * self.value(lo) <= k
    }

    fn descend<B>(
        &self,
        lo: usize,
        hi: usize,
        k: usize,
        target: Rational,
        stack: &mut Vec<u64>,
        visit: &mut impl FnMut(&[u64]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if !self.feasible(lo, hi, k, target) {
            return ControlFlow::Continue(());
        }
        if k == 1 {
            let recip = target.recip();
            if let Some(n) = recip.to_integer() {
                let n = n as u64;
                if self.candidates[lo..=hi].binary_search(&n).is_ok() {
                    stack.push(n);
                    let flow = self.emit(stack, visit);
                    stack.pop();
                    return flow;
                }
            }
            return ControlFlow::Continue(());
        }
        let rest = (k - 1) as i128;
        match self.enumeration {
            Enumeration::Ascending => {
                // next value v, later values in [v, max]:
                //   1/v <= target - (k-1)/max  and  k/v >= target
                let slack = target - Rational::from_int(rest) / self.value(hi);
                if !slack.is_positive() {
                    return ControlFlow::Continue(());
                }
                let min_v = slack.recip().ceil();
                let max_v = (Rational::from_int(k as i128) / target).floor();
                let start = lo + self.candidates[lo..=hi].partition_point(|&c| (c as i128) < min_v);
                let end = lo + self.candidates[lo..=hi].partition_point(|&c| (c as i128) <= max_v);
                for j in start..end {
                    stack.push(self.candidates[j]);
                    let next = target - self.value(j).recip();
                    let flow = self.descend(j, hi, k - 1, next, stack, visit);
                    stack.pop();
                    flow?;
                }
            }
            Enumeration::Descending => {
                // next value v, later values in [min, v]:
                //   k/v <= target  and  1/v >= target - (k-1)/min
                let min_v = (Rational::from_int(k as i128) / target).ceil();
                let slack = target - Rational::from_int(rest) / self.value(lo);
                let max_v = if slack.is_positive() {
                    slack.recip().floor()
                } else {
                    i128::MAX
                };
                let start = lo + self.candidates[lo..=hi].partition_point(|&c| (c as i128) < min_v);
                let end = lo + self.candidates[lo..=hi].partition_point(|&c| (c as i128) <= max_v);
                for j in (start..end).rev() {
                    stack.push(self.candidates[j]);
                    let next = target - self.value(j).recip();
                    let flow = self.descend(lo, j, k - 1, next, stack, visit);
                    stack.pop();
                    flow?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn emit<B>(
        &self,
        stack: &[u64],
        visit: &mut impl FnMut(&[u64]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        match self.enumeration {
            Enumeration::Ascending => visit(stack),
            Enumeration::Descending => {
                let mut sorted = stack.to_vec();
                sorted.reverse();
                visit(&sorted)
            }
        }
    }
}

/// Searches for a non-decreasing period list with periods dividing `N`.
pub fn period_feasible(
    sigma: u64,
    skel: SkeletalSignature,
    order: u64,
) -> Result<SearchVerdict<Vec<u64>>> {
    period_feasible_with(sigma, skel, order, PeriodDomain::Divisors, Enumeration::Ascending)
}

pub fn period_feasible_with(
    sigma: u64,
    skel: SkeletalSignature,
    order: u64,
    domain: PeriodDomain,
    enumeration: Enumeration,
) -> Result<SearchVerdict<Vec<u64>>> {
    check_genus(sigma)?;
    check_order(order)?;
    let target = required_reciprocal_sum(sigma, skel, order);
    if !quick_range_check(skel.r, order, target) {
        return Ok(SearchVerdict::NotExists);
    }
    let candidates = domain.candidates(order);
    let found = for_each_period_multiset(
        &candidates,
        skel.r as usize,
        target,
        enumeration,
        |periods| ControlFlow::Break(periods.to_vec()),
    );
    Ok(match found {
        Some(p) => SearchVerdict::Exists(p),
        None => SearchVerdict::NotExists,
    })
}

/// All period lists (non-decreasing) realizing the skeleton at order `N`.
pub fn feasible_period_lists(
    sigma: u64,
    skel: SkeletalSignature,
    order: u64,
    domain: PeriodDomain,
) -> Result<Vec<Vec<u64>>> {
    check_genus(sigma)?;
    check_order(order)?;
    let target = required_reciprocal_sum(sigma, skel, order);
    let mut out = Vec::new();
    if !quick_range_check(skel.r, order, target) {
        return Ok(out);
    }
    let candidates = domain.candidates(order);
    for_each_period_multiset::<()>(
        &candidates,
        skel.r as usize,
        target,
        Enumeration::Ascending,
        |periods| {
            out.push(periods.to_vec());
            ControlFlow::Continue(())
        },
    );
    Ok(out)
}

// Σ 1/n_j over r periods in [2, N] lies in [r/N, r/2].
fn quick_range_check(r: u64, order: u64, target: Rational) -> bool {
    if r == 0 {
        return target.is_zero();
    }
    let r = r as i128;
    target * (order as i128) >= r && target * 2 <= r
}

/// Upper bound on the order of any group whose action can have skeleton `(h, r)` on genus `σ`.
///
/// * `h ≥ 2`: `σ − 1 ≥ N(h − 1)`, so `N ≤ σ − 1`.
/// * `h = 1, r ≥ 1`: the bracket is at least `¼`, so `N ≤ 4(σ − 1)`.
/// * `h = 0`: the bracket is at least `1/42`, so `N ≤ 84(σ − 1)`.
pub fn order_bound(sigma: u64, skel: SkeletalSignature) -> Result<u64> {
    check_genus(sigma)?;
    let SkeletalSignature { h, r } = skel;
    match (h, r) {
        (0, 0..=2) | (1, 0) => Err(Error::NotHyperbolic { h, r }),
        (0, _) => Ok(84 * (sigma - 1)),
        (1, _) => Ok(4 * (sigma - 1)),
        _ => Ok(sigma - 1),
    }
}

/// Witness for arithmetic admissibility: a group order and a period list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderWitness {
    pub order: u64,
    pub periods: Vec<u64>,
}

/// Smallest order `N ≤ order_bound` for which a period list exists.
///
/// `NotExists` certifies the point is not the skeleton of any action on genus `σ`.
pub fn rh_admissible(sigma: u64, skel: SkeletalSignature) -> Result<SearchVerdict<OrderWitness>> {
    rh_admissible_in(sigma, skel, PeriodDomain::Divisors)
}

pub fn rh_admissible_in(
    sigma: u64,
    skel: SkeletalSignature,
    domain: PeriodDomain,
) -> Result<SearchVerdict<OrderWitness>> {
    let bound = order_bound(sigma, skel)?;
    for order in 2..=bound {
        if let SearchVerdict::Exists(periods) =
            period_feasible_with(sigma, skel, order, domain, Enumeration::Ascending)?
        {
            return Ok(SearchVerdict::Exists(OrderWitness { order, periods }));
        }
    }
    Ok(SearchVerdict::NotExists)
}

/// Every `(N, period lists)` pair compatible with the skeleton, in increasing `N`.
pub fn compatible_orders(
    sigma: u64,
    skel: SkeletalSignature,
    domain: PeriodDomain,
) -> Result<Vec<(u64, Vec<Vec<u64>>)>> {
    let bound = order_bound(sigma, skel)?;
    let mut out = Vec::new();
    for order in 2..=bound {
        let lists = feasible_period_lists(sigma, skel, order, domain)?;
        if !lists.is_empty() {
            out.push((order, lists));
        }
    }
    Ok(out)
}
