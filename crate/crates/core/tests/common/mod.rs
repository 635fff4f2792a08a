//! Brute-force reference implementations shared by the integration tests.
//!
//! Nothing here reuses the pruned search code: tuples, period lists and
//! lattice points are enumerated in full and checked directly.

#![allow(dead_code)]

use std::collections::BTreeSet;

use skelsig_core::groups::{Elem, GroupTable};
use skelsig_core::{OrbifoldSignature, Rational, SkeletalSignature};

/// Genus from Riemann–Hurwitz computed with plain integer fractions.
pub fn genus(order: u64, sig: &OrbifoldSignature) -> Option<u64> {
    // 2σ − 2 = N(2h − 2 + Σ (1 − 1/n_j)); clear denominators with L = lcm(n_j).
    let l = sig.periods.iter().fold(1u64, |a, &n| a / gcd(a, n) * n) as i128;
    let n = order as i128;
    let mut twice = n * l * (2 * sig.h as i128 - 2);
    for &p in &sig.periods {
        twice += n * (l - l / p as i128);
    }
    // twice = L(2σ − 2)
    if twice % l != 0 {
        return None;
    }
    let two_sigma_minus_two = twice / l;
    if two_sigma_minus_two < 2 || two_sigma_minus_two % 2 != 0 {
        return None;
    }
    Some((two_sigma_minus_two / 2 + 1) as u64)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Closure of `gens` by repeated multiplication until nothing new appears.
pub fn naive_closure_size(group: &GroupTable, gens: &[Elem]) -> usize {
    let mut set: BTreeSet<Elem> = BTreeSet::new();
    set.insert(0);
    loop {
        let mut next = set.clone();
        for &a in &set {
            for &g in gens {
                next.insert(group.mul(a, g));
            }
        }
        if next.len() == set.len() {
            return set.len();
        }
        set = next;
    }
}

fn naive_order(group: &GroupTable, x: Elem) -> u64 {
    let mut k = 1;
    let mut y = x;
    while y != 0 {
        y = group.mul(y, x);
        k += 1;
    }
    k
}

/// Tries every tuple in `G^(2h + r)`; no entry is ever skipped.
pub fn naive_generating_vector_exists(group: &GroupTable, sig: &OrbifoldSignature) -> bool {
    let h = sig.h as usize;
    let len = 2 * h + sig.r();
    let n = group.order();
    let mut tuple = vec![0usize; len];
    loop {
        if check_tuple(group, sig, &tuple, h) {
            return true;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == len {
                return false;
            }
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

fn check_tuple(group: &GroupTable, sig: &OrbifoldSignature, t: &[Elem], h: usize) -> bool {
    let mut prod = 0;
    for i in 0..h {
        let (a, b) = (t[2 * i], t[2 * i + 1]);
        let c = group.mul(group.mul(group.inv(a), group.inv(b)), group.mul(a, b));
        prod = group.mul(prod, c);
    }
    for &c in &t[2 * h..] {
        prod = group.mul(prod, c);
    }
    if prod != 0 {
        return false;
    }
    for (j, &c) in t[2 * h..].iter().enumerate() {
        if naive_order(group, c) != sig.periods[j] {
            return false;
        }
    }
    naive_closure_size(group, t) == group.order()
}

/// Every signature over a group of order `N` with periods in `[2, N]` and
/// genus in `[lo, hi]`.
pub fn signatures_with_genus(order: u64, lo: u64, hi: u64) -> Vec<OrbifoldSignature> {
    let mut out = Vec::new();
    for h in 0..=hi + 1 {
        let mut periods = Vec::new();
        collect(order, h, 2, &mut periods, lo, hi, &mut out);
    }
    out
}

fn collect(
    order: u64,
    h: u64,
    min: u64,
    periods: &mut Vec<u64>,
    lo: u64,
    hi: u64,
    out: &mut Vec<OrbifoldSignature>,
) {
    let sig = OrbifoldSignature::new(h, periods.clone());
    if let Some(g) = genus(order, &sig) {
        if (lo..=hi).contains(&g) {
            out.push(sig.clone());
        }
    }
    // adding a period raises 2σ − 2 by N(1 − 1/n) ≥ N/2
    let base = twice_genus_minus_two(order, &sig);
    if base + Rational::new(order as i128, 2) > Rational::from_int(2 * hi as i128 - 2) {
        return;
    }
    for n in min..=order {
        periods.push(n);
        collect(order, h, n, periods, lo, hi, out);
        periods.pop();
    }
}

fn twice_genus_minus_two(order: u64, sig: &OrbifoldSignature) -> Rational {
    let mut s = Rational::from_int(2 * sig.h as i128 - 2);
    for &p in &sig.periods {
        s = s + Rational::ONE - Rational::new(1, p as i128);
    }
    s * order as i128
}

/// All non-decreasing lists of `r` values from `candidates` whose reciprocals
/// sum to `target`, by plain recursion.
pub fn naive_period_lists(candidates: &[u64], r: usize, target: Rational) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(candidates, r, 0, &mut cur, &mut out);
    out.retain(|l| l.iter().map(|&n| Rational::new(1, n as i128)).sum::<Rational>() == target);
    out
}

fn rec(c: &[u64], r: usize, start: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    for i in start..c.len() {
        cur.push(c[i]);
        rec(c, r, i, cur, out);
        cur.pop();
    }
}

/// Lattice points with `0 ≤ h ≤ h_max`, `0 ≤ r ≤ r_max` satisfying a predicate.
pub fn lattice_where(
    h_max: u64,
    r_max: u64,
    keep: impl Fn(SkeletalSignature) -> bool,
) -> Vec<SkeletalSignature> {
    let mut out = Vec::new();
    for h in 0..=h_max {
        for r in 0..=r_max {
            let p = SkeletalSignature::new(h, r);
            if keep(p) {
                out.push(p);
            }
        }
    }
    out
}
