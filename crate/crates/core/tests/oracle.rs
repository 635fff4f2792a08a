mod common;

use skelsig_core::genvec::{search, verify, DEFAULT_BUDGET};
use skelsig_core::groups::bundled_catalog;
use skelsig_core::plane::{gap, triangle};
use skelsig_core::rh::{
    feasible_period_lists, period_feasible_with, required_reciprocal_sum, rh_admissible,
    rh_genus, Enumeration, PeriodDomain,
};
use skelsig_core::{Rational, SearchVerdict, SkeletalSignature};

use common::*;

#[test]
fn search_matches_naive_enumeration_small_orders() {
    let cat = bundled_catalog();
    let mut checked = 0;
    for (_, g) in cat.iter().filter(|(_, g)| g.order() <= 6) {
        for sig in signatures_with_genus(g.order() as u64, 2, 4) {
            let fast = search(g, &sig, DEFAULT_BUDGET);
            let slow = naive_generating_vector_exists(g, &sig);
            assert_eq!(fast.verdict.is_exists(), slow, "{} {sig}", g.name());
            assert_ne!(fast.verdict, SearchVerdict::Unknown);
            if let SearchVerdict::Exists(v) = fast.verdict {
                assert!(verify(g, &v, &sig).unwrap().is_valid());
            }
            checked += 1;
        }
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn integer_genus_matches_rational_formula() {
    for order in 1..=12 {
        for sig in signatures_with_genus(order, 2, 8) {
            let exact = rh_genus(order, &sig);
            assert_eq!(exact, Rational::from_int(genus(order, &sig).unwrap() as i128));
        }
    }
}

#[test]
fn closure_matches_naive_closure() {
    let cat = bundled_catalog();
    for (_, g) in cat.iter() {
        for a in g.elements() {
            for b in g.elements().step_by(3) {
                assert_eq!(
                    g.subgroup_closure(&[a, b]),
                    naive_closure_size(g, &[a, b]),
                    "{} {a} {b}",
                    g.name()
                );
            }
        }
    }
}

#[test]
fn period_lists_match_naive_recursion() {
    for sigma in 2..=9u64 {
        for order in 2..=12u64 {
            for h in 0..=3u64 {
                for r in 0..=5u64 {
                    let skel = SkeletalSignature::new(h, r);
                    let target = required_reciprocal_sum(sigma, skel, order);
                    for domain in [PeriodDomain::Divisors, PeriodDomain::Interval] {
                        let fast = feasible_period_lists(sigma, skel, order, domain).unwrap();
                        let slow = naive_period_lists(&domain.candidates(order), r as usize, target);
                        assert_eq!(fast, slow, "σ={sigma} N={order} {skel} {domain:?}");
                        for e in [Enumeration::Ascending, Enumeration::Descending] {
                            let v = period_feasible_with(sigma, skel, order, domain, e).unwrap();
                            assert_eq!(v.is_exists(), !slow.is_empty());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn admissible_points_lie_in_their_triangle() {
    for sigma in 2..=20u64 {
        for h in 0..=sigma + 1 {
            for r in 0..=2 * sigma + 2 {
                let p = SkeletalSignature::new(h, r);
                if let Ok(SearchVerdict::Exists(w)) = rh_admissible(sigma, p) {
                    let t = triangle(sigma, w.order).unwrap();
                    assert!(t.member(&p.into()), "σ={sigma} {p} N={}", w.order);
                }
            }
        }
    }
}

#[test]
fn gap_lattice_matches_box_scan() {
    for sigma in 9..=40u64 {
        for n in 3..=6u64 {
            let region = gap(sigma, n).unwrap();
            let lattice = region.integer_points();
            let scan = lattice_where(sigma + 2, 2 * sigma + 2, |p| region.member_raw(&p.into()));
            assert_eq!(lattice.raw, scan, "σ={sigma} N={n}");
            let filtered = lattice_where(sigma + 2, 2 * sigma + 2, |p| region.member(&p.into()));
            assert_eq!(lattice.filtered, filtered);
        }
    }
}
