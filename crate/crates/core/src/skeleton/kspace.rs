use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{admissible_set, AdmissibleSet, Bounds};
use crate::error::Result;
use crate::genvec::{realizable, Witness};
use crate::groups::Catalog;
use crate::rh::{check_genus, order_bound, period_feasible, SearchVerdict, SkeletalSignature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizedPoint {
    pub h: u64,
    pub r: u64,
    /// One witness per catalog group that realizes the point.
    pub witnesses: Vec<Witness>,
}

impl RealizedPoint {
    pub fn skeleton(&self) -> SkeletalSignature {
        SkeletalSignature::new(self.h, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownCase {
    pub skeleton: SkeletalSignature,
    pub group: String,
}

/// What the search covered, so that `realized` is never mistaken for `K_σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchScope {
    #[serde(rename = "maxOrder")]
    pub max_order: usize,
    pub budget: u64,
    /// Catalog groups of order in `[2, maxOrder]`.
    pub groups: Vec<String>,
    #[serde(rename = "completeOrders")]
    pub complete_orders: Vec<usize>,
    /// Searches that ran out of budget.
    pub unknown: Vec<UnknownCase>,
    /// Admissible points neither realized nor excluded.
    pub undecided: Vec<SkeletalSignature>,
    /// True when every admissible point is either realized or excluded.
    pub exact: bool,
}

/// Lower approximation of `K_σ` inside the admissible superset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSpaceApproximation {
    pub sigma: u64,
    pub admissible: AdmissibleSet,
    pub realized: Vec<RealizedPoint>,
    /// Admissible points excluded at every compatible order.
    pub excluded: Vec<SkeletalSignature>,
    #[serde(rename = "searchScope")]
    pub scope: SearchScope,
}

impl KSpaceApproximation {
    pub fn realized_at(&self, p: SkeletalSignature) -> Option<&RealizedPoint> {
        self.realized
            .binary_search_by_key(&p, RealizedPoint::skeleton)
            .ok()
            .map(|i| &self.realized[i])
    }

    pub fn is_realized(&self, p: SkeletalSignature) -> bool {
        self.realized_at(p).is_some()
    }

    /// `|admissible \ realized|`.
    pub fn gap_count(&self) -> usize {
        self.admissible.len() - self.realized.len()
    }
}

/// [`realizable_set_in`] over the default box.
pub fn realizable_set(
    sigma: u64,
    catalog: &Catalog,
    max_order: usize,
    budget: u64,
) -> Result<KSpaceApproximation> {
    realizable_set_in(sigma, Bounds::default_for(sigma), catalog, max_order, budget)
}

/// Searches every catalog group of order at most `max_order` against every
/// admissible point of the box.
///
/// A point counts as excluded only when each order compatible with
/// Riemann–Hurwitz is at most `max_order`, complete in the catalog, and every
/// group of that order was searched to `NotExists`.
pub fn realizable_set_in(
    sigma: u64,
    bounds: Bounds,
    catalog: &Catalog,
    max_order: usize,
    budget: u64,
) -> Result<KSpaceApproximation> {
    check_genus(sigma)?;
    let admissible = admissible_set(sigma, bounds)?;
    let groups: Vec<_> = catalog
        .iter()
        .filter(|(e, _)| (2..=max_order).contains(&e.order))
        .map(|(_, g)| g)
        .collect();

    let per_point: Vec<PointOutcome> = admissible
        .skeletons()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|p| point_outcome(sigma, p, &groups, catalog, max_order, budget))
        .collect::<Result<_>>()?;

    let mut realized = Vec::new();
    let mut excluded = Vec::new();
    let mut undecided = Vec::new();
    let mut unknown = Vec::new();
    for out in per_point {
        unknown.extend(out.unknown.into_iter().map(|group| UnknownCase {
            skeleton: out.point,
            group,
        }));
        if !out.witnesses.is_empty() {
            realized.push(RealizedPoint {
                h: out.point.h,
                r: out.point.r,
                witnesses: out.witnesses,
            });
        } else if out.decided {
            excluded.push(out.point);
        } else {
            undecided.push(out.point);
        }
    }
    let scope = SearchScope {
        max_order,
        budget,
        groups: groups.iter().map(|g| g.name().to_string()).collect(),
        complete_orders: catalog.complete_orders().into_iter().collect(),
        exact: undecided.is_empty(),
        unknown,
        undecided,
    };
    Ok(KSpaceApproximation {
        sigma,
        admissible,
        realized,
        excluded,
        scope,
    })
}

struct PointOutcome {
    point: SkeletalSignature,
    witnesses: Vec<Witness>,
    unknown: Vec<String>,
    decided: bool,
}

fn point_outcome(
    sigma: u64,
    p: SkeletalSignature,
    groups: &[&crate::groups::GroupTable],
    catalog: &Catalog,
    max_order: usize,
    budget: u64,
) -> Result<PointOutcome> {
    let mut witnesses = Vec::new();
    let mut unknown = Vec::new();
    for g in groups {
        let report = realizable(g, sigma, p, budget)?;
        match report.verdict {
            SearchVerdict::Exists(w) => witnesses.push(w),
            SearchVerdict::Unknown => unknown.push(g.name().to_string()),
            SearchVerdict::NotExists => {}
        }
    }
    let mut decided = unknown.is_empty();
    if decided && witnesses.is_empty() {
        let bound = order_bound(sigma, p)?;
        for order in 2..=bound {
            if period_feasible(sigma, p, order)?.is_exists()
                && (order as usize > max_order || !catalog.is_complete(order as usize))
            {
                decided = false;
                break;
            }
        }
    }
    Ok(PointOutcome {
        point: p,
        witnesses,
        unknown,
        decided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genvec::verify;
    use crate::groups::bundled_catalog;
    use crate::plane::triangle;
    use crate::rh::OrbifoldSignature;

    fn pt(h: u64, r: u64) -> SkeletalSignature {
        SkeletalSignature::new(h, r)
    }

    #[test]
    fn genus_three_small_orders() {
        let cat = bundled_catalog();
        let k = realizable_set(3, &cat, 4, 1_000_000).unwrap();
        let w = &k.realized_at(pt(1, 2)).unwrap().witnesses;
        let c3 = w.iter().find(|w| w.group == "C3").unwrap();
        assert_eq!(c3.signature, OrbifoldSignature::new(1, vec![3, 3]));
        // (1; 2,2) on C2 has genus 2, not 3
        assert!(w.iter().all(|w| w.group != "C2"));
        assert!(w.iter().any(|w| w.group == "C2^2"));
        assert!(!k.scope.exact);
    }

    #[test]
    fn genus_two_involution() {
        let cat = bundled_catalog();
        let k = realizable_set(2, &cat, 2, 1_000_000).unwrap();
        assert!(k.is_realized(pt(0, 6)));
    }

    #[test]
    fn quaternion_on_genus_eleven() {
        let cat = bundled_catalog();
        let k = realizable_set_in(11, Bounds { h_max: 3, r_max: 4 }, &cat, 8, 1_000_000).unwrap();
        let w = &k.realized_at(pt(2, 1)).unwrap().witnesses;
        assert!(w.iter().any(|w| w.group == "Q8"));
    }

    #[test]
    fn realized_points_are_admissible_and_in_their_triangle() {
        let cat = bundled_catalog();
        for sigma in 2..=6 {
            let k = realizable_set(sigma, &cat, 12, 1_000_000).unwrap();
            assert!(k.scope.unknown.is_empty());
            for rp in &k.realized {
                assert!(k.admissible.contains(rp.skeleton()));
                for w in &rp.witnesses {
                    let t = triangle(sigma, w.order as u64).unwrap();
                    assert!(t.member(&rp.skeleton().into()), "σ={sigma} {} {}", rp.skeleton(), w.group);
                    let (_, g) = cat.iter().find(|(e, _)| e.label == w.group).unwrap();
                    assert!(verify(g, &w.vector, &w.signature).unwrap().is_valid());
                }
            }
            for p in &k.excluded {
                assert!(!k.is_realized(*p));
            }
        }
    }
}
