//! The space `K_σ` of skeletal signatures: arithmetic sweeps, realized
//! subsets, gap verification, sporadic points and plotting data.

mod figure;
mod gaps;
mod kspace;
mod sporadic;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::genvec::{realizable, Exclusion, ExclusionReason, Witness};
use crate::groups::{build_cyclic, Catalog};
use crate::rh::{
    check_genus, compatible_orders, rh_admissible, OrderWitness, PeriodDomain,
    SearchVerdict, SkeletalSignature,
};

pub use figure::{figure_dataset, FigureDataset, FigureOptions, FigurePoint, NamedLine, PointStatus};
pub use gaps::{verify_gap, GapConclusion, GapPoint, GapReport};
pub use kspace::{realizable_set, realizable_set_in, KSpaceApproximation, RealizedPoint, SearchScope, UnknownCase};
pub use sporadic::{
    sporadic_analysis, CaseKind, QuaternionWitness, SporadicCase, SporadicPrime, SporadicReport,
};

/// A rectangle `0 ≤ h ≤ h_max`, `0 ≤ r ≤ r_max` of the `(h, r)`-plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub h_max: u64,
    pub r_max: u64,
}

impl Bounds {
    /// `h ≤ σ + 1`, `r ≤ 2σ + 2`: contains every skeleton of genus `σ`.
    pub fn default_for(sigma: u64) -> Self {
        Bounds {
            h_max: sigma + 1,
            r_max: 2 * sigma + 2,
        }
    }

    /// Hyperbolic points of the box in `(h, r)` order.
    pub fn points(self) -> Vec<SkeletalSignature> {
        let mut out = Vec::new();
        for h in 0..=self.h_max {
            for r in 0..=self.r_max {
                if is_hyperbolic(h, r) {
                    out.push(SkeletalSignature::new(h, r));
                }
            }
        }
        out
    }
}

pub(crate) fn is_hyperbolic(h: u64, r: u64) -> bool {
    !matches!((h, r), (0, 0..=2) | (1, 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissiblePoint {
    pub h: u64,
    pub r: u64,
    /// Smallest order admitting a period list, with that list.
    pub witness: OrderWitness,
}

impl AdmissiblePoint {
    pub fn skeleton(&self) -> SkeletalSignature {
        SkeletalSignature::new(self.h, self.r)
    }
}

/// Every point of a box passing the Riemann–Hurwitz test at some order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleSet {
    pub sigma: u64,
    pub bounds: Bounds,
    /// Sorted by `(h, r)`.
    pub points: Vec<AdmissiblePoint>,
}

impl AdmissibleSet {
    pub fn contains(&self, p: SkeletalSignature) -> bool {
        self.get(p).is_some()
    }

    pub fn get(&self, p: SkeletalSignature) -> Option<&AdmissiblePoint> {
        self.points
            .binary_search_by_key(&p, AdmissiblePoint::skeleton)
            .ok()
            .map(|i| &self.points[i])
    }

    pub fn skeletons(&self) -> impl Iterator<Item = SkeletalSignature> + '_ {
        self.points.iter().map(AdmissiblePoint::skeleton)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// All points of the box that are `rh_admissible`.
pub fn admissible_set(sigma: u64, bounds: Bounds) -> Result<AdmissibleSet> {
    check_genus(sigma)?;
    let verdicts: Vec<_> = bounds
        .points()
        .into_par_iter()
        .map(|p| rh_admissible(sigma, p).map(|v| (p, v)))
        .collect::<Result<_>>()?;
    let points = verdicts
        .into_iter()
        .filter_map(|(p, v)| match v {
            SearchVerdict::Exists(witness) => Some(AdmissiblePoint {
                h: p.h,
                r: p.r,
                witness,
            }),
            _ => None,
        })
        .collect();
    Ok(AdmissibleSet {
        sigma,
        bounds,
        points,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum OrderStatus {
    Realized { witness: Witness },
    Excluded { exclusions: Vec<Exclusion> },
    Undecided { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderAnalysis {
    pub order: u64,
    #[serde(rename = "periodLists")]
    pub period_lists: Vec<Vec<u64>>,
    #[serde(flatten)]
    pub status: OrderStatus,
}

/// Group-theoretic verdict on a single point, order by order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointAnalysis {
    pub sigma: u64,
    pub skeleton: SkeletalSignature,
    pub orders: Vec<OrderAnalysis>,
    pub verdict: SearchVerdict<Witness>,
}

impl PointAnalysis {
    /// Distinct exclusion reasons over all orders.
    pub fn reasons(&self) -> Vec<ExclusionReason> {
        let mut out: Vec<_> = self
            .orders
            .iter()
            .flat_map(|o| match &o.status {
                OrderStatus::Excluded { exclusions } => exclusions.iter().map(|e| e.reason).collect(),
                _ => Vec::new(),
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Decides `skel ∈ K_σ` as far as the catalog allows.
///
/// Each order `N` compatible with Riemann–Hurwitz is settled by one of:
/// * every period list contains `N` itself, so the group is cyclic and
///   `C_N` alone is searched;
/// * the catalog lists every group of order `N` and all are searched;
/// * otherwise the order stays undecided unless a listed group realizes it.
///
/// Orders are examined in increasing order and the first realized order ends the scan.
pub fn analyze_point(
    sigma: u64,
    skel: SkeletalSignature,
    catalog: &Catalog,
    budget: u64,
) -> Result<PointAnalysis> {
    check_genus(sigma)?;
    let mut analysis = PointAnalysis {
        sigma,
        skeleton: skel,
        orders: Vec::new(),
        verdict: SearchVerdict::NotExists,
    };
    if !is_hyperbolic(skel.h, skel.r) {
        return Ok(analysis);
    }
    let mut undecided = false;
    for (order, period_lists) in compatible_orders(sigma, skel, PeriodDomain::Divisors)? {
        let status = analyze_order(sigma, skel, order, &period_lists, catalog, budget)?;
        let realized = match &status {
            OrderStatus::Realized { witness } => Some(witness.clone()),
            OrderStatus::Undecided { .. } => {
                undecided = true;
                None
            }
            OrderStatus::Excluded { .. } => None,
        };
        analysis.orders.push(OrderAnalysis {
            order,
            period_lists,
            status,
        });
        if let Some(w) = realized {
            analysis.verdict = SearchVerdict::Exists(w);
            return Ok(analysis);
        }
    }
    if undecided {
        analysis.verdict = SearchVerdict::Unknown;
    }
    Ok(analysis)
}

fn analyze_order(
    sigma: u64,
    skel: SkeletalSignature,
    order: u64,
    period_lists: &[Vec<u64>],
    catalog: &Catalog,
    budget: u64,
) -> Result<OrderStatus> {
    let cyclic_forced = period_lists.iter().all(|l| l.contains(&order));
    if cyclic_forced {
        let group = build_cyclic(order as usize)?;
        let report = realizable(&group, sigma, skel, budget)?;
        return Ok(match report.verdict {
            SearchVerdict::Exists(witness) => OrderStatus::Realized { witness },
            SearchVerdict::Unknown => OrderStatus::Undecided {
                reason: format!("search budget exhausted on C{order}"),
            },
            SearchVerdict::NotExists => {
                let mut exclusions = report.exclusions;
                if !exclusions.iter().any(|e| e.reason == ExclusionReason::CyclicForced) {
                    exclusions.insert(
                        0,
                        Exclusion {
                            reason: ExclusionReason::CyclicForced,
                            scope: format!(
                                "every period list at order {order} contains {order}, so G = C{order}"
                            ),
                        },
                    );
                }
                OrderStatus::Excluded { exclusions }
            }
        });
    }

    let complete = catalog.is_complete(order as usize);
    let mut exclusions = Vec::new();
    let mut unknown = Vec::new();
    for (_, group) in catalog.groups_of_order(order as usize) {
        let report = realizable(group, sigma, skel, budget)?;
        match report.verdict {
            SearchVerdict::Exists(witness) => return Ok(OrderStatus::Realized { witness }),
            SearchVerdict::Unknown => unknown.push(group.name().to_string()),
            SearchVerdict::NotExists => {
                for mut e in report.exclusions {
                    e.scope = format!("{}: {}", group.name(), e.scope);
                    exclusions.push(e);
                }
            }
        }
    }
    Ok(if !complete {
        OrderStatus::Undecided {
            reason: format!("groups of order {order} are not all in the catalog"),
        }
    } else if !unknown.is_empty() {
        OrderStatus::Undecided {
            reason: format!("search budget exhausted on {}", unknown.join(", ")),
        }
    } else {
        OrderStatus::Excluded { exclusions }
    })
}
