use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{search, Witness};
use crate::error::{Error, Result};
use crate::groups::GroupTable;
use crate::rh::{
    check_genus, for_each_period_multiset, required_reciprocal_sum, Enumeration,
    OrbifoldSignature, SearchVerdict, SkeletalSignature,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionReason {
    /// No period multiset drawn from the group's element orders satisfies Riemann–Hurwitz.
    Arithmetic,
    /// An abelian group cannot have exactly one branch point.
    AbelianR1,
    /// The single period equals `|G|`, so `G` is cyclic, hence abelian.
    CyclicForced,
    /// Every candidate signature was searched to completion.
    ExhaustedSearch,
}

impl ExclusionReason {
    pub fn label(self) -> &'static str {
        match self {
            ExclusionReason::Arithmetic => "arithmetic",
            ExclusionReason::AbelianR1 => "abelian-r1",
            ExclusionReason::CyclicForced => "cyclic-forced",
            ExclusionReason::ExhaustedSearch => "exhausted-search",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub reason: ExclusionReason,
    /// What the rule covers, in words.
    pub scope: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityReport {
    pub group: String,
    pub order: usize,
    pub sigma: u64,
    pub skeleton: SkeletalSignature,
    /// Signatures compatible with Riemann–Hurwitz and the group's element orders.
    pub candidates: Vec<OrbifoldSignature>,
    pub verdict: SearchVerdict<Witness>,
    pub exclusions: Vec<Exclusion>,
    /// Search steps spent over all candidates.
    pub steps: u64,
}

/// Decides whether `group` acts on genus `σ` with skeletal signature `skel`.
///
/// Periods are drawn from the orders of non-trivial elements of `group`; each
/// period list satisfying Riemann–Hurwitz at `|G|` is handed to [`search`]
/// with the given budget.
pub fn realizable(
    group: &GroupTable,
    sigma: u64,
    skel: SkeletalSignature,
    budget: u64,
) -> Result<RealizabilityReport> {
    check_genus(sigma)?;
    let order = group.order();
    if order < 2 {
        return Err(Error::OrderTooSmall(order as u64));
    }
    let element_orders = group.nontrivial_element_orders();
    let target = required_reciprocal_sum(sigma, skel, order as u64);
    let mut candidates = Vec::new();
    if !target.is_negative() {
        for_each_period_multiset::<()>(
            &element_orders,
            skel.r as usize,
            target,
            Enumeration::Ascending,
            |periods| {
                candidates.push(OrbifoldSignature::new(skel.h, periods.to_vec()));
                ControlFlow::Continue(())
            },
        );
    }
    let mut report = RealizabilityReport {
        group: group.name().to_string(),
        order,
        sigma,
        skeleton: skel,
        candidates: Vec::new(),
        verdict: SearchVerdict::NotExists,
        exclusions: Vec::new(),
        steps: 0,
    };

    if candidates.is_empty() {
        report.exclusions.push(Exclusion {
            reason: ExclusionReason::Arithmetic,
            scope: format!(
                "no {} periods from element orders {:?} fit genus {sigma} at order {order}",
                skel.r, element_orders
            ),
        });
        return Ok(report);
    }

    if skel.r == 1 && group.is_abelian() {
        report.exclusions.push(Exclusion {
            reason: ExclusionReason::AbelianR1,
            scope: format!("{} is abelian; all {} candidate signatures", group.name(), candidates.len()),
        });
        let forced: Vec<String> = candidates
            .iter()
            .filter(|s| s.periods[0] == order as u64)
            .map(ToString::to_string)
            .collect();
        if !forced.is_empty() {
            report.exclusions.push(Exclusion {
                reason: ExclusionReason::CyclicForced,
                scope: format!("period {order} = |G| forces a cyclic group: {}", forced.join(", ")),
            });
        }
        report.candidates = candidates;
        return Ok(report);
    }

    let mut unknown = false;
    for sig in &candidates {
        let out = search(group, sig, budget);
        report.steps += out.steps;
        match out.verdict {
            SearchVerdict::Exists(v) => {
                report.verdict = SearchVerdict::Exists(Witness::new(group, sig.clone(), v));
                report.candidates = candidates;
                return Ok(report);
            }
            SearchVerdict::Unknown => unknown = true,
            SearchVerdict::NotExists => {}
        }
    }
    if unknown {
        report.verdict = SearchVerdict::Unknown;
    } else {
        report.exclusions.push(Exclusion {
            reason: ExclusionReason::ExhaustedSearch,
            scope: format!(
                "no generating vector in {} for {}",
                group.name(),
                candidates.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ),
        });
    }
    report.candidates = candidates;
    Ok(report)
}
