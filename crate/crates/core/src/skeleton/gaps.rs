use serde::{Deserialize, Serialize};

use super::{analyze_point, PointAnalysis};
use crate::error::Result;
use crate::genvec::{realizable, RealizabilityReport};
use crate::groups::{build_cyclic, Catalog};
use crate::plane::{gap, GapRegion};
use crate::rh::{rh_admissible, OrderWitness, SearchVerdict, SkeletalSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GapConclusion {
    /// No lattice point off the exception line passes Riemann–Hurwitz, and
    /// every exception-line point was decided.
    Verified,
    /// Some lattice point off the exception line passes Riemann–Hurwitz.
    Refuted,
    /// Off-line points are clear but an exception-line point stayed undecided.
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapPoint {
    pub skeleton: SkeletalSignature,
    #[serde(rename = "onExceptionLine")]
    pub on_exception_line: bool,
    pub rh: SearchVerdict<OrderWitness>,
    /// The cyclic group of order `N+1` on exception-line points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<RealizabilityReport>,
    /// Order-by-order analysis on exception-line points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<PointAnalysis>,
}

impl GapPoint {
    /// Realizability verdict for exception-line points, `None` elsewhere.
    pub fn realizability(&self) -> Option<SearchVerdict<()>> {
        self.analysis.as_ref().map(|a| a.verdict.clone().map(|_| ()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub gap: GapRegion,
    #[serde(rename = "integerPoints")]
    pub integer_points: Vec<GapPoint>,
    pub conclusion: GapConclusion,
}

impl GapReport {
    pub fn exception_points(&self) -> impl Iterator<Item = &GapPoint> {
        self.integer_points.iter().filter(|p| p.on_exception_line)
    }

    pub fn point(&self, p: SkeletalSignature) -> Option<&GapPoint> {
        self.integer_points.iter().find(|g| g.skeleton == p)
    }
}

/// Checks every lattice point (`r ≥ 0`) of the gap after `L(σ,N)`.
pub fn verify_gap(sigma: u64, n: u64, catalog: &Catalog, budget: u64) -> Result<GapReport> {
    let region = gap(sigma, n)?;
    let lattice = region.integer_points();
    let mut points = Vec::with_capacity(lattice.raw.len());
    let mut refuted = false;
    let mut partial = false;
    for p in lattice.raw {
        let on_line = lattice.exception.contains(&p);
        let rh = rh_admissible(sigma, p)?;
        let (cyclic, analysis) = if on_line {
            let c = build_cyclic(region.upper_order() as usize - 1)?;
            let cyclic = realizable(&c, sigma, p, budget)?;
            let analysis = analyze_point(sigma, p, catalog, budget)?;
            if analysis.verdict == SearchVerdict::Unknown {
                partial = true;
            }
            (Some(cyclic), Some(analysis))
        } else {
            if rh.is_exists() {
                refuted = true;
            }
            (None, None)
        };
        points.push(GapPoint {
            skeleton: p,
            on_exception_line: on_line,
            rh,
            cyclic,
            analysis,
        });
    }
    let conclusion = if refuted {
        GapConclusion::Refuted
    } else if partial {
        GapConclusion::Partial
    } else {
        GapConclusion::Verified
    };
    Ok(GapReport {
        gap: region,
        integer_points: points,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genvec::ExclusionReason;
    use crate::groups::bundled_catalog;
    use crate::plane::missing_points;

    fn pt(h: u64, r: u64) -> SkeletalSignature {
        SkeletalSignature::new(h, r)
    }

    #[test]
    fn genus_48_first_gap() {
        let rep = verify_gap(48, 3, &bundled_catalog(), 1_000_000).unwrap();
        assert_eq!(rep.conclusion, GapConclusion::Verified);
        assert!(rep.point(pt(3, 40)).unwrap().rh.is_not_exists());
        assert_eq!(rep.exception_points().count(), 0);
    }

    #[test]
    fn genus_48_exception_line() {
        let rep = verify_gap(48, 4, &bundled_catalog(), 1_000_000).unwrap();
        assert_eq!(rep.conclusion, GapConclusion::Verified);
        let ex: Vec<_> = rep.exception_points().map(|p| p.skeleton).collect();
        assert_eq!(ex, vec![pt(8, 6), pt(10, 1)]);
        let p86 = rep.point(pt(8, 6)).unwrap();
        assert!(p86.cyclic.as_ref().unwrap().verdict.is_exists());
        let p101 = rep.point(pt(10, 1)).unwrap();
        assert!(p101.cyclic.as_ref().unwrap().verdict.is_not_exists());
        let reasons = p101.analysis.as_ref().unwrap().reasons();
        assert_eq!(reasons, vec![ExclusionReason::AbelianR1, ExclusionReason::CyclicForced]);
    }

    #[test]
    fn genus_20_contains_missing_points() {
        let rep = verify_gap(20, 4, &bundled_catalog(), 1_000_000).unwrap();
        assert_eq!(rep.conclusion, GapConclusion::Verified);
        for p in missing_points(20, 3).unwrap() {
            let g = rep.point(p).unwrap();
            assert!(!g.on_exception_line);
            assert!(g.rh.is_not_exists());
        }
    }

    #[test]
    fn gap_at_genus_eight_is_refuted_only_on_its_line() {
        // (2,1) sits on the exception line at σ = 8
        let rep = verify_gap(8, 4, &bundled_catalog(), 1_000_000).unwrap();
        let p = rep.point(pt(2, 1)).unwrap();
        assert!(p.on_exception_line);
        assert!(p.rh.is_exists());
        assert!(p.analysis.as_ref().unwrap().verdict.is_not_exists());
    }
}
