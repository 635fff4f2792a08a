use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::{admissible_set, analyze_point, realizable_set_in, Bounds, SearchScope};
use crate::error::Result;
use crate::genvec::DEFAULT_BUDGET;
use crate::groups::Catalog;
use crate::plane::{gap, lower_line, p_group_line, upper_line, GapRegion, RationalLine};
use crate::rh::{check_genus, SearchVerdict, SkeletalSignature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureOptions {
    /// Also search the catalog for realized points.
    pub realized: bool,
    #[serde(rename = "maxOrder")]
    pub max_order: usize,
    pub budget: u64,
    /// Defaults to `⌊σ/2⌋ + 2`.
    #[serde(rename = "hMax")]
    pub h_max: Option<u64>,
    /// Defaults to `2σ + 2`.
    #[serde(rename = "rMax")]
    pub r_max: Option<u64>,
}

impl Default for FigureOptions {
    fn default() -> Self {
        FigureOptions {
            realized: false,
            max_order: 15,
            budget: DEFAULT_BUDGET,
            h_max: None,
            r_max: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointStatus {
    Admissible,
    Realized,
    Gap,
    ExceptionRealized,
    ExceptionExcluded,
}

impl PointStatus {
    pub fn label(self) -> &'static str {
        match self {
            PointStatus::Admissible => "admissible",
            PointStatus::Realized => "realized",
            PointStatus::Gap => "gap",
            PointStatus::ExceptionRealized => "exception-realized",
            PointStatus::ExceptionExcluded => "exception-excluded",
        }
    }
}

impl fmt::Display for PointStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigurePoint {
    pub h: u64,
    pub r: u64,
    pub status: PointStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedLine {
    pub name: String,
    pub line: RationalLine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureDataset {
    pub sigma: u64,
    /// Neither gap has a lattice point with `r ≥ 0`; only the hyperelliptic line is kept.
    pub degenerate: bool,
    pub bounds: Bounds,
    pub lines: Vec<NamedLine>,
    pub gaps: Vec<GapRegion>,
    /// The guide line `r = 1`.
    pub guide: RationalLine,
    /// Sorted by `(h, r)`.
    pub points: Vec<FigurePoint>,
    /// Admissible lattice points inside a gap (necessarily on an exception line).
    #[serde(rename = "inGapAdmissible")]
    pub in_gap_admissible: Vec<SkeletalSignature>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<SearchScope>,
}

impl FigureDataset {
    pub fn status(&self, p: SkeletalSignature) -> Option<PointStatus> {
        self.points
            .iter()
            .find(|q| q.h == p.h && q.r == p.r)
            .map(|q| q.status)
    }

    /// `h,r,status` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,r,status\n");
        for p in &self.points {
            writeln!(out, "{},{},{}", p.h, p.r, p.status).unwrap();
        }
        out
    }
}

/// Lines, gaps and classified lattice points of the `(h, r)`-plane for genus `σ`.
///
/// Lines: the hyperelliptic line `L(σ,2,1)`, `L(σ,3)`, `U(σ,4)`, `L(σ,4)`,
/// `U(σ,6)` and the cyclic line `L(σ,5,1)`; gaps after `L(σ,3)` and `L(σ,4)`.
pub fn figure_dataset(
    sigma: u64,
    catalog: &Catalog,
    options: &FigureOptions,
) -> Result<FigureDataset> {
    check_genus(sigma)?;
    let bounds = Bounds {
        h_max: options.h_max.unwrap_or(sigma / 2 + 2),
        r_max: options.r_max.unwrap_or(2 * sigma + 2),
    };
    let gaps = vec![gap(sigma, 3)?, gap(sigma, 4)?];
    let lattices: Vec<_> = gaps.iter().map(GapRegion::integer_points).collect();
    let degenerate = lattices.iter().all(|l| l.raw.is_empty());

    let hyperelliptic = NamedLine {
        name: "L(2,1)".into(),
        line: p_group_line(sigma, 2, 1)?,
    };
    let lines = if degenerate {
        vec![hyperelliptic]
    } else {
        vec![
            hyperelliptic,
            NamedLine { name: "L3".into(), line: lower_line(sigma, 3)? },
            NamedLine { name: "U4".into(), line: upper_line(sigma, 4)? },
            NamedLine { name: "L4".into(), line: lower_line(sigma, 4)? },
            NamedLine { name: "U6".into(), line: upper_line(sigma, 6)? },
            NamedLine { name: "L(5,1)".into(), line: p_group_line(sigma, 5, 1)? },
        ]
    };

    let mut status: BTreeMap<SkeletalSignature, PointStatus> = BTreeMap::new();
    let admissible = admissible_set(sigma, bounds)?;
    for p in admissible.skeletons() {
        status.insert(p, PointStatus::Admissible);
    }
    let mut scope = None;
    if options.realized {
        let k = realizable_set_in(sigma, bounds, catalog, options.max_order, options.budget)?;
        for rp in &k.realized {
            status.insert(rp.skeleton(), PointStatus::Realized);
        }
        scope = Some(k.scope);
    }

    let mut in_gap_admissible = Vec::new();
    for lattice in &lattices {
        for &p in &lattice.filtered {
            if p.h <= bounds.h_max && p.r <= bounds.r_max {
                status.insert(p, PointStatus::Gap);
            }
        }
        for &p in &lattice.exception {
            if admissible.contains(p) {
                in_gap_admissible.push(p);
            }
            if p.h > bounds.h_max || p.r > bounds.r_max {
                continue;
            }
            let analysis = analyze_point(sigma, p, catalog, options.budget)?;
            match analysis.verdict {
                SearchVerdict::Exists(_) => {
                    status.insert(p, PointStatus::ExceptionRealized);
                }
                SearchVerdict::NotExists => {
                    status.insert(p, PointStatus::ExceptionExcluded);
                }
                SearchVerdict::Unknown => {}
            }
        }
    }
    in_gap_admissible.sort();
    let points = status
        .into_iter()
        .map(|(p, status)| FigurePoint { h: p.h, r: p.r, status })
        .collect();
    Ok(FigureDataset {
        sigma,
        degenerate,
        bounds,
        lines,
        gaps: if degenerate { Vec::new() } else { gaps },
        guide: RationalLine::new(0, 1, 1)?,
        points,
        in_gap_admissible,
        scope,
    })
}
