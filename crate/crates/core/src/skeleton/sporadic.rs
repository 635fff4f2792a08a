//! The points `(h, 1)`, `h ≥ 2`, on two families of genera.
//!
//! On genus `σ = p + 1` with `p` an odd prime, an action with signature
//! `(h; n)` forces `|G|·(n(2h−1) − 1) = 2pn`, so `d = n(2h−1) − 1` divides
//! `2p`. Each divisor is one case:
//!
//! * `d ∈ {1, 2}` needs `n(2h−1) ≤ 3`, impossible for `h ≥ 2, n ≥ 2`;
//! * `d = 2p` gives `|G| = n`, so the branch generator generates `G`, which is
//!   then cyclic and has no action with one branch point;
//! * `d = p` gives `|G| = 2n`, settled by searching every group of that order.
//!
//! On genus `2n(2h−1) − 1` the generalized quaternion group of order `4n`
//! acts with signature `(h; n)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genvec::{quaternion_vector, realizable, verify, RealizabilityReport, Witness};
use crate::groups::Catalog;
use crate::numtheory::{divisors, is_prime};
use crate::rh::{rh_genus, SearchVerdict, SkeletalSignature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CaseKind {
    /// `(d + 1)/(2h − 1)` is not an integer at least 2.
    NoSolution,
    /// `d ∈ {1, 2}`: only possible when `h = 1`.
    ForcesGenusOne,
    /// `d = 2p`: `|G| = n` with an element of order `n`.
    CyclicForced { order: u64 },
    /// `d = p`: `|G| = 2n`, every group of that order searched.
    IndexTwo {
        order: u64,
        #[serde(rename = "catalogComplete")]
        catalog_complete: bool,
        reports: Vec<RealizabilityReport>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SporadicCase {
    /// The divisor `d` of `2p`.
    pub divisor: u64,
    /// The period `n = (d + 1)/(2h − 1)` when it is an integer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(flatten)]
    pub kind: CaseKind,
    pub verdict: SearchVerdict<()>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SporadicPrime {
    pub p: u64,
    pub sigma: u64,
    pub cases: Vec<SporadicCase>,
    pub verdict: SearchVerdict<()>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternionWitness {
    pub n: u64,
    pub sigma: u64,
    pub verified: bool,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SporadicReport {
    pub h: u64,
    pub primes: Vec<SporadicPrime>,
    pub witnesses: Vec<QuaternionWitness>,
    /// `NotExists` only when every case of every prime is closed.
    pub verdict: SearchVerdict<()>,
}

impl SporadicReport {
    /// Cases that neither arithmetic nor a complete catalog closed.
    pub fn open_cases(&self) -> impl Iterator<Item = (u64, &SporadicCase)> {
        self.primes
            .iter()
            .flat_map(|sp| sp.cases.iter().map(move |c| (sp.p, c)))
            .filter(|(_, c)| !c.verdict.is_not_exists())
    }
}

pub fn sporadic_analysis(
    h: u64,
    primes: &[u64],
    witness_n: &[u64],
    catalog: &Catalog,
    budget: u64,
) -> Result<SporadicReport> {
    if h < 2 {
        return Err(Error::InvalidParameter(format!("quotient genus must be >= 2, got {h}")));
    }
    let mut reports = Vec::with_capacity(primes.len());
    for &p in primes {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        reports.push(analyze_prime(h, p, catalog, budget)?);
    }
    let mut witnesses = Vec::with_capacity(witness_n.len());
    for &n in witness_n {
        let (g, sig, v) = quaternion_vector(n as usize, h)?;
        let genus = rh_genus(g.order() as u64, &sig);
        let sigma = genus
            .to_integer()
            .filter(|&s| s == (2 * n * (2 * h - 1) - 1) as i128)
            .ok_or_else(|| Error::InvalidParameter(format!("quaternion genus {genus} for n = {n}")))?;
        let verified = verify(&g, &v, &sig)?.is_valid();
        witnesses.push(QuaternionWitness {
            n,
            sigma: sigma as u64,
            verified,
            witness: Witness::new(&g, sig, v),
        });
    }
    let verdict = reports
        .iter()
        .fold(SearchVerdict::NotExists, |acc, r| acc.or(r.verdict.clone()));
    Ok(SporadicReport {
        h,
        primes: reports,
        witnesses,
        verdict,
    })
}

fn analyze_prime(h: u64, p: u64, catalog: &Catalog, budget: u64) -> Result<SporadicPrime> {
    let sigma = p + 1;
    let skel = SkeletalSignature::new(h, 1);
    let mut cases = Vec::new();
    for d in divisors(2 * p) {
        let n = ((d + 1) % (2 * h - 1) == 0)
            .then(|| (d + 1) / (2 * h - 1))
            .filter(|&n| n >= 2);
        let (kind, verdict) = match (d, n) {
            (1 | 2, _) => (CaseKind::ForcesGenusOne, SearchVerdict::NotExists),
            (_, None) => (CaseKind::NoSolution, SearchVerdict::NotExists),
            (d, Some(n)) if d == 2 * p => (CaseKind::CyclicForced { order: n }, SearchVerdict::NotExists),
            (_, Some(n)) => {
                let order = 2 * n;
                let complete = catalog.is_complete(order as usize);
                let mut verdict = SearchVerdict::NotExists;
                let mut reports = Vec::new();
                for (_, g) in catalog.groups_of_order(order as usize) {
                    let rep = realizable(g, sigma, skel, budget)?;
                    verdict = verdict.or(rep.verdict.clone().map(|_| ()));
                    reports.push(rep);
                }
                if !complete && !verdict.is_exists() {
                    verdict = SearchVerdict::Unknown;
                }
                (
                    CaseKind::IndexTwo {
                        order,
                        catalog_complete: complete,
                        reports,
                    },
                    verdict,
                )
            }
        };
        cases.push(SporadicCase {
            divisor: d,
            n,
            kind,
            verdict,
        });
    }
    let verdict = cases
        .iter()
        .fold(SearchVerdict::NotExists, |acc, c| acc.or(c.verdict.clone()));
    Ok(SporadicPrime {
        p,
        sigma,
        cases,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{bundled_catalog, CatalogManifest};
    use crate::skeleton::analyze_point;

    #[test]
    fn pure_arithmetic_case() {
        let rep = sporadic_analysis(2, &[3], &[], &bundled_catalog(), 1_000_000).unwrap();
        assert!(rep.verdict.is_not_exists());
        assert!(rep.primes[0]
            .cases
            .iter()
            .all(|c| matches!(c.kind, CaseKind::ForcesGenusOne | CaseKind::NoSolution)));
    }

    #[test]
    fn order_four_case() {
        let rep = sporadic_analysis(2, &[5], &[], &bundled_catalog(), 1_000_000).unwrap();
        assert!(rep.verdict.is_not_exists());
        let idx2: Vec<_> = rep.primes[0]
            .cases
            .iter()
            .filter_map(|c| match &c.kind {
                CaseKind::IndexTwo { order, reports, .. } => Some((c.n, *order, reports.len())),
                _ => None,
            })
            .collect();
        assert_eq!(idx2, vec![(Some(2), 4, 2)]);
    }

    #[test]
    fn witnesses() {
        let rep = sporadic_analysis(2, &[], &[2, 3], &bundled_catalog(), 1).unwrap();
        let genera: Vec<_> = rep.witnesses.iter().map(|w| w.sigma).collect();
        assert_eq!(genera, vec![11, 17]);
        assert!(rep.witnesses.iter().all(|w| w.verified));
    }

    #[test]
    fn incomplete_catalog_is_partial() {
        let empty = Catalog::from_manifest(CatalogManifest::default(), None).unwrap();
        let rep = sporadic_analysis(2, &[5], &[], &empty, 1_000_000).unwrap();
        assert_eq!(rep.verdict, SearchVerdict::Unknown);
        assert_eq!(rep.open_cases().count(), 1);
    }

    #[test]
    fn agrees_with_point_analysis() {
        let cat = bundled_catalog();
        for h in 2..=3 {
            for p in [3u64, 5, 7, 11] {
                let rep = sporadic_analysis(h, &[p], &[], &cat, 1_000_000).unwrap();
                let direct = analyze_point(p + 1, SkeletalSignature::new(h, 1), &cat, 1_000_000).unwrap();
                assert!(rep.verdict.is_not_exists());
                assert!(direct.verdict.is_not_exists(), "h={h} p={p}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let cat = bundled_catalog();
        assert!(sporadic_analysis(1, &[3], &[], &cat, 1).is_err());
        assert!(sporadic_analysis(2, &[2], &[], &cat, 1).is_err());
        assert!(sporadic_analysis(2, &[9], &[], &cat, 1).is_err());
    }
}
