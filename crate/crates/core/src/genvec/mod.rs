//! Generating vectors.
//!
//! A group `G` acts on a surface of genus `σ` with signature
//! `(h; n_1, …, n_r)` exactly when the Riemann–Hurwitz formula holds and
//! there is a vector `(a_1, b_1, …, a_h, b_h, c_1, …, c_r)` of elements with
//!
//! 1. the entries generating `G`,
//! 2. `c_j` of order `n_j`,
//! 3. `∏ [a_i, b_i] · ∏ c_j = 1`.
//!
//! The commutator convention is `[a, b] = a⁻¹ b⁻¹ a b` throughout.

mod constructions;
mod realize;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{Elem, GroupTable, IDENTITY};
use crate::rh::OrbifoldSignature;

pub use constructions::{all_groups_unbranched_condition, quaternion_vector, unbranched_cyclic};
pub use realize::{realizable, ExclusionReason, Exclusion, RealizabilityReport};
pub use search::{search, SearchOutcome, DEFAULT_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratingVector {
    /// The `h` pairs `(a_i, b_i)`.
    pub pairs: Vec<(Elem, Elem)>,
    /// The `r` elliptic entries `c_j`.
    pub elliptic: Vec<Elem>,
}

impl GeneratingVector {
    pub fn new(pairs: Vec<(Elem, Elem)>, elliptic: Vec<Elem>) -> Self {
        GeneratingVector { pairs, elliptic }
    }

    /// All entries in the order `a_1, b_1, …, a_h, b_h, c_1, …, c_r`.
    pub fn entries(&self) -> Vec<Elem> {
        self.pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.elliptic.iter().copied())
            .collect()
    }

    /// `∏ [a_i, b_i] · ∏ c_j`.
    pub fn product(&self, group: &GroupTable) -> Elem {
        let comm = self
            .pairs
            .iter()
            .fold(IDENTITY, |acc, &(a, b)| group.mul(acc, group.commutator(a, b)));
        self.elliptic.iter().fold(comm, |acc, &c| group.mul(acc, c))
    }
}

/// Outcome of checking the three conditions separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub generates: bool,
    /// Per `c_j`: the actual element order.
    pub elliptic_orders: Vec<u64>,
    pub orders_match: bool,
    pub product_is_identity: bool,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.generates && self.orders_match && self.product_is_identity
    }
}

pub fn verify(
    group: &GroupTable,
    vector: &GeneratingVector,
    sig: &OrbifoldSignature,
) -> Result<Verification> {
    let expected = 2 * sig.h as usize + sig.r();
    let got = 2 * vector.pairs.len() + vector.elliptic.len();
    if vector.pairs.len() != sig.h as usize || vector.elliptic.len() != sig.r() {
        return Err(Error::LengthMismatch { expected, got });
    }
    if let Some(&bad) = vector.entries().iter().find(|&&g| g >= group.order()) {
        return Err(Error::InvalidParameter(format!(
            "element index {bad} outside a group of order {}",
            group.order()
        )));
    }
    let elliptic_orders: Vec<u64> = vector
        .elliptic
        .iter()
        .map(|&c| group.element_order(c))
        .collect();
    Ok(Verification {
        generates: group.generates(&vector.entries()),
        orders_match: elliptic_orders == sig.periods,
        elliptic_orders,
        product_is_identity: vector.product(group) == IDENTITY,
    })
}

/// Serializable record of a found action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub group: String,
    pub order: usize,
    pub signature: OrbifoldSignature,
    pub vector: GeneratingVector,
    /// Normal-form words for the entries, when the group has them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<String>>,
}

impl Witness {
    pub fn new(group: &GroupTable, signature: OrbifoldSignature, vector: GeneratingVector) -> Self {
        let words = group.has_words().then(|| {
            vector
                .entries()
                .iter()
                .map(|&g| group.word(g).unwrap().to_string())
                .collect()
        });
        Witness {
            group: group.name().to_string(),
            order: group.order(),
            signature,
            vector,
            words,
        }
    }
}
