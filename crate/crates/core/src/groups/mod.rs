//! Finite groups as validated multiplication tables.
//!
//! Every group is held extensionally: an `n × n` table of element indices
//! with index 0 the identity. Tables are checked on construction (Latin
//! square, identity, associativity), so downstream searches can trust them.

mod catalog;
mod cayley;
mod constructors;
mod perm;
mod spec;

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catalog::{bundled_catalog, load_catalog, Catalog, CatalogEntry, CatalogManifest};
pub use cayley::{load_cayley_file, parse_cayley, save_cayley_file, write_cayley};
pub use constructors::{
    build_cyclic, build_dihedral, build_elementary_abelian, build_generalized_quaternion,
    direct_product,
};
pub use perm::{build_from_permutations, parse_cycles, Permutation, DEFAULT_ELEMENT_CAP};
pub use spec::GroupSpec;

/// Index of a group element within its table.
pub type Elem = usize;

/// The identity always sits at index 0.
pub const IDENTITY: Elem = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group table: {0}")]
    NotLatinSquare(String),
    #[error("missing identity: row and column 0 must act as the identity")]
    MissingIdentity,
    #[error("bad index {value} at ({row}, {col}); entries must lie in [0, {order})")]
    BadIndex {
        row: usize,
        col: usize,
        value: i64,
        order: usize,
    },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("trivial group (order 1) is not accepted here")]
    TrivialGroup,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("element cap {0} exceeded while enumerating closure")]
    CapExceeded(usize),
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

/// A finite group given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<Elem>,
    element_order: Vec<u64>,
    words: Option<Vec<String>>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl GroupTable {
    /// Validates `rows` as a group table and derives inverses and element orders.
    pub fn from_rows(name: impl Into<String>, rows: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::NotLatinSquare("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::NotLatinSquare(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::BadIndex {
                        row: i,
                        col: j,
                        value: v as i64,
                        order,
                    });
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(name.into(), order, table)
    }

    pub(crate) fn from_flat(name: String, order: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        debug_assert_eq!(table.len(), order * order);
        let at = |a: usize, b: usize| table[a * order + b] as usize;

        let mut seen = FixedBitSet::with_capacity(order);
        for i in 0..order {
            seen.clear();
            for j in 0..order {
                let v = at(i, j);
                if seen.put(v) {
                    return Err(GroupError::NotLatinSquare(format!(
                        "row {i} repeats element {v}"
                    )));
                }
            }
        }
        for j in 0..order {
            seen.clear();
            for i in 0..order {
                let v = at(i, j);
                if seen.put(v) {
                    return Err(GroupError::NotLatinSquare(format!(
                        "column {j} repeats element {v}"
                    )));
                }
            }
        }
        if (0..order).any(|g| at(0, g) != g || at(g, 0) != g) {
            return Err(GroupError::MissingIdentity);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let mut inverse = vec![0; order];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order).find(|&b| at(a, b) == 0).expect("latin square row contains 0");
        }
        let mut element_order = vec![1u64; order];
        for (g, ord) in element_order.iter_mut().enumerate() {
            let mut x = g;
            let mut k = 1;
            while x != 0 {
                x = at(x, g);
                k += 1;
            }
            *ord = k;
        }

        Ok(GroupTable {
            name,
            order,
            table,
            inverse,
            element_order,
            words: None,
        })
    }

    pub(crate) fn with_words(mut self, words: Vec<String>) -> Self {
        debug_assert_eq!(words.len(), self.order);
        self.words = Some(words);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    #[inline]
    pub fn element_order(&self, a: Elem) -> u64 {
        self.element_order[a]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_order
    }

    /// Normal-form word for an element, when the constructor provides one.
    pub fn word(&self, a: Elem) -> Option<&str> {
        self.words.as_ref().map(|w| w[a].as_str())
    }

    pub fn has_words(&self) -> bool {
        self.words.is_some()
    }

    pub fn row(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.table[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&x| x as usize)
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let k = k % self.element_order(a);
        (0..k).fold(IDENTITY, |acc, _| self.mul(acc, a))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        // a⁻¹b⁻¹ab = (ba)⁻¹(ab)
        self.mul(self.inv(ba), ab)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Cyclic iff some element has order `|G|`.
    pub fn is_cyclic(&self) -> bool {
        self.element_order.contains(&(self.order as u64))
    }

    /// Elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[Elem]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.order);
        set.insert(IDENTITY);
        let mut frontier = vec![IDENTITY];
        let mut distinct: Vec<Elem> = gens.iter().copied().filter(|&g| g != IDENTITY).collect();
        distinct.sort_unstable();
        distinct.dedup();
        while let Some(x) = frontier.pop() {
            for &g in &distinct {
                let y = self.mul(x, g);
                if !set.put(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Size of the subgroup generated by `subset`.
    pub fn subgroup_closure(&self, subset: &[Elem]) -> usize {
        self.generated(subset).count_ones(..)
    }

    pub fn generates(&self, subset: &[Elem]) -> bool {
        self.subgroup_closure(subset) == self.order
    }

    /// Count of elements of each order.
    pub fn order_statistics(&self) -> BTreeMap<u64, usize> {
        let mut stats = BTreeMap::new();
        for &k in &self.element_order {
            *stats.entry(k).or_insert(0) += 1;
        }
        stats
    }

    /// Distinct orders of non-identity elements, ascending.
    pub fn nontrivial_element_orders(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.element_order.iter().copied().filter(|&k| k >= 2).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Isomorphism invariants: element-order statistics and number of commuting pairs.
    pub fn fingerprint(&self) -> Fingerprint {
        let commuting = (0..self.order)
            .map(|a| (0..self.order).filter(|&b| self.mul(a, b) == self.mul(b, a)).count())
            .sum();
        Fingerprint {
            order: self.order,
            order_statistics: self.order_statistics().into_iter().collect(),
            commuting_pairs: commuting,
        }
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.order).map(|a| self.row(a).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub order_statistics: Vec<(u64, usize)>,
    pub commuting_pairs: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        let e = GroupTable::from_rows("x", vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(e, GroupError::NotLatinSquare(_)));
        assert!(e.to_string().starts_with("not a group table"));

        let e = GroupTable::from_rows("x", vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(e, GroupError::MissingIdentity);

        let e = GroupTable::from_rows("x", vec![vec![0, 2], vec![1, 0]]).unwrap_err();
        assert!(matches!(e, GroupError::BadIndex { row: 0, col: 1, .. }));

        // A Latin square with identity that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let e = GroupTable::from_rows("loop", loop5).unwrap_err();
        assert!(matches!(e, GroupError::NotAssociative { .. }));
    }

    #[test]
    fn orders_and_inverses() {
        let c6 = build_cyclic(6).unwrap();
        let orders: Vec<u64> = c6.elements().map(|g| c6.element_order(g)).collect();
        assert_eq!(orders, vec![1, 6, 3, 2, 3, 6]);
        for g in c6.elements() {
            assert_eq!(c6.mul(g, c6.inv(g)), IDENTITY);
        }
        assert_eq!(c6.pow(1, 4), 4);
    }

    #[test]
    fn queries() {
        let q8 = build_generalized_quaternion(2).unwrap();
        assert!(!q8.is_abelian());
        assert!(!q8.is_cyclic());
        let c7 = build_cyclic(7).unwrap();
        assert!(c7.is_cyclic());
        assert!(c7.is_abelian());
        assert_eq!(c7.subgroup_closure(&[3]), 7);
        assert_eq!(c7.subgroup_closure(&[]), 1);
        let c6 = build_cyclic(6).unwrap();
        assert_eq!(c6.subgroup_closure(&[2]), 3);
        assert_eq!(c6.subgroup_closure(&[2, 3]), 6);
    }
}
