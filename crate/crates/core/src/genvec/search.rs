//! Exhaustive generating-vector search.
//!
//! Entries are chosen left to right (`a_1, b_1, …, a_h, b_h, c_1, …, c_r`)
//! in ascending index order. The state after a prefix is the pair
//! (running product, subgroup generated so far); two prefixes with the same
//! state have the same completions, so states that failed once are memoized
//! and never re-expanded. Further cuts:
//!
//! * `c_j` ranges over elements of order `n_j` only;
//! * `c_r` is forced to the inverse of the running product;
//! * an abelian group with `r = 1` is rejected outright, since `c_1` would
//!   equal a product of commutators and hence the identity.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::GeneratingVector;
use crate::groups::{Elem, GroupTable, IDENTITY};
use crate::rh::{OrbifoldSignature, SearchVerdict};

/// Default cap on the number of candidate entries examined.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub verdict: SearchVerdict<GeneratingVector>,
    /// Candidate entries examined.
    pub steps: u64,
}

/// Interned subgroups with cached joins `⟨H, g⟩`.
struct Subgroups<'g> {
    group: &'g GroupTable,
    sets: Vec<FixedBitSet>,
    gens: Vec<Vec<Elem>>,
    ids: HashMap<FixedBitSet, usize>,
    joins: HashMap<(usize, Elem), usize>,
}

impl<'g> Subgroups<'g> {
    fn new(group: &'g GroupTable) -> Self {
        let mut s = Subgroups {
            group,
            sets: Vec::new(),
            gens: Vec::new(),
            ids: HashMap::new(),
            joins: HashMap::new(),
        };
        s.intern(group.generated(&[]), Vec::new());
        s
    }

    fn intern(&mut self, set: FixedBitSet, gens: Vec<Elem>) -> usize {
        if let Some(&id) = self.ids.get(&set) {
            return id;
        }
        let id = self.sets.len();
        self.ids.insert(set.clone(), id);
        self.sets.push(set);
        self.gens.push(gens);
        id
    }

    fn join(&mut self, id: usize, g: Elem) -> usize {
        if self.sets[id].contains(g) {
            return id;
        }
        if let Some(&j) = self.joins.get(&(id, g)) {
            return j;
        }
        let mut gens = self.gens[id].clone();
        gens.push(g);
        let set = self.group.generated(&gens);
        let j = self.intern(set, gens);
        self.joins.insert((id, g), j);
        j
    }

    fn is_whole(&self, id: usize) -> bool {
        self.sets[id].count_ones(..) == self.group.order()
    }
}

struct Searcher<'g> {
    group: &'g GroupTable,
    h: usize,
    periods: &'g [u64],
    by_order: Vec<Vec<Elem>>,
    subgroups: Subgroups<'g>,
    dead: HashSet<(usize, Elem, usize)>,
    entries: Vec<Elem>,
    steps: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Searcher<'_> {
    fn positions(&self) -> usize {
        self.h + self.periods.len()
    }

    fn tick(&mut self) -> bool {
        self.steps += 1;
        self.steps <= self.budget
    }

    fn run(&mut self, pos: usize, product: Elem, sub: usize) -> Step {
        if pos == self.positions() {
            return if product == IDENTITY && self.subgroups.is_whole(sub) {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        if self.dead.contains(&(pos, product, sub)) {
            return Step::Exhausted;
        }
        let g = self.group;
        let result = if pos < self.h {
            self.expand_pair(pos, product, sub)
        } else {
            let j = pos - self.h;
            if j + 1 == self.periods.len() {
                // last elliptic entry is forced
                if !self.tick() {
                    return Step::OutOfBudget;
                }
                let c = g.inv(product);
                if g.element_order(c) == self.periods[j] {
                    let next = self.subgroups.join(sub, c);
                    if self.subgroups.is_whole(next) {
                        self.entries.push(c);
                        return Step::Found;
                    }
                }
                Step::Exhausted
            } else {
                self.expand_elliptic(pos, j, product, sub)
            }
        };
        if matches!(result, Step::Exhausted) {
            self.dead.insert((pos, product, sub));
        }
        result
    }

    fn expand_pair(&mut self, pos: usize, product: Elem, sub: usize) -> Step {
        let g = self.group;
        let mut out_of_budget = false;
        for a in g.elements() {
            let sub_a = self.subgroups.join(sub, a);
            for b in g.elements() {
                if !self.tick() {
                    return Step::OutOfBudget;
                }
                let next_sub = self.subgroups.join(sub_a, b);
                let next = g.mul(product, g.commutator(a, b));
                self.entries.extend([a, b]);
                match self.run(pos + 1, next, next_sub) {
                    Step::Found => return Step::Found,
                    Step::OutOfBudget => out_of_budget = true,
                    Step::Exhausted => {}
                }
                self.entries.truncate(self.entries.len() - 2);
                if out_of_budget {
                    return Step::OutOfBudget;
                }
            }
        }
        Step::Exhausted
    }

    fn expand_elliptic(&mut self, pos: usize, j: usize, product: Elem, sub: usize) -> Step {
        let g = self.group;
        let candidates = std::mem::take(&mut self.by_order[j]);
        let mut result = Step::Exhausted;
        for &c in &candidates {
            if !self.tick() {
                result = Step::OutOfBudget;
                break;
            }
            let next_sub = self.subgroups.join(sub, c);
            self.entries.push(c);
            match self.run(pos + 1, g.mul(product, c), next_sub) {
                Step::Found => {
                    result = Step::Found;
                    break;
                }
                Step::OutOfBudget => {
                    result = Step::OutOfBudget;
                    break;
                }
                Step::Exhausted => {}
            }
            self.entries.pop();
        }
        self.by_order[j] = candidates;
        result
    }
}

/// Decides whether `group` has a generating vector for `sig`.
///
/// `budget` bounds the number of candidate entries examined; running out
/// yields `Unknown`, never `NotExists`.
pub fn search(group: &GroupTable, sig: &OrbifoldSignature, budget: u64) -> SearchOutcome {
    let not_exists = SearchOutcome {
        verdict: SearchVerdict::NotExists,
        steps: 0,
    };
    if sig.r() == 1 && group.is_abelian() {
        return not_exists;
    }
    let by_order: Vec<Vec<Elem>> = sig
        .periods
        .iter()
        .map(|&n| group.elements().filter(|&x| group.element_order(x) == n).collect())
        .collect();
    if by_order.iter().any(Vec::is_empty) {
        return not_exists;
    }
    let mut searcher = Searcher {
        group,
        h: sig.h as usize,
        periods: &sig.periods,
        by_order,
        subgroups: Subgroups::new(group),
        dead: HashSet::new(),
        entries: Vec::new(),
        steps: 0,
        budget,
    };
    let verdict = match searcher.run(0, IDENTITY, 0) {
        Step::Found => {
            let h = sig.h as usize;
            let e = &searcher.entries;
            let pairs = (0..h).map(|i| (e[2 * i], e[2 * i + 1])).collect();
            SearchVerdict::Exists(GeneratingVector::new(pairs, e[2 * h..].to_vec()))
        }
        Step::Exhausted => SearchVerdict::NotExists,
        Step::OutOfBudget => SearchVerdict::Unknown,
    };
    SearchOutcome {
        verdict,
        steps: searcher.steps,
    }
}
