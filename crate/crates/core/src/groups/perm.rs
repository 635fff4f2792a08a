use std::collections::HashMap;

use super::{GroupError, GroupTable};

/// Default upper limit on the number of elements enumerated by closure.
pub const DEFAULT_ELEMENT_CAP: usize = 2048;

/// A permutation of `{0, …, degree−1}` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }
}

/// Parses cycle notation such as `(1 2 3)(4 5)` on points `1..=degree`.
///
/// Commas are accepted as separators inside a cycle; `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, GroupError> {
    let bad = |msg: &str| GroupError::MalformedCycle(format!("{text:?}: {msg}"));
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut touched = vec![false; degree];
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(bad("empty permutation"));
    }
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| bad("expected '('"))?;
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let points = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                let p: usize = s.parse().map_err(|_| bad(&format!("bad point {s:?}")))?;
                if p == 0 || p > degree {
                    return Err(bad(&format!("point {p} outside 1..={degree}")));
                }
                Ok(p - 1)
            })
            .collect::<Result<Vec<_>, _>>()?;
        for &p in &points {
            if touched[p] {
                return Err(bad(&format!("point {} repeated", p + 1)));
            }
            touched[p] = true;
        }
        for (i, &p) in points.iter().enumerate() {
            images[p] = points[(i + 1) % points.len()] as u32;
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(Permutation(images))
}

/// Enumerates the group generated by `generators` and returns its table.
///
/// Element 0 is the identity; the rest appear in breadth-first order of
/// right multiplication by the generators. Fails once more than `cap`
/// elements have been found.
pub fn build_from_permutations(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<GroupTable, GroupError> {
    if degree == 0 {
        return Err(GroupError::InvalidParameter("degree must be >= 1".into()));
    }
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(GroupError::InvalidParameter(format!(
            "generator of degree {} in a degree-{degree} group",
            g.degree()
        )));
    }
    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut next = 0;
    while next < elements.len() {
        for g in generators {
            let y = elements[next].then(g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        next += 1;
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&a.then(b)] as u32);
        }
    }
    GroupTable::from_flat(format!("perm{degree}[{n}]"), n, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(degree: usize, cycles: &[&str]) -> Vec<Permutation> {
        cycles.iter().map(|c| parse_cycles(c, degree).unwrap()).collect()
    }

    #[test]
    fn symmetric_three() {
        let g = build_from_permutations(3, &gens(3, &["(1 2)", "(1 2 3)"]), 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn cyclic_four() {
        let g = build_from_permutations(4, &gens(4, &["(1 2 3 4)"]), 100).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_cyclic());
    }

    #[test]
    fn alternating_four() {
        let g = build_from_permutations(4, &gens(4, &["(1 2 3)", "(2 3 4)"]), 100).unwrap();
        assert_eq!(g.order(), 12);
        let stats: Vec<_> = g.order_statistics().into_iter().collect();
        assert_eq!(stats, vec![(1, 1), (2, 3), (3, 8)]);
    }

    #[test]
    fn cap_and_malformed() {
        let e = build_from_permutations(5, &gens(5, &["(1 2 3 4 5)", "(1 2)"]), 50).unwrap_err();
        assert_eq!(e, GroupError::CapExceeded(50));
        assert!(parse_cycles("(1 2", 3).is_err());
        assert!(parse_cycles("(1 4)", 3).is_err());
        assert!(parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(parse_cycles("1 2", 3).is_err());
        assert_eq!(parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(
            parse_cycles("(1,2)(3 4)", 4).unwrap(),
            Permutation(vec![1, 0, 3, 2])
        );
    }
}
