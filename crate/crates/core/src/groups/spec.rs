//! Textual group descriptions.
//!
//! | form                      | group                                   |
//! |---------------------------|-----------------------------------------|
//! | `cyclic:n`                | `C_n`                                   |
//! | `elab:p^k`                | `(C_p)^k`                               |
//! | `dihedral:n`              | dihedral group of order `2n`            |
//! | `quaternion:n`            | generalized quaternion of order `4n`    |
//! | `product:A,B[,C…]`        | `A × B × …` (flat; operands are not products) |
//! | `perm:d:(1 2)(3 4);(1 3)` | group generated by permutations of `1..=d` |
//! | `file:path`               | Cayley table file                       |

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    build_cyclic, build_dihedral, build_elementary_abelian, build_from_permutations,
    build_generalized_quaternion, direct_product, load_cayley_file, parse_cycles, GroupError,
    GroupTable,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    ElementaryAbelian { p: usize, k: u32 },
    Dihedral(usize),
    Quaternion(usize),
    Product(Vec<GroupSpec>),
    Perm { degree: usize, generators: Vec<String> },
    File(String),
}

impl GroupSpec {
    /// Builds the table. Relative `file:` paths resolve against `base`.
    pub fn build(&self, base: Option<&Path>, cap: usize) -> Result<GroupTable, GroupError> {
        let table = match self {
            GroupSpec::Cyclic(n) => build_cyclic(*n)?,
            GroupSpec::ElementaryAbelian { p, k } => build_elementary_abelian(*p, *k)?,
            GroupSpec::Dihedral(n) => build_dihedral(*n)?,
            GroupSpec::Quaternion(n) => build_generalized_quaternion(*n)?,
            GroupSpec::Product(parts) => {
                let mut iter = parts.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| GroupError::InvalidSpec("empty product".into()))?
                    .build(base, cap)?;
                let mut acc = first;
                for part in iter {
                    let next = part.build(base, cap)?;
                    if acc.order() * next.order() > cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    acc = direct_product(&acc, &next)?;
                }
                acc
            }
            GroupSpec::Perm { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| parse_cycles(g, *degree))
                    .collect::<Result<Vec<_>, _>>()?;
                build_from_permutations(*degree, &gens, cap)?
            }
            GroupSpec::File(path) => {
                let p = Path::new(path);
                match base {
                    Some(dir) if p.is_relative() => load_cayley_file(dir.join(p))?,
                    _ => load_cayley_file(p)?,
                }
            }
        };
        Ok(table)
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T, GroupError> {
    s.trim()
        .parse()
        .map_err(|_| GroupError::InvalidSpec(format!("bad {what}: {s:?}")))
}

// Splits on commas outside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| GroupError::InvalidSpec(format!("missing ':' in {s:?}")))?;
        match kind {
            "cyclic" => Ok(GroupSpec::Cyclic(parse_num(rest, "order")?)),
            "elab" => {
                let (p, k) = rest
                    .split_once('^')
                    .ok_or_else(|| GroupError::InvalidSpec(format!("expected p^k, got {rest:?}")))?;
                Ok(GroupSpec::ElementaryAbelian {
                    p: parse_num(p, "prime")?,
                    k: parse_num(k, "exponent")?,
                })
            }
            "dihedral" => Ok(GroupSpec::Dihedral(parse_num(rest, "parameter")?)),
            "quaternion" => Ok(GroupSpec::Quaternion(parse_num(rest, "parameter")?)),
            "product" => {
                let parts = split_top_level(rest)
                    .into_iter()
                    .map(|p| {
                        let spec: GroupSpec = p.parse()?;
                        if matches!(spec, GroupSpec::Product(_)) {
                            return Err(GroupError::InvalidSpec(
                                "nested products are not supported; list all factors".into(),
                            ));
                        }
                        Ok(spec)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if parts.len() < 2 {
                    return Err(GroupError::InvalidSpec("product needs at least two factors".into()));
                }
                Ok(GroupSpec::Product(parts))
            }
            "perm" => {
                let (degree, gens) = rest.split_once(':').ok_or_else(|| {
                    GroupError::InvalidSpec(format!("expected perm:<degree>:<generators>, got {s:?}"))
                })?;
                let generators: Vec<String> = gens
                    .split(';')
                    .map(|g| g.trim().to_string())
                    .filter(|g| !g.is_empty())
                    .collect();
                if generators.is_empty() {
                    return Err(GroupError::InvalidSpec("no generators".into()));
                }
                Ok(GroupSpec::Perm {
                    degree: parse_num(degree, "degree")?,
                    generators,
                })
            }
            "file" => Ok(GroupSpec::File(rest.trim().to_string())),
            other => Err(GroupError::InvalidSpec(format!("unknown kind {other:?}"))),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::ElementaryAbelian { p, k } => write!(f, "elab:{p}^{k}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion:{n}"),
            GroupSpec::Product(parts) => {
                f.write_str("product:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            GroupSpec::Perm { degree, generators } => {
                write!(f, "perm:{degree}:{}", generators.join(";"))
            }
            GroupSpec::File(path) => write!(f, "file:{path}"),
        }
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_ELEMENT_CAP;

    fn build(s: &str) -> GroupTable {
        s.parse::<GroupSpec>()
            .unwrap()
            .build(None, DEFAULT_ELEMENT_CAP)
            .unwrap()
    }

    #[test]
    fn parse_and_build() {
        assert_eq!(build("cyclic:7").order(), 7);
        assert_eq!(build("elab:2^3").order(), 8);
        assert_eq!(build("dihedral:5").order(), 10);
        assert_eq!(build("quaternion:3").order(), 12);
        assert_eq!(build("product:cyclic:2,cyclic:2,cyclic:3").order(), 12);
        assert_eq!(build("perm:4:(1 2 3);(2 3 4)").order(), 12);
        assert_eq!(build("product:cyclic:2,perm:3:(1,2);(1 2 3)").order(), 12);
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "cyclic:7",
            "elab:3^2",
            "dihedral:4",
            "quaternion:2",
            "product:cyclic:4,cyclic:2",
            "perm:4:(1 2 3);(2 3 4)",
            "file:tables/q8.txt",
        ] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects() {
        for s in [
            "cyclic",
            "cyclic:x",
            "elab:4",
            "product:cyclic:2",
            "product:product:cyclic:2,cyclic:2,cyclic:2",
            "perm:3:",
            "torus:3",
        ] {
            assert!(s.parse::<GroupSpec>().is_err(), "{s}");
        }
        let e = "elab:4^2"
            .parse::<GroupSpec>()
            .unwrap()
            .build(None, DEFAULT_ELEMENT_CAP)
            .unwrap_err();
        assert!(matches!(e, GroupError::InvalidParameter(_)));
    }
}
