//! Plain-text Cayley table files.
//!
//! ```text
//! order 4
//! name C2xC2
//! 0 1 2 3
//! 1 0 3 2
//! 2 3 0 1
//! 3 2 1 0
//! ```
//!
//! Entry `(i, j)` is the index of `g_i · g_j`; index 0 must be the identity.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use super::{GroupError, GroupTable};

pub fn parse_cayley(text: &str) -> Result<GroupTable, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, header) = lines.next().ok_or(GroupError::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let order: usize = header
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GroupError::Parse {
            line: ln,
            message: format!("expected `order N`, found {header:?}"),
        })?;
    if order == 0 {
        return Err(GroupError::Parse {
            line: ln,
            message: "order must be positive".into(),
        });
    }
    if order == 1 {
        return Err(GroupError::TrivialGroup);
    }

    let mut name = format!("table{order}");
    let mut rows = Vec::with_capacity(order);
    for (ln, line) in lines {
        if rows.is_empty() {
            if let Some(label) = line.strip_prefix("name") {
                name = label.trim().to_string();
                continue;
            }
        }
        if rows.len() == order {
            return Err(GroupError::Parse {
                line: ln,
                message: format!("more than {order} rows"),
            });
        }
        let row_idx = rows.len();
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(col, tok)| {
                let v: i64 = tok.parse().map_err(|_| GroupError::Parse {
                    line: ln,
                    message: format!("not an integer: {tok:?}"),
                })?;
                if v < 0 || v >= order as i64 {
                    return Err(GroupError::BadIndex {
                        row: row_idx,
                        col,
                        value: v,
                        order,
                    });
                }
                Ok(v as usize)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != order {
            return Err(GroupError::Parse {
                line: ln,
                message: format!("row has {} entries, expected {order}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != order {
        return Err(GroupError::Parse {
            line: text.lines().count(),
            message: format!("found {} rows, expected {order}", rows.len()),
        });
    }
    GroupTable::from_rows(name, rows)
}

pub fn write_cayley(group: &GroupTable) -> String {
    let mut out = String::new();
    writeln!(out, "order {}", group.order()).unwrap();
    writeln!(out, "name {}", group.name()).unwrap();
    for a in group.elements() {
        let row: Vec<String> = group.row(a).map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn load_cayley_file(path: impl AsRef<Path>) -> Result<GroupTable, GroupError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_cayley(&text)
}

pub fn save_cayley_file(group: &GroupTable, path: impl AsRef<Path>) -> Result<(), GroupError> {
    let path = path.as_ref();
    std::fs::write(path, write_cayley(group)).map_err(|e| GroupError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
