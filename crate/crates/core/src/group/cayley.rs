use std::fmt::Write as _;

use super::{FiniteGroup, Table};
use crate::error::{Error, Result};

/// Serializes a group: the order on the first line, then one row of
/// space-separated products per element, then `index name` lines.
pub fn to_cayley_text(group: &FiniteGroup) -> String {
    let n = group.order();
    let mut out = format!("{n}\n");
    for a in 0..n {
        let row: Vec<String> = group.table().row(a).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for (i, name) in group.names().iter().enumerate() {
        let _ = writeln!(out, "{i} {name}");
    }
    out
}

/// Parses the format written by [`to_cayley_text`]. Name lines are
/// optional; missing names default to the element index. Generators are
/// chosen greedily and named after their elements.
pub fn from_cayley_text(text: &str) -> Result<FiniteGroup> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let order: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty Cayley table".into()))?
        .parse()
        .map_err(|_| Error::Parse("first line must be the order".into()))?;
    let mut cells = Vec::with_capacity(order * order);
    for row in 0..order {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {row}")))?;
        let entries = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != order {
            return Err(Error::Parse(format!(
                "row {row} has {} entries, expected {order}",
                entries.len()
            )));
        }
        cells.extend(entries);
    }
    let table = Table::from_cells(order, cells)?;
    let mut names: Vec<String> = (0..order).map(|i| i.to_string()).collect();
    for line in lines {
        let (idx, name) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("bad name line {line:?}")))?;
        let idx: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad name index {idx:?}")))?;
        if idx >= order {
            return Err(Error::Parse(format!("name index {idx} out of range")));
        }
        names[idx] = name.trim().to_string();
    }
    FiniteGroup::from_table_with_names(table, names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_dihedral, make_symmetric};

    #[test]
    fn round_trip_is_table_identical() {
        for g in [make_dihedral(5).unwrap(), make_symmetric(4).unwrap()] {
            let back = from_cayley_text(&to_cayley_text(&g)).unwrap();
            assert_eq!(back.table(), g.table());
            assert_eq!(back.names(), g.names());
        }
    }

    #[test]
    fn names_are_optional() {
        let g = from_cayley_text("2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.names(), ["0", "1"]);
    }

    #[test]
    fn malformed_input() {
        assert!(from_cayley_text("").is_err());
        assert!(from_cayley_text("2\n0 1\n").is_err());
        assert!(from_cayley_text("2\n0 1\n1 1\n").is_err());
        assert!(from_cayley_text("2\n0 1\n1 0\n7 x\n").is_err());
    }
}
