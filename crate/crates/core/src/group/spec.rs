//! Textual group descriptors:
//!
//! ```text
//! cyclic:n | dihedral:n | symmetric:n | metacyclic:h,k,b | metacyclic:h,k,b,n
//! | affine:p | product(spec,spec) | table:path
//! ```
//!
//! `metacyclic:h,k,b,n` builds `F(h,k,b^n)` on the validated base triple.
//! `table:path` loads a Cayley table file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::families::*;
use super::{from_cayley_text, FiniteGroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Metacyclic { h: usize, k: usize, b: usize, power: Option<u64> },
    Affine(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(PathBuf),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => make_cyclic(*n),
            GroupSpec::Dihedral(n) => make_dihedral(*n),
            GroupSpec::Symmetric(n) => make_symmetric(*n),
            GroupSpec::Metacyclic { h, k, b, power: None } => make_metacyclic(*h, *k, *b),
            GroupSpec::Metacyclic { h, k, b, power: Some(n) } => {
                make_metacyclic_power(*h, *k, *b, *n)
            }
            GroupSpec::Affine(p) => make_affine(*p),
            GroupSpec::Product(a, b) => make_product(&a.build()?, &b.build()?),
            GroupSpec::Table(path) => from_cayley_text(&std::fs::read_to_string(path)?),
        }
    }

    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }
}

fn parse_ints<T: FromStr>(args: &str, count: std::ops::RangeInclusive<usize>) -> Result<Vec<T>> {
    let vals = args
        .split(',')
        .map(|a| {
            a.trim()
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("bad integer {a:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if !count.contains(&vals.len()) {
        return Err(Error::Parse(format!("wrong number of parameters in {args:?}")));
    }
    Ok(vals)
}

/// Splits `a,b` at the top-level comma.
fn split_pair(inner: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                // A comma inside `metacyclic:h,k,b` is not a separator: only
                // split where the right side starts a new descriptor.
                let rest = inner[i + 1..].trim_start();
                let starts_spec = ["cyclic", "dihedral", "symmetric", "metacyclic", "affine", "product", "table"]
                    .iter()
                    .any(|kw| rest.starts_with(kw));
                if starts_spec {
                    return Ok((&inner[..i], &inner[i + 1..]));
                }
            }
            _ => {}
        }
    }
    Err(Error::Parse(format!("expected two factors in product({inner})")))
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let (a, b) = split_pair(inner)?;
            return Ok(GroupSpec::product(a.parse()?, b.parse()?));
        }
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unrecognized group spec {s:?}")))?;
        Ok(match kind.trim() {
            "cyclic" => GroupSpec::Cyclic(parse_ints(args, 1..=1)?[0]),
            "dihedral" => GroupSpec::Dihedral(parse_ints(args, 1..=1)?[0]),
            "symmetric" => GroupSpec::Symmetric(parse_ints(args, 1..=1)?[0]),
            "affine" => GroupSpec::Affine(parse_ints(args, 1..=1)?[0]),
            "metacyclic" => {
                let v: Vec<u64> = parse_ints(args, 3..=4)?;
                GroupSpec::Metacyclic {
                    h: v[0] as usize,
                    k: v[1] as usize,
                    b: v[2] as usize,
                    power: v.get(3).copied(),
                }
            }
            "table" => GroupSpec::Table(PathBuf::from(args.trim())),
            other => return Err(Error::Parse(format!("unknown group family {other:?}"))),
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Metacyclic { h, k, b, power: None } => write!(f, "metacyclic:{h},{k},{b}"),
            GroupSpec::Metacyclic { h, k, b, power: Some(n) } => {
                write!(f, "metacyclic:{h},{k},{b},{n}")
            }
            GroupSpec::Affine(p) => write!(f, "affine:{p}"),
            GroupSpec::Product(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_family() {
        for text in [
            "cyclic:6",
            "dihedral:4",
            "symmetric:3",
            "metacyclic:7,3,2",
            "metacyclic:13,4,5,2",
            "affine:5",
            "product(dihedral:3,dihedral:3)",
            "product(metacyclic:7,3,2,product(cyclic:2,cyclic:1))",
        ] {
            let spec: GroupSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            spec.build().unwrap();
        }
    }

    #[test]
    fn product_orders() {
        let g = "product(dihedral:3,dihedral:3)".parse::<GroupSpec>().unwrap().build().unwrap();
        assert_eq!(g.order(), 36);
    }

    #[test]
    fn rejects_garbage() {
        assert!("dihedral".parse::<GroupSpec>().is_err());
        assert!("dihedral:x".parse::<GroupSpec>().is_err());
        assert!("torus:3".parse::<GroupSpec>().is_err());
        assert!("product(cyclic:2)".parse::<GroupSpec>().is_err());
        assert!("metacyclic:7,3".parse::<GroupSpec>().is_err());
    }
}
