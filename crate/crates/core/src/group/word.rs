use std::fmt;
use std::str::FromStr;

use super::{Elem, FiniteGroup};
use crate::error::{Error, Result};

/// A product of generator powers, read left to right. The empty word is the
/// identity.
///
/// Syntax: factors `name` or `name^k` (k may be negative, optionally in
/// parentheses), separated by `*`, whitespace, or nothing at all when the
/// previous factor ends in an exponent (`r^2s`). The factor `1` is the
/// identity. Names are runs of characters other than whitespace and
/// `* ^ ( ) ; ,`, so prefixed names such as `1.r` work.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word(pub Vec<(String, i64)>);

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '*' | '^' | '(' | ')' | ';' | ',')
}

fn parse_exponent(chars: &[char], pos: &mut usize) -> Result<i64> {
    let paren = chars.get(*pos) == Some(&'(');
    if paren {
        *pos += 1;
    }
    let start = *pos;
    if matches!(chars.get(*pos), Some('-') | Some('+')) {
        *pos += 1;
    }
    while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
        *pos += 1;
    }
    let text: String = chars[start..*pos].iter().collect();
    let value = text
        .parse::<i64>()
        .map_err(|_| Error::Parse(format!("bad exponent {text:?}")))?;
    if paren {
        if chars.get(*pos) != Some(&')') {
            return Err(Error::Parse("unclosed exponent parenthesis".into()));
        }
        *pos += 1;
    }
    Ok(value)
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let chars: Vec<char> = s.chars().collect();
        let mut factors = Vec::new();
        let mut pos = 0;
        while pos < chars.len() {
            let c = chars[pos];
            if c.is_whitespace() || c == '*' {
                pos += 1;
                continue;
            }
            if !is_name_char(c) {
                return Err(Error::Parse(format!("unexpected {c:?} in word {s:?}")));
            }
            let start = pos;
            while pos < chars.len() && is_name_char(chars[pos]) {
                pos += 1;
            }
            let name: String = chars[start..pos].iter().collect();
            let exp = if chars.get(pos) == Some(&'^') {
                pos += 1;
                parse_exponent(&chars, &mut pos)?
            } else {
                1
            };
            if name != "1" {
                factors.push((name, exp));
            }
        }
        Ok(Word(factors))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (name, exp)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match exp {
                1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{exp}")?,
            }
        }
        Ok(())
    }
}

/// Splits a run like `rs` into known generator names, longest match first.
fn split_names(group: &FiniteGroup, token: &str) -> Option<Vec<Elem>> {
    if token.is_empty() {
        return Some(Vec::new());
    }
    let mut candidates: Vec<&(String, Elem)> = group
        .generators()
        .iter()
        .filter(|(n, _)| token.starts_with(n.as_str()))
        .collect();
    candidates.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));
    candidates.into_iter().find_map(|(n, g)| {
        let mut rest = split_names(group, &token[n.len()..])?;
        rest.insert(0, *g);
        Some(rest)
    })
}

impl Word {
    pub fn evaluate(&self, group: &FiniteGroup) -> Result<Elem> {
        let t = group.table();
        let mut acc = 0;
        for (name, exp) in &self.0 {
            let value = match group.generator(name) {
                Some(g) => t.pow(g, *exp),
                None => {
                    let parts = split_names(group, name)
                        .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                    let (last, init) = parts.split_last().expect("nonempty token");
                    t.mul(t.product(init), t.pow(*last, *exp))
                }
            };
            acc = t.mul(acc, value);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_affine, make_dihedral, make_product};

    #[test]
    fn parses_and_evaluates_in_d4() {
        let d4 = make_dihedral(4).unwrap();
        let r = d4.generator("r").unwrap();
        let s = d4.generator("s").unwrap();
        let r2s = d4.mul(d4.mul(r, r), s);
        assert_eq!(d4.parse_elem("r^2*s").unwrap(), r2s);
        assert_eq!(d4.parse_elem("r^2s").unwrap(), r2s);
        assert_eq!(d4.parse_elem("r r s").unwrap(), r2s);
        assert_eq!(d4.parse_elem("rrs").unwrap(), r2s);
        assert_eq!(d4.parse_elem("r^(-2)*s").unwrap(), r2s);
        assert_eq!(d4.parse_elem("").unwrap(), 0);
        assert_eq!(d4.parse_elem("1").unwrap(), 0);
        assert_eq!(d4.parse_elem("r^-1").unwrap(), d4.inv(r));
    }

    #[test]
    fn unknown_generator_is_an_error() {
        let d4 = make_dihedral(4).unwrap();
        assert!(matches!(d4.parse_elem("q"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(d4.parse_elem("r^x"), Err(Error::Parse(_))));
    }

    #[test]
    fn prefixed_and_unicode_names() {
        let d3 = make_dihedral(3).unwrap();
        let p = make_product(&d3, &d3).unwrap();
        let a = p.parse_elem("1.s*2.s").unwrap();
        assert_eq!(a, p.mul(p.generator("1.s").unwrap(), p.generator("2.s").unwrap()));
        let aff = make_affine(5).unwrap();
        assert_eq!(aff.parse_elem("α^4").unwrap(), 0);
    }

    #[test]
    fn display_round_trips() {
        let w: Word = "r^2*s*t^-1".parse().unwrap();
        assert_eq!(w.to_string(), "r^2*s*t^-1");
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        assert_eq!(Word::default().to_string(), "1");
    }
}
