use std::sync::Arc;

use super::{extend_from_generators, AbelianMap, GMap};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Parses `gen->word; gen->word; ...` and extends the generator images to a
/// homomorphism. Every generator must be assigned exactly once.
pub fn parse_map_spec(group: &Arc<FiniteGroup>, text: &str) -> Result<GMap> {
    let gens = group.generators();
    let mut images: Vec<Option<usize>> = vec![None; gens.len()];
    for clause in text.split([';', '\n']).map(str::trim).filter(|c| !c.is_empty()) {
        let (lhs, rhs) = clause
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("expected `gen->word`, found {clause:?}")))?;
        let lhs = lhs.trim();
        let slot = gens
            .iter()
            .position(|(n, _)| n == lhs)
            .ok_or_else(|| Error::UnknownGenerator(lhs.to_string()))?;
        if images[slot].is_some() {
            return Err(Error::Parse(format!("generator {lhs} assigned twice")));
        }
        images[slot] = Some(group.parse_elem(rhs)?);
    }
    let images = images
        .iter()
        .zip(gens)
        .map(|(img, (name, _))| {
            img.ok_or_else(|| Error::Parse(format!("generator {name} is not assigned")))
        })
        .collect::<Result<Vec<_>>>()?;
    extend_from_generators(group, &images).ok_or_else(|| {
        Error::NotHomomorphism("generator images do not respect the group relations".into())
    })
}

/// [`parse_map_spec`] followed by the abelian-map check.
pub fn parse_abelian_map(group: &Arc<FiniteGroup>, text: &str) -> Result<AbelianMap> {
    AbelianMap::new(parse_map_spec(group, text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_dihedral;

    #[test]
    fn product_names_parse_as_images() {
        let d = make_dihedral(3).unwrap();
        let g = Arc::new(crate::group::make_product(&d, &d).unwrap());
        let by_name = parse_map_spec(&g, "1.r->(1,1); 1.s->(1,s); 2.r->1; 2.s->(s,1)").unwrap();
        let by_word = parse_map_spec(&g, "1.r->1; 1.s->2.s; 2.r->1; 2.s->1.s").unwrap();
        assert_eq!(by_name.images(), by_word.images());
    }

    #[test]
    fn parse_errors() {
        let g = Arc::new(make_dihedral(4).unwrap());
        assert!(matches!(parse_map_spec(&g, "r->1"), Err(Error::Parse(_))));
        assert!(matches!(parse_map_spec(&g, "r->1; s->1; r->1"), Err(Error::Parse(_))));
        assert!(matches!(parse_map_spec(&g, "r->1; q->1"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(parse_map_spec(&g, "r 1; s->1"), Err(Error::Parse(_))));
        // r has order 4 but s has order 2: r -> s is fine, r -> r breaks nothing,
        // but s -> r violates s^2 = 1.
        assert!(matches!(parse_map_spec(&g, "r->1; s->r"), Err(Error::NotHomomorphism(_))));
        assert!(matches!(parse_abelian_map(&g, "r->r; s->s"), Err(Error::NotAbelianMap(_))));
    }

    #[test]
    fn parses_d4_seed() {
        let g = Arc::new(make_dihedral(4).unwrap());
        let m = parse_map_spec(&g, "r->1; s->r^2*s").unwrap();
        assert_eq!(m.apply(g.generator("s").unwrap()), g.parse_elem("r^2s").unwrap());
        assert_eq!(m.describe(), "r->1; s->r^2s");
    }
}
