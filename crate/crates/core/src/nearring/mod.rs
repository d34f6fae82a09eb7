//! The near-ring `Map(G)` of all self-maps of a finite group, abelian maps,
//! and the sequence `ψ_n = -(1-ψ)^n + 1` derived from one abelian map.
//!
//! Addition is pointwise multiplication, negation is pointwise inversion,
//! and multiplication is composition. Only the right distributive law
//! `(φ+ψ)χ = φχ + ψχ` holds in general.

mod parse;
mod psi;

use std::ops::Deref;
use std::sync::Arc;

pub use parse::{parse_abelian_map, parse_map_spec};
pub use psi::{psi_n_binomial, psi_n_recursive, PsiSequence};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// A total function `G -> G`, stored as an image table.
#[derive(Clone, Debug)]
pub struct GMap {
    group: Arc<FiniteGroup>,
    img: Vec<Elem>,
}

impl PartialEq for GMap {
    fn eq(&self, other: &Self) -> bool {
        self.img == other.img && same_group(&self.group, &other.group)
    }
}

impl Eq for GMap {}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.table() == b.table()
}

impl GMap {
    pub fn new(group: Arc<FiniteGroup>, img: Vec<Elem>) -> Result<GMap> {
        let n = group.order();
        if img.len() != n || img.iter().any(|&x| x >= n) {
            return Err(Error::InvalidParameter(format!(
                "image table must have {n} entries in 0..{n}"
            )));
        }
        Ok(GMap { group, img })
    }

    pub(crate) fn from_fn(group: &Arc<FiniteGroup>, f: impl Fn(Elem) -> Elem) -> GMap {
        let img = (0..group.order()).map(f).collect();
        GMap { group: Arc::clone(group), img }
    }

    /// The identity map `1`.
    pub fn identity(group: &Arc<FiniteGroup>) -> GMap {
        GMap::from_fn(group, |x| x)
    }

    /// The trivial map `0`.
    pub fn zero(group: &Arc<FiniteGroup>) -> GMap {
        GMap::from_fn(group, |_| 0)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn images(&self) -> &[Elem] {
        &self.img
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.img[x]
    }

    fn check_domain(&self, other: &GMap) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    /// `(φ+ψ)(g) = φ(g)ψ(g)`.
    pub fn add(&self, other: &GMap) -> Result<GMap> {
        self.check_domain(other)?;
        Ok(GMap::from_fn(&self.group, |x| self.group.mul(self.img[x], other.img[x])))
    }

    /// `(-φ)(g) = φ(g)^-1`, the additive inverse. On endomorphisms this is
    /// `g ↦ φ(g^-1)`.
    pub fn neg(&self) -> GMap {
        GMap::from_fn(&self.group, |x| self.group.inv(self.img[x]))
    }

    /// `φ - ψ = φ + (-ψ)`.
    pub fn sub(&self, other: &GMap) -> Result<GMap> {
        self.add(&other.neg())
    }

    /// `(φψ)(g) = φ(ψ(g))`.
    pub fn compose(&self, other: &GMap) -> Result<GMap> {
        self.check_domain(other)?;
        Ok(GMap::from_fn(&self.group, |x| self.img[other.img[x]]))
    }

    /// `1 - φ`, i.e. `g ↦ g φ(g)^-1`.
    pub fn one_minus(&self) -> GMap {
        GMap::from_fn(&self.group, |x| self.group.mul(x, self.group.inv(self.img[x])))
    }

    /// `φ^n` under composition; `φ^0 = 1`.
    pub fn pow(&self, n: usize) -> GMap {
        let mut acc = GMap::identity(&self.group);
        for _ in 0..n {
            acc = GMap::from_fn(&self.group, |x| self.img[acc.img[x]]);
        }
        acc
    }

    /// Sorted distinct values.
    pub fn image(&self) -> Vec<Elem> {
        let mut im = self.img.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    /// First pair `(a, b)` with `φ(ab) != φ(a)φ(b)`.
    pub fn homomorphism_witness(&self) -> Option<(Elem, Elem)> {
        let g = &self.group;
        let n = g.order();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.img[g.mul(a, b)] != g.mul(self.img[a], self.img[b]))
    }

    pub fn is_endomorphism(&self) -> bool {
        self.homomorphism_witness().is_none()
    }

    pub fn has_abelian_image(&self) -> bool {
        let im = self.image();
        let t = self.group.table();
        im.iter().all(|&a| im.iter().all(|&b| t.commute(a, b)))
    }

    pub fn is_abelian_map(&self) -> bool {
        self.is_endomorphism() && self.has_abelian_image()
    }

    /// Non-identity elements with `φ(g) = g`.
    pub fn fixed_points(&self) -> Vec<Elem> {
        (1..self.img.len()).filter(|&x| self.img[x] == x).collect()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_points().is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        self.image().len() == self.img.len()
    }

    /// Renders the map as `x->y` pairs using element names.
    pub fn describe(&self) -> String {
        self.group
            .generators()
            .iter()
            .map(|(name, g)| format!("{name}->{}", self.group.name(self.img[*g])))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub fn map_add(phi: &GMap, psi: &GMap) -> Result<GMap> {
    phi.add(psi)
}

pub fn map_neg(phi: &GMap) -> GMap {
    phi.neg()
}

pub fn map_compose(phi: &GMap, psi: &GMap) -> Result<GMap> {
    phi.compose(psi)
}

pub fn one_minus(phi: &GMap) -> GMap {
    phi.one_minus()
}

pub fn is_abelian_map(phi: &GMap) -> bool {
    phi.is_abelian_map()
}

pub fn is_fixed_point_free(phi: &GMap) -> bool {
    phi.is_fixed_point_free()
}

/// An endomorphism with abelian image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianMap(GMap);

impl AbelianMap {
    pub fn new(map: GMap) -> Result<AbelianMap> {
        if let Some((a, b)) = map.homomorphism_witness() {
            let g = &map.group;
            return Err(Error::NotHomomorphism(format!(
                "image of {}·{} differs from product of images",
                g.name(a),
                g.name(b)
            )));
        }
        if !map.has_abelian_image() {
            return Err(Error::NotAbelianMap("image is not commutative".into()));
        }
        Ok(AbelianMap(map))
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> AbelianMap {
        AbelianMap(GMap::zero(group))
    }

    pub fn as_map(&self) -> &GMap {
        &self.0
    }

    pub fn into_map(self) -> GMap {
        self.0
    }
}

impl Deref for AbelianMap {
    type Target = GMap;

    fn deref(&self) -> &GMap {
        &self.0
    }
}

/// Extends generator images to a homomorphism by walking the Cayley graph
/// from the identity. Returns `None` when the images violate a relation.
pub fn extend_from_generators(group: &Arc<FiniteGroup>, images: &[Elem]) -> Option<GMap> {
    let gens = group.generators();
    assert_eq!(gens.len(), images.len(), "one image per generator");
    let n = group.order();
    let mut img: Vec<Option<Elem>> = vec![None; n];
    img[0] = Some(0);
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = img[x].expect("queued");
        for ((_, g), &gi) in gens.iter().zip(images) {
            let y = group.mul(x, *g);
            let fy = group.mul(fx, gi);
            match img[y] {
                Some(prev) if prev != fy => return None,
                Some(_) => {}
                None => {
                    img[y] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    let img = img.into_iter().collect::<Option<Vec<_>>>()?;
    Some(GMap { group: Arc::clone(group), img })
}

/// All abelian maps of `group`, ordered lexicographically by the tuple of
/// generator images.
pub fn enumerate_abelian_maps(group: &Arc<FiniteGroup>) -> Vec<AbelianMap> {
    let t = group.table();
    let orders = t.element_orders();
    let candidates: Vec<Vec<Elem>> = group
        .generators()
        .iter()
        .map(|&(_, g)| (0..group.order()).filter(|&x| orders[g] % orders[x] == 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(candidates.len());
    fn walk(
        group: &Arc<FiniteGroup>,
        candidates: &[Vec<Elem>],
        chosen: &mut Vec<Elem>,
        out: &mut Vec<AbelianMap>,
    ) {
        let depth = chosen.len();
        if depth == candidates.len() {
            if let Some(map) = extend_from_generators(group, chosen) {
                if let Ok(ab) = AbelianMap::new(map) {
                    out.push(ab);
                }
            }
            return;
        }
        for &c in &candidates[depth] {
            if chosen.iter().all(|&p| group.table().commute(p, c)) {
                chosen.push(c);
                walk(group, candidates, chosen, out);
                chosen.pop();
            }
        }
    }
    walk(group, &candidates, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn d4() -> Arc<FiniteGroup> {
        Arc::new(make_dihedral(4).unwrap())
    }

    fn d4_seed(g: &Arc<FiniteGroup>) -> AbelianMap {
        parse_abelian_map(g, "r->1; s->r^2*s").unwrap()
    }

    #[test]
    fn one_plus_minus_one_is_zero() {
        let g = d4();
        let one = GMap::identity(&g);
        assert_eq!(map_add(&one, &map_neg(&one)).unwrap(), GMap::zero(&g));
    }

    #[test]
    fn one_plus_one_squares() {
        let g = d4();
        let one = GMap::identity(&g);
        let r = g.generator("r").unwrap();
        assert_eq!(map_add(&one, &one).unwrap().apply(r), g.parse_elem("r^2").unwrap());
    }

    #[test]
    fn right_distributivity_on_d4() {
        let g = d4();
        let maps = [GMap::zero(&g), GMap::identity(&g), d4_seed(&g).into_map()];
        for phi in &maps {
            for psi in &maps {
                for chi in &maps {
                    let lhs = phi.add(psi).unwrap().compose(chi).unwrap();
                    let rhs = phi.compose(chi).unwrap().add(&psi.compose(chi).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn domain_mismatch() {
        let a = GMap::identity(&d4());
        let b = GMap::identity(&Arc::new(make_cyclic(8).unwrap()));
        assert!(matches!(a.add(&b), Err(Error::DomainMismatch)));
        assert!(matches!(a.compose(&b), Err(Error::DomainMismatch)));
    }

    #[test]
    fn abelian_map_recognition() {
        let g = d4();
        assert!(is_abelian_map(&d4_seed(&g)));
        assert!(!is_abelian_map(&GMap::identity(&g)));
        assert!(is_abelian_map(&GMap::zero(&g)));
        assert!(matches!(
            AbelianMap::new(GMap::identity(&g)),
            Err(Error::NotAbelianMap(_))
        ));
    }

    #[test]
    fn abelian_maps_are_class_functions() {
        let g = d4();
        for psi in enumerate_abelian_maps(&g) {
            for a in 0..g.order() {
                for x in 0..g.order() {
                    let conj = g.table().product(&[g.inv(x), a, x]);
                    assert_eq!(psi.apply(conj), psi.apply(a));
                }
            }
        }
    }

    #[test]
    fn enumeration_contains_d4_seed() {
        let g = d4();
        let all = enumerate_abelian_maps(&g);
        assert!(all.contains(&d4_seed(&g)));
        assert!(all.contains(&AbelianMap::zero(&g)));
    }

    #[test]
    fn enumeration_on_cyclic_6_finds_all_powers() {
        let g = Arc::new(make_cyclic(6).unwrap());
        assert_eq!(enumerate_abelian_maps(&g).len(), 6);
    }

    #[test]
    fn enumeration_on_s5_kills_even_permutations() {
        let g = Arc::new(make_symmetric(5).unwrap());
        let maps = enumerate_abelian_maps(&g);
        // The sign map composed with an element of order at most 2: 1 + 25.
        assert_eq!(maps.len(), 26);
        let even = g.table().generated_subgroup(&[g.parse_elem("c").unwrap(), g.parse_elem("t*c*t*c^-1").unwrap()]);
        assert_eq!(even.len(), 60);
        for psi in &maps {
            assert!(even.iter().all(|&x| psi.apply(x) == 0));
        }
    }

    #[test]
    fn fixed_points() {
        let g = d4();
        let psi = d4_seed(&g);
        assert!(!is_fixed_point_free(&psi));
        assert_eq!(psi.fixed_points(), vec![g.parse_elem("r^2s").unwrap()]);
        assert!(is_fixed_point_free(&GMap::zero(&g)));

        let f = Arc::new(make_metacyclic(7, 3, 2).unwrap());
        let psi = parse_abelian_map(&f, "s->1; t->t^-1").unwrap();
        assert!(is_fixed_point_free(&psi));
    }

    #[test]
    fn one_minus_examples() {
        let g = d4();
        let psi = d4_seed(&g);
        let s = g.generator("s").unwrap();
        assert_eq!(one_minus(&psi).apply(s), g.parse_elem("r^2").unwrap());
        assert_eq!(one_minus(&GMap::zero(&g)), GMap::identity(&g));

        let aff = Arc::new(make_affine(5).unwrap());
        let psi = parse_abelian_map(&aff, "g->1; α->α^-1").unwrap();
        let a = aff.generator("α").unwrap();
        assert_eq!(one_minus(&psi).apply(a), aff.parse_elem("α^2").unwrap());
    }
}
