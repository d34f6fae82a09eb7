use std::collections::HashMap;

use super::{AbelianMap, GMap};
use crate::error::{Error, Result};

/// Incrementally computed `ψ_n` for one seed.
///
/// Keeps `(1-ψ)^n` for every `n` reached so far; `ψ_n(g)` is then
/// `((1-ψ)^n(g))^-1 g`.
#[derive(Clone, Debug)]
pub struct PsiSequence {
    seed: AbelianMap,
    step: GMap,
    powers: Vec<GMap>,
    psis: Vec<AbelianMap>,
}

impl PsiSequence {
    pub fn new(seed: AbelianMap) -> PsiSequence {
        let group = seed.group().clone();
        PsiSequence {
            step: seed.one_minus(),
            powers: vec![GMap::identity(&group)],
            psis: vec![AbelianMap::zero(&group)],
            seed,
        }
    }

    pub fn seed(&self) -> &AbelianMap {
        &self.seed
    }

    /// `1 - ψ`.
    pub fn one_minus_seed(&self) -> &GMap {
        &self.step
    }

    fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.powers.len() <= n {
            let next = self.step.compose(self.powers.last().expect("nonempty"))?;
            let g = next.group().clone();
            let psi = GMap::from_fn(&g, |x| g.mul(g.inv(next.apply(x)), x));
            let k = self.powers.len();
            let psi = AbelianMap::new(psi)
                .map_err(|e| Error::Invariant(format!("ψ_{k} is not an abelian map: {e}")))?;
            self.powers.push(next);
            self.psis.push(psi);
        }
        Ok(())
    }

    /// `ψ_n`.
    pub fn psi(&mut self, n: usize) -> Result<&AbelianMap> {
        self.extend_to(n)?;
        Ok(&self.psis[n])
    }

    /// `(1-ψ)^n`.
    pub fn one_minus_power(&mut self, n: usize) -> Result<&GMap> {
        self.extend_to(n)?;
        Ok(&self.powers[n])
    }
}

/// `ψ_n = -(1-ψ)^n + 1`, by composing `1-ψ` with itself `n` times.
pub fn psi_n_recursive(psi: &AbelianMap, n: usize) -> Result<AbelianMap> {
    let mut seq = PsiSequence::new(psi.clone());
    seq.psi(n).cloned()
}

/// Row `n` of Pascal's triangle modulo `m`.
fn binomial_row_mod(n: usize, m: usize) -> Vec<usize> {
    let mut row = vec![1 % m];
    for _ in 0..n {
        let mut next = vec![1 % m; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % m;
        }
        row = next;
    }
    row
}

/// `ψ_n(g) = ∏_{i=1..n} ψ^i(g^{(-1)^(i-1) C(n,i)})`, valid for `n >= 1`.
///
/// Exponents are reduced modulo the order of `g`, so no big integers are
/// needed.
pub fn psi_n_binomial(psi: &AbelianMap, n: usize) -> Result<AbelianMap> {
    if n == 0 {
        return Err(Error::OutOfRange("n = 0 for the binomial formula".into()));
    }
    let group = psi.group().clone();
    let t = group.table();
    let mut iterates: Vec<GMap> = Vec::with_capacity(n);
    iterates.push(psi.as_map().clone());
    for _ in 1..n {
        let next = psi.compose(iterates.last().expect("nonempty"))?;
        iterates.push(next);
    }
    let mut rows: HashMap<usize, Vec<usize>> = HashMap::new();
    let img = (0..group.order())
        .map(|g| {
            let m = t.element_order(g);
            let row = rows.entry(m).or_insert_with(|| binomial_row_mod(n, m));
            (1..=n).fold(0, |acc, i| {
                let c = row[i];
                let e = if i % 2 == 1 { c } else { (m - c) % m };
                t.mul(acc, iterates[i - 1].apply(t.pow(g, e as i64)))
            })
        })
        .collect();
    AbelianMap::new(GMap::new(group, img)?)
        .map_err(|e| Error::Invariant(format!("binomial ψ_{n} is not an abelian map: {e}")))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::*;
    use crate::nearring::{enumerate_abelian_maps, parse_abelian_map};

    #[test]
    fn pascal_mod() {
        assert_eq!(binomial_row_mod(4, 100), vec![1, 4, 6, 4, 1]);
        assert_eq!(binomial_row_mod(4, 3), vec![1, 1, 0, 1, 1]);
        assert_eq!(binomial_row_mod(0, 1), vec![0]);
    }

    #[test]
    fn base_cases() {
        let g = Arc::new(make_dihedral(4).unwrap());
        let psi = parse_abelian_map(&g, "r->1; s->r^2s").unwrap();
        assert_eq!(psi_n_recursive(&psi, 0).unwrap(), AbelianMap::zero(&g));
        assert_eq!(psi_n_recursive(&psi, 1).unwrap(), psi);
        assert_eq!(psi_n_binomial(&psi, 1).unwrap(), psi);
        // ψ has a fixed point and ψ² = ψ, so every ψ_n with n >= 1 is ψ.
        assert_eq!(psi_n_recursive(&psi, 2).unwrap(), psi);
        assert!(matches!(psi_n_binomial(&psi, 0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn metacyclic_closed_form() {
        // ψ(s) = 1, ψ(t) = t^(1-j) gives ψ_n(t) = t^(1-j^n).
        let g = Arc::new(make_metacyclic(7, 3, 2).unwrap());
        let t = g.generator("t").unwrap();
        let psi = parse_abelian_map(&g, "s->1; t->t^-1").unwrap();
        for n in 1..8u32 {
            let expect = g.table().pow(t, 1 - 2i64.pow(n));
            assert_eq!(psi_n_recursive(&psi, n as usize).unwrap().apply(t), expect);
            assert_eq!(psi_n_binomial(&psi, n as usize).unwrap().apply(t), expect);
        }
    }

    #[test]
    fn fpf_dihedral_alternates() {
        // ψ(r) = s, ψ(s) = 1 on D4 is fixed point free with ψ² = 0.
        let g = Arc::new(make_dihedral(4).unwrap());
        let psi = parse_abelian_map(&g, "r->s; s->1").unwrap();
        assert!(psi.is_fixed_point_free());
        for k in 1..10 {
            let expect = if k % 2 == 1 { psi.clone() } else { AbelianMap::zero(&g) };
            assert_eq!(psi_n_binomial(&psi, k).unwrap(), expect, "k = {k}");
            assert_eq!(psi_n_recursive(&psi, k).unwrap(), expect, "k = {k}");
        }
    }

    #[test]
    fn routes_agree_on_all_maps_of_small_groups() {
        for g in [make_dihedral(6).unwrap(), make_affine(5).unwrap(), make_symmetric(4).unwrap()] {
            let g = Arc::new(g);
            for psi in enumerate_abelian_maps(&g) {
                let mut seq = PsiSequence::new(psi.clone());
                for n in 1..=12 {
                    assert_eq!(seq.psi(n).unwrap(), &psi_n_binomial(&psi, n).unwrap());
                }
            }
        }
    }
}
