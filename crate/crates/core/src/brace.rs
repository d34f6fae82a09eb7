//! The operations `g ∘_n h = g ψ_n(g^-1) h ψ_n(g)`, the braces
//! `(G, ∘_m, ∘_n)` they form, and the block of all distinct operations
//! generated by one abelian map.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{find_isomorphism, is_isomorphism, Elem, FiniteGroup, Table};
use crate::nearring::{AbelianMap, GMap, PsiSequence};

/// The group `(G, ∘_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleOp {
    pub n: usize,
    pub table: Table,
    pub psi: AbelianMap,
}

impl CircleOp {
    /// Builds `∘_n` from `ψ_n`, validating the group axioms and the inverse
    /// formula `g^{∘-1} = ψ_n(g) g^-1 ψ_n(g^-1)`.
    pub fn from_psi(group: &FiniteGroup, psi_n: AbelianMap, n: usize) -> Result<CircleOp> {
        let order = group.order();
        let mut cells = Vec::with_capacity(order * order);
        for g in 0..order {
            let left = group.mul(g, psi_n.apply(group.inv(g)));
            let right = psi_n.apply(g);
            for h in 0..order {
                cells.push(group.mul(group.mul(left, h), right));
            }
        }
        let table = Table::from_cells(order, cells)
            .map_err(|e| Error::Invariant(format!("∘_{n} is not a group: {e}")))?;
        for g in 0..order {
            let claimed = group
                .table()
                .product(&[psi_n.apply(g), group.inv(g), psi_n.apply(group.inv(g))]);
            if table.inv(g) != claimed {
                return Err(Error::Invariant(format!(
                    "inverse of {} in ∘_{n} is not ψ_n(g) g^-1 ψ_n(g^-1)",
                    group.name(g)
                )));
            }
        }
        Ok(CircleOp { n, table, psi: psi_n })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_abelian()
    }
}

/// `∘_n` for the abelian map `psi`.
pub fn build_circle_op(group: &Arc<FiniteGroup>, psi: &AbelianMap, n: usize) -> Result<CircleOp> {
    let mut seq = PsiSequence::new(psi.clone());
    let psi_n = seq.psi(n)?.clone();
    CircleOp::from_psi(group, psi_n, n)
}

/// Checks `g ∘_{n+1} h = ((g ψ(g^-1)) ∘_n h) ψ(g)` for all `g, h`.
pub fn verify_circle_recursion(group: &Arc<FiniteGroup>, psi: &AbelianMap, n: usize) -> Result<bool> {
    let mut seq = PsiSequence::new(psi.clone());
    let cur = CircleOp::from_psi(group, seq.psi(n)?.clone(), n)?;
    let next = CircleOp::from_psi(group, seq.psi(n + 1)?.clone(), n + 1)?;
    let step = seq.one_minus_seed();
    let order = group.order();
    Ok((0..order).all(|g| {
        (0..order).all(|h| {
            next.table.mul(g, h) == group.mul(cur.table.mul(step.apply(g), h), psi.apply(g))
        })
    }))
}

/// First `(x, y, z)` violating `x∘(y·z) = (x∘y)·x^-1·(x∘z)`, where `·` is
/// `dot` and `∘` is `circ`.
pub fn brace_relation_witness(dot: &Table, circ: &Table) -> Option<(Elem, Elem, Elem)> {
    let order = dot.order();
    (0..order).into_par_iter().find_map_first(|x| {
        let xinv = dot.inv(x);
        for y in 0..order {
            let left = dot.mul(circ.mul(x, y), xinv);
            for z in 0..order {
                if circ.mul(x, dot.mul(y, z)) != dot.mul(left, circ.mul(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
        None
    })
}

/// The brace `(G, ∘_m, ∘_n)`: `dot` plays the role of `·`, `circ` of `∘`.
#[derive(Clone, Debug)]
pub struct Brace {
    pub dot: Arc<CircleOp>,
    pub circ: Arc<CircleOp>,
    pub verified: bool,
}

impl Brace {
    /// Pairs two operations and runs the exhaustive brace check.
    pub fn new(dot: Arc<CircleOp>, circ: Arc<CircleOp>) -> Brace {
        let verified = brace_relation_witness(&dot.table, &circ.table).is_none();
        Brace { dot, circ, verified }
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.dot.n, self.circ.n)
    }

    pub fn is_trivial(&self) -> bool {
        self.dot.table == self.circ.table
    }
}

pub fn verify_brace(b: &Brace) -> bool {
    brace_relation_witness(&b.dot.table, &b.circ.table).is_none()
}

/// Table equality of two operations, cross-checked against the criterion
/// that `∘_m = ∘_n` exactly when `(ψ_m - ψ_n)(G)` is central.
pub fn ops_equal(group: &FiniteGroup, a: &CircleOp, b: &CircleOp) -> Result<bool> {
    let equal = a.table == b.table;
    let diff = a.psi.sub(&b.psi)?;
    let central = diff.image().into_iter().all(|x| group.table().is_central(x));
    if equal != central {
        return Err(Error::Invariant(format!(
            "∘_{} vs ∘_{}: tables equal = {equal} but central difference = {central}",
            a.n, b.n
        )));
    }
    Ok(equal)
}

/// Every distinct operation generated by one abelian map, with the
/// pairwise brace checks.
#[derive(Clone, Debug)]
pub struct BraceBlock {
    group: Arc<FiniteGroup>,
    seed: AbelianMap,
    ops: Vec<Arc<CircleOp>>,
    preperiod: usize,
    cycle: usize,
    stabilized_abelian: Option<usize>,
    brace_ok: Vec<Vec<bool>>,
}

impl BraceBlock {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn seed(&self) -> &AbelianMap {
        &self.seed
    }

    /// Distinct operations `∘_0, ∘_1, ...` up to the first repetition.
    pub fn ops(&self) -> &[Arc<CircleOp>] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `(preperiod, cycle length)` of the sequence `∘_0, ∘_1, ...`.
    pub fn period(&self) -> (usize, usize) {
        (self.preperiod, self.cycle)
    }

    /// First `n` with `(G, ∘_n)` abelian, if any.
    pub fn stabilized_abelian(&self) -> Option<usize> {
        self.stabilized_abelian
    }

    /// Position in [`BraceBlock::ops`] of the operation `∘_n` for any `n`.
    pub fn index_of(&self, n: usize) -> usize {
        if n < self.ops.len() {
            n
        } else {
            self.preperiod + (n - self.preperiod) % self.cycle
        }
    }

    pub fn op(&self, n: usize) -> &Arc<CircleOp> {
        &self.ops[self.index_of(n)]
    }

    pub fn brace(&self, m: usize, n: usize) -> Brace {
        let (i, j) = (self.index_of(m), self.index_of(n));
        Brace {
            dot: self.ops[i].clone(),
            circ: self.ops[j].clone(),
            verified: self.brace_ok[i][j],
        }
    }

    /// All braces over distinct operations, in `(m, n)` order.
    pub fn braces(&self) -> Vec<Brace> {
        let k = self.ops.len();
        (0..k).flat_map(|m| (0..k).map(move |n| (m, n))).map(|(m, n)| self.brace(m, n)).collect()
    }

    pub fn all_braces_verified(&self) -> bool {
        self.brace_ok.iter().flatten().all(|&ok| ok)
    }

    pub fn brace_matrix(&self) -> &[Vec<bool>] {
        &self.brace_ok
    }
}

/// [`compute_block_with_cap`] with the default cap `4|G|`.
pub fn compute_block(group: &Arc<FiniteGroup>, psi: &AbelianMap) -> Result<BraceBlock> {
    compute_block_with_cap(group, psi, 4 * group.order())
}

/// Builds `∘_0, ∘_1, ...` until a table repeats. From that point the
/// sequence cycles, so the operations seen before the repeat are all the
/// distinct ones.
pub fn compute_block_with_cap(
    group: &Arc<FiniteGroup>,
    psi: &AbelianMap,
    cap: usize,
) -> Result<BraceBlock> {
    let mut seq = PsiSequence::new(psi.clone());
    let mut ops: Vec<Arc<CircleOp>> = Vec::new();
    let (preperiod, cycle) = loop {
        let n = ops.len();
        if n > cap {
            return Err(Error::BlockCapExceeded { cap });
        }
        let op = CircleOp::from_psi(group, seq.psi(n)?.clone(), n)?;
        let mut repeat = None;
        for prev in &ops {
            if ops_equal(group, prev, &op)? && repeat.is_none() {
                repeat = Some(prev.n);
            }
        }
        if let Some(last) = ops.last() {
            if last.is_abelian() && last.table != op.table {
                return Err(Error::Invariant(format!(
                    "∘_{} is abelian but ∘_{n} differs from it",
                    last.n
                )));
            }
        }
        match repeat {
            Some(p) => break (p, n - p),
            None => ops.push(Arc::new(op)),
        }
    };
    let stabilized_abelian = ops.iter().position(|op| op.is_abelian());
    let k = ops.len();
    let brace_ok: Vec<Vec<bool>> = (0..k)
        .into_par_iter()
        .map(|m| {
            (0..k)
                .map(|n| brace_relation_witness(&ops[m].table, &ops[n].table).is_none())
                .collect()
        })
        .collect();
    if let Some((m, n)) = (0..k)
        .flat_map(|m| (0..k).map(move |n| (m, n)))
        .find(|&(m, n)| !brace_ok[m][n])
    {
        let (x, y, z) = brace_relation_witness(&ops[m].table, &ops[n].table).expect("failed");
        return Err(Error::Invariant(format!(
            "(G, ∘_{m}, ∘_{n}) violates the brace relation at ({}, {}, {})",
            group.name(x),
            group.name(y),
            group.name(z)
        )));
    }
    Ok(BraceBlock {
        group: group.clone(),
        seed: psi.clone(),
        ops,
        preperiod,
        cycle,
        stabilized_abelian,
        brace_ok,
    })
}

/// Outcome of checking `φ = 1 - ψ` as a map `(G, ∘_n) -> (G, ∘_{n-1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub homomorphism: bool,
    pub bijective: bool,
    pub fixed_point_free: bool,
}

/// Checks that `1 - ψ` is a homomorphism `(G, ∘_n) -> (G, ∘_{n-1})` and
/// that it is bijective exactly when `ψ` is fixed point free.
pub fn check_phi_homomorphism(group: &Arc<FiniteGroup>, psi: &AbelianMap, n: usize) -> Result<PhiReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n = 0 for the φ homomorphism".into()));
    }
    let mut seq = PsiSequence::new(psi.clone());
    let src = CircleOp::from_psi(group, seq.psi(n)?.clone(), n)?;
    let dst = CircleOp::from_psi(group, seq.psi(n - 1)?.clone(), n - 1)?;
    let phi = seq.one_minus_seed();
    let order = group.order();
    let homomorphism = (0..order).all(|g| {
        (0..order).all(|h| phi.apply(src.table.mul(g, h)) == dst.table.mul(phi.apply(g), phi.apply(h)))
    });
    let report = PhiReport {
        homomorphism,
        bijective: phi.is_bijective(),
        fixed_point_free: psi.is_fixed_point_free(),
    };
    if report.bijective != report.fixed_point_free {
        return Err(Error::Invariant(format!(
            "1 - ψ bijective = {} but ψ fixed point free = {}",
            report.bijective, report.fixed_point_free
        )));
    }
    Ok(report)
}

/// Searches for a brace isomorphism: a bijection that is an isomorphism of
/// the `·` groups and of the `∘` groups simultaneously.
pub fn brace_isomorphic(a: &Brace, b: &Brace) -> Option<Vec<Elem>> {
    find_isomorphism(&[&a.dot.table, &a.circ.table], &[&b.dot.table, &b.circ.table])
}

/// Whether `f` is a brace isomorphism `a -> b`.
pub fn is_brace_isomorphism(f: &[Elem], a: &Brace, b: &Brace) -> bool {
    is_isomorphism(f, &[&a.dot.table, &a.circ.table], &[&b.dot.table, &b.circ.table])
}

/// For fixed point free `ψ` and `n > m`, the map `(1-ψ)^m` carries
/// `(G, ∘_m, ∘_n)` onto `(G, ·, ∘_{n-m})`, since `1-ψ` lowers every index
/// by one. Returns that map after confirming it is a brace isomorphism, or
/// `None` if it is not one.
pub fn fpf_witness(block: &BraceBlock, m: usize, n: usize) -> Result<Option<GMap>> {
    if n <= m {
        return Err(Error::OutOfRange(format!("need n > m, got m = {m}, n = {n}")));
    }
    let mut seq = PsiSequence::new(block.seed().clone());
    let phi = seq.one_minus_power(m)?.clone();
    let ok = is_brace_isomorphism(phi.images(), &block.brace(m, n), &block.brace(0, n - m));
    Ok(ok.then_some(phi))
}

/// Partitions the braces of a block into isomorphism classes. Each class
/// lists `(m, n)` pairs in increasing order; classes are ordered by their
/// first member.
pub fn classify_braces(block: &BraceBlock) -> Vec<Vec<(usize, usize)>> {
    let mut classes: Vec<(Brace, Vec<(usize, usize)>)> = Vec::new();
    for b in block.braces() {
        let idx = b.indices();
        match classes.iter_mut().find(|(rep, _)| brace_isomorphic(rep, &b).is_some()) {
            Some((_, members)) => members.push(idx),
            None => classes.push((b, vec![idx])),
        }
    }
    classes.into_iter().map(|(_, members)| members).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::nearring::parse_abelian_map;

    fn d4_block() -> BraceBlock {
        let g = Arc::new(make_dihedral(4).unwrap());
        let psi = parse_abelian_map(&g, "r->1; s->r^2s").unwrap();
        compute_block(&g, &psi).unwrap()
    }

    #[test]
    fn circle_zero_is_ambient() {
        let g = Arc::new(make_affine(5).unwrap());
        let psi = parse_abelian_map(&g, "g->1; α->α^-1").unwrap();
        assert_eq!(&build_circle_op(&g, &psi, 0).unwrap().table, g.table());
    }

    #[test]
    fn d4_block_shape() {
        let block = d4_block();
        assert_eq!(block.len(), 2);
        assert!(block.ops()[1].is_abelian());
        assert_eq!(block.period(), (1, 1));
        assert_eq!(block.stabilized_abelian(), Some(1));
        assert!(block.all_braces_verified());
        assert_eq!(block.index_of(7), 1);
    }

    #[test]
    fn zero_map_gives_trivial_block() {
        let g = Arc::new(make_dihedral(5).unwrap());
        let block = compute_block(&g, &AbelianMap::zero(&g)).unwrap();
        assert_eq!(block.len(), 1);
        assert_eq!(block.period(), (0, 1));
        assert!(block.brace(0, 0).is_trivial());
    }

    #[test]
    fn affine_circle_ops() {
        let g = Arc::new(make_affine(5).unwrap());
        let psi = parse_abelian_map(&g, "g->1; α->α^-1").unwrap();
        let c1 = build_circle_op(&g, &psi, 1).unwrap();
        let c2 = build_circle_op(&g, &psi, 2).unwrap();
        assert!(!c1.is_abelian());
        assert!(c2.is_abelian());
        let c20 = make_cyclic(20).unwrap();
        assert!(find_isomorphism(&[&c2.table], &[c20.table()]).is_some());
        assert!(verify_circle_recursion(&g, &psi, 0).unwrap());
        assert!(verify_circle_recursion(&g, &psi, 1).unwrap());
    }

    #[test]
    fn brace_checks_on_metacyclic() {
        let g = Arc::new(make_metacyclic(7, 3, 2).unwrap());
        let psi = parse_abelian_map(&g, "s->1; t->t^-1").unwrap();
        let block = compute_block(&g, &psi).unwrap();
        assert_eq!(block.len(), 2);
        for m in 0..2 {
            for n in 0..2 {
                assert!(verify_brace(&block.brace(m, n)));
            }
        }
        // ∘_2 = ∘_0 since ψ_2 = 0 when k = 3.
        let c0 = build_circle_op(&g, &psi, 0).unwrap();
        let c2 = build_circle_op(&g, &psi, 2).unwrap();
        assert!(ops_equal(&g, &c0, &c2).unwrap());
        let report = check_phi_homomorphism(&g, &psi, 1).unwrap();
        assert!(report.homomorphism && report.bijective);
        // (G, ∘_1, ∘_0) ≅ (G, ∘_0, ∘_1) via 1 - ψ.
        let phi = fpf_witness(&block, 1, 2).unwrap().expect("witness");
        assert!(is_brace_isomorphism(phi.images(), &block.brace(1, 0), &block.brace(0, 1)));
    }

    #[test]
    fn phi_on_d4_is_not_bijective() {
        let g = Arc::new(make_dihedral(4).unwrap());
        let psi = parse_abelian_map(&g, "r->1; s->r^2s").unwrap();
        let report = check_phi_homomorphism(&g, &psi, 1).unwrap();
        assert!(report.homomorphism && !report.bijective && !report.fixed_point_free);
        assert!(check_phi_homomorphism(&g, &psi, 0).is_err());
    }

    #[test]
    fn trivial_and_nontrivial_braces_differ() {
        let block = d4_block();
        assert!(brace_isomorphic(&block.brace(0, 0), &block.brace(0, 1)).is_none());
        let classes = classify_braces(&block);
        assert_eq!(classes.len(), 4);
    }

    #[test]
    fn central_image_gives_equal_ops() {
        // ψ(r) = r^2, ψ(s) = 1 on D4 lands in the center.
        let g = Arc::new(make_dihedral(4).unwrap());
        let psi = parse_abelian_map(&g, "r->r^2; s->1").unwrap();
        let c0 = build_circle_op(&g, &psi, 0).unwrap();
        let c1 = build_circle_op(&g, &psi, 1).unwrap();
        assert!(ops_equal(&g, &c0, &c1).unwrap());
    }
}
