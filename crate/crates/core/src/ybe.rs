//! Set-theoretic Yang-Baxter solutions from braces.
//!
//! A brace `(G, ·, ∘)` gives
//!
//! ```text
//! R(x, y)  = (x^-1 (x∘y),  inv∘(x^-1 (x∘y)) ∘ x ∘ y)
//! R'(x, y) = ((x∘y) x^-1,  inv∘((x∘y) x^-1) ∘ x ∘ y)
//! ```
//!
//! with `R R' = R' R = id`. For the braces `(G, ∘_m, ∘_n)` of a block the
//! same tables also have closed forms in `ψ_m`, `ψ_n` and the ambient
//! product; both routes are implemented and compared.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{classify_braces, Brace, BraceBlock};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Table};
use crate::nearring::{AbelianMap, PsiSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "R")]
    R,
    #[serde(rename = "R'")]
    RPrime,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::R => "R",
            Variant::RPrime => "R'",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "R" => Ok(Variant::R),
            "R'" => Ok(Variant::RPrime),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// A map `R: G×G -> G×G` stored as two coordinate tables,
/// `R(x, y) = (f[x][y], g[x][y])`.
#[derive(Clone, Debug)]
pub struct YbeSolution {
    order: usize,
    f: Vec<Elem>,
    g: Vec<Elem>,
    pub braid_ok: bool,
    pub nondegenerate: bool,
    pub involutive: bool,
}

impl PartialEq for YbeSolution {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.f == other.f && self.g == other.g
    }
}

impl Eq for YbeSolution {}

impl YbeSolution {
    /// Tabulates `r` without checking anything; flags start out false.
    pub fn from_fn(order: usize, r: impl Fn(Elem, Elem) -> (Elem, Elem)) -> YbeSolution {
        let mut f = Vec::with_capacity(order * order);
        let mut g = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let (a, b) = r(x, y);
                f.push(a);
                g.push(b);
            }
        }
        YbeSolution { order, f, g, braid_ok: false, nondegenerate: false, involutive: false }
    }

    /// The flip `R(x, y) = (y, x)`.
    pub fn flip(order: usize) -> YbeSolution {
        YbeSolution::from_fn(order, |x, y| (y, x))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn apply(&self, x: Elem, y: Elem) -> (Elem, Elem) {
        let i = x * self.order + y;
        (self.f[i], self.g[i])
    }

    pub fn f_table(&self) -> &[Elem] {
        &self.f
    }

    pub fn g_table(&self) -> &[Elem] {
        &self.g
    }

    /// Fills in all three flags.
    pub fn check(&mut self) {
        self.nondegenerate = nondegeneracy_witness(self).is_none();
        self.braid_ok = braid_witness(self).is_none();
        self.involutive = is_involutive(self);
    }

    /// Checks non-degeneracy, then the braid relation, failing on the first
    /// violation.
    pub fn verified(mut self) -> Result<YbeSolution> {
        if let Some(why) = nondegeneracy_witness(&self) {
            return Err(Error::Invariant(format!("solution is degenerate: {why}")));
        }
        self.nondegenerate = true;
        if let Some((x, y, z)) = braid_witness(&self) {
            return Err(Error::Invariant(format!("braid relation fails at ({x}, {y}, {z})")));
        }
        self.braid_ok = true;
        self.involutive = is_involutive(&self);
        Ok(self)
    }

    /// First pair where the two tables differ.
    pub fn first_difference(&self, other: &YbeSolution) -> Option<(Elem, Elem)> {
        (0..self.order * self.order)
            .find(|&i| self.f[i] != other.f[i] || self.g[i] != other.g[i])
            .map(|i| (i / self.order, i % self.order))
    }

    /// `self ∘ other` as maps on pairs (apply `other` first).
    pub fn compose(&self, other: &YbeSolution) -> YbeSolution {
        YbeSolution::from_fn(self.order, |x, y| {
            let (a, b) = other.apply(x, y);
            self.apply(a, b)
        })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.apply(x, y) == (x, y)))
    }
}

/// Describes the first fixed argument for which `f(x, -)` or `g(-, y)` is
/// not a bijection.
pub fn nondegeneracy_witness(s: &YbeSolution) -> Option<String> {
    let n = s.order;
    let mut seen = vec![usize::MAX; n];
    for x in 0..n {
        for y in 0..n {
            let v = s.f[x * n + y];
            if seen[v] == x {
                return Some(format!("f({x}, -) is not injective"));
            }
            seen[v] = x;
        }
    }
    seen.fill(usize::MAX);
    for y in 0..n {
        for x in 0..n {
            let v = s.g[x * n + y];
            if seen[v] == y {
                return Some(format!("g(-, {y}) is not injective"));
            }
            seen[v] = y;
        }
    }
    None
}

/// First triple where `(R×1)(1×R)(R×1)` and `(1×R)(R×1)(1×R)` disagree.
pub fn braid_witness(s: &YbeSolution) -> Option<(Elem, Elem, Elem)> {
    let n = s.order;
    (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            let (a1, b1) = s.apply(x, y);
            for z in 0..n {
                // left side: R on (1,2), then (2,3), then (1,2)
                let (b2, c2) = s.apply(b1, z);
                let (a3, b3) = s.apply(a1, b2);
                let left = (a3, b3, c2);
                // right side: R on (2,3), then (1,2), then (2,3)
                let (q1, r1) = s.apply(y, z);
                let (p2, q2) = s.apply(x, q1);
                let (q3, r3) = s.apply(q2, r1);
                if left != (p2, q3, r3) {
                    return Some((x, y, z));
                }
            }
        }
        None
    })
}

pub fn is_involutive(s: &YbeSolution) -> bool {
    (0..s.order).all(|x| {
        (0..s.order).all(|y| {
            let (a, b) = s.apply(x, y);
            s.apply(a, b) == (x, y)
        })
    })
}

/// `R R' = R' R = id`.
pub fn are_mutually_inverse(r: &YbeSolution, r_prime: &YbeSolution) -> bool {
    r.compose(r_prime).is_identity() && r_prime.compose(r).is_identity()
}

fn brace_table(dot: &Table, circ: &Table, variant: Variant) -> YbeSolution {
    YbeSolution::from_fn(dot.order(), |x, y| {
        let xy = circ.mul(x, y);
        let a = match variant {
            Variant::R => dot.mul(dot.inv(x), xy),
            Variant::RPrime => dot.mul(xy, dot.inv(x)),
        };
        (a, circ.mul(circ.mul(circ.inv(a), x), y))
    })
}

/// `R` for the brace `b`, verified.
pub fn solution_from_brace(b: &Brace) -> Result<YbeSolution> {
    brace_table(&b.dot.table, &b.circ.table, Variant::R).verified()
}

/// `R'` (from the opposite brace), verified.
pub fn opposite_solution(b: &Brace) -> Result<YbeSolution> {
    brace_table(&b.dot.table, &b.circ.table, Variant::RPrime).verified()
}

/// Either variant for the brace `b`, verified.
pub fn brace_solution(b: &Brace, variant: Variant) -> Result<YbeSolution> {
    brace_table(&b.dot.table, &b.circ.table, variant).verified()
}

/// Closed forms in `ψ_m` (written `P`) and `ψ_n` (written `Q`):
///
/// ```text
/// R(g, h)  = (P(g) Q(g^-1) h Q(g) P(g^-1),
///             P(g) Q(g^-1 h) h^-1 Q(g) P(g^-1) g Q(g^-1) h Q(g h^-1))
/// R'(g, h) = (g Q(g^-1) h Q(g) P(h^-1) g^-1 P(h),
///             Q(h) P(h^-1) g P(h) Q(h^-1))
/// ```
///
/// No checks are performed.
pub fn explicit_table(
    group: &FiniteGroup,
    psi_m: &AbelianMap,
    psi_n: &AbelianMap,
    variant: Variant,
) -> YbeSolution {
    let t = group.table();
    let (p, q) = (psi_m, psi_n);
    YbeSolution::from_fn(group.order(), |g, h| {
        let (gi, hi) = (t.inv(g), t.inv(h));
        match variant {
            Variant::R => (
                t.product(&[p.apply(g), q.apply(gi), h, q.apply(g), p.apply(gi)]),
                t.product(&[
                    p.apply(g),
                    q.apply(t.mul(gi, h)),
                    hi,
                    q.apply(g),
                    p.apply(gi),
                    g,
                    q.apply(gi),
                    h,
                    q.apply(t.mul(g, hi)),
                ]),
            ),
            Variant::RPrime => (
                t.product(&[g, q.apply(gi), h, q.apply(g), p.apply(hi), gi, p.apply(h)]),
                t.product(&[q.apply(h), p.apply(hi), g, p.apply(h), q.apply(hi)]),
            ),
        }
    })
}

/// The closed-form solution for `(G, ∘_m, ∘_n)`, compared against the
/// brace-derived table and verified.
pub fn explicit_solution(
    group: &Arc<FiniteGroup>,
    psi: &AbelianMap,
    m: usize,
    n: usize,
    variant: Variant,
) -> Result<YbeSolution> {
    use crate::brace::CircleOp;
    let mut seq = PsiSequence::new(psi.clone());
    let psi_m = seq.psi(m)?.clone();
    let psi_n = seq.psi(n)?.clone();
    let closed = explicit_table(group, &psi_m, &psi_n, variant);
    let dot = CircleOp::from_psi(group, psi_m, m)?;
    let circ = CircleOp::from_psi(group, psi_n, n)?;
    let derived = brace_table(&dot.table, &circ.table, variant);
    if let Some((x, y)) = closed.first_difference(&derived) {
        return Err(Error::Invariant(format!(
            "closed form {variant}_{{{m},{n}}} differs from the brace table at ({}, {})",
            group.name(x),
            group.name(y)
        )));
    }
    closed.verified()
}

/// Where a solution in a census came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub m: usize,
    pub n: usize,
    pub variant: Variant,
    /// Index into [`SolutionCensus::solutions`].
    pub solution: usize,
}

/// Two different braces producing the same table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub first: (usize, usize, Variant),
    pub second: (usize, usize, Variant),
}

/// All solutions from the braces of a block, deduplicated, together with
/// two ways of counting them.
#[derive(Clone, Debug)]
pub struct SolutionCensus {
    /// Distinct tables in order of first appearance.
    pub solutions: Vec<YbeSolution>,
    /// One entry per `(m, n, variant)`, ordered by `(m, n, variant)`.
    pub provenance: Vec<Provenance>,
    /// Brace isomorphism classes over `(m, n)`.
    pub brace_classes: Vec<Vec<(usize, usize)>>,
    /// Per class: whether the first operation is abelian.
    pub class_first_abelian: Vec<bool>,
    /// Sum over classes of 1 (first operation abelian) or 2 (otherwise).
    pub convention_count: usize,
    pub collisions: Vec<Collision>,
}

impl SolutionCensus {
    /// Number of distinct solution tables.
    pub fn raw_count(&self) -> usize {
        self.solutions.len()
    }

    /// Set when tables from different braces coincide, or when the raw count
    /// falls below the class-based count.
    pub fn collision_flag(&self) -> bool {
        !self.collisions.is_empty() || self.raw_count() < self.convention_count
    }
}

/// Generates `R` and `R'` for every ordered pair of distinct operations in
/// the block and counts them.
pub fn census(block: &BraceBlock) -> Result<SolutionCensus> {
    let k = block.len();
    let keys: Vec<(usize, usize, Variant)> = (0..k)
        .flat_map(|m| (0..k).flat_map(move |n| [(m, n, Variant::R), (m, n, Variant::RPrime)]))
        .collect();
    let tables = keys
        .par_iter()
        .map(|&(m, n, v)| brace_solution(&block.brace(m, n), v))
        .collect::<Result<Vec<_>>>()?;

    let mut solutions: Vec<YbeSolution> = Vec::new();
    let mut index: HashMap<(Vec<Elem>, Vec<Elem>), usize> = HashMap::new();
    let mut provenance = Vec::with_capacity(keys.len());
    let mut collisions = Vec::new();
    for (&(m, n, variant), sol) in keys.iter().zip(tables) {
        let key = (sol.f.clone(), sol.g.clone());
        let idx = match index.get(&key) {
            Some(&idx) => {
                let first: &Provenance = provenance
                    .iter()
                    .find(|p: &&Provenance| p.solution == idx)
                    .expect("indexed solutions have provenance");
                if (first.m, first.n) != (m, n) {
                    collisions.push(Collision {
                        first: (first.m, first.n, first.variant),
                        second: (m, n, variant),
                    });
                }
                idx
            }
            None => {
                index.insert(key, solutions.len());
                solutions.push(sol);
                solutions.len() - 1
            }
        };
        provenance.push(Provenance { m, n, variant, solution: idx });
    }

    let brace_classes = classify_braces(block);
    let class_first_abelian: Vec<bool> = brace_classes
        .iter()
        .map(|class| block.op(class[0].0).is_abelian())
        .collect();
    let convention_count = class_first_abelian.iter().map(|&ab| if ab { 1 } else { 2 }).sum();
    Ok(SolutionCensus {
        solutions,
        provenance,
        brace_classes,
        class_first_abelian,
        convention_count,
        collisions,
    })
}

/// Text dump: header `order m n variant`, then one `x y f g` line per pair.
pub fn solution_to_text(s: &YbeSolution, m: usize, n: usize, variant: Variant) -> String {
    let mut out = format!("{} {m} {n} {variant}\n", s.order);
    for x in 0..s.order {
        for y in 0..s.order {
            let (a, b) = s.apply(x, y);
            out.push_str(&format!("{x} {y} {a} {b}\n"));
        }
    }
    out
}

/// JSON form of a dumped solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub order: usize,
    pub m: usize,
    pub n: usize,
    pub variant: Variant,
    pub braid_ok: bool,
    pub nondegenerate: bool,
    pub involutive: bool,
    /// `[x, y, f, g]` rows in `(x, y)` order.
    pub entries: Vec<[Elem; 4]>,
}

impl SolutionRecord {
    pub fn new(s: &YbeSolution, m: usize, n: usize, variant: Variant) -> SolutionRecord {
        let entries = (0..s.order)
            .flat_map(|x| (0..s.order).map(move |y| (x, y)))
            .map(|(x, y)| {
                let (a, b) = s.apply(x, y);
                [x, y, a, b]
            })
            .collect();
        SolutionRecord {
            order: s.order,
            m,
            n,
            variant,
            braid_ok: s.braid_ok,
            nondegenerate: s.nondegenerate,
            involutive: s.involutive,
            entries,
        }
    }

    /// Rebuilds the tables; every `(x, y)` must appear exactly once.
    pub fn to_solution(&self) -> Result<YbeSolution> {
        let n = self.order;
        let mut f = vec![usize::MAX; n * n];
        let mut g = vec![usize::MAX; n * n];
        for &[x, y, a, b] in &self.entries {
            if x >= n || y >= n || a >= n || b >= n {
                return Err(Error::Parse(format!("entry ({x}, {y}) out of range")));
            }
            if f[x * n + y] != usize::MAX {
                return Err(Error::Parse(format!("pair ({x}, {y}) listed twice")));
            }
            f[x * n + y] = a;
            g[x * n + y] = b;
        }
        if f.contains(&usize::MAX) {
            return Err(Error::Parse("missing pairs".into()));
        }
        let mut s = YbeSolution { order: n, f, g, braid_ok: false, nondegenerate: false, involutive: false };
        s.check();
        Ok(s)
    }
}

/// Parses the text dump written by [`solution_to_text`].
pub fn solution_from_text(text: &str) -> Result<SolutionRecord> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::Parse("empty solution dump".into()))?
        .split_whitespace()
        .collect();
    let [order, m, n, variant] = header[..] else {
        return Err(Error::Parse("header must be `order m n variant`".into()));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad number {s:?}")));
    let (order, m, n, variant) = (num(order)?, num(m)?, num(n)?, variant.parse()?);
    let entries = lines
        .map(|l| {
            let v = l.split_whitespace().map(num).collect::<Result<Vec<_>>>()?;
            <[Elem; 4]>::try_from(v).map_err(|_| Error::Parse(format!("bad line {l:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != order * order {
        return Err(Error::Parse(format!(
            "expected {} lines, found {}",
            order * order,
            entries.len()
        )));
    }
    let mut rec = SolutionRecord {
        order,
        m,
        n,
        variant,
        braid_ok: false,
        nondegenerate: false,
        involutive: false,
        entries,
    };
    let s = rec.to_solution()?;
    rec.braid_ok = s.braid_ok;
    rec.nondegenerate = s.nondegenerate;
    rec.involutive = s.involutive;
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::compute_block;
    use crate::group::*;
    use crate::nearring::parse_abelian_map;

    #[test]
    fn flip_is_an_involutive_solution() {
        let s = YbeSolution::flip(5).verified().unwrap();
        assert!(s.involutive && s.braid_ok && s.nondegenerate);
    }

    #[test]
    fn degenerate_map_is_rejected() {
        let s = YbeSolution::from_fn(3, |_, _| (0, 0));
        assert!(nondegeneracy_witness(&s).is_some());
        assert!(matches!(s.verified(), Err(Error::Invariant(_))));
    }

    #[test]
    fn trivial_brace_solutions_on_d4() {
        let g = Arc::new(make_dihedral(4).unwrap());
        let psi = parse_abelian_map(&g, "r->1; s->r^2s").unwrap();
        let block = compute_block(&g, &psi).unwrap();
        let trivial = block.brace(0, 0);
        let r = solution_from_brace(&trivial).unwrap();
        let rp = opposite_solution(&trivial).unwrap();
        let t = g.table();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(r.apply(x, y), (y, t.product(&[t.inv(y), x, y])));
                assert_eq!(rp.apply(x, y), (t.product(&[x, y, t.inv(x)]), x));
            }
        }
        assert!(!r.involutive);
        assert_ne!(r, rp);
        assert!(are_mutually_inverse(&r, &rp));

        // (G, ∘_1) is abelian: the trivial brace there gives the flip.
        let abelian = block.brace(1, 1);
        let r = solution_from_brace(&abelian).unwrap();
        assert_eq!(r, YbeSolution::flip(8));
        assert_eq!(r, opposite_solution(&abelian).unwrap());

        // (G, ∘_0, ∘_1): first group nonabelian, so R is not involutive.
        let b = block.brace(0, 1);
        let r = solution_from_brace(&b).unwrap();
        assert!(!r.involutive);
        assert_ne!(r, opposite_solution(&b).unwrap());
    }

    #[test]
    fn closed_forms_match_on_affine_5() {
        let g = Arc::new(make_affine(5).unwrap());
        let psi = parse_abelian_map(&g, "g->1; α->α^-1").unwrap();
        for (m, n) in [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1)] {
            for v in [Variant::R, Variant::RPrime] {
                explicit_solution(&g, &psi, m, n, v).unwrap();
            }
        }
    }

    #[test]
    fn census_on_metacyclic() {
        let g = Arc::new(make_metacyclic(7, 3, 2).unwrap());
        let psi = parse_abelian_map(&g, "s->1; t->t^-1").unwrap();
        let block = compute_block(&g, &psi).unwrap();
        let c = census(&block).unwrap();
        assert_eq!(c.brace_classes.len(), 2);
        assert_eq!(c.convention_count, 4);
        assert_eq!(c.provenance.len(), 8);
    }

    #[test]
    fn text_dump_round_trip() {
        let g = Arc::new(make_dihedral(3).unwrap());
        let psi = parse_abelian_map(&g, "r->1; s->s").unwrap();
        let block = compute_block(&g, &psi).unwrap();
        let s = solution_from_brace(&block.brace(0, 1)).unwrap();
        let text = solution_to_text(&s, 0, 1, Variant::R);
        let rec = solution_from_text(&text).unwrap();
        assert_eq!(rec, SolutionRecord::new(&s, 0, 1, Variant::R));
        assert_eq!(rec.to_solution().unwrap(), s);
        assert!(solution_from_text("6 0 1 Q\n").is_err());
        assert!(solution_from_text("2 0 0 R\n0 0 0 0\n").is_err());
    }
}
