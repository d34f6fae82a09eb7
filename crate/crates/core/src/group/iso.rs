//! Isomorphism search between structures carrying one or more group
//! operations on the same element set.
//!
//! A bijection is sought that is a homomorphism for every operation at
//! once: with a single table this is group isomorphism, with two it is brace
//! isomorphism. The search fixes a set of elements that generates every
//! operation, backtracks over their images (restricted to elements with the
//! same order/centrality signature), and propagates each partial assignment
//! along the Cayley graphs of all operations, rejecting on conflict.

use super::table::{Elem, Table};

type Signature = Vec<(usize, bool)>;

fn signatures(ops: &[&Table]) -> Vec<Signature> {
    let n = ops[0].order();
    let per_op: Vec<(Vec<usize>, Vec<bool>)> = ops
        .iter()
        .map(|t| (t.element_orders(), (0..n).map(|x| t.is_central(x)).collect()))
        .collect();
    (0..n)
        .map(|x| per_op.iter().map(|(o, c)| (o[x], c[x])).collect())
        .collect()
}

/// Greedy set generating every operation.
fn common_generators(ops: &[&Table]) -> Vec<Elem> {
    let n = ops[0].order();
    let mut gens: Vec<Elem> = Vec::new();
    loop {
        let Some(t) = ops.iter().find(|t| t.generated_subgroup(&gens).len() < n) else {
            return gens;
        };
        let sub = t.generated_subgroup(&gens);
        let mut member = vec![false; n];
        for x in sub {
            member[x] = true;
        }
        let next = (0..n)
            .filter(|&x| !member[x])
            .max_by(|&x, &y| {
                t.element_order(x)
                    .cmp(&t.element_order(y))
                    .then(y.cmp(&x))
            })
            .expect("proper subgroup");
        gens.push(next);
    }
}

struct Search<'a> {
    a: &'a [&'a Table],
    b: &'a [&'a Table],
    sig_a: Vec<Signature>,
    sig_b: Vec<Signature>,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
}

impl Search<'_> {
    /// Propagates the assignment `gens[i] -> images[i]` from the identity
    /// along all operations. Returns the partial map if consistent.
    fn propagate(&self, images: &[Elem]) -> Option<Vec<Option<Elem>>> {
        let n = self.a[0].order();
        let mut fwd = vec![None; n];
        let mut bwd = vec![false; n];
        fwd[0] = Some(0);
        bwd[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let fx = fwd[x].expect("queued elements are mapped");
            for (ta, tb) in self.a.iter().zip(self.b) {
                for (&s, &c) in self.gens.iter().zip(images) {
                    let y = ta.mul(x, s);
                    let img = tb.mul(fx, c);
                    match fwd[y] {
                        Some(prev) if prev != img => return None,
                        Some(_) => {}
                        None => {
                            if bwd[img] || self.sig_a[y] != self.sig_b[img] {
                                return None;
                            }
                            fwd[y] = Some(img);
                            bwd[img] = true;
                            queue.push(y);
                        }
                    }
                }
            }
        }
        Some(fwd)
    }

    fn run(&self, images: &mut Vec<Elem>) -> Option<Vec<Elem>> {
        let depth = images.len();
        if depth == self.gens.len() {
            let fwd = self.propagate(images)?;
            return fwd.into_iter().collect();
        }
        for &c in &self.candidates[depth] {
            if images.contains(&c) {
                continue;
            }
            images.push(c);
            if self.propagate(images).is_some() {
                if let Some(found) = self.run(images) {
                    return Some(found);
                }
            }
            images.pop();
        }
        None
    }
}

/// Finds the lexicographically first (in backtracking order) bijection
/// `f` with `f(a_i(x, y)) = b_i(f(x), f(y))` for every operation index `i`.
pub fn find_isomorphism(a: &[&Table], b: &[&Table]) -> Option<Vec<Elem>> {
    assert!(!a.is_empty() && a.len() == b.len(), "need matching operation lists");
    let n = a[0].order();
    if a.iter().chain(b).any(|t| t.order() != n) {
        return None;
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }
    let gens = common_generators(a);
    let candidates = gens
        .iter()
        .map(|&g| (0..n).filter(|&c| sig_b[c] == sig_a[g]).collect())
        .collect();
    let search = Search { a, b, sig_a, sig_b, gens, candidates };
    let found = search.run(&mut Vec::new())?;
    debug_assert!(is_isomorphism(&found, a, b));
    Some(found)
}

/// Checks that `f` is a bijection respecting every operation pair.
pub fn is_isomorphism(f: &[Elem], a: &[&Table], b: &[&Table]) -> bool {
    let n = f.len();
    if a.len() != b.len() || a.iter().chain(b).any(|t| t.order() != n) {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in f {
        if y >= n || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    a.iter().zip(b).all(|(ta, tb)| {
        (0..n).all(|x| (0..n).all(|y| f[ta.mul(x, y)] == tb.mul(f[x], f[y])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn affine_3_is_dihedral_3() {
        let a = make_affine(3).unwrap();
        let d = make_dihedral(3).unwrap();
        let f = group_isomorphic(&a, &d).expect("isomorphic");
        assert!(is_isomorphism(&f, &[a.table()], &[d.table()]));
    }

    #[test]
    fn dihedral_4_is_not_cyclic_8() {
        let d = make_dihedral(4).unwrap();
        let c = make_cyclic(8).unwrap();
        assert!(group_isomorphic(&d, &c).is_none());
    }

    #[test]
    fn quaternion_like_profiles_are_rejected_by_search() {
        // C4 x C2 versus D4: different order profiles. C2^3 versus D4 too.
        let d4 = make_dihedral(4).unwrap();
        let c2 = make_cyclic(2).unwrap();
        let c4xc2 = make_product(&make_cyclic(4).unwrap(), &c2).unwrap();
        assert!(group_isomorphic(&d4, &c4xc2).is_none());
        let c6 = make_cyclic(6).unwrap();
        let c2xc3 = make_product(&c2, &make_cyclic(3).unwrap()).unwrap();
        assert!(group_isomorphic(&c2xc3, &c6).is_some());
    }

    #[test]
    fn witness_is_deterministic() {
        let a = make_metacyclic(7, 3, 2).unwrap();
        let b = make_metacyclic(7, 3, 4).unwrap();
        let f1 = group_isomorphic(&a, &b).unwrap();
        let f2 = group_isomorphic(&a, &b).unwrap();
        assert_eq!(f1, f2);
        assert!(is_isomorphism(&f1, &[a.table()], &[b.table()]));
    }

    #[test]
    fn is_isomorphism_rejects_non_bijections() {
        let c = make_cyclic(4).unwrap();
        assert!(!is_isomorphism(&[0, 0, 0, 0], &[c.table()], &[c.table()]));
        assert!(is_isomorphism(&[0, 3, 2, 1], &[c.table()], &[c.table()]));
    }
}
