use rayon::prelude::*;

use crate::error::{Error, Result};

/// Index of a group element. The identity is always `0`.
pub type Elem = usize;

/// Largest order for which associativity and the other exhaustive scans run.
pub const EXHAUSTIVE_LIMIT: usize = 200;

/// A validated group operation on `0..order` with identity `0`.
///
/// This is the shape shared by the ambient multiplication of a group and by
/// every derived operation built on the same element set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Table {
    order: usize,
    cells: Vec<Elem>,
    inverse: Vec<Elem>,
}

impl Table {
    /// Builds a table from row-major cells and checks every group axiom.
    pub fn from_cells(order: usize, cells: Vec<Elem>) -> Result<Table> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if cells.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} cells, found {}",
                order * order,
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|&&c| c >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| cells[a * order + b] == 0)
                    .ok_or_else(|| Error::InvalidTable(format!("element {a} has no right inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        let table = Table { order, cells, inverse };
        table.validate()?;
        Ok(table)
    }

    /// Builds a table from a product function.
    pub fn from_fn(order: usize, f: impl Fn(Elem, Elem) -> Elem) -> Result<Table> {
        let mut cells = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                cells.push(f(a, b));
            }
        }
        Table::from_cells(order, cells)
    }

    /// Identity at 0, Latin square, two-sided inverses, and associativity
    /// (the last only up to [`EXHAUSTIVE_LIMIT`]).
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        for j in 0..n {
            if self.mul(0, j) != j || self.mul(j, 0) != j {
                return Err(Error::InvalidTable(format!(
                    "0 is not a two-sided identity (fails at {j})"
                )));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] == a {
                    return Err(Error::InvalidTable(format!("row {a} repeats {c}")));
                }
                seen[c] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let c = self.mul(a, b);
                if seen[c] == b {
                    return Err(Error::InvalidTable(format!("column {b} repeats {c}")));
                }
                seen[c] = b;
            }
        }
        for a in 0..n {
            if self.mul(self.inverse[a], a) != 0 {
                return Err(Error::InvalidTable(format!("element {a} has no left inverse")));
            }
        }
        if n <= EXHAUSTIVE_LIMIT {
            if let Some((a, b, c)) = self.associativity_witness() {
                return Err(Error::InvalidTable(format!(
                    "not associative at ({a}, {b}, {c})"
                )));
            }
        }
        Ok(())
    }

    fn associativity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.order;
        (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.cells[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.cells[a * self.order..(a + 1) * self.order]
    }

    pub fn cells(&self) -> &[Elem] {
        &self.cells
    }

    /// Left-to-right product of a slice of elements.
    pub fn product(&self, elems: &[Elem]) -> Elem {
        elems.iter().fold(0, |acc, &e| self.mul(acc, e))
    }

    /// `a` raised to a signed exponent.
    pub fn pow(&self, a: Elem, exp: i64) -> Elem {
        let base = if exp < 0 { self.inv(a) } else { a };
        let mut e = exp.unsigned_abs() % self.element_order(a) as u64;
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_central(&self, a: Elem) -> bool {
        (0..self.order).all(|b| self.commute(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    /// Invariant factors `d_1 | d_2 | ...` (all greater than 1) of an abelian
    /// table, or `None` if the table is nonabelian. The trivial group gives
    /// an empty list.
    pub fn abelian_invariants(&self) -> Option<Vec<usize>> {
        if !self.is_abelian() {
            return None;
        }
        let orders = self.element_orders();
        let mut primes = Vec::new();
        let mut rest = self.order;
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                primes.push(p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 1;
        }
        // For each prime, the exponents of the cyclic p-factors, largest first.
        let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
        for p in primes {
            // ranks[i] = number of cyclic factors of order at least p^(i+1)
            let mut ranks = Vec::new();
            let mut prev = 1usize;
            let mut q = p;
            loop {
                let count = orders.iter().filter(|&&o| q % o == 0).count();
                if count == prev {
                    break;
                }
                let mut r = 0;
                let mut c = count / prev;
                while c > 1 {
                    c /= p;
                    r += 1;
                }
                ranks.push(r);
                prev = count;
                q *= p;
            }
            let exps = (0..ranks[0])
                .map(|j| ranks.iter().filter(|&&r| r > j).count() as u32)
                .collect();
            per_prime.push((p, exps));
        }
        let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors: Vec<usize> = (0..len)
            .map(|j| per_prime.iter().map(|(p, e)| e.get(j).map_or(1, |&k| p.pow(k))).product())
            .collect();
        factors.reverse();
        Some(factors)
    }

    /// Elements commuting with everything, in increasing index order.
    pub fn center(&self) -> Vec<Elem> {
        (0..self.order).filter(|&a| self.is_central(a)).collect()
    }

    /// True if the subset contains the identity and is closed under the
    /// operation (which suffices for a finite subset to be a subgroup).
    pub fn is_subgroup(&self, subset: &[Elem]) -> bool {
        let mut member = vec![false; self.order];
        for &x in subset {
            member[x] = true;
        }
        member[0]
            && subset
                .iter()
                .all(|&a| subset.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Subgroup generated by `gens`, sorted by index.
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// Greedy generating set: repeatedly add the element of largest order
    /// outside the current subgroup, lowest index first on ties.
    pub fn generating_set(&self) -> Vec<Elem> {
        let orders = self.element_orders();
        let mut gens = Vec::new();
        let mut sub = vec![0];
        while sub.len() < self.order {
            let mut member = vec![false; self.order];
            for &x in &sub {
                member[x] = true;
            }
            let next = (0..self.order)
                .filter(|&x| !member[x])
                .max_by(|&x, &y| orders[x].cmp(&orders[y]).then(y.cmp(&x)))
                .expect("proper subgroup has a complement");
            gens.push(next);
            sub = self.generated_subgroup(&gens);
        }
        gens
    }

    /// Restricts the table to a subgroup, renumbering elements in the given
    /// order. The first element must be the identity.
    pub fn restrict(&self, elems: &[Elem]) -> Result<Table> {
        if elems.first() != Some(&0) || !self.is_subgroup(elems) {
            return Err(Error::InvalidParameter(
                "subset is not a subgroup listed identity-first".into(),
            ));
        }
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        Table::from_fn(elems.len(), |a, b| pos[self.mul(elems[a], elems[b])])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Table {
        Table::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn rejects_non_latin_table() {
        let err = Table::from_cells(2, vec![0, 1, 1, 1]).unwrap_err();
        assert!(matches!(err, Error::InvalidTable(_)));
    }

    #[test]
    fn rejects_misplaced_identity() {
        // Z/2 with the identity stored at index 1.
        let err = Table::from_cells(2, vec![1, 0, 0, 1]).unwrap_err();
        assert!(matches!(err, Error::InvalidTable(_)));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // Smallest loop that is not a group (order 5).
        let rows = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let cells = rows.iter().flatten().copied().collect();
        let err = Table::from_cells(5, cells).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }

    #[test]
    fn powers_and_orders() {
        let c = cyclic(12);
        assert_eq!(c.pow(1, 5), 5);
        assert_eq!(c.pow(1, -1), 11);
        assert_eq!(c.pow(4, -2), 4);
        assert_eq!(c.element_order(8), 3);
        assert_eq!(c.element_order(0), 1);
    }

    #[test]
    fn generating_set_of_cyclic_is_single_generator() {
        assert_eq!(cyclic(10).generating_set(), vec![1]);
    }

    #[test]
    fn restrict_to_subgroup() {
        let c = cyclic(12);
        let sub = c.restrict(&[0, 3, 6, 9]).unwrap();
        assert_eq!(sub.order(), 4);
        assert_eq!(sub.mul(1, 1), 2);
        assert!(c.restrict(&[0, 5]).is_err());
    }

    #[test]
    fn abelian_invariant_factors() {
        let cyclic = |n: usize| Table::from_fn(n, |a, b| (a + b) % n).unwrap();
        assert_eq!(cyclic(1).abelian_invariants(), Some(vec![]));
        assert_eq!(cyclic(12).abelian_invariants(), Some(vec![12]));
        let c2c6 = Table::from_fn(12, |a, b| ((a / 6 + b / 6) % 2) * 6 + (a % 6 + b % 6) % 6).unwrap();
        assert_eq!(c2c6.abelian_invariants(), Some(vec![2, 6]));
        let c2c2c4 = Table::from_fn(16, |a, b| {
            (((a >> 3) ^ (b >> 3)) << 3) | ((((a >> 2) & 1) ^ ((b >> 2) & 1)) << 2) | (((a & 3) + (b & 3)) & 3)
        })
        .unwrap();
        assert_eq!(c2c2c4.abelian_invariants(), Some(vec![2, 2, 4]));
    }
}
