//! Constructors for the group families used in the examples: cyclic,
//! dihedral, symmetric, metacyclic `F(h,k,b)`, affine groups of prime
//! fields, and direct products.

use super::table::{Elem, Table, EXHAUSTIVE_LIMIT};
use super::FiniteGroup;
use crate::error::{Error, Result};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Multiplicative order of `b` modulo `h`, or `None` when `gcd(b, h) != 1`.
pub(crate) fn mult_order(b: u64, h: u64) -> Option<u64> {
    let b = b % h;
    if gcd(b, h) != 1 {
        return None;
    }
    let mut x = b;
    let mut k = 1;
    while x != 1 % h {
        x = x * b % h;
        k += 1;
    }
    Some(k)
}

pub(crate) fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let (mut acc, mut sq) = (1 % m, b % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * sq % m;
        }
        sq = sq * sq % m;
        e >>= 1;
    }
    acc
}

fn power_name(sym: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{e}"),
    }
}

fn joined_name(parts: &[String]) -> String {
    let s: String = parts.concat();
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > EXHAUSTIVE_LIMIT {
        Err(Error::InvalidParameter(format!(
            "order {order} exceeds the supported limit {EXHAUSTIVE_LIMIT}"
        )))
    } else {
        Ok(())
    }
}

/// Cyclic group of order `n` generated by `g`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic order must be at least 1".into()));
    }
    check_order(n)?;
    let table = Table::from_fn(n, |a, b| (a + b) % n)?;
    let names = (0..n).map(|i| joined_name(&[power_name("g", i)])).collect();
    FiniteGroup::new(table, names, vec![("g".into(), 1 % n)])
}

/// Dihedral group of order `2n`, `<r, s | r^n = s^2 = rsrs = 1>`.
/// Element `i + n*e` is `r^i s^e`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("dihedral needs n >= 3, got {n}")));
    }
    check_order(2 * n)?;
    let table = Table::from_fn(2 * n, |a, b| {
        let (i, e) = (a % n, a / n);
        let (j, f) = (b % n, b / n);
        let j = if e == 1 { (n - j) % n } else { j };
        (i + j) % n + n * (e ^ f)
    })?;
    let names = (0..2 * n)
        .map(|a| joined_name(&[power_name("r", a % n), power_name("s", a / n)]))
        .collect();
    FiniteGroup::new(table, names, vec![("r".into(), 1), ("s".into(), n)])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                extend(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = perm[x];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

/// Symmetric group on `n` points, elements in lexicographic order of their
/// one-line notation. Products compose right to left: `(ab)(i) = a(b(i))`.
/// Generated by the transposition `t = (1 2)` and the cycle `c = (1 2 ... n)`.
pub fn make_symmetric(n: usize) -> Result<FiniteGroup> {
    if !(2..=5).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "symmetric needs 2 <= n <= 5, got {n}"
        )));
    }
    let perms = permutations(n);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let table = Table::from_fn(perms.len(), |a, b| {
        let composed: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
        index(&composed)
    })?;
    let mut transposition: Vec<usize> = (0..n).collect();
    transposition.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    let mut gens = vec![("t".to_string(), index(&transposition))];
    if n > 2 {
        gens.push(("c".to_string(), index(&cycle)));
    }
    FiniteGroup::new(table, names, gens)
}

fn validate_metacyclic(h: u64, k: u64, b: u64) -> Result<()> {
    if h < 3 {
        return Err(Error::InvalidParameter(format!("metacyclic needs h >= 3, got {h}")));
    }
    if k == 0 || euler_phi(h) % k != 0 {
        return Err(Error::InvalidParameter(format!("k = {k} does not divide phi({h})")));
    }
    match mult_order(b, h) {
        Some(ord) if ord == k => Ok(()),
        Some(ord) => Err(Error::InvalidParameter(format!(
            "{b} has multiplicative order {ord} mod {h}, expected {k}"
        ))),
        None => Err(Error::InvalidParameter(format!("{b} is not a unit mod {h}"))),
    }
}

/// Semidirect product `C_h x| C_k` on pairs `(i, j) = s^i t^j` where
/// `t s t^-1 = s^c`. Requires `c^k = 1 mod h`.
fn semidirect(h: usize, k: usize, c: u64, sym: (&str, &str)) -> Result<FiniteGroup> {
    check_order(h * k)?;
    let powers: Vec<usize> = (0..k).map(|j| pow_mod(c, j as u64, h as u64) as usize).collect();
    let table = Table::from_fn(h * k, |x, y| {
        let (i, j) = (x % h, x / h);
        let (i2, j2) = (y % h, y / h);
        (i + powers[j] * i2) % h + h * ((j + j2) % k)
    })?;
    let names = (0..h * k)
        .map(|x| joined_name(&[power_name(sym.0, x % h), power_name(sym.1, x / h)]))
        .collect();
    FiniteGroup::new(
        table,
        names,
        vec![(sym.0.to_string(), 1 % (h * k)), (sym.1.to_string(), h % (h * k))],
    )
}

/// `F(h,k,b) = <s, t | s^h = t^k = 1, t s t^-1 = s^b>` where `k | phi(h)`
/// and `b` has multiplicative order exactly `k` mod `h`.
pub fn make_metacyclic(h: usize, k: usize, b: usize) -> Result<FiniteGroup> {
    validate_metacyclic(h as u64, k as u64, b as u64)?;
    semidirect(h, k, b as u64, ("s", "t"))
}

/// `F(h,k,b^n)`: the same pair realization as [`make_metacyclic`] with the
/// action exponent reduced to `b^n mod h`. The base triple `(h,k,b)` is
/// validated; `b^n` itself may have order smaller than `k`, in which case
/// the action is not faithful and the group is still of order `hk`.
pub fn make_metacyclic_power(h: usize, k: usize, b: usize, n: u64) -> Result<FiniteGroup> {
    validate_metacyclic(h as u64, k as u64, b as u64)?;
    semidirect(h, k, pow_mod(b as u64, n, h as u64), ("s", "t"))
}

fn smallest_primitive_root(p: u64) -> u64 {
    (2..p)
        .find(|&g| mult_order(g, p) == Some(p - 1))
        .unwrap_or(1)
}

/// Affine group of the prime field `F_p`, `C_p x| Aut(C_p)`, generated by
/// `g` of order `p` and `α` of order `p - 1` acting as `α g α^-1 = g^r`
/// with `r` the smallest primitive root mod `p`.
pub fn make_affine(p: usize) -> Result<FiniteGroup> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("affine needs an odd prime, got {p}")));
    }
    let root = smallest_primitive_root(p as u64);
    semidirect(p, p - 1, root, ("g", "α"))
}

/// Direct product. Element `(x, y)` has index `x * |b| + y`; generator
/// names get the prefixes `1.` and `2.`.
pub fn make_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    check_order(na * nb)?;
    let table = Table::from_fn(na * nb, |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    })?;
    let names = (0..na * nb)
        .map(|x| {
            let (l, r) = (&a.names()[x / nb], &b.names()[x % nb]);
            format!("({l},{r})")
        })
        .collect();
    let gens = a
        .generators()
        .iter()
        .map(|(n, g)| (format!("1.{n}"), g * nb as Elem))
        .chain(b.generators().iter().map(|(n, g)| (format!("2.{n}"), *g)))
        .collect();
    FiniteGroup::new(table, names, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_theory_helpers() {
        assert_eq!(euler_phi(13), 12);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(mult_order(2, 13), Some(12));
        assert_eq!(mult_order(5, 13), Some(4));
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(mult_order(2, 4), None);
        assert_eq!(smallest_primitive_root(5), 2);
        assert_eq!(smallest_primitive_root(7), 3);
        assert!(is_prime(13) && !is_prime(4) && !is_prime(1));
    }

    #[test]
    fn dihedral_relations() {
        let d4 = make_dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        let r = d4.generator("r").unwrap();
        let s = d4.generator("s").unwrap();
        assert_eq!(d4.table().element_order(r), 4);
        assert_eq!(d4.table().element_order(s), 2);
        assert_eq!(d4.table().element_order(d4.mul(r, s)), 2);
        // s r s = r^-1
        assert_eq!(d4.table().product(&[s, r, s]), d4.inv(r));
        assert_eq!(d4.name(d4.mul(d4.mul(r, r), s)), "r^2s");
    }

    #[test]
    fn dihedral_3_has_trivial_center() {
        let d3 = make_dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert_eq!(d3.center(), vec![0]);
    }

    #[test]
    fn dihedral_rejects_small_n() {
        assert!(matches!(make_dihedral(2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn metacyclic_presentation() {
        let f = make_metacyclic(7, 3, 2).unwrap();
        assert_eq!(f.order(), 21);
        let (s, t) = (f.generator("s").unwrap(), f.generator("t").unwrap());
        let conj = f.table().product(&[t, s, f.inv(t)]);
        assert_eq!(conj, f.mul(s, s));
        assert_eq!(f.table().element_order(s), 7);
        assert_eq!(f.table().element_order(t), 3);
    }

    #[test]
    fn metacyclic_rejects_wrong_order_of_b() {
        // 2 has order 12 mod 13.
        assert!(make_metacyclic(13, 4, 2).is_err());
        // 3 does not divide phi(8) = 4.
        assert!(make_metacyclic(8, 3, 3).is_err());
        assert!(make_metacyclic(2, 1, 1).is_err());
    }

    #[test]
    fn metacyclic_power_center_matches_gcd() {
        // F(13,4,5^2): center of order gcd(2,4) = 2, generated by t^2.
        let f = make_metacyclic_power(13, 4, 5, 2).unwrap();
        let t = f.generator("t").unwrap();
        let t2 = f.mul(t, t);
        assert_eq!(f.center(), vec![0, t2]);
        // F(13,4,5^4) is abelian.
        assert!(make_metacyclic_power(13, 4, 5, 4).unwrap().is_abelian());
    }

    #[test]
    fn affine_5_presentation() {
        let g = make_affine(5).unwrap();
        assert_eq!(g.order(), 20);
        let x = g.generator("g").unwrap();
        let a = g.generator("α").unwrap();
        assert_eq!(g.table().element_order(x), 5);
        assert_eq!(g.table().element_order(a), 4);
        // g α g^2 α^3 = 1
        assert_eq!(g.table().product(&[x, a, x, x, a, a, a]), 0);
        assert!(make_affine(4).is_err());
        assert!(make_affine(2).is_err());
    }

    #[test]
    fn symmetric_groups() {
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(make_symmetric(5).unwrap().order(), 120);
        assert!(make_symmetric(6).is_err());
        assert!(make_symmetric(1).is_err());
    }

    #[test]
    fn cyclic_has_one_element_of_each_order_divisor_count() {
        let c6 = make_cyclic(6).unwrap();
        assert!(c6.is_abelian());
        let mut orders = c6.table().element_orders();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 3, 3, 6, 6]);
        assert!(make_cyclic(0).is_err());
        assert_eq!(make_cyclic(1).unwrap().order(), 1);
    }

    #[test]
    fn product_naming_and_center() {
        let d3 = make_dihedral(3).unwrap();
        let p = make_product(&d3, &d3).unwrap();
        assert_eq!(p.order(), 36);
        let names: Vec<&str> = p.generators().iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["1.r", "1.s", "2.r", "2.s"]);
        assert_eq!(p.center(), vec![0]);

        let c2 = make_cyclic(2).unwrap();
        let q = make_product(&d3, &c2).unwrap();
        assert_eq!(q.center().len(), 2);
        assert!(make_product(&make_dihedral(8).unwrap(), &make_dihedral(8).unwrap()).is_err());
    }
}
