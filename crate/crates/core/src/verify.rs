//! Exhaustive property checks for one `(G, ψ)` pair.
//!
//! [`run_suite`] evaluates every identity the construction relies on and
//! reports each as a named [`CheckResult`]. A failing check carries a
//! witness describing the first counterexample.

use std::sync::Arc;

use serde::Serialize;

use crate::brace::{
    check_phi_homomorphism, compute_block_with_cap, fpf_witness, ops_equal, verify_circle_recursion,
    BraceBlock, CircleOp,
};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::nearring::{psi_n_binomial, AbelianMap, GMap, PsiSequence};
use crate::ybe::{are_mutually_inverse, brace_solution, explicit_solution, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl CheckResult {
    fn from_outcome(name: &str, outcome: Result<Option<String>>) -> CheckResult {
        let (passed, witness) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(w)) => (false, Some(w)),
            Err(e) => (false, Some(e.to_string())),
        };
        CheckResult { name: name.to_string(), passed, witness }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Largest `n` used for the `ψ_n` identities.
    pub max_n: usize,
    /// Largest `m, n` used for `(ψ_m)_n = ψ_{mn}`.
    pub max_compose: usize,
    /// Safety cap for the block scan.
    pub block_cap: Option<usize>,
}

impl SuiteOptions {
    pub fn for_group(group: &FiniteGroup) -> SuiteOptions {
        SuiteOptions { max_n: (2 * group.order()).min(32), max_compose: 6, block_cap: None }
    }
}

/// Outcome of [`run_suite`].
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn first_failing<T>(items: impl IntoIterator<Item = T>, ok: impl Fn(&T) -> Result<bool>, describe: impl Fn(&T) -> String) -> Result<Option<String>> {
    for item in items {
        if !ok(&item)? {
            return Ok(Some(describe(&item)));
        }
    }
    Ok(None)
}

fn status<T>(r: &Result<T>) -> Result<Option<String>> {
    Ok(r.as_ref().err().map(ToString::to_string))
}

fn map_eq(a: &GMap, b: &GMap) -> bool {
    a.images() == b.images()
}

/// Runs every check for `(group, psi)`.
pub fn run_suite(group: &Arc<FiniteGroup>, psi: &AbelianMap, opts: SuiteOptions) -> SuiteReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, outcome: Result<Option<String>>| {
        checks.push(CheckResult::from_outcome(name, outcome));
    };
    let t = group.table();
    let order = group.order();
    let name = |x: usize| group.name(x).to_string();
    let mut seq = PsiSequence::new(psi.clone());
    let n_max = opts.max_n.max(1);

    push("group axioms", t.validate().map(|_| None));

    push(
        "abelian map is constant on conjugacy classes",
        first_failing(
            (0..order).flat_map(|a| (0..order).map(move |g| (a, g))),
            |&(a, g)| Ok(psi.apply(t.product(&[t.inv(g), a, g])) == psi.apply(a)),
            |&(a, g)| format!("a = {}, g = {}", name(a), name(g)),
        ),
    );

    push(
        "psi_n: composition and binomial routes agree",
        first_failing(
            1..=n_max,
            |&n| Ok(seq.clone().psi(n)? == &psi_n_binomial(psi, n)?),
            |n| format!("n = {n}"),
        ),
    );

    let psis: Result<Vec<AbelianMap>> = (0..=n_max).map(|n| seq.psi(n).cloned()).collect();
    let psis = match psis {
        Ok(p) => p,
        Err(e) => {
            push("psi_n sequence", Err(e));
            return SuiteReport { checks };
        }
    };
    let image = psi.image();

    push(
        "image of psi_n lies in image of psi",
        first_failing(
            1..=n_max,
            |&n| Ok(psis[n].image().iter().all(|x| image.binary_search(x).is_ok())),
            |n| format!("n = {n}"),
        ),
    );

    push(
        "psi_m(g) and psi_n(h) commute",
        first_failing(
            (0..=n_max).flat_map(|m| (0..=n_max).map(move |n| (m, n))),
            |&(m, n)| {
                let (a, b) = (psis[m].image(), psis[n].image());
                Ok(a.iter().all(|&x| b.iter().all(|&y| t.commute(x, y))))
            },
            |(m, n)| format!("m = {m}, n = {n}"),
        ),
    );

    push(
        "psi_m + psi_n = psi_n + psi_m",
        first_failing(
            (0..=n_max).flat_map(|m| (0..=n_max).map(move |n| (m, n))),
            |&(m, n)| Ok(map_eq(&psis[m].add(&psis[n])?, &psis[n].add(&psis[m])?)),
            |(m, n)| format!("m = {m}, n = {n}"),
        ),
    );

    push(
        "(1 - psi)^n = 1 - psi_n",
        first_failing(
            0..=n_max,
            |&n| Ok(map_eq(seq.clone().one_minus_power(n)?, &psis[n].one_minus())),
            |n| format!("n = {n}"),
        ),
    );

    push(
        "psi_{n+1} = psi + psi_n (1 - psi)",
        first_failing(
            0..n_max,
            |&n| {
                let rhs = psi.add(&psis[n].compose(&psi.one_minus())?)?;
                Ok(map_eq(&psis[n + 1], &rhs))
            },
            |n| format!("n = {n}"),
        ),
    );

    push(
        "(psi_m)_n = psi_{mn}",
        first_failing(
            (0..=opts.max_compose).flat_map(|m| (0..=opts.max_compose).map(move |n| (m, n))),
            |&(m, n)| {
                let inner = PsiSequence::new(seq.clone().psi(m)?.clone()).psi(n)?.clone();
                Ok(inner == *seq.clone().psi(m * n)?)
            },
            |(m, n)| format!("m = {m}, n = {n}"),
        ),
    );

    let fpf = psi.is_fixed_point_free();
    push(
        "psi fixed point free iff psi_n fixed point free",
        first_failing(
            1..=n_max,
            |&n| Ok(psis[n].is_fixed_point_free() == fpf),
            |n| format!("n = {n}, psi fpf = {fpf}"),
        ),
    );

    let ops: Result<Vec<CircleOp>> =
        (0..=n_max).map(|n| CircleOp::from_psi(group, psis[n].clone(), n)).collect();
    push("every circle operation is a group with the stated inverses", status(&ops));
    let Ok(ops) = ops else {
        return SuiteReport { checks };
    };

    push(
        "circle_0 is the ambient product",
        Ok((ops[0].table != *t).then(|| "tables differ".to_string())),
    );

    push(
        "image of (1 - psi)^n is a subgroup; abelian iff circle_n abelian",
        first_failing(
            0..=n_max,
            |&n| {
                let img = seq.clone().one_minus_power(n)?.image();
                let commutative = img.iter().all(|&x| img.iter().all(|&y| t.commute(x, y)));
                Ok(t.is_subgroup(&img) && commutative == ops[n].is_abelian())
            },
            |n| format!("n = {n}"),
        ),
    );

    push(
        "circle recursion g o_{n+1} h = ((g psi(g^-1)) o_n h) psi(g)",
        first_failing(0..n_max, |&n| verify_circle_recursion(group, psi, n), |n| format!("n = {n}")),
    );

    push(
        "ops equal iff (psi_m - psi_n)(G) is central",
        first_failing(
            (0..=n_max).flat_map(|m| (m..=n_max).map(move |n| (m, n))),
            |&(m, n)| ops_equal(group, &ops[m], &ops[n]).map(|_| true),
            |(m, n)| format!("m = {m}, n = {n}"),
        ),
    );

    push(
        "equal ops stay equal after one step",
        first_failing(
            (0..n_max).flat_map(|m| (m..n_max).map(move |n| (m, n))),
            |&(m, n)| Ok(ops[m].table != ops[n].table || ops[m + 1].table == ops[n + 1].table),
            |(m, n)| format!("m = {m}, n = {n}"),
        ),
    );

    push(
        "abelian circle_n is stable",
        first_failing(
            0..n_max,
            |&n| Ok(!ops[n].is_abelian() || ops[n + 1].table == ops[n].table),
            |n| format!("n = {n}"),
        ),
    );

    push(
        "1 - psi is a homomorphism (G, o_n) -> (G, o_{n-1}), bijective iff psi fpf",
        first_failing(
            1..=n_max.min(8),
            |&n| Ok(check_phi_homomorphism(group, psi, n)?.homomorphism),
            |n| format!("n = {n}"),
        ),
    );

    let block = match opts.block_cap {
        Some(cap) => compute_block_with_cap(group, psi, cap),
        None => compute_block_with_cap(group, psi, 4 * order),
    };
    push("block: every ordered pair of ops is a brace", status(&block));
    let Ok(block) = block else {
        return SuiteReport { checks };
    };

    push(
        "block ops match the scanned sequence",
        first_failing(
            0..=n_max,
            |&n| Ok(block.op(n).table == ops[n].table),
            |n| format!("n = {n}"),
        ),
    );

    if fpf {
        let k = block.len();
        push(
            "fixed point free: (1 - psi)^m maps B_{m,n} onto B_{0,n-m}",
            first_failing(
                (0..k).flat_map(|m| (m + 1..k + 1).map(move |n| (m, n))),
                |&(m, n)| Ok(fpf_witness(&block, m, n)?.is_some()),
                |(m, n)| format!("m = {m}, n = {n}"),
            ),
        );
    }

    for (name, outcome) in solution_checks(group, psi, &block) {
        push(name, outcome);
    }

    SuiteReport { checks }
}

fn solution_checks(
    group: &Arc<FiniteGroup>,
    psi: &AbelianMap,
    block: &BraceBlock,
) -> Vec<(&'static str, Result<Option<String>>)> {
    let k = block.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|m| (0..k).map(move |n| (m, n))).collect();
    let describe = |&(m, n): &(usize, usize)| format!("m = {m}, n = {n}");
    let solutions = |&(m, n): &(usize, usize)| -> Result<_> {
        let b = block.brace(m, n);
        Ok((brace_solution(&b, Variant::R)?, brace_solution(&b, Variant::RPrime)?, b.dot.is_abelian()))
    };
    vec![
        (
            "closed-form R and R' match the brace solutions",
            first_failing(
                pairs.iter().copied(),
                |&(m, n)| {
                    explicit_solution(group, psi, m, n, Variant::R)?;
                    explicit_solution(group, psi, m, n, Variant::RPrime)?;
                    Ok(true)
                },
                describe,
            ),
        ),
        (
            "R and R' are non-degenerate braided solutions with R R' = R' R = id",
            first_failing(
                pairs.iter().copied(),
                |p| {
                    let (r, rp, _) = solutions(p)?;
                    Ok(r.braid_ok && r.nondegenerate && rp.braid_ok && rp.nondegenerate && are_mutually_inverse(&r, &rp))
                },
                describe,
            ),
        ),
        (
            "R = R' iff R involutive iff first op abelian",
            first_failing(
                pairs.iter().copied(),
                |p| {
                    let (r, rp, abelian) = solutions(p)?;
                    Ok((r == rp) == abelian && r.involutive == abelian)
                },
                describe,
            ),
        ),
    ]
}

/// Converts a failed suite into an [`Error::Invariant`] naming the first
/// failing check.
pub fn require(report: &SuiteReport) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::Invariant(format!(
            "{} failed: {}",
            c.name,
            c.witness.as_deref().unwrap_or("no witness")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::nearring::parse_abelian_map;

    #[test]
    fn suite_passes_on_d4_seeds() {
        let g = Arc::new(make_dihedral(4).unwrap());
        for spec in ["r->1; s->r^2s", "r->s; s->1", "r->1; s->1"] {
            let psi = parse_abelian_map(&g, spec).unwrap();
            let report = run_suite(&g, &psi, SuiteOptions::for_group(&g));
            require(&report).unwrap();
            assert!(report.checks.len() >= 20, "{}", report.checks.len());
        }
    }

    #[test]
    fn suite_passes_on_metacyclic_fpf_seed() {
        let g = Arc::new(make_metacyclic(7, 3, 2).unwrap());
        let psi = parse_abelian_map(&g, "s->1; t->t^-1").unwrap();
        let report = run_suite(&g, &psi, SuiteOptions::for_group(&g));
        require(&report).unwrap();
        assert!(report.checks.iter().any(|c| c.name.starts_with("fixed point free")));
    }
}
