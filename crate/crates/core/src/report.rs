//! Block and census reports, rendered as aligned text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::brace::BraceBlock;
use crate::group::{find_isomorphism, Table};
use crate::ybe::{Collision, SolutionCensus, Variant};

/// `C2 x C6` style label for invariant factors; `1` for the trivial group.
pub fn invariant_label(factors: &[usize]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join(" x ")
}

/// Invariant-factor label for abelian tables, `nonabelian` otherwise.
pub fn group_label(table: &Table) -> String {
    match table.abelian_invariants() {
        Some(f) => invariant_label(&f),
        None => "nonabelian".to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OpReport {
    pub n: usize,
    pub abelian: bool,
    pub center_size: usize,
    /// Isomorphism class: invariant factors if abelian, otherwise the first
    /// operation it is isomorphic to (`G` for the ambient group).
    pub label: String,
    pub psi: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProvenanceRow {
    pub m: usize,
    pub n: usize,
    pub variant: Variant,
    pub solution: usize,
    pub involutive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub raw_count: usize,
    pub convention_count: usize,
    pub class_count: usize,
    pub collision_flag: bool,
    pub collisions: Vec<Collision>,
    pub provenance: Vec<ProvenanceRow>,
}

impl CensusReport {
    pub fn new(census: &SolutionCensus) -> CensusReport {
        CensusReport {
            raw_count: census.raw_count(),
            convention_count: census.convention_count,
            class_count: census.brace_classes.len(),
            collision_flag: census.collision_flag(),
            collisions: census.collisions.clone(),
            provenance: census
                .provenance
                .iter()
                .map(|p| ProvenanceRow {
                    m: p.m,
                    n: p.n,
                    variant: p.variant,
                    solution: p.solution,
                    involutive: census.solutions[p.solution].involutive,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub group: String,
    pub order: usize,
    pub map: String,
    pub fixed_point_free: bool,
    pub ops: Vec<OpReport>,
    pub period: (usize, usize),
    pub stabilized_abelian: Option<usize>,
    pub brace_matrix: Vec<Vec<bool>>,
    pub brace_classes: Vec<Vec<(usize, usize)>>,
    pub census: Option<CensusReport>,
}

/// Labels each operation of the block up to group isomorphism.
pub fn op_labels(block: &BraceBlock) -> Vec<String> {
    let ops = block.ops();
    let mut labels: Vec<String> = Vec::with_capacity(ops.len());
    for (i, op) in ops.iter().enumerate() {
        if op.is_abelian() {
            labels.push(group_label(&op.table));
            continue;
        }
        let twin = (0..i).find(|&j| {
            !ops[j].is_abelian() && find_isomorphism(&[&ops[j].table], &[&op.table]).is_some()
        });
        labels.push(match twin {
            Some(0) | None if i == 0 => "G".to_string(),
            Some(0) => "nonabelian, ≅ G".to_string(),
            Some(j) => format!("nonabelian, ≅ ∘{j}"),
            None => format!("nonabelian, new (|Z| = {})", op.table.center().len()),
        });
    }
    labels
}

impl BlockReport {
    /// `brace_classes` should come from the census when one was run, so the
    /// isomorphism search is not repeated.
    pub fn new(
        group_spec: &str,
        block: &BraceBlock,
        brace_classes: Vec<Vec<(usize, usize)>>,
        census: Option<&SolutionCensus>,
    ) -> BlockReport {
        let labels = op_labels(block);
        BlockReport {
            group: group_spec.to_string(),
            order: block.group().order(),
            map: block.seed().describe(),
            fixed_point_free: block.seed().is_fixed_point_free(),
            ops: block
                .ops()
                .iter()
                .zip(labels)
                .map(|(op, label)| OpReport {
                    n: op.n,
                    abelian: op.is_abelian(),
                    center_size: op.table.center().len(),
                    label,
                    psi: op.psi.describe(),
                })
                .collect(),
            period: block.period(),
            stabilized_abelian: block.stabilized_abelian(),
            brace_matrix: block.brace_matrix().to_vec(),
            brace_classes,
            census: census.map(CensusReport::new),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "group     {} (order {})", self.group, self.order);
        let _ = writeln!(out, "map       {}", self.map);
        let _ = writeln!(out, "fpf       {}", yes_no(self.fixed_point_free));
        let _ = writeln!(
            out,
            "ops       {}  (preperiod {}, cycle {})",
            self.ops.len(),
            self.period.0,
            self.period.1
        );
        let _ = writeln!(
            out,
            "abelian   {}",
            self.stabilized_abelian.map_or("never".to_string(), |n| format!("from n = {n}"))
        );
        let _ = writeln!(out);
        let psi_w = self.ops.iter().map(|o| o.psi.chars().count()).max().unwrap_or(0).max(5);
        let _ = writeln!(out, "  {:>3}  {:<7}  {:>4}  {:<psi_w$}  class", "n", "abelian", "|Z|", "psi_n");
        for op in &self.ops {
            let _ = writeln!(
                out,
                "  {:>3}  {:<7}  {:>4}  {:<psi_w$}  {}",
                op.n,
                yes_no(op.abelian),
                op.center_size,
                op.psi,
                op.label
            );
        }
        let total = self.brace_matrix.iter().map(Vec::len).sum::<usize>();
        let ok = self.brace_matrix.iter().flatten().filter(|&&b| b).count();
        let _ = writeln!(out);
        let _ = writeln!(out, "braces    {ok}/{total} verified");
        let _ = writeln!(out, "classes   {}", self.brace_classes.len());
        for (i, class) in self.brace_classes.iter().enumerate() {
            let members: Vec<String> = class.iter().map(|(m, n)| format!("({m},{n})")).collect();
            let _ = writeln!(out, "  [{i}] {}", members.join(" "));
        }
        if let Some(c) = &self.census {
            let _ = writeln!(out);
            let _ = writeln!(out, "solutions distinct tables {}", c.raw_count);
            let _ = writeln!(out, "          class convention {}", c.convention_count);
            let _ = writeln!(
                out,
                "          collisions       {}",
                if c.collision_flag { format!("FLAGGED ({})", c.collisions.len()) } else { "none".into() }
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::brace::{classify_braces, compute_block};
    use crate::group::*;
    use crate::nearring::parse_abelian_map;
    use crate::ybe::census;

    #[test]
    fn labels() {
        assert_eq!(invariant_label(&[]), "1");
        assert_eq!(invariant_label(&[2, 6]), "C2 x C6");
        assert_eq!(group_label(make_cyclic(20).unwrap().table()), "C20");
        assert_eq!(group_label(make_dihedral(3).unwrap().table()), "nonabelian");
    }

    #[test]
    fn affine_block_report() {
        let g = Arc::new(make_affine(5).unwrap());
        let psi = parse_abelian_map(&g, "g->1; α->α^-1").unwrap();
        let block = compute_block(&g, &psi).unwrap();
        let c = census(&block).unwrap();
        let report = BlockReport::new("affine:5", &block, c.brace_classes.clone(), Some(&c));
        let labels: Vec<&str> = report.ops.iter().map(|o| o.label.as_str()).collect();
        assert_eq!(labels[0], "G");
        assert_eq!(labels[2], "C20");
        let text = report.to_text();
        assert!(text.contains("affine:5 (order 20)"), "{text}");
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["ops"].as_array().unwrap().len(), 3);
        assert_eq!(json["census"]["convention_count"], c.convention_count);
        assert_eq!(classify_braces(&block), c.brace_classes);
    }
}
