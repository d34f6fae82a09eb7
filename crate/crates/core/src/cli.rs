//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns the buffered output with an exit code: 0 on success, 1 when
//! a verification fails, 2 on bad input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::brace::{compute_block_with_cap, BraceBlock};
use crate::error::{Error, Result};
use crate::group::{to_cayley_text, FiniteGroup, GroupSpec};
use crate::nearring::{enumerate_abelian_maps, parse_abelian_map, psi_n_binomial, AbelianMap, PsiSequence};
use crate::worked::{run_example, Overrides, EXAMPLE_IDS};
use crate::report::{BlockReport, CensusReport};
use crate::verify::{run_suite, SuiteOptions};
use crate::ybe::{census, solution_to_text, SolutionRecord};

#[derive(Debug, Parser)]
#[command(name = "braceblock", version, about = "Brace blocks from abelian maps and their Yang-Baxter solutions")]
pub struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, center and generators of a group.
    Group {
        spec: String,
        /// Write the Cayley table to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// List every abelian map of a group.
    Maps { spec: String },
    /// Compute the brace block of an abelian map.
    Block {
        spec: String,
        #[arg(long)]
        map: String,
        /// Cap on the number of operations scanned (default 4|G|).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Yang-Baxter solutions of every brace in the block.
    Solutions {
        spec: String,
        #[arg(long)]
        map: String,
        /// Directory receiving one file per distinct solution.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Run the full property suite.
    Verify {
        spec: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        max_n: Option<usize>,
        /// Only compare the two formulas for psi_n.
        #[arg(long)]
        seed_check: bool,
    },
    /// Reproduce a named worked example.
    Paper {
        /// One of d4, aff5, dn-fpf, dn-fix, sn, split, dndn, meta, meta2n.
        id: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
    },
}

/// Exit code and buffered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Outcome {
        Outcome { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: if e.is_input_error() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn load(spec: &str) -> Result<(GroupSpec, Arc<FiniteGroup>)> {
    let parsed: GroupSpec = spec.parse()?;
    let group = Arc::new(parsed.build()?);
    Ok((parsed, group))
}

fn load_with_map(spec: &str, map: &str) -> Result<(GroupSpec, Arc<FiniteGroup>, AbelianMap)> {
    let (parsed, group) = load(spec)?;
    let psi = parse_abelian_map(&group, map)?;
    Ok((parsed, group, psi))
}

fn block(group: &Arc<FiniteGroup>, psi: &AbelianMap, max_n: Option<usize>) -> Result<BraceBlock> {
    compute_block_with_cap(group, psi, max_n.unwrap_or(4 * group.order()))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Group { spec, export } => group_cmd(spec, export.as_deref(), cli.json),
        Command::Maps { spec } => maps_cmd(spec, cli.json),
        Command::Block { spec, map, max_n } => {
            let (parsed, group, psi) = load_with_map(spec, map)?;
            let block = block(&group, &psi, *max_n)?;
            let census = census(&block)?;
            let report = BlockReport::new(&parsed.to_string(), &block, census.brace_classes.clone(), Some(&census));
            let out = if cli.json { to_json(&report) } else { report.to_text() };
            Ok(Outcome::ok(out, block.all_braces_verified()))
        }
        Command::Solutions { spec, map, dump, max_n } => solutions_cmd(spec, map, dump.as_deref(), *max_n, cli.json),
        Command::Verify { spec, map, max_n, seed_check } => verify_cmd(spec, map, *max_n, *seed_check, cli.json),
        Command::Paper { id, n, h, k, b, j, p } => {
            let overrides = Overrides { n: *n, h: *h, k: *k, b: *b, j: *j, p: *p };
            if !EXAMPLE_IDS.contains(&id.as_str()) {
                return Err(Error::InvalidParameter(format!(
                    "unknown example {id:?}; known: {}",
                    EXAMPLE_IDS.join(", ")
                )));
            }
            let report = run_example(id, &overrides)?;
            let out = if cli.json { to_json(&report) } else { report.to_text() };
            Ok(Outcome::ok(out, report.passed()))
        }
    }
}

fn group_cmd(spec: &str, export: Option<&Path>, json: bool) -> Result<Outcome> {
    let (parsed, group) = load(spec)?;
    if let Some(path) = export {
        fs::write(path, to_cayley_text(&group))?;
    }
    let t = group.table();
    let center: Vec<&str> = group.center().into_iter().map(|x| group.name(x)).collect();
    let gens: Vec<(String, usize)> = group
        .generators()
        .iter()
        .map(|(name, g)| (name.clone(), t.element_order(*g)))
        .collect();
    let out = if json {
        to_json(&json!({
            "spec": parsed.to_string(),
            "order": group.order(),
            "abelian": group.is_abelian(),
            "center": center,
            "generators": gens.iter().map(|(n, o)| json!({"name": n, "order": o})).collect::<Vec<_>>(),
            "label": crate::report::group_label(t),
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "group       {parsed}");
        let _ = writeln!(s, "order       {}", group.order());
        let _ = writeln!(s, "abelian     {}", if group.is_abelian() { "yes" } else { "no" });
        let _ = writeln!(s, "center      {{{}}} (order {})", center.join(", "), center.len());
        let gens: Vec<String> = gens.iter().map(|(n, o)| format!("{n} (order {o})")).collect();
        let _ = writeln!(s, "generators  {}", gens.join(", "));
        if let Some(path) = export {
            let _ = writeln!(s, "exported    {}", path.display());
        }
        s
    };
    Ok(Outcome::ok(out, true))
}

fn maps_cmd(spec: &str, json: bool) -> Result<Outcome> {
    let (_, group) = load(spec)?;
    let maps = enumerate_abelian_maps(&group);
    let rows: Vec<serde_json::Value> = maps
        .iter()
        .map(|m| {
            json!({
                "map": m.describe(),
                "image_order": m.image().len(),
                "fixed_point_free": m.is_fixed_point_free(),
            })
        })
        .collect();
    let out = if json {
        to_json(&rows)
    } else {
        let w = maps.iter().map(|m| m.describe().chars().count()).max().unwrap_or(3).max(3);
        let mut s = format!("{} abelian maps\n  {:>3}  {:<w$}  {:>5}  fpf\n", maps.len(), "#", "map", "|im|");
        for (i, m) in maps.iter().enumerate() {
            let _ = writeln!(
                s,
                "  {i:>3}  {:<w$}  {:>5}  {}",
                m.describe(),
                m.image().len(),
                if m.is_fixed_point_free() { "yes" } else { "no" }
            );
        }
        s
    };
    Ok(Outcome::ok(out, true))
}

fn solutions_cmd(spec: &str, map: &str, dump: Option<&Path>, max_n: Option<usize>, json: bool) -> Result<Outcome> {
    let (parsed, group, psi) = load_with_map(spec, map)?;
    let block = block(&group, &psi, max_n)?;
    let census = census(&block)?;
    let firsts: Vec<_> = (0..census.raw_count())
        .map(|i| census.provenance.iter().find(|p| p.solution == i).expect("every solution has a source"))
        .collect();
    if let Some(dir) = dump {
        fs::create_dir_all(dir)?;
        for (i, p) in firsts.iter().enumerate() {
            let sol = &census.solutions[i];
            let (name, body) = if json {
                (format!("solution-{i:03}.json"), to_json(&SolutionRecord::new(sol, p.m, p.n, p.variant)))
            } else {
                (format!("solution-{i:03}.txt"), solution_to_text(sol, p.m, p.n, p.variant))
            };
            fs::write(dir.join(name), body)?;
        }
    }
    let report = CensusReport::new(&census);
    let passed = census.solutions.iter().all(|s| s.braid_ok && s.nondegenerate);
    let out = if json {
        to_json(&json!({
            "group": parsed.to_string(),
            "map": psi.describe(),
            "ops": block.len(),
            "census": report,
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "group      {parsed} (order {})", group.order());
        let _ = writeln!(s, "map        {}", psi.describe());
        let _ = writeln!(s, "ops        {}", block.len());
        let _ = writeln!(s, "classes    {}", report.class_count);
        let _ = writeln!(s, "distinct   {}", report.raw_count);
        let _ = writeln!(s, "convention {}", report.convention_count);
        let _ = writeln!(s, "collisions {}", if report.collision_flag { "FLAGGED" } else { "none" });
        let _ = writeln!(s);
        let _ = writeln!(s, "  {:>3}  {:<10}  {:<5}  {:<5}  {:<10}  sources", "#", "first", "braid", "nondeg", "involutive");
        for (i, sol) in census.solutions.iter().enumerate() {
            let sources: Vec<String> = census
                .provenance
                .iter()
                .filter(|p| p.solution == i)
                .map(|p| format!("{}({},{})", p.variant, p.m, p.n))
                .collect();
            let yn = |b: bool| if b { "yes" } else { "no" };
            let _ = writeln!(
                s,
                "  {i:>3}  {:<10}  {:<5}  {:<6}  {:<10}  {}",
                format!("{}({},{})", firsts[i].variant, firsts[i].m, firsts[i].n),
                yn(sol.braid_ok),
                yn(sol.nondegenerate),
                yn(sol.involutive),
                sources.join(" ")
            );
        }
        if let Some(dir) = dump {
            let _ = writeln!(s, "\nwrote {} files to {}", census.raw_count(), dir.display());
        }
        s
    };
    Ok(Outcome::ok(out, passed))
}

fn verify_cmd(spec: &str, map: &str, max_n: Option<usize>, seed_check: bool, json: bool) -> Result<Outcome> {
    let (parsed, group, psi) = load_with_map(spec, map)?;
    if seed_check {
        let limit = 2 * group.order();
        let mut seq = PsiSequence::new(psi.clone());
        let mut first_bad = None;
        for n in 1..=limit {
            if *seq.psi(n)? != psi_n_binomial(&psi, n)? {
                first_bad = Some(n);
                break;
            }
        }
        let out = if json {
            to_json(&json!({"group": parsed.to_string(), "map": psi.describe(), "checked_up_to": limit, "first_mismatch": first_bad}))
        } else {
            match first_bad {
                None => format!("psi_n: both formulas agree for 1 <= n <= {limit}\n"),
                Some(n) => format!("psi_n: formulas disagree at n = {n}\n"),
            }
        };
        return Ok(Outcome::ok(out, first_bad.is_none()));
    }
    let mut opts = SuiteOptions::for_group(&group);
    opts.block_cap = max_n;
    let report = run_suite(&group, &psi, opts);
    let out = if json {
        to_json(&json!({"group": parsed.to_string(), "map": psi.describe(), "passed": report.passed(), "checks": report.checks}))
    } else {
        let mut s = format!("group {parsed}, map {}\n", psi.describe());
        for c in &report.checks {
            match &c.witness {
                None => {
                    let _ = writeln!(s, "  PASS  {}", c.name);
                }
                Some(w) => {
                    let _ = writeln!(s, "  FAIL  {}: {w}", c.name);
                }
            }
        }
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(s, "{} checks, {failed} failed", report.checks.len());
        s
    };
    Ok(Outcome::ok(out, report.passed()))
}
