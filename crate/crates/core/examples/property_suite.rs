//! Runs the exhaustive property suite on every abelian map of D6.

use std::sync::Arc;

use braceblock::group::make_dihedral;
use braceblock::nearring::enumerate_abelian_maps;
use braceblock::verify::{run_suite, SuiteOptions};

fn main() -> braceblock::Result<()> {
    let g = Arc::new(make_dihedral(6)?);
    let opts = SuiteOptions::for_group(&g);
    let mut total = 0;
    for psi in enumerate_abelian_maps(&g) {
        let report = run_suite(&g, &psi, opts);
        total += report.checks.len();
        let status = match report.first_failure() {
            None => "ok".to_string(),
            Some(c) => format!("FAILED {}: {}", c.name, c.witness.as_deref().unwrap_or("-")),
        };
        println!("{:<22} {:>3} checks  {status}", psi.describe(), report.checks.len());
    }
    println!("{total} checks in all");
    Ok(())
}
