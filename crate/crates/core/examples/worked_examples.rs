//! Runs every named worked example and prints its claims next to the
//! computed values. Pass an id to run just one.

use braceblock::worked::{run_example, Overrides, EXAMPLE_IDS};

fn main() -> braceblock::Result<()> {
    let wanted: Vec<String> = std::env::args().skip(1).collect();
    for id in EXAMPLE_IDS {
        if !wanted.is_empty() && !wanted.iter().any(|w| w == id) {
            continue;
        }
        let report = run_example(id, &Overrides::default())?;
        for claim in &report.claims {
            println!("{id:<7} {:<9} {:<50} {}", claim.status.to_string(), claim.claim, claim.computed);
        }
        println!("{id:<7} {}\n", if report.passed() { "passed" } else { "FAILED" });
    }
    Ok(())
}
