//! Writes every distinct solution of a block in the text dump format and
//! reads the files back.

use std::fs;
use std::sync::Arc;

use braceblock::brace::compute_block;
use braceblock::group::make_dihedral;
use braceblock::nearring::parse_abelian_map;
use braceblock::ybe::{census, solution_from_text, solution_to_text};

fn main() -> braceblock::Result<()> {
    let g = Arc::new(make_dihedral(4)?);
    let psi = parse_abelian_map(&g, "r->1; s->r^2s")?;
    let c = census(&compute_block(&g, &psi)?)?;

    let dir = std::env::temp_dir().join("braceblock-dump-example");
    fs::create_dir_all(&dir)?;
    for (i, s) in c.solutions.iter().enumerate() {
        let p = c.provenance.iter().find(|p| p.solution == i).expect("every solution has a source");
        fs::write(dir.join(format!("solution-{i:03}.txt")), solution_to_text(s, p.m, p.n, p.variant))?;
    }
    for (i, s) in c.solutions.iter().enumerate() {
        let text = fs::read_to_string(dir.join(format!("solution-{i:03}.txt")))?;
        let record = solution_from_text(&text)?;
        assert_eq!(record.to_solution()?, *s);
        println!("solution {i}: from B({},{}) {}, {} rows", record.m, record.n, record.variant, record.entries.len());
    }
    println!("wrote and reread {} files in {}", c.solutions.len(), dir.display());
    Ok(())
}
