//! Yang-Baxter solutions from a brace block: the two solutions of each
//! brace, the closed forms, and the census over the whole block.

use std::sync::Arc;

use braceblock::brace::compute_block;
use braceblock::group::{make_dihedral, make_product};
use braceblock::nearring::parse_abelian_map;
use braceblock::ybe::{are_mutually_inverse, brace_solution, census, explicit_solution, Variant};

fn main() -> braceblock::Result<()> {
    let d3 = make_dihedral(3)?;
    let g = Arc::new(make_product(&d3, &d3)?);
    let psi = parse_abelian_map(&g, "1.r->1; 1.s->2.s; 2.r->1; 2.s->1.s")?;
    let block = compute_block(&g, &psi)?;

    let brace = block.brace(1, 2);
    let r = brace_solution(&brace, Variant::R)?;
    let r_prime = brace_solution(&brace, Variant::RPrime)?;
    assert_eq!(r, explicit_solution(&g, &psi, 1, 2, Variant::R)?);
    println!(
        "B(1,2): braided {}, non-degenerate {}, involutive {}, R R' = id: {}",
        r.braid_ok,
        r.nondegenerate,
        r.involutive,
        are_mutually_inverse(&r, &r_prime)
    );

    let c = census(&block)?;
    println!(
        "D3 x D3 swap seed: {} braces in {} classes, {} solutions by class, {} distinct tables",
        block.len() * block.len(),
        c.brace_classes.len(),
        c.convention_count,
        c.raw_count()
    );
    Ok(())
}
