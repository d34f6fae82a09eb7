//! The brace block of ψ(g) = 1, ψ(α) = α⁻¹ on the affine group of F₅:
//! ∘₁ is nonabelian and ∘₂ is cyclic of order 20, after which the
//! operations stop changing.

use std::sync::Arc;

use braceblock::brace::{classify_braces, compute_block};
use braceblock::group::make_affine;
use braceblock::nearring::parse_abelian_map;
use braceblock::report::BlockReport;

fn main() -> braceblock::Result<()> {
    let g = Arc::new(make_affine(5)?);
    let psi = parse_abelian_map(&g, "g->1; α->α^-1")?;
    let image = psi.one_minus().image();
    println!("(1 - psi)(G) has order {}", image.len());

    let block = compute_block(&g, &psi)?;
    let classes = classify_braces(&block);
    let report = BlockReport::new("affine:5", &block, classes, None);
    print!("{}", report.to_text());
    Ok(())
}
