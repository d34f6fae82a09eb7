//! For a fixed point free seed, (1 - ψ)^m is a brace isomorphism from
//! (G, ∘_m, ∘_n) onto (G, ·, ∘_{n-m}).

use std::sync::Arc;

use braceblock::brace::{compute_block, fpf_witness};
use braceblock::group::make_metacyclic;
use braceblock::nearring::parse_abelian_map;

fn main() -> braceblock::Result<()> {
    let g = Arc::new(make_metacyclic(7, 3, 2)?);
    let psi = parse_abelian_map(&g, "s->1; t->t^2")?;
    assert!(psi.is_fixed_point_free());
    let block = compute_block(&g, &psi)?;
    println!("F(7,3,2), psi = {}: {} operations, period {:?}", psi.describe(), block.len(), block.period());
    for m in 0..block.len() {
        for n in m + 1..=block.len() {
            let phi = fpf_witness(&block, m, n)?.expect("isomorphism");
            let images: Vec<&str> = g.generators().iter().map(|&(_, x)| g.name(phi.apply(x))).collect();
            println!("  B({m},{n}) ≅ B(0,{}) via s, t -> {}", n - m, images.join(", "));
        }
    }
    Ok(())
}
