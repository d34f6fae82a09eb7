//! Enumerates the abelian maps of a group and follows the sequence ψ_n for
//! one of them, computed by composition and by the binomial formula.

use std::sync::Arc;

use braceblock::group::make_symmetric;
use braceblock::nearring::{enumerate_abelian_maps, psi_n_binomial, PsiSequence};

fn main() -> braceblock::Result<()> {
    let g = Arc::new(make_symmetric(4)?);
    let maps = enumerate_abelian_maps(&g);
    println!("S4 has {} abelian maps", maps.len());
    for psi in &maps {
        println!(
            "  {:<24} |image| = {}  fixed point free: {}",
            psi.describe(),
            psi.image().len(),
            psi.is_fixed_point_free()
        );
    }

    let psi = maps.iter().find(|m| !m.is_fixed_point_free()).expect("a seed with fixed points");
    let mut seq = PsiSequence::new(psi.clone());
    println!("\npsi = {}", psi.describe());
    for n in 1..=5 {
        let by_composition = seq.psi(n)?.clone();
        assert_eq!(by_composition, psi_n_binomial(psi, n)?);
        println!("  psi_{n} = {}", by_composition.describe());
    }
    Ok(())
}
