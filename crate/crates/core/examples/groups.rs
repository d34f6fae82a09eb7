//! Builds groups from the constructor families, inspects them, and checks
//! that a Cayley table survives export and re-import.

use braceblock::group::*;
use braceblock::report::group_label;

fn main() -> braceblock::Result<()> {
    let specs = [
        "dihedral:4",
        "symmetric:4",
        "affine:5",
        "metacyclic:13,4,5",
        "metacyclic:13,4,5,2",
        "product(dihedral:3,cyclic:2)",
    ];
    for spec in specs {
        let g = spec.parse::<GroupSpec>()?.build()?;
        let center: Vec<&str> = g.center().into_iter().map(|z| g.name(z)).collect();
        println!("{spec:<30} order {:>3}  {:<10}  Z = {{{}}}", g.order(), group_label(g.table()), center.join(", "));
    }

    // D6 and D3 x C2 are the same group.
    let d6 = make_dihedral(6)?;
    let d3c2 = make_product(&make_dihedral(3)?, &make_cyclic(2)?)?;
    let iso = group_isomorphic(&d6, &d3c2).expect("D6 ≅ D3 x C2");
    let gens: Vec<String> = d6.generators().iter().map(|(n, x)| format!("{n} -> {}", d3c2.name(iso[*x]))).collect();
    println!("\nD6 ≅ D3 x C2 via {}", gens.join(", "));

    let text = to_cayley_text(&d6);
    let back = from_cayley_text(&text)?;
    assert_eq!(back.table(), d6.table());
    println!("Cayley round trip of D6: {} lines, table identical", text.lines().count());
    Ok(())
}
