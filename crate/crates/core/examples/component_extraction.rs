//! Homogeneous components recovered from point values.
//!
//! ```text
//! cargo run --example component_extraction
//! ```

use posipoly::components::{
    component_by_scaling, components_by_interpolation, components_by_stirling, vandermonde_inverse,
};
use posipoly::parse::parse;
use posipoly::vector::from_ints;

fn main() -> posipoly::Result<()> {
    let p = parse("[x1^3 - x1*x2 + 2, x2^2]")?;
    let x = from_ints(&[2, -1]);
    let m = 3;

    let show = |vs: &[Vec<posipoly::Rat>]| -> String {
        vs.iter().map(|v| posipoly::vector::format(v)).collect::<Vec<_>>().join(" ")
    };
    println!("P = {p}, x = (2, -1)");
    println!("interpolation: {}", show(&components_by_interpolation(&p, m, &x)?));
    println!("Stirling:      {}", show(&components_by_stirling(&p, m, &x)?));
    for k in 0..=m {
        println!("P_{k} by scaling: {}", component_by_scaling(&p, k)?);
    }

    let alpha = vandermonde_inverse(3);
    println!("inverse Vandermonde on nodes 0..3:");
    for row in alpha.rows() {
        println!("  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}
