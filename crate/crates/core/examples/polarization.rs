//! Symmetric multilinear forms of homogeneous polynomials.
//!
//! ```text
//! cargo run --example polarization
//! ```

use posipoly::parse::parse;
use posipoly::vector::from_ints;
use posipoly::SymTensor;

fn main() -> posipoly::Result<()> {
    let p = parse("x1^2*x2 - 3*x2^3")?;
    let a = SymTensor::polarize_signs(&p, 3)?;
    println!("P = {p}");
    for (tuple, value) in a.entries() {
        let idx: Vec<String> = tuple.iter().map(|i| (i + 1).to_string()).collect();
        println!("  A({}) = {}", idx.join(","), value[0]);
    }
    println!("A(x, x, x) regenerates P: {}", a.to_poly() == p);

    // The vertex-sum formula gives the same form from any base point.
    for base in [from_ints(&[0, 0]), from_ints(&[5, -2])] {
        let b = SymTensor::polarize_mo(&p, 3, &base)?;
        println!("vertex formula at {:?} agrees: {}", base.iter().map(ToString::to_string).collect::<Vec<_>>(), b == a);
    }

    let args = [from_ints(&[1, 0]), from_ints(&[1, 2]), from_ints(&[-1, 1])];
    println!("A(e1, (1,2), (-1,1)) = {}", a.eval(&args)?[0]);

    match SymTensor::polarize_signs(&parse("x1^2 + x1")?, 2) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("inhomogeneous input: {e}"),
    }
    Ok(())
}
