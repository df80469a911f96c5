//! Rebuilding a positive polynomial from its values on the positive cone.
//!
//! ```text
//! cargo run --example kantorovich_extension
//! ```

use posipoly::kantorovich::{cone_components, kantorovich_extend, kantorovich_extend_search};
use posipoly::parse::parse;
use posipoly::vector::from_ints;
use posipoly::{ConeRestriction, Error, FnMapping, Rat, SamplerConfig};

fn main() -> posipoly::Result<()> {
    let cfg = SamplerConfig::default().with_seed(3).with_samples(32);

    // A cone function given as a closure: it refuses points off the cone.
    let f = ConeRestriction::new(FnMapping::new(2, 1, |v: &[Rat]| {
        vec![&v[0] * &v[0] * &v[1] + Rat::from_integer(3.into()) * &v[1] + Rat::from_integer(1.into())]
    }));
    println!("components along the ray through (1, 2): {:?}",
        cone_components(&f, 3, &from_ints(&[1, 2]))?.iter().map(|v| v[0].to_string()).collect::<Vec<_>>());

    let (search, result) = kantorovich_extend_search(&f, 6, &cfg)?;
    println!("degree {:?}; extension P = {}", search.degree, result.polynomial);
    for (k, a) in result.components.iter().enumerate() {
        println!("  form of degree {k}: {} nonzero entries, nonnegative: {}", a.entries().count(), a.is_nonneg());
    }
    println!("P(-1, -2) = {}", result.polynomial.evaluate(&from_ints(&[-1, -2]))?[0]);

    // (x1 - x2)^2 is a polynomial, but not a positive one.
    let g = ConeRestriction::new(parse("(x1 - x2)^2")?);
    match kantorovich_extend(&g, 2, &cfg) {
        Err(Error::HypothesisViolation { condition, report }) => {
            println!("rejected: {condition}");
            let w = &report.witnesses[0];
            println!("  {} at {:?} = {}", w.label, w.points.iter().map(|p| posipoly::vector::format(p)).collect::<Vec<_>>(), w.value[0]);
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
