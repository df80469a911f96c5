//! Finding the degree of a mapping from vanishing pure differences.
//!
//! ```text
//! cargo run --example degree_detection
//! ```

use posipoly::components::{degree_test, least_degree};
use posipoly::parse::parse;
use posipoly::{FnMapping, Rat, SamplerConfig};

fn main() -> posipoly::Result<()> {
    let cfg = SamplerConfig::default().with_seed(11);

    // Polynomials are decided symbolically.
    let p = parse("x1^3*x2 - x2^2 + 4")?;
    let search = least_degree(&p, 8, &cfg)?;
    println!("{p}: degree {:?} ({})", search.degree, search.report.verdict.as_str());
    let fail = degree_test(&p, 2, &cfg)?;
    for w in &fail.witnesses {
        println!("  degree 2 fails: {} = {}", w.label, w.value[0]);
    }

    // Opaque functions are sampled.
    let cubic = FnMapping::new(1, 1, |v: &[Rat]| vec![&v[0] * &v[0] * &v[0] - &v[0]]);
    let search = least_degree(&cubic, 8, &cfg)?;
    println!("black-box cubic: degree {:?} ({}, {} samples)", search.degree, search.report.verdict.as_str(), search.report.samples_used);

    let floor = FnMapping::new(1, 1, |v: &[Rat]| vec![v[0].floor()]);
    let search = least_degree(&floor, 4, &cfg)?;
    println!("floor: degree {:?}, first witness {:?}", search.degree, search.report.witnesses.first().map(|w| w.value[0].to_string()));
    Ok(())
}
