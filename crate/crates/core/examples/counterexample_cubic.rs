//! A cubic whose pure differences are nonnegative on the cone although it is
//! not a positive polynomial.
//!
//! ```text
//! cargo run --release --example counterexample_cubic
//! ```

use posipoly::positivity::counterexample_suite;
use posipoly::SamplerConfig;

fn main() -> posipoly::Result<()> {
    let cfg = SamplerConfig::default().with_seed(2024).with_samples(2000);
    let suite = counterexample_suite(3, &cfg)?;
    println!("P = {}", suite.polynomial);
    println!("coefficient of x1*x2*x3: {}", suite.mixed_monomial_coefficient);
    if let Some((k, tuple, value)) = suite.positivity.witness() {
        println!("symmetric form of degree {k} at basis tuple {:?}: {}", tuple.iter().map(|i| i + 1).collect::<Vec<_>>(), value[0]);
    }
    println!("mixed difference at (0; e1, e2, e3): {}", suite.basis_mixed_difference[0]);
    println!("P(1,1,1) = {}, P(1,1,0) = {}", suite.value_at_111[0], suite.value_at_110[0]);
    println!("mixed differences nonnegative on the cone: {}", suite.mixed_check.verdict.as_str());
    for o in &suite.pure_check.orders {
        println!(
            "pure differences of order {}: {} ({} grid points, {} random)",
            o.order,
            o.verdict.as_str(),
            o.grid_points,
            o.random_samples
        );
    }
    println!("separates positivity from pure nonnegativity: {}", suite.separates());
    Ok(())
}
