//! Forward differences of polynomials and of opaque functions.
//!
//! ```text
//! cargo run --example finite_differences
//! ```

use posipoly::diff::{
    difference_var_names, mixed_diff_at, mixed_from_pure, newton_expand, pure_diff_at, symbolic_mixed_diff,
    symbolic_pure_diff,
};
use posipoly::parse::{default_names, format_with_vars, parse};
use posipoly::vector::{self, from_ints};
use posipoly::{FnMapping, Mapping, Rat};

fn main() -> posipoly::Result<()> {
    let p = parse("x1^2*x2 + x2")?;
    let x = from_ints(&[1, 2]);
    let h1 = from_ints(&[1, 0]);
    let h2 = from_ints(&[0, 3]);

    println!("P = {p}");
    println!("pure  diff^2 P(x; h1^2)    = {}", pure_diff_at(&p, &x, &h1, 2)?[0]);
    println!("mixed diff^2 P(x; h1, h2)  = {}", mixed_diff_at(&p, &x, &[h1.clone(), h2.clone()])?[0]);
    println!("same from pure differences = {}", mixed_from_pure(&p, &x, &[h1, h2])?[0]);

    let names = default_names(2);
    let d = symbolic_mixed_diff(&p, 2)?;
    println!("symbolic mixed diff^2: {}", format_with_vars(&d, &difference_var_names(&names, 2)));
    let d = symbolic_pure_diff(&p, 3)?;
    println!("symbolic pure diff^3:  {}", format_with_vars(&d, &difference_var_names(&names, 1)));

    // Newton's expansion recovers f(x + r h) from differences at x for any function.
    let f = FnMapping::new(1, 1, |v: &[Rat]| vec![v[0].floor() * &v[0]]);
    let (x, h) = (vec![Rat::new(1.into(), 3.into())], vec![Rat::new(5.into(), 4.into())]);
    for r in [2, 5] {
        let target = vector::add(&x, &vector::scale(&Rat::from_integer(r.into()), &h));
        println!("r = {r}: Newton {} vs direct {}", newton_expand(&f, &x, &h, r)?[0], f.eval(&target)?[0]);
    }
    Ok(())
}
