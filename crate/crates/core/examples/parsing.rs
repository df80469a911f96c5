//! Parsing and canonical formatting of polynomial mappings.
//!
//! ```text
//! cargo run --example parsing
//! ```

use posipoly::parse::{format, format_with_vars, parse, parse_named, parse_with_nvars};

fn main() -> posipoly::Result<()> {
    let p = parse("(x1 - 2*x2)^2 + 1/2*x3")?;
    println!("canonical: {p}");
    println!("round trip: {}", parse(&format(&p))? == p);

    let v = parse("[x1*x2, x1 - 1]")?;
    println!("vector mapping Q^{} -> Q^{}: {v}", v.nvars(), v.codim());

    let named = parse_named("s^2*t + t")?;
    println!("variables {:?}: {}", named.names, format_with_vars(&named.poly, &named.names));

    // Fixing the variable count keeps unused trailing variables.
    println!("nvars with x1 over 4 variables: {}", parse_with_nvars("x1", 4)?.nvars());

    for bad in ["2 x1", "x1^-1", "x1^(2)", "1/0", "x1 + (x2"] {
        match parse(bad) {
            Ok(p) => println!("{bad:10} -> parsed as {p}"),
            Err(e) => println!("{bad:10} -> {e}"),
        }
    }
    Ok(())
}
