//! Stirling numbers and the falling-factorial expansion of powers.
//!
//! ```text
//! cargo run --example stirling_tables
//! ```

use posipoly::combinatorics::{falling_factorial, stirling1_unsigned, stirling2, StirlingTable};
use posipoly::Rat;

fn main() {
    let table = StirlingTable::new(7);
    println!("second kind S(j, n):");
    for j in 0..=7 {
        let row: Vec<String> = (0..=j).map(|n| table.second_kind(j, n).to_string()).collect();
        println!("  {}", row.join(" "));
    }
    println!("unsigned first kind c(j, k):");
    for j in 0..=7 {
        let row: Vec<String> = (0..=j).map(|k| table.first_kind_unsigned(j, k).to_string()).collect();
        println!("  {}", row.join(" "));
    }

    // t^j = sum_n S(j, n) t^(n), checked at a non-integer t.
    let t = Rat::new(7.into(), 3.into());
    let j = 5;
    let expanded = (0..=j).fold(Rat::from_integer(0.into()), |acc, n| {
        acc + Rat::from_integer(stirling2(j, n)) * falling_factorial(&t, n)
    });
    println!("({t})^{j} = {} via falling factorials (direct: {})", expanded, num_traits::pow(t.clone(), j));

    // Values beyond the memo table are computed on demand.
    println!("S(40, 3) = {}", stirling2(40, 3));
    println!("c(40, 39) = {}", stirling1_unsigned(40, 39));
}
