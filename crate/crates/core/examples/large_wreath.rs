//! Permutation-backed groups of order 5^6, far beyond the oracle.

use std::time::Instant;

use modlie::group::{direct_product, extraspecial, wreath_cyclic, DEFAULT_ORDER_CAP};
use modlie::report::{analyze, AnalyzeOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let start = Instant::now();
    let w = wreath_cyclic(5, 5, DEFAULT_ORDER_CAP)?;
    let h = extraspecial(5)?;
    let hh = direct_product(&h, &h, DEFAULT_ORDER_CAP)?;
    println!("built in {:.2?}", start.elapsed());
    for (name, g) in [("C5wrC5", &w), ("Heis5xHeis5", &hh)] {
        let r = analyze(name, g, 5, AnalyzeOptions::default())?;
        print!("{}", r.render());
    }
    Ok(())
}
