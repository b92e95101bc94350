//! Scans the shipped catalog at each prime and prints the summary table.
//!
//! cargo run --release --example scan_catalog -- [p] [max_order]

use modlie::catalog::Catalog;
use modlie::report::{scan, ScanOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let primes: Vec<u64> = match args.first() {
        Some(p) => vec![p.parse().expect("prime")],
        None => vec![2, 3, 5],
    };
    let max_order = args.get(1).map_or(128, |m| m.parse().expect("order"));
    let catalog = Catalog::shipped();
    for p in primes {
        let report = scan(&catalog, ScanOptions::new(p, max_order)).expect("valid prime");
        println!("{}", report.render());
    }
}
