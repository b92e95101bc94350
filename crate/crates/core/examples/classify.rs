//! Maximal and almost-maximal indices, seen structurally, by d-vector and by value.

use modlie::catalog::Catalog;
use modlie::classify::{classify, cross_validate};
use modlie::group::DEFAULT_ORDER_CAP;
use modlie::oracle::OracleLimits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::shipped();
    for (name, p) in [
        ("D8", 2),
        ("D8xD8", 2),
        ("C2wrC4", 2),
        ("G64_ii", 2),
        ("D8wrC2", 2),
        ("Heis3", 3),
        ("C3wrC3", 3),
        ("S3", 3),
        ("C4xC2", 5),
    ] {
        let g = catalog.build(name, DEFAULT_ORDER_CAP)?;
        let v = classify(&g, p, Some(OracleLimits::default()));
        print!(
            "{name:<8} p={p}  {:<20} t^L = {:?}",
            v.status.tag(),
            v.t_upper
        );
        if let Some(o) = v.oracle {
            print!("  oracle ({}, {})", o.t_upper, o.t_lower);
        }
        if let Ok(r) = cross_validate(&g, p) {
            print!(
                "  structural {:?} profile {:?} consistent {}",
                r.structural.map(|c| c.to_string()),
                r.profile.map(|c| c.to_string()),
                r.consistent()
            );
        }
        println!();
    }
    Ok(())
}
