//! Groups attaining t^L = 2^n (p = 2) and 3^n - 1 (p = 3).

use modlie::catalog::Catalog;
use modlie::classify::corollary_sharpness;
use modlie::group::DEFAULT_ORDER_CAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::shipped();
    let built: Vec<(String, _)> = catalog
        .build_all(DEFAULT_ORDER_CAP)
        .into_iter()
        .filter_map(|(e, g)| g.ok().map(|g| (e.name.clone(), g)))
        .collect();
    for p in [2, 3] {
        let report = corollary_sharpness(p, built.iter().map(|(n, g)| (n.as_str(), g)))?;
        for w in report.witnesses {
            println!(
                "p={p} {:<10} n={} t^L={} target={} p>=5 bound={} exceeded={}",
                w.name, w.n, w.t_upper, w.target, w.p5_bound, w.exceeds_p5_bound
            );
        }
    }
    println!(
        "{:?}",
        corollary_sharpness(2, std::iter::empty()).unwrap_err()
    );
    Ok(())
}
