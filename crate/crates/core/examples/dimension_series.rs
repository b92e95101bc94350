//! Lie dimension subgroups by both routes, the d-vector and the Jennings index.

use modlie::dimension::{
    d_vector, series_product, series_recursive, upper_index_jennings, verify_sum_rule,
};
use modlie::group::{dihedral, extraspecial, wreath_cyclic, FiniteGroup, DEFAULT_ORDER_CAP};

fn show(name: &str, g: &FiniteGroup, p: u64) -> Result<(), Box<dyn std::error::Error>> {
    let rec = series_recursive(g, p)?;
    let prod = series_product(g, p)?;
    let d = d_vector(&rec)?;
    println!("{name} over GF({p})");
    println!("  recursive  {:?}", rec.orders());
    println!(
        "  product    {:?}  same: {}",
        prod.orders(),
        rec.same_terms(&prod)
    );
    println!(
        "  d-vector   {:?}  n = {}, l = {}, sum rule {}",
        d.entries,
        d.n,
        d.l,
        verify_sum_rule(&d)
    );
    println!("  t^L        {}", upper_index_jennings(&d));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    show("D16", &dihedral(16)?, 2)?;
    show("C2wrC4", &wreath_cyclic(2, 4, DEFAULT_ORDER_CAP)?, 2)?;
    show("Heis3", &extraspecial(3)?, 3)?;
    show("C3wrC3", &wreath_cyclic(3, 3, DEFAULT_ORDER_CAP)?, 3)?;
    show("C5wrC5", &wreath_cyclic(5, 5, DEFAULT_ORDER_CAP)?, 5)?;
    Ok(())
}
