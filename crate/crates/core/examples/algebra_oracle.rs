//! Lie powers computed inside GF(p)[G] straight from the definitions.

use modlie::group::{dihedral, direct_product, quaternion8, wreath_cyclic, DEFAULT_ORDER_CAP};
use modlie::oracle::{
    dimension_subgroups_direct, lower_lie_powers, upper_lie_powers, GroupAlgebra, OracleLimits,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d8 = dihedral(8)?;
    let k = GroupAlgebra::new(&d8, 2)?;
    let x = k.add(&k.basis(1), &k.basis(4));
    let y = k.basis(5);
    println!(
        "[a + b, ab] in GF(2)[D8] = {:?}",
        k.lie_bracket(&x, &y).coefficients()
    );

    let lim = OracleLimits::default();
    let groups = [
        ("D8", d8.clone(), 2),
        ("Q8", quaternion8()?, 2),
        ("D8xD8", direct_product(&d8, &d8, DEFAULT_ORDER_CAP)?, 2),
        ("C2wrC4", wreath_cyclic(2, 4, DEFAULT_ORDER_CAP)?, 2),
        ("C3wrC3", wreath_cyclic(3, 3, DEFAULT_ORDER_CAP)?, 3),
    ];
    for (name, g, p) in &groups {
        let up = upper_lie_powers(g, *p, lim)?;
        let low = lower_lie_powers(g, *p, lim)?;
        let dims: Vec<usize> = dimension_subgroups_direct(g, *p, lim)?
            .iter()
            .map(|s| s.order())
            .collect();
        println!(
            "{name:<7} t^L = {}, t_L = {}, dim R^(n) = {:?}, G ∩ (1 + R^(m)) = {dims:?}",
            up.index,
            low.index,
            up.dims()
        );
    }

    // not Lie nilpotent: the powers stop shrinking
    println!("D8 over GF(3): {:?}", upper_lie_powers(&d8, 3, lim).err());
    Ok(())
}
