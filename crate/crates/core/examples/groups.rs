//! Building groups and reading off their lower central series.

use modlie::group::{
    dihedral, direct_product, lower_central_series, nilpotency_class, quaternion8, wreath_cyclic,
    AbelianType, FiniteGroup, Permutation, DEFAULT_ORDER_CAP,
};

fn describe(name: &str, g: &FiniteGroup) {
    let types: Vec<String> = lower_central_series(g)
        .iter()
        .map(|s| AbelianType::of_subgroup(s).map_or(format!("[{}]", s.order()), |t| t.to_string()))
        .collect();
    let class = nilpotency_class(g).map_or("-".to_string(), |c| c.to_string());
    println!(
        "{name:<10} order {:>5}  {:<5} class {class:<2} {}",
        g.order(),
        g.backing_name(),
        types.join(" > ")
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d8 = dihedral(8)?;
    describe("D8", &d8);
    describe("Q8", &quaternion8()?);
    describe("D8xD8", &direct_product(&d8, &d8, DEFAULT_ORDER_CAP)?);
    describe("C2wrC4", &wreath_cyclic(2, 4, DEFAULT_ORDER_CAP)?);
    describe("C5wrC5", &wreath_cyclic(5, 5, DEFAULT_ORDER_CAP)?);

    // S3 from two permutations, and from its Cayley table
    let s3 = FiniteGroup::from_permutation_generators(
        3,
        &[
            Permutation::from_cycles(3, &[&[0, 1, 2]])?,
            Permutation::from_cycles(3, &[&[0, 1]])?,
        ],
        DEFAULT_ORDER_CAP,
    )?;
    describe("S3", &s3);
    let again = FiniteGroup::from_multiplication_table(&s3.table_rows())?;
    describe("S3 table", &again);
    Ok(())
}
