//! A hand-written catalog with references between entries.

use modlie::catalog::Catalog;
use modlie::report::{scan, ScanOptions};

const TEXT: &str = r#"
# semidirect and direct products over named parts
{"kind": "cyclic", "name": "C8", "order": 8}
{"kind": "cyclic", "name": "C2", "order": 2}
{"kind": "semidirect", "name": "SD16", "parts": ["C8", "C2"], "action": [{"h": 1, "map": [0, 3, 6, 1, 4, 7, 2, 5]}]}
{"kind": "direct_product", "name": "SD16xC2", "factors": ["SD16", "C2"]}
{"kind": "permutations", "name": "D8perm", "degree": 4, "generators": [[1, 2, 3, 0], [3, 2, 1, 0]]}
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::parse(TEXT)?;
    print!("{}", scan(&catalog, ScanOptions::new(2, 64))?.render());

    let cyclic = "{\"kind\":\"direct_product\",\"name\":\"A\",\"factors\":[\"B\"]}\n\
                  {\"kind\":\"direct_product\",\"name\":\"B\",\"factors\":[\"A\"]}";
    println!("{}", Catalog::parse(cyclic).unwrap_err());
    Ok(())
}
