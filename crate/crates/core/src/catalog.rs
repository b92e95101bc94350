//! Group catalogs: one JSON object per line, named constructions that may
//! refer to each other.
//!
//! ```text
//! # comment
//! {"kind": "dihedral", "name": "D8", "order": 8}
//! {"kind": "direct_product", "name": "D8xD8", "factors": ["D8", "D8"]}
//! ```

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{
    cyclic, dihedral, direct_product, extend_action, extraspecial, quaternion8, semidirect_product,
    wreath_cyclic, FiniteGroup, GroupError, Permutation,
};

/// The catalog shipped with the crate.
pub const SHIPPED_CATALOG: &str = include_str!("../catalog/groups.jsonl");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("line {line}: unknown construction kind {kind:?}")]
    UnknownConstruction { line: usize, kind: String },
    #[error("unresolved reference {reference:?} from {from:?}")]
    UnresolvedReference { from: String, reference: String },
    #[error("{name}: order exceeds the cap {cap}")]
    CapExceeded { name: String, cap: usize },
    #[error("{name}: built a group of order {built}, entry declares {declared}")]
    OrderMismatch {
        name: String,
        declared: usize,
        built: usize,
    },
    #[error("no group named {0:?}")]
    UnknownGroup(String),
    #[error("{name}: {source}")]
    Build { name: String, source: GroupError },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, CatalogError>;

/// Generator image for a semidirect action: `h` is an element of the
/// acting group, `map` the images of the normal factor's elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionGenerator {
    pub h: usize,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Table(Vec<Vec<usize>>),
    Permutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Cyclic(usize),
    Dihedral(usize),
    Quaternion8,
    Extraspecial(usize),
    DirectProduct(Vec<String>),
    WreathCyclic {
        p: usize,
        q: usize,
    },
    Semidirect {
        normal: String,
        acting: String,
        action: Vec<ActionGenerator>,
    },
}

impl Construction {
    fn references(&self) -> Vec<&str> {
        match self {
            Construction::DirectProduct(f) => f.iter().map(String::as_str).collect(),
            Construction::Semidirect { normal, acting, .. } => vec![normal, acting],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub construction: Construction,
    /// Declared order, checked after building.
    pub order: Option<usize>,
    /// Source line, 0 for entries built in code.
    pub line: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    kind: String,
    name: Option<String>,
    order: Option<usize>,
    table: Option<Vec<Vec<usize>>>,
    degree: Option<usize>,
    generators: Option<Vec<Vec<usize>>>,
    p: Option<usize>,
    q: Option<usize>,
    factors: Option<Vec<String>>,
    parts: Option<Vec<String>>,
    action: Option<Vec<ActionGenerator>>,
}

fn need<T>(field: Option<T>, name: &str, line: usize) -> Result<T> {
    field.ok_or_else(|| CatalogError::ParseError {
        line,
        message: format!("missing field {name:?}"),
    })
}

/// Parses one catalog object.
pub fn parse_entry(text: &str, line: usize) -> Result<CatalogEntry> {
    let raw: RawEntry = serde_json::from_str(text).map_err(|e| CatalogError::ParseError {
        line,
        message: e.to_string(),
    })?;
    let mut order = raw.order;
    let construction = match raw.kind.as_str() {
        "table" => Construction::Table(need(raw.table, "table", line)?),
        "permutations" => Construction::Permutations {
            degree: need(raw.degree, "degree", line)?,
            generators: need(raw.generators, "generators", line)?,
        },
        "cyclic" => Construction::Cyclic(need(raw.order, "order", line)?),
        "dihedral" => Construction::Dihedral(need(raw.order, "order", line)?),
        "quaternion8" => Construction::Quaternion8,
        "extraspecial" => Construction::Extraspecial(need(raw.p, "p", line)?),
        "direct_product" => {
            let factors = need(raw.factors, "factors", line)?;
            if factors.is_empty() {
                return Err(CatalogError::ParseError {
                    line,
                    message: "direct product needs at least one factor".into(),
                });
            }
            Construction::DirectProduct(factors)
        }
        "wreath_cyclic" => Construction::WreathCyclic {
            p: need(raw.p, "p", line)?,
            q: need(raw.q, "q", line)?,
        },
        "semidirect" => {
            let parts = need(raw.parts, "parts", line)?;
            let [normal, acting]: [String; 2] =
                parts.try_into().map_err(|_| CatalogError::ParseError {
                    line,
                    message: "parts must name exactly two groups".into(),
                })?;
            Construction::Semidirect {
                normal,
                acting,
                action: need(raw.action, "action", line)?,
            }
        }
        other => {
            return Err(CatalogError::UnknownConstruction {
                line,
                kind: other.to_string(),
            })
        }
    };
    if matches!(
        construction,
        Construction::Cyclic(_) | Construction::Dihedral(_)
    ) {
        order = None;
    }
    let name = raw
        .name
        .unwrap_or_else(|| default_name(&construction, line));
    Ok(CatalogEntry {
        name,
        construction,
        order,
        line,
    })
}

fn default_name(c: &Construction, line: usize) -> String {
    match c {
        Construction::Cyclic(n) => format!("C{n}"),
        Construction::Dihedral(n) => format!("D{n}"),
        Construction::Quaternion8 => "Q8".into(),
        Construction::Extraspecial(p) => format!("Heis{p}"),
        Construction::WreathCyclic { p, q } => format!("C{p}wrC{q}"),
        Construction::DirectProduct(f) => f.join("x"),
        _ => format!("entry{line}"),
    }
}

/// A validated list of entries: names are unique and references resolve
/// without cycles.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            entries.push(parse_entry(trimmed, i + 1)?);
        }
        Self::from_entries(entries)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn shipped() -> Self {
        Self::parse(SHIPPED_CATALOG).expect("shipped catalog is valid")
    }

    pub fn from_entries(entries: Vec<CatalogEntry>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(e.name.as_str()) {
                return Err(CatalogError::ParseError {
                    line: e.line,
                    message: format!("duplicate name {:?}", e.name),
                });
            }
        }
        let catalog = Catalog { entries };
        for e in &catalog.entries {
            catalog.check_acyclic(&e.name, &mut Vec::new())?;
        }
        Ok(catalog)
    }

    fn check_acyclic<'a>(&'a self, name: &'a str, stack: &mut Vec<&'a str>) -> Result<()> {
        let entry = self
            .get(name)
            .ok_or_else(|| CatalogError::UnresolvedReference {
                from: stack.last().unwrap_or(&name).to_string(),
                reference: name.to_string(),
            })?;
        if stack.contains(&name) {
            return Err(CatalogError::UnresolvedReference {
                from: stack.last().expect("non-empty").to_string(),
                reference: name.to_string(),
            });
        }
        stack.push(name);
        for r in entry.construction.references() {
            self.check_acyclic(r, stack)?;
        }
        stack.pop();
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Builds the named group under the order cap.
    pub fn build(&self, name: &str, cap: usize) -> Result<FiniteGroup> {
        let entry = self
            .get(name)
            .ok_or_else(|| CatalogError::UnknownGroup(name.to_string()))?;
        Builder::new(self, cap).build(entry)
    }

    /// Builds an entry that is not itself in the catalog but may refer to
    /// catalog names.
    pub fn build_entry(&self, entry: &CatalogEntry, cap: usize) -> Result<FiniteGroup> {
        for r in entry.construction.references() {
            if r == entry.name || self.get(r).is_none() {
                return Err(CatalogError::UnresolvedReference {
                    from: entry.name.clone(),
                    reference: r.to_string(),
                });
            }
        }
        Builder::new(self, cap).build(entry)
    }

    /// Builds every entry in catalog order, sharing intermediate results.
    pub fn build_all(&self, cap: usize) -> Vec<(&CatalogEntry, Result<FiniteGroup>)> {
        let mut builder = Builder::new(self, cap);
        self.entries.iter().map(|e| (e, builder.build(e))).collect()
    }
}

struct Builder<'c> {
    catalog: &'c Catalog,
    cap: usize,
    built: HashMap<String, FiniteGroup>,
}

impl<'c> Builder<'c> {
    fn new(catalog: &'c Catalog, cap: usize) -> Self {
        Builder {
            catalog,
            cap,
            built: HashMap::new(),
        }
    }

    fn reference(&mut self, from: &str, name: &str) -> Result<FiniteGroup> {
        if let Some(g) = self.built.get(name) {
            return Ok(g.clone());
        }
        let entry = self
            .catalog
            .get(name)
            .ok_or_else(|| CatalogError::UnresolvedReference {
                from: from.to_string(),
                reference: name.to_string(),
            })?;
        self.build(entry)
    }

    fn build(&mut self, entry: &CatalogEntry) -> Result<FiniteGroup> {
        if let Some(g) = self.built.get(&entry.name) {
            return Ok(g.clone());
        }
        let name = entry.name.as_str();
        let cap = self.cap;
        let wrap = |source: GroupError| match source {
            GroupError::CapExceeded { cap } => CatalogError::CapExceeded {
                name: name.to_string(),
                cap,
            },
            source => CatalogError::Build {
                name: name.to_string(),
                source,
            },
        };
        let g = match &entry.construction {
            Construction::Table(t) => {
                if t.len() > cap {
                    return Err(CatalogError::CapExceeded {
                        name: name.to_string(),
                        cap,
                    });
                }
                FiniteGroup::from_multiplication_table(t).map_err(wrap)?
            }
            Construction::Permutations { degree, generators } => {
                let perms = generators
                    .iter()
                    .map(|images| Permutation::from_images(images.clone()))
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(wrap)?;
                FiniteGroup::from_permutation_generators(*degree, &perms, cap).map_err(wrap)?
            }
            Construction::Cyclic(n) => cyclic(*n).map_err(wrap)?,
            Construction::Dihedral(n) => dihedral(*n).map_err(wrap)?,
            Construction::Quaternion8 => quaternion8().map_err(wrap)?,
            Construction::Extraspecial(p) => extraspecial(*p).map_err(wrap)?,
            Construction::WreathCyclic { p, q } => wreath_cyclic(*p, *q, cap).map_err(wrap)?,
            Construction::DirectProduct(factors) => {
                let mut acc = self.reference(name, &factors[0])?;
                for f in &factors[1..] {
                    let next = self.reference(name, f)?;
                    acc = direct_product(&acc, &next, cap).map_err(wrap)?;
                }
                acc
            }
            Construction::Semidirect {
                normal,
                acting,
                action,
            } => {
                let n = self.reference(name, normal)?;
                let h = self.reference(name, acting)?;
                let gens: Vec<(usize, Vec<usize>)> =
                    action.iter().map(|a| (a.h, a.map.clone())).collect();
                let full = extend_action(&n, &h, &gens).map_err(wrap)?;
                semidirect_product(&n, &h, &full, cap).map_err(wrap)?
            }
        };
        if g.order() > cap {
            return Err(CatalogError::CapExceeded {
                name: name.to_string(),
                cap,
            });
        }
        if let Some(declared) = entry.order {
            if declared != g.order() {
                return Err(CatalogError::OrderMismatch {
                    name: name.to_string(),
                    declared,
                    built: g.order(),
                });
            }
        }
        self.built.insert(entry.name.clone(), g.clone());
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP;

    #[test]
    fn parse_simple_entries() {
        let e = parse_entry(r#"{"kind":"dihedral","order":8}"#, 1).unwrap();
        assert_eq!(e.name, "D8");
        assert_eq!(e.construction, Construction::Dihedral(8));
        let c = Catalog::parse(r#"{"kind":"wreath_cyclic","p":2,"q":4}"#).unwrap();
        assert_eq!(c.build("C2wrC4", DEFAULT_ORDER_CAP).unwrap().order(), 64);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_entry(r#"{"kind":"dihedral","order":8"#, 3),
            Err(CatalogError::ParseError { line: 3, .. })
        ));
        assert!(matches!(
            parse_entry(r#"{"kind":"mystery","name":"X"}"#, 2),
            Err(CatalogError::UnknownConstruction { line: 2, .. })
        ));
        assert!(matches!(
            parse_entry(r#"{"kind":"cyclic","name":"X","colour":1,"order":2}"#, 1),
            Err(CatalogError::ParseError { .. })
        ));
        assert!(matches!(
            parse_entry(r#"{"kind":"wreath_cyclic","p":2}"#, 1),
            Err(CatalogError::ParseError { .. })
        ));
        let dup = "{\"kind\":\"cyclic\",\"order\":2}\n{\"kind\":\"cyclic\",\"order\":2}";
        assert!(matches!(
            Catalog::parse(dup),
            Err(CatalogError::ParseError { line: 2, .. })
        ));
    }

    #[test]
    fn cyclic_references_are_rejected() {
        let text = "{\"kind\":\"direct_product\",\"name\":\"A\",\"factors\":[\"B\"]}\n\
                    {\"kind\":\"direct_product\",\"name\":\"B\",\"factors\":[\"A\"]}";
        assert!(matches!(
            Catalog::parse(text),
            Err(CatalogError::UnresolvedReference { .. })
        ));
        let missing = r#"{"kind":"direct_product","name":"A","factors":["Z"]}"#;
        assert!(matches!(
            Catalog::parse(missing),
            Err(CatalogError::UnresolvedReference { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let c = Catalog::parse(
            "{\"kind\":\"dihedral\",\"order\":8}\n\
             {\"kind\":\"direct_product\",\"name\":\"P\",\"factors\":[\"D8\",\"D8\"]}",
        )
        .unwrap();
        assert!(matches!(
            c.build("P", 32),
            Err(CatalogError::CapExceeded { .. })
        ));
        assert_eq!(c.build("P", 64).unwrap().order(), 64);
    }

    #[test]
    fn shipped_catalog_builds() {
        let c = Catalog::shipped();
        for (e, g) in c.build_all(DEFAULT_ORDER_CAP) {
            let g = g.unwrap_or_else(|err| panic!("{}: {err}", e.name));
            if let Some(o) = e.order {
                assert_eq!(g.order(), o, "{}", e.name);
            }
        }
        for name in [
            "C2", "C4", "C2xC2", "D8", "Q8", "C4xC2", "D8xD8", "C2wrC4", "Heis3", "C3wrC3",
            "Heis5", "S3",
        ] {
            assert!(c.get(name).is_some(), "{name}");
        }
    }

    #[test]
    fn order_mismatch() {
        let c = Catalog::parse(r#"{"kind":"quaternion8","name":"Q","order":16}"#).unwrap();
        assert!(matches!(
            c.build("Q", 100),
            Err(CatalogError::OrderMismatch { .. })
        ));
    }
}
