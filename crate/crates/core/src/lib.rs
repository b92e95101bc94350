//! Lie nilpotency indices of modular group algebras.
//!
//! For a finite group `G` and a prime `p`, the upper Lie nilpotency index
//! `t^L` of `GF(p)[G]` is computed from the Lie dimension subgroups of `G`
//! and, for small groups, checked against a brute-force computation inside
//! the group algebra. On top of that sits a classification of the groups
//! whose index is maximal or almost maximal.
//!
//! ```
//! use modlie::group::{dihedral, direct_product, DEFAULT_ORDER_CAP};
//! use modlie::classify::{classify, Status, Case};
//!
//! let d8 = dihedral(8).unwrap();
//! let g = direct_product(&d8, &d8, DEFAULT_ORDER_CAP).unwrap();
//! let v = classify(&g, 2, None);
//! assert_eq!(v.t_upper, Some(4));
//! assert_eq!(v.status, Status::AlmostMaximal(Some(Case::I)));
//! ```

pub mod acceptance;
pub mod catalog;
pub mod classify;
pub mod dimension;
pub mod group;
pub mod oracle;
pub mod report;
