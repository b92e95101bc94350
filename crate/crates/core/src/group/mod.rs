//! Finite group arithmetic.
//!
//! A [`FiniteGroup`] enumerates its elements as indices `0..order` with the
//! identity at index 0. Products are looked up in a dense table for small
//! groups, or computed by composing permutations and mapping the result
//! back to an index for large ones.

mod abelian;
mod construct;
mod perm;
mod series;
mod subgroup;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use abelian::AbelianType;
pub use construct::{
    cyclic, dihedral, direct_product, extend_action, extraspecial, quaternion8, semidirect_product,
    trivial, wreath_cyclic,
};
pub use perm::Permutation;
pub use series::{center, lower_central_series, nilpotency_class, quotient, Quotient};
pub use subgroup::{is_power_of, Subgroup};

/// Default bound on the order of any constructed group.
pub const DEFAULT_ORDER_CAP: usize = 65536;

/// Largest order stored with a dense multiplication table.
pub const TABLE_MAX: usize = 4096;

/// Tables up to this order get an exhaustive associativity check; larger
/// ones are checked with Light's test over a generating set.
pub const EXHAUSTIVE_ASSOC_MAX: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square or has an entry out of range")]
    MalformedTable,
    #[error("operation is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("group order exceeds cap {cap}")]
    CapExceeded { cap: usize },
    #[error("generator {0} is not a permutation of 0..{1}")]
    NotAPermutation(usize, usize),
    #[error("image of {0} under the action is not an automorphism")]
    NotAutomorphism(usize),
    #[error("action is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("supplied action generators do not generate the acting group")]
    IncompleteAction,
    #[error("subgroup is not normal: conjugate of {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },
    #[error("subgroup is not central: {element} does not commute with {with}")]
    NotCentral { element: usize, with: usize },
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("subgroups belong to different groups")]
    ParentMismatch,
    #[error("invalid construction parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;

#[derive(Clone)]
enum Backing {
    Table(Vec<u32>),
    Permutation(PermBacking),
}

#[derive(Clone)]
struct PermBacking {
    degree: usize,
    // element i occupies points[i * degree .. (i + 1) * degree]
    points: Vec<u32>,
    index: HashMap<Box<[u32]>, u32>,
}

impl PermBacking {
    fn image(&self, i: usize) -> &[u32] {
        &self.points[i * self.degree..(i + 1) * self.degree]
    }

    fn lookup(&self, images: &[u32]) -> usize {
        *self
            .index
            .get(images)
            .expect("permutation group is closed under composition") as usize
    }

    // x^(ab) = (x^a)^b
    fn compose(&self, a: usize, b: usize) -> usize {
        let pa = self.image(a);
        let pb = self.image(b);
        let composed: Vec<u32> = pa.iter().map(|&x| pb[x as usize]).collect();
        self.lookup(&composed)
    }
}

/// A finite group with elements enumerated as `0..order`, identity first.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    backing: Backing,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("backing", &self.backing_name())
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and builds a table-backed group.
    ///
    /// If the identity is not at index 0 the enumeration is renumbered by
    /// swapping it with element 0.
    pub fn from_multiplication_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(GroupError::MalformedTable);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;

        // swap identity into slot 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u32;
            }
        }

        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| flat[a * n + b] == 0 && flat[b * n + a] == 0)
                .ok_or(GroupError::NoInverse(relabel(a)))?;
            inverses[a] = inv as u32;
        }

        let mut group = FiniteGroup {
            order: n,
            backing: Backing::Table(flat),
            inverses,
            generators: Vec::new(),
            labels: None,
        };
        if n <= EXHAUSTIVE_ASSOC_MAX {
            group.check_associative_exhaustive()?;
        } else {
            group.check_associative_light()?;
        }
        group.generators = group.greedy_generators();
        Ok(group)
    }

    /// Closes a set of permutations of `0..degree` under composition.
    ///
    /// Element 0 is the identity permutation; the rest follow in
    /// breadth-first order. Groups of order at most [`TABLE_MAX`] are
    /// converted to table backing.
    pub fn from_permutation_generators(
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(GroupError::NotAPermutation(i, degree));
            }
        }
        let gens: Vec<&[u32]> = generators.iter().map(|g| g.images()).collect();
        let identity: Vec<u32> = (0..degree as u32).collect();

        let mut points: Vec<u32> = identity.clone();
        let mut index: HashMap<Box<[u32]>, u32> = HashMap::new();
        index.insert(identity.into_boxed_slice(), 0);
        let mut head = 0;
        let mut count = 1;
        while head < count {
            for g in &gens {
                let next: Vec<u32> = points[head * degree..(head + 1) * degree]
                    .iter()
                    .map(|&x| g[x as usize])
                    .collect();
                if index.contains_key(next.as_slice()) {
                    continue;
                }
                if count >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                points.extend_from_slice(&next);
                index.insert(next.into_boxed_slice(), count as u32);
                count += 1;
            }
            head += 1;
        }

        let backing = PermBacking {
            degree,
            points,
            index,
        };
        let generator_indices: Vec<usize> = gens
            .iter()
            .map(|g| backing.lookup(g))
            .filter(|&i| i != 0)
            .collect();
        Ok(Self::from_perm_backing(backing, count, generator_indices))
    }

    fn from_perm_backing(backing: PermBacking, order: usize, generators: Vec<usize>) -> Self {
        let degree = backing.degree;
        let inverses = (0..order)
            .map(|i| {
                let img = backing.image(i);
                let mut inv = vec![0u32; degree];
                for (x, &y) in img.iter().enumerate() {
                    inv[y as usize] = x as u32;
                }
                backing.lookup(&inv) as u32
            })
            .collect();
        let mut group = FiniteGroup {
            order,
            backing: Backing::Permutation(backing),
            inverses,
            generators: dedup_generators(generators),
            labels: None,
        };
        if order <= TABLE_MAX {
            group = group.to_table();
        }
        group
    }

    /// Builds a table-backed group from a table that is already known to
    /// be a group with identity 0.
    pub(crate) fn from_trusted_table(order: usize, flat: Vec<u32>) -> Self {
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            if inverses[a] != 0 || a == 0 {
                continue;
            }
            let b = (0..order)
                .find(|&b| flat[a * order + b] == 0)
                .expect("trusted table has inverses");
            inverses[a] = b as u32;
            inverses[b] = a as u32;
        }
        let mut group = FiniteGroup {
            order,
            backing: Backing::Table(flat),
            inverses,
            generators: Vec::new(),
            labels: None,
        };
        group.generators = group.greedy_generators();
        group
    }

    pub(crate) fn with_generators(mut self, generators: Vec<usize>) -> Self {
        self.generators = dedup_generators(generators);
        self
    }

    fn to_table(&self) -> Self {
        let n = self.order;
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[a * n + b] = self.mul(a, b) as u32;
            }
        }
        FiniteGroup {
            order: n,
            backing: Backing::Table(flat),
            inverses: self.inverses.clone(),
            generators: self.generators.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn backing_name(&self) -> &'static str {
        match self.backing {
            Backing::Table(_) => "table",
            Backing::Permutation(_) => "permutation",
        }
    }

    pub fn is_table_backed(&self) -> bool {
        matches!(self.backing, Backing::Table(_))
    }

    /// A generating set for the whole group (identity excluded).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.order {
            return Err(GroupError::InvalidParameter(format!(
                "expected {} labels, got {}",
                self.order,
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.backing {
            Backing::Table(t) => t[a * self.order + b] as usize,
            Backing::Permutation(p) => p.compose(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `g^-1 h^-1 g h`
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        let gi = self.inv(g);
        let hi = self.inv(h);
        self.mul(self.mul(gi, hi), self.mul(g, h))
    }

    /// `h^-1 g h`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The permutation image of element `g`; for table-backed groups this
    /// is the right regular representation.
    pub fn as_permutation(&self, g: usize) -> Permutation {
        match &self.backing {
            Backing::Table(_) => {
                Permutation::from_images((0..self.order).map(|x| self.mul(x, g)).collect())
                    .expect("row of a group table is a permutation")
            }
            Backing::Permutation(p) => {
                Permutation::from_images(p.image(g).iter().map(|&x| x as usize).collect())
                    .expect("stored images are permutations")
            }
        }
    }

    pub fn permutation_degree(&self) -> usize {
        match &self.backing {
            Backing::Table(_) => self.order,
            Backing::Permutation(p) => p.degree,
        }
    }

    /// Returns a table-backed copy whose element `i` is this group's
    /// element `relabel[i]`. `relabel` must be a permutation of `0..order`.
    pub fn relabeled(&self, relabel: &[usize]) -> Result<Self> {
        let n = self.order;
        if relabel.len() != n {
            return Err(GroupError::InvalidParameter(
                "relabeling has wrong length".into(),
            ));
        }
        let mut position = vec![usize::MAX; n];
        for (i, &x) in relabel.iter().enumerate() {
            if x >= n || position[x] != usize::MAX {
                return Err(GroupError::InvalidParameter(
                    "relabeling is not a permutation".into(),
                ));
            }
            position[x] = i;
        }
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| position[self.mul(relabel[i], relabel[j])])
                    .collect()
            })
            .collect();
        Self::from_multiplication_table(&table)
    }

    /// The full multiplication table as rows of indices.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    fn check_associative_exhaustive(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    // Light's test: associativity only needs checking with the middle
    // factor ranging over a generating set of the magma.
    fn check_associative_light(&self) -> Result<()> {
        let n = self.order;
        let mut reached = vec![false; n];
        let mut gens: Vec<usize> = Vec::new();
        for s in 0..n {
            if reached[s] {
                continue;
            }
            gens.push(s);
            // all left-normed products of the current generators
            reached.iter_mut().for_each(|r| *r = false);
            let mut queue = gens.clone();
            for &g in &gens {
                reached[g] = true;
            }
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !reached[y] {
                        reached[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        for &s in &gens {
            for x in 0..n {
                let xs = self.mul(x, s);
                for y in 0..n {
                    if self.mul(xs, y) != self.mul(x, self.mul(s, y)) {
                        return Err(GroupError::NotAssociative(x, s, y));
                    }
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut members = vec![false; self.order];
        members[0] = true;
        for g in 1..self.order {
            if members[g] {
                continue;
            }
            gens.push(g);
            let closed = subgroup::closure(self, &gens);
            members.iter_mut().for_each(|m| *m = false);
            for x in closed {
                members[x] = true;
            }
        }
        gens
    }
}

fn dedup_generators(mut gens: Vec<usize>) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    gens.retain(|&g| g != 0 && seen.insert(g));
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_multiplication_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn c2_table() {
        let g = FiniteGroup::from_multiplication_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
        assert_eq!(g.element_order(1), 2);
    }

    #[test]
    fn missing_inverse() {
        let err = FiniteGroup::from_multiplication_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse(1));
    }

    #[test]
    fn identity_relocated() {
        // C2 with identity stored at index 1
        let g = FiniteGroup::from_multiplication_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn no_identity() {
        let err = FiniteGroup::from_multiplication_table(&[vec![1, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoIdentity);
    }

    #[test]
    fn non_associative_loop() {
        // a Latin square with identity 0 that is not a group (order 5 loop)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_multiplication_table(&t),
            Err(GroupError::NotAssociative(..))
        ));
    }

    #[test]
    fn light_test_agrees_with_exhaustive() {
        let d = dihedral(16).unwrap();
        assert!(d.check_associative_light().is_ok());
        let t = [
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let flat: Vec<u32> = t.iter().flatten().map(|&x| x as u32).collect();
        let fake = FiniteGroup {
            order: 5,
            backing: Backing::Table(flat),
            inverses: vec![0, 1, 2, 3, 4],
            generators: vec![],
            labels: None,
        };
        assert!(fake.check_associative_light().is_err());
    }

    #[test]
    fn d8_from_permutations() {
        let r = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let s = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        let g = FiniteGroup::from_permutation_generators(4, &[r, s], 100).unwrap();
        assert_eq!(g.order(), 8);
        let exponent = (0..8).map(|x| g.element_order(x)).max().unwrap();
        assert_eq!(exponent, 4);
        assert!(!g.is_abelian());
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::from_permutation_generators(3, &[], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn s5_exceeds_cap() {
        let a = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let b = Permutation::from_cycles(5, &[&[0, 1]]).unwrap();
        let err = FiniteGroup::from_permutation_generators(5, &[a, b], 100).unwrap_err();
        assert_eq!(err, GroupError::CapExceeded { cap: 100 });
        let s5 = FiniteGroup::from_permutation_generators(
            5,
            &[
                Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Permutation::from_cycles(5, &[&[0, 1]]).unwrap(),
            ],
            200,
        )
        .unwrap();
        assert_eq!(s5.order(), 120);
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = dihedral(8).unwrap();
        let relabel = vec![3, 0, 7, 1, 2, 6, 5, 4];
        let h = g.relabeled(&relabel).unwrap();
        assert_eq!(h.order(), 8);
        let mut orders_g: Vec<_> = (0..8).map(|x| g.element_order(x)).collect();
        let mut orders_h: Vec<_> = (0..8).map(|x| h.element_order(x)).collect();
        orders_g.sort();
        orders_h.sort();
        assert_eq!(orders_g, orders_h);
    }

    #[test]
    fn commutator_basics() {
        let g = dihedral(8).unwrap();
        for x in 0..8 {
            assert_eq!(g.commutator(x, x), 0);
        }
        let c = cyclic(6).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(c.commutator(x, y), 0);
            }
        }
    }
}
