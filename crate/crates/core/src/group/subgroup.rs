use std::fmt;

use super::{AbelianType, FiniteGroup, GroupError, Result};

/// Breadth-first closure of `gens` under right multiplication. In a finite
/// group this is the generated subgroup.
pub(crate) fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut out = vec![0];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
    }
    out
}

/// A subgroup of a [`FiniteGroup`], stored as a sorted set of element
/// indices together with a generating set.
#[derive(Clone)]
pub struct Subgroup<'g> {
    group: &'g FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.members.len())
            .field("generators", &self.generators)
            .finish()
    }
}

impl<'g> Subgroup<'g> {
    fn from_closure(group: &'g FiniteGroup, generators: Vec<usize>) -> Self {
        let mut members = closure(group, &generators);
        members.sort_unstable();
        let mut mask = vec![false; group.order()];
        for &x in &members {
            mask[x] = true;
        }
        Subgroup {
            group,
            members,
            mask,
            generators,
        }
    }

    /// Smallest subgroup containing `gens`. Redundant generators are
    /// dropped from the witness.
    pub fn generated(group: &'g FiniteGroup, gens: &[usize]) -> Self {
        let mut sub = Self::trivial(group);
        for &s in gens {
            if !sub.contains(s) {
                let mut next = sub.generators.clone();
                next.push(s);
                sub = Self::from_closure(group, next);
            }
        }
        sub
    }

    pub fn trivial(group: &'g FiniteGroup) -> Self {
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        Subgroup {
            group,
            members: vec![0],
            mask,
            generators: Vec::new(),
        }
    }

    pub fn whole(group: &'g FiniteGroup) -> Self {
        Subgroup {
            group,
            members: (0..group.order()).collect(),
            mask: vec![true; group.order()],
            generators: group.generators().to_vec(),
        }
    }

    /// Builds a subgroup from an explicit element set; fails unless the set
    /// is closed under multiplication.
    pub fn from_elements(group: &'g FiniteGroup, elements: &[usize]) -> Result<Self> {
        let sub = Self::generated(group, elements);
        if sub.order() != {
            let mut e = elements.to_vec();
            e.push(0);
            e.sort_unstable();
            e.dedup();
            e.len()
        } {
            return Err(GroupError::InvalidParameter(
                "element set is not closed under multiplication".into(),
            ));
        }
        Ok(sub)
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.group.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    fn same_parent(&self, other: &Subgroup<'_>) -> Result<()> {
        if std::ptr::eq(self.group, other.group) {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch)
        }
    }

    /// Checks normality, reporting the first generator conjugate that
    /// escapes the subgroup.
    pub fn check_normal(&self) -> Result<()> {
        for &x in &self.generators {
            for &t in self.group.generators() {
                let c = self.group.conjugate(x, t);
                if !self.contains(c) {
                    return Err(GroupError::NotNormal { element: x, by: t });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self) -> bool {
        self.check_normal().is_ok()
    }

    pub fn check_central(&self) -> Result<()> {
        for &x in &self.generators {
            for &t in self.group.generators() {
                if self.group.mul(x, t) != self.group.mul(t, x) {
                    return Err(GroupError::NotCentral {
                        element: x,
                        with: t,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.group;
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Smallest normal subgroup of the parent containing `seeds`.
    pub fn normal_closure(group: &'g FiniteGroup, seeds: &[usize]) -> Self {
        let mut sub = Self::generated(group, seeds);
        'outer: loop {
            for &x in &sub.generators {
                for &t in group.generators() {
                    let c = group.conjugate(x, t);
                    if !sub.contains(c) {
                        let mut next = sub.generators.clone();
                        next.push(c);
                        sub = Self::from_closure(group, next);
                        continue 'outer;
                    }
                }
            }
            return sub;
        }
    }

    /// The commutator subgroup `(self, other)`, computed as the normal
    /// closure of generator commutators. Both arguments must be normal in
    /// the parent (true for every term of the central series).
    pub fn commutator_with(&self, other: &Subgroup<'g>) -> Result<Self> {
        self.same_parent(other)?;
        let g = self.group;
        let seeds: Vec<usize> = self
            .generators
            .iter()
            .flat_map(|&x| other.generators.iter().map(move |&y| g.commutator(x, y)))
            .filter(|&c| c != 0)
            .collect();
        Ok(Self::normal_closure(g, &seeds))
    }

    /// `(self, G)`: generated by all `(x, y)` with `x` in `self`, `y` in `G`.
    pub fn commutator_subgroup(&self) -> Self {
        self.commutator_with(&Subgroup::whole(self.group))
            .expect("same parent")
    }

    /// The subgroup generated by every `(x, y)` for `x` in `self` and `y`
    /// in `other`, by exhaustive enumeration of pairs.
    pub fn commutator_exhaustive(&self, other: &Subgroup<'g>) -> Result<Self> {
        self.same_parent(other)?;
        let g = self.group;
        let mut seeds = Vec::new();
        for &x in &self.members {
            for &y in &other.members {
                seeds.push(g.commutator(x, y));
            }
        }
        Ok(Self::generated(g, &seeds))
    }

    /// Subgroup generated by `{x^q : x in self}`.
    pub fn power_subgroup(&self, q: u64) -> Self {
        let g = self.group;
        let powers: Vec<usize> = self.members.iter().map(|&x| g.pow(x, q)).collect();
        Self::generated(g, &powers)
    }

    /// Product of two normal subgroups.
    pub fn product(&self, other: &Subgroup<'g>) -> Result<Self> {
        self.same_parent(other)?;
        self.check_normal()?;
        other.check_normal()?;
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Ok(Self::generated(self.group, &gens))
    }

    pub fn intersection(&self, other: &Subgroup<'g>) -> Result<Self> {
        self.same_parent(other)?;
        let common: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Ok(Self::generated(self.group, &common))
    }

    pub fn exponent(&self) -> usize {
        self.members
            .iter()
            .map(|&x| self.group.element_order(x))
            .fold(1, lcm)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order() as u64, p)
    }

    pub fn is_cyclic(&self) -> bool {
        self.members
            .iter()
            .any(|&x| self.group.element_order(x) == self.order())
    }

    pub fn abelian_invariants(&self) -> Result<AbelianType> {
        AbelianType::of_subgroup(self)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// True when `n` is `p^k` for some `k >= 0`.
pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, quaternion8, DEFAULT_ORDER_CAP};

    // dihedral(8): index i + 4e is a^i b^e
    const A: usize = 1;
    const B: usize = 4;
    const A2: usize = 2;

    #[test]
    fn d8_commutator_of_generators() {
        let g = dihedral(8).unwrap();
        assert_eq!(g.commutator(A, B), A2);
    }

    #[test]
    fn generated_subgroups() {
        let g = dihedral(8).unwrap();
        assert!(Subgroup::generated(&g, &[]).is_trivial());
        assert_eq!(Subgroup::generated(&g, &[A2]).order(), 2);
        let all: Vec<usize> = (0..8).collect();
        assert!(Subgroup::generated(&g, &all).is_whole());
        assert!(Subgroup::generated(&g, &all).generators().len() <= 3);
    }

    #[test]
    fn derived_subgroups() {
        let c = cyclic(12).unwrap();
        assert!(Subgroup::whole(&c).commutator_subgroup().is_trivial());

        let d = dihedral(8).unwrap();
        let dd = Subgroup::whole(&d).commutator_subgroup();
        assert_eq!(dd.members(), &[0, A2]);
        let whole = Subgroup::whole(&d);
        assert_eq!(whole.commutator_exhaustive(&whole).unwrap(), dd);

        let q = quaternion8().unwrap();
        let qq = Subgroup::whole(&q).commutator_subgroup();
        assert_eq!(qq.order(), 2);
        assert_eq!(qq, crate::group::center(&q));
    }

    #[test]
    fn powers() {
        let c = cyclic(4).unwrap();
        let t = direct_product(&c, &cyclic(2).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        let whole = Subgroup::whole(&t);
        assert_eq!(whole.power_subgroup(1), whole);
        let sq = whole.power_subgroup(2);
        assert_eq!(sq.order(), 2);
        assert!(sq.abelian_invariants().unwrap().factors() == [2]);

        let e =
            direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        assert!(Subgroup::whole(&e).power_subgroup(2).is_trivial());
    }

    #[test]
    fn products() {
        // inside C4 x C2 with a = (1,0), b = (0,1): <a^2> * <b> has order 4
        let t =
            direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        // pairing index = i * 2 + j
        let a2 = Subgroup::generated(&t, &[2 * 2]);
        let b = Subgroup::generated(&t, &[1]);
        let prod = a2.product(&b).unwrap();
        assert_eq!(prod.order(), 4);
        assert_eq!(a2.product(&Subgroup::trivial(&t)).unwrap(), a2);
        assert_eq!(a2.product(&a2).unwrap(), a2);
    }

    #[test]
    fn product_requires_normal() {
        let d = dihedral(8).unwrap();
        let b = Subgroup::generated(&d, &[B]);
        let z = Subgroup::generated(&d, &[A2]);
        assert!(matches!(b.product(&z), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn exponents_and_p_groups() {
        let g = crate::group::trivial();
        assert_eq!(Subgroup::whole(&g).exponent(), 1);
        let t =
            direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(Subgroup::whole(&t).exponent(), 4);
        let d = dihedral(8).unwrap();
        let z = Subgroup::generated(&d, &[A2]);
        assert!(z.is_p_group(2));
        assert!(!z.is_p_group(3));
        assert_eq!(d.element_order(A), 4);
    }

    #[test]
    fn power_of_helper() {
        assert!(is_power_of(1, 3));
        assert!(is_power_of(81, 3));
        assert!(!is_power_of(12, 2));
        assert!(!is_power_of(0, 2));
    }
}
