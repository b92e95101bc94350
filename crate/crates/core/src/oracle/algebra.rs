use crate::group::FiniteGroup;

use super::{FpSubspace, OracleError, PrimeField, Result};

/// An element of `GF(p)[G]`: coordinate `g` is the coefficient of `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement(Vec<u32>);

impl AlgebraElement {
    pub fn coefficients(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coefficients(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// The group algebra `GF(p)[G]` of a finite group.
pub struct GroupAlgebra<'g> {
    group: &'g FiniteGroup,
    field: PrimeField,
}

impl<'g> GroupAlgebra<'g> {
    pub fn new(group: &'g FiniteGroup, p: u32) -> Result<Self> {
        Ok(GroupAlgebra {
            group,
            field: PrimeField::new(p)?,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn element(&self, coefficients: Vec<u32>) -> Result<AlgebraElement> {
        if coefficients.len() != self.dim() {
            return Err(OracleError::DimensionMismatch {
                expected: self.dim(),
                found: coefficients.len(),
            });
        }
        let p = self.field.characteristic();
        Ok(AlgebraElement(
            coefficients.into_iter().map(|c| c % p).collect(),
        ))
    }

    /// The basis element `δ_g`.
    pub fn basis(&self, g: usize) -> AlgebraElement {
        let mut v = vec![0; self.dim()];
        v[g] = 1;
        AlgebraElement(v)
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(0)
    }

    pub fn zero_space(&self) -> FpSubspace {
        FpSubspace::zero(self.field.clone(), self.dim())
    }

    pub fn full_space(&self) -> FpSubspace {
        FpSubspace::full(self.field.clone(), self.dim())
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| self.field.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| self.field.sub(a, b))
                .collect(),
        )
    }

    /// Convolution product: `(xy)_g = Σ_{uv = g} x_u y_v`.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let f = &self.field;
        let mut out = vec![0u32; self.dim()];
        for (u, &xu) in x.0.iter().enumerate() {
            if xu == 0 {
                continue;
            }
            for (v, &yv) in y.0.iter().enumerate() {
                if yv == 0 {
                    continue;
                }
                let g = self.group.mul(u, v);
                out[g] = f.add(out[g], f.mul(xu, yv));
            }
        }
        AlgebraElement(out)
    }

    /// `[x, y] = xy - yx`
    pub fn lie_bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.sub(&self.multiply(x, y), &self.multiply(y, x))
    }

    /// `δ_s · x`, a coordinate permutation.
    pub(crate) fn left_basis_mul(&self, s: usize, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; x.len()];
        for (v, &c) in x.iter().enumerate() {
            if c != 0 {
                out[self.group.mul(s, v)] = c;
            }
        }
        out
    }

    /// `x · δ_s`
    pub(crate) fn right_basis_mul(&self, x: &[u32], s: usize) -> Vec<u32> {
        let mut out = vec![0u32; x.len()];
        for (u, &c) in x.iter().enumerate() {
            if c != 0 {
                out[self.group.mul(u, s)] = c;
            }
        }
        out
    }

    /// `[x, δ_g] = x δ_g - δ_g x`
    pub(crate) fn bracket_with_basis(&self, x: &[u32], g: usize) -> Vec<u32> {
        let right = self.right_basis_mul(x, g);
        let left = self.left_basis_mul(g, x);
        right
            .iter()
            .zip(&left)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect()
    }

    /// Least two-sided ideal containing `gens`.
    ///
    /// Worklist closure under left and right multiplication by `δ_s` for
    /// the generators `s` of `G`; closure under a generating set gives
    /// closure under every `δ_g`.
    pub fn ideal_generated(&self, gens: &FpSubspace) -> Result<FpSubspace> {
        self.ideal_from_vectors(gens.basis())
    }

    pub(crate) fn ideal_from_vectors(&self, vectors: &[Vec<u32>]) -> Result<FpSubspace> {
        let mut space = self.zero_space();
        let mut queue: Vec<Vec<u32>> = Vec::new();
        for v in vectors {
            if space.insert(v.clone())? {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            if space.dim() == self.dim() {
                break;
            }
            for &s in self.group.generators() {
                for w in [self.left_basis_mul(s, &v), self.right_basis_mul(&v, s)] {
                    if space.insert(w.clone())? {
                        queue.push(w);
                    }
                }
            }
        }
        Ok(space)
    }

    /// Ideal closure that multiplies by every `δ_g`, not just generators.
    /// Slower; kept as a cross-check for [`GroupAlgebra::ideal_generated`].
    pub fn ideal_generated_exhaustive(&self, gens: &FpSubspace) -> Result<FpSubspace> {
        let mut space = gens.clone();
        loop {
            let before = space.dim();
            let basis = space.basis().to_vec();
            for v in &basis {
                for g in 0..self.dim() {
                    space.insert(self.left_basis_mul(g, v))?;
                    space.insert(self.right_basis_mul(v, g))?;
                }
            }
            if space.dim() == before {
                return Ok(space);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral};

    #[test]
    fn unit_and_basis_products() {
        let d = dihedral(8).unwrap();
        let a = GroupAlgebra::new(&d, 2).unwrap();
        let x = a.element(vec![1, 0, 1, 1, 0, 0, 1, 0]).unwrap();
        assert_eq!(a.multiply(&a.one(), &x), x);
        assert_eq!(a.multiply(&a.basis(1), &a.basis(4)), a.basis(d.mul(1, 4)));
    }

    #[test]
    fn square_of_augmentation_of_involution_vanishes() {
        // g = a^2 is central of order 2 in D8
        let d = dihedral(8).unwrap();
        let a = GroupAlgebra::new(&d, 2).unwrap();
        let u = a.add(&a.one(), &a.basis(2));
        assert!(a.multiply(&u, &u).is_zero());
    }

    #[test]
    fn brackets() {
        let d = dihedral(8).unwrap();
        let a = GroupAlgebra::new(&d, 2).unwrap();
        let x = a.element(vec![1, 1, 0, 0, 1, 0, 0, 1]).unwrap();
        assert!(a.lie_bracket(&x, &x).is_zero());
        let (ga, gb) = (1, 4);
        let br = a.lie_bracket(&a.basis(ga), &a.basis(gb));
        let expected = a.add(&a.basis(d.mul(ga, gb)), &a.basis(d.mul(gb, ga)));
        assert_eq!(br, expected);
        assert!(!br.is_zero());

        let c = cyclic(6).unwrap();
        let k = GroupAlgebra::new(&c, 3).unwrap();
        let y = k.element(vec![1, 2, 0, 1, 1, 2]).unwrap();
        let z = k.element(vec![0, 1, 1, 2, 0, 1]).unwrap();
        assert!(k.lie_bracket(&y, &z).is_zero());
    }

    #[test]
    fn ideals() {
        let c2 = cyclic(2).unwrap();
        let a = GroupAlgebra::new(&c2, 2).unwrap();
        let one = FpSubspace::echelonize(a.field().clone(), 2, &[vec![1, 0]]).unwrap();
        assert_eq!(a.ideal_generated(&one).unwrap().dim(), 2);
        assert!(a.ideal_generated(&a.zero_space()).unwrap().is_zero());
        let aug = FpSubspace::echelonize(a.field().clone(), 2, &[vec![1, 1]]).unwrap();
        assert_eq!(a.ideal_generated(&aug).unwrap().dim(), 1);
    }

    #[test]
    fn generator_closure_matches_exhaustive_closure() {
        let d = dihedral(8).unwrap();
        let a = GroupAlgebra::new(&d, 2).unwrap();
        let br = a.lie_bracket(&a.basis(1), &a.basis(4));
        let seed = FpSubspace::echelonize(a.field().clone(), 8, &[br.into_coefficients()]).unwrap();
        assert_eq!(
            a.ideal_generated(&seed).unwrap(),
            a.ideal_generated_exhaustive(&seed).unwrap()
        );
    }
}
