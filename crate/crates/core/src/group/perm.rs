use std::fmt;

use super::{GroupError, Result};

/// A permutation of `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// `images[i]` is the image of point `i`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::NotAPermutation(0, n));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2, 3]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(GroupError::NotAPermutation(0, degree));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.images[x] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_composition() {
        let r = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(r.apply(3), 0);
        let r2 = r.then(&r);
        assert_eq!(format!("{r2:?}"), "(0 2)(1 3)");
        assert_eq!(r2.then(&r2), Permutation::identity(4));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }
}
