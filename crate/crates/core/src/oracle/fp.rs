//! Dense linear algebra over a prime field.

use std::sync::Arc;

use super::{OracleError, Result};

/// Arithmetic in `GF(p)` for a small prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    inverses: Arc<[u32]>,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=65521).contains(&p)
            || (2..p)
                .take_while(|d| d * d <= p)
                .any(|d| p.is_multiple_of(d))
        {
            return Err(OracleError::InvalidPrime(p));
        }
        let mut inverses = vec![0u32; p as usize];
        for a in 1..p {
            inverses[a as usize] = pow_mod(a, p - 2, p);
        }
        Ok(PrimeField {
            p,
            inverses: inverses.into(),
        })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inverses[a as usize]
    }
}

fn pow_mod(base: u32, mut e: u32, m: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = base as u64 % m as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m as u64;
        }
        b = b * b % m as u64;
        e >>= 1;
    }
    acc as u32
}

/// A subspace of `GF(p)^ambient` held as a reduced row echelon basis.
///
/// Rows are sorted by pivot column; each pivot entry is 1 and every other
/// row is zero in that column, so two subspaces are equal exactly when
/// their bases are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpSubspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl FpSubspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        FpSubspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut r = vec![0; ambient];
                r[i] = 1;
                r
            })
            .collect();
        FpSubspace {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn echelonize(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v.clone())?;
        }
        Ok(s)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(OracleError::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Reduces `v` in place against the basis; afterwards `v` is zero iff
    /// it lay in the span.
    fn reduce(&self, v: &mut [u32]) {
        let f = &self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let coef = v[c];
            if coef == 0 {
                continue;
            }
            for j in c..self.ambient {
                if row[j] != 0 {
                    v[j] = f.sub(v[j], f.mul(coef, row[j]));
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        self.check_len(v)?;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        Ok(w.iter().all(|&x| x == 0))
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> Result<bool> {
        self.check_len(&v)?;
        let f = self.field.clone();
        for x in v.iter_mut() {
            *x %= f.characteristic();
        }
        self.reduce(&mut v);
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        let scale = f.inv(v[lead]);
        for x in v[lead..].iter_mut() {
            *x = f.mul(*x, scale);
        }
        for row in self.rows.iter_mut() {
            let coef = row[lead];
            if coef == 0 {
                continue;
            }
            for j in lead..self.ambient {
                if v[j] != 0 {
                    row[j] = f.sub(row[j], f.mul(coef, v[j]));
                }
            }
        }
        let at = self.pivots.partition_point(|&c| c < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        Ok(true)
    }

    pub fn sum(&self, other: &FpSubspace) -> Result<FpSubspace> {
        if other.ambient != self.ambient {
            return Err(OracleError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone())?;
        }
        Ok(s)
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> Result<bool> {
        for r in &self.rows {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
