use crate::dimension::check_lie_nilpotent;
use crate::group::{FiniteGroup, Subgroup};

use super::{FpSubspace, GroupAlgebra, OracleError, Result, DEFAULT_ORACLE_CAP};

/// A descending chain of Lie powers `R^(1) = KG ⊇ R^(2) ⊇ ... ⊇ 0` (or the
/// lower analogue) and the index of the first zero term.
#[derive(Debug, Clone)]
pub struct LiePowers {
    /// `ideals[n - 1]` is the n-th power; the last entry is zero.
    pub ideals: Vec<FpSubspace>,
    /// Minimal `n` with a zero n-th power.
    pub index: usize,
}

impl LiePowers {
    pub fn dims(&self) -> Vec<usize> {
        self.ideals.iter().map(|s| s.dim()).collect()
    }

    /// The n-th power (`n >= 1`); zero past the index.
    pub fn power(&self, n: usize) -> &FpSubspace {
        let last = self.ideals.len() - 1;
        &self.ideals[(n - 1).min(last)]
    }
}

/// Oracle size limits: the largest admissible `|G|` and the number of
/// power steps before giving up (`None` means `|G| + 2`, which is more
/// than enough for any Lie-nilpotent input).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub cap: usize,
    pub steps: Option<usize>,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            cap: DEFAULT_ORACLE_CAP,
            steps: None,
        }
    }
}

impl OracleLimits {
    pub fn with_cap(cap: usize) -> Self {
        OracleLimits { cap, steps: None }
    }

    fn step_limit(&self, g: &FiniteGroup) -> usize {
        self.steps.unwrap_or(g.order() + 2)
    }

    fn check(&self, g: &FiniteGroup) -> Result<()> {
        if g.order() > self.cap {
            Err(OracleError::OracleCapExceeded {
                order: g.order(),
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

/// `R^(1) = KG`, `R^(n+1)` the ideal generated by `[x, y]` for
/// `x ∈ R^(n)`, `y ∈ KG`.
pub fn upper_lie_powers(g: &FiniteGroup, p: u32, limits: OracleLimits) -> Result<LiePowers> {
    limits.check(g)?;
    let algebra = GroupAlgebra::new(g, p)?;
    let limit = limits.step_limit(g);
    let mut ideals = vec![algebra.full_space()];
    loop {
        let current = ideals.last().expect("non-empty");
        if current.is_zero() {
            break;
        }
        if ideals.len() > limit {
            return Err(OracleError::NoConvergence { limit });
        }
        // [b, δ_gh] = [b, δ_g] δ_h + δ_g [b, δ_h], so generators of G
        // suffice inside an ideal
        let brackets: Vec<Vec<u32>> = current
            .basis()
            .iter()
            .flat_map(|b| {
                g.generators()
                    .iter()
                    .map(|&s| algebra.bracket_with_basis(b, s))
            })
            .collect();
        let next = algebra.ideal_from_vectors(&brackets)?;
        if next.dim() == current.dim() {
            // R^(n+1) = R^(n) ≠ 0: the chain is stuck
            return Err(OracleError::NoConvergence { limit });
        }
        ideals.push(next);
    }
    let index = ideals.len();
    Ok(LiePowers { ideals, index })
}

/// `R^[n]` is the ideal generated by all left-normed commutators of weight
/// `n`. Their span `L_n` satisfies `L_{n+1} = span{[b, δ_g]}` over a basis
/// `b` of `L_n` and all `g ∈ G`.
pub fn lower_lie_powers(g: &FiniteGroup, p: u32, limits: OracleLimits) -> Result<LiePowers> {
    limits.check(g)?;
    let algebra = GroupAlgebra::new(g, p)?;
    let limit = limits.step_limit(g);
    let mut span = algebra.full_space();
    let mut ideals = vec![algebra.full_space()];
    while !ideals.last().expect("non-empty").is_zero() {
        if ideals.len() > limit {
            return Err(OracleError::NoConvergence { limit });
        }
        let mut next = algebra.zero_space();
        for b in span.basis() {
            for h in 0..g.order() {
                next.insert(algebra.bracket_with_basis(b, h))?;
            }
        }
        if next == span {
            return Err(OracleError::NoConvergence { limit });
        }
        ideals.push(algebra.ideal_generated(&next)?);
        span = next;
    }
    let index = ideals.len();
    Ok(LiePowers { ideals, index })
}

/// `{g ∈ G : δ_g - δ_1 ∈ R^(m)}` for every `m` from 1 to the upper index.
pub fn dimension_subgroups_direct(
    g: &FiniteGroup,
    p: u32,
    limits: OracleLimits,
) -> Result<Vec<Subgroup<'_>>> {
    let upper = upper_lie_powers(g, p, limits)?;
    let algebra = GroupAlgebra::new(g, p)?;
    let one = algebra.one();
    upper
        .ideals
        .iter()
        .map(|ideal| {
            let mut members = Vec::new();
            for x in 0..g.order() {
                let diff = algebra.sub(&algebra.basis(x), &one);
                if ideal.contains(diff.coefficients())? {
                    members.push(x);
                }
            }
            Ok(Subgroup::from_elements(g, &members).expect("G ∩ (1 + ideal) is a subgroup"))
        })
        .collect()
}

/// `𝔇_(m)(G) = G ∩ (1 + R^(m))` straight from the definition.
pub fn dimension_subgroup_direct(
    g: &FiniteGroup,
    p: u32,
    m: usize,
    limits: OracleLimits,
) -> Result<Subgroup<'_>> {
    assert!(m >= 1, "dimension subgroups are indexed from 1");
    let all = dimension_subgroups_direct(g, p, limits)?;
    let last = all.len() - 1;
    Ok(all[(m - 1).min(last)].clone())
}

/// `KG` is Lie nilpotent iff `G` is nilpotent and `G'` is a `p`-group
/// (abelian `G` included).
pub fn is_lie_nilpotent(g: &FiniteGroup, p: u64) -> bool {
    check_lie_nilpotent(g, p).is_ok()
}
