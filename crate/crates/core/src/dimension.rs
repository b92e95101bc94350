//! Lie dimension subgroups.
//!
//! Two independent constructions of the series `𝔇_(1) ⊇ 𝔇_(2) ⊇ ...`:
//!
//! * the recursion `𝔇_(m+1) = (𝔇_(m), G) · 𝔇_(⌈m/p⌉+1)^p` for `m >= 2`,
//!   started from `𝔇_(1) = G`, `𝔇_(2) = G'`;
//! * the closed product `𝔇_(m+1) = ∏_{(j-1)p^i >= m} γ_j(G)^(p^i)`.
//!
//! From the series come the d-vector (`p^d_(k) = [𝔇_(k) : 𝔇_(k+1)]`) and
//! the upper Lie nilpotency index `2 + (p-1) Σ m·d_(m+1)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{
    is_power_of, lower_central_series, quotient, FiniteGroup, GroupError, Subgroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimensionError {
    #[error("group algebra is not Lie nilpotent: {0}")]
    NotLieNilpotent(String),
    #[error("index [𝔇({k}) : 𝔇({})] = {index} is not a power of {p}", k + 1)]
    IndexNotPPower { k: usize, index: usize, p: u64 },
    #[error("series still nontrivial at term {0}")]
    NoTermination(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, DimensionError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Recursive,
    Product,
}

/// Rounding used for `m/p` in the recursion. Only `Ceil` is correct;
/// `Floor` exists so the self-test can show a corrupted recursion is
/// caught by the route comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Ceil,
    Floor,
}

impl Rounding {
    fn apply(self, m: usize, p: usize) -> usize {
        match self {
            Rounding::Ceil => m.div_ceil(p),
            Rounding::Floor => m / p,
        }
    }
}

/// Checks the Lie-nilpotency criterion: `G` nilpotent and `G'` a finite
/// `p`-group. Abelian groups pass.
pub fn check_lie_nilpotent(g: &FiniteGroup, p: u64) -> Result<()> {
    let lcs = lower_central_series(g);
    if !lcs.last().expect("non-empty").is_trivial() {
        return Err(DimensionError::NotLieNilpotent(
            "group is not nilpotent".into(),
        ));
    }
    let derived = lcs.get(1).map_or(1, |s| s.order());
    if !is_power_of(derived as u64, p) {
        return Err(DimensionError::NotLieNilpotent(format!(
            "commutator subgroup of order {derived} is not a {p}-group"
        )));
    }
    Ok(())
}

/// `[𝔇_(1) = G, 𝔇_(2) = G', ...]`, ending with the first trivial term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSeries<'g> {
    prime: u64,
    terms: Vec<Subgroup<'g>>,
    route: Route,
}

impl<'g> DimensionSeries<'g> {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn terms(&self) -> &[Subgroup<'g>] {
        &self.terms
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.terms[0].group()
    }

    /// `𝔇_(k)` for `k >= 1`; trivial past the stored terms.
    pub fn term(&self, k: usize) -> Subgroup<'g> {
        assert!(k >= 1, "dimension subgroups are indexed from 1");
        self.terms
            .get(k - 1)
            .cloned()
            .unwrap_or_else(|| Subgroup::trivial(self.group()))
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.order()).collect()
    }

    /// Same terms, irrespective of route.
    pub fn same_terms(&self, other: &DimensionSeries<'_>) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|(a, b)| a.members() == b.members())
    }
}

// Past index |G'| + 1 a Lie-nilpotent series must have died: the index
// bound t^L <= |G'| + 1 caps the largest m with d_(m+1) > 0.
fn step_bound(derived_order: usize) -> usize {
    derived_order + 2
}

pub fn series_recursive(g: &FiniteGroup, p: u64) -> Result<DimensionSeries<'_>> {
    series_recursive_with(g, p, Rounding::Ceil)
}

pub fn series_recursive_with(
    g: &FiniteGroup,
    p: u64,
    rounding: Rounding,
) -> Result<DimensionSeries<'_>> {
    check_lie_nilpotent(g, p)?;
    let whole = Subgroup::whole(g);
    let derived = whole.commutator_subgroup();
    let bound = step_bound(derived.order());
    let mut terms = vec![whole, derived];
    // terms[k - 1] holds 𝔇_(k); the loop computes 𝔇_(m+1)
    let mut m = 2;
    while !terms.last().expect("non-empty").is_trivial() {
        if m > bound {
            return Err(DimensionError::NoTermination(m));
        }
        let commutator = terms[m - 1].commutator_subgroup();
        let source = rounding.apply(m, p as usize) + 1;
        let powers = terms[source - 1].power_subgroup(p);
        terms.push(commutator.product(&powers)?);
        m += 1;
    }
    Ok(DimensionSeries {
        prime: p,
        terms,
        route: Route::Recursive,
    })
}

pub fn series_product(g: &FiniteGroup, p: u64) -> Result<DimensionSeries<'_>> {
    check_lie_nilpotent(g, p)?;
    let gammas = lower_central_series(g);
    // powers[j - 1] = [γ_j, γ_j^p, γ_j^(p^2), ...] while p^i <= exp(γ_j)
    let powers: Vec<Vec<(usize, Subgroup<'_>)>> = gammas
        .iter()
        .map(|gamma| {
            let exponent = gamma.exponent();
            let mut out = vec![(1usize, gamma.clone())];
            let mut q = p as usize;
            while q <= exponent {
                out.push((q, gamma.power_subgroup(q as u64)));
                q *= p as usize;
            }
            out
        })
        .collect();

    let whole = Subgroup::whole(g);
    let bound = step_bound(gammas.get(1).map_or(1, |s| s.order()));
    let mut terms = vec![whole];
    let mut m = 1;
    while !terms.last().expect("non-empty").is_trivial() {
        if m > bound {
            return Err(DimensionError::NoTermination(m));
        }
        let mut term = Subgroup::trivial(g);
        for (j_minus_1, per_j) in powers.iter().enumerate().skip(1) {
            for (q, sub) in per_j {
                if j_minus_1 * q >= m {
                    term = term.product(sub)?;
                }
            }
        }
        terms.push(term);
        m += 1;
    }
    if terms.len() == 1 {
        // trivial group: 𝔇_(2) = G' is stated explicitly
        terms.push(Subgroup::trivial(g));
    }
    Ok(DimensionSeries {
        prime: p,
        terms,
        route: Route::Product,
    })
}

/// Exponents `d_(k)`, `k >= 2`, with `p^d_(k) = [𝔇_(k) : 𝔇_(k+1)]`, plus
/// `|G'| = p^n` and `exp(G') = p^l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DVector {
    pub prime: u64,
    /// Nonzero entries only.
    pub entries: BTreeMap<usize, u32>,
    pub n: u32,
    pub l: u32,
}

impl DVector {
    pub fn new(prime: u64, entries: BTreeMap<usize, u32>, n: u32, l: u32) -> Self {
        let entries = entries.into_iter().filter(|&(_, d)| d > 0).collect();
        DVector {
            prime,
            entries,
            n,
            l,
        }
    }

    pub fn get(&self, k: usize) -> u32 {
        self.entries.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.entries.values().sum()
    }
}

fn log_exact(value: usize, p: u64) -> Option<u32> {
    if !is_power_of(value as u64, p) {
        return None;
    }
    let mut v = value as u64;
    let mut k = 0;
    while v > 1 {
        v /= p;
        k += 1;
    }
    Some(k)
}

pub fn d_vector(series: &DimensionSeries<'_>) -> Result<DVector> {
    let p = series.prime;
    let derived = series.term(2);
    let n = log_exact(derived.order(), p).ok_or(DimensionError::IndexNotPPower {
        k: 1,
        index: derived.order(),
        p,
    })?;
    let l = log_exact(derived.exponent(), p).ok_or(DimensionError::IndexNotPPower {
        k: 1,
        index: derived.exponent(),
        p,
    })?;
    let mut entries = BTreeMap::new();
    for k in 2..=series.terms.len() {
        let index = series.term(k).order() / series.term(k + 1).order();
        let d = log_exact(index, p).ok_or(DimensionError::IndexNotPPower { k, index, p })?;
        if d > 0 {
            entries.insert(k, d);
        }
    }
    Ok(DVector {
        prime: p,
        entries,
        n,
        l,
    })
}

/// `2 + (p-1) Σ_{m>=1} m·d_(m+1)`.
pub fn upper_index_jennings(d: &DVector) -> u64 {
    let weighted: u64 = d
        .entries
        .iter()
        .map(|(&k, &dk)| (k as u64 - 1) * dk as u64)
        .sum();
    2 + (d.prime - 1) * weighted
}

/// `Σ_{k>=2} d_(k) = n`.
pub fn verify_sum_rule(d: &DVector) -> bool {
    d.total() == d.n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VanishingRule {
    /// `m` is a power of `p`
    PowerOfP,
    /// `p^(l-1)` divides `m`
    ExponentDivides,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingViolation {
    pub m: usize,
    pub rule: VanishingRule,
    /// Order of `𝔇_(m+1)`, which should have been 1.
    pub order: usize,
}

/// For every `m` with `d_(m+1) = 0` where `m` is a power of `p` or
/// `p^(l-1) | m`, the term `𝔇_(m+1)` must be trivial. Returns the
/// violations.
pub fn shalev_vanishing_report(g: &FiniteGroup, p: u64) -> Result<Vec<VanishingViolation>> {
    let series = series_recursive(g, p)?;
    let d = d_vector(&series)?;
    let divisor = if d.l >= 1 {
        Some((p as usize).pow(d.l - 1))
    } else {
        None
    };
    let mut out = Vec::new();
    for m in 1..series.terms.len() {
        if d.get(m + 1) != 0 {
            continue;
        }
        let term = series.term(m + 1);
        if term.is_trivial() {
            continue;
        }
        let rule = if is_power_of(m as u64, p) {
            Some(VanishingRule::PowerOfP)
        } else if divisor.is_some_and(|q| m % q == 0) {
            Some(VanishingRule::ExponentDivides)
        } else {
            None
        };
        if let Some(rule) = rule {
            out.push(VanishingViolation {
                m,
                rule,
                order: term.order(),
            });
        }
    }
    Ok(out)
}

/// For central `h`: checks that the image of `𝔇_(m)(G)` in `G/H` equals
/// `𝔇_(m)(G/H)` for every `m`.
pub fn quotient_series_check(g: &FiniteGroup, p: u64, h: &Subgroup<'_>) -> Result<bool> {
    h.check_central()?;
    let q = quotient(g, h)?;
    let upstairs = series_recursive(g, p)?;
    let downstairs = series_recursive(&q.group, p)?;
    let len = upstairs.terms.len().max(downstairs.terms.len());
    Ok((1..=len).all(|k| q.image(&upstairs.term(k)) == downstairs.term(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        cyclic, dihedral, direct_product, extraspecial, quaternion8, wreath_cyclic,
        DEFAULT_ORDER_CAP,
    };

    #[test]
    fn abelian_series_is_short() {
        let c =
            direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        for s in [
            series_recursive(&c, 2).unwrap(),
            series_product(&c, 2).unwrap(),
        ] {
            assert_eq!(s.orders(), vec![8, 1]);
            let d = d_vector(&s).unwrap();
            assert!(d.entries.is_empty());
            assert_eq!(d.n, 0);
            assert_eq!(upper_index_jennings(&d), 2);
            assert!(verify_sum_rule(&d));
        }
    }

    #[test]
    fn trivial_group_series() {
        let t = crate::group::trivial();
        assert_eq!(series_recursive(&t, 2).unwrap().orders(), vec![1, 1]);
        assert_eq!(series_product(&t, 2).unwrap().orders(), vec![1, 1]);
    }

    #[test]
    fn d8_series() {
        let d = dihedral(8).unwrap();
        let rec = series_recursive(&d, 2).unwrap();
        let prod = series_product(&d, 2).unwrap();
        assert_eq!(rec.orders(), vec![8, 2, 1]);
        assert!(rec.same_terms(&prod));
        let dv = d_vector(&rec).unwrap();
        assert_eq!(dv.entries, BTreeMap::from([(2, 1)]));
        assert_eq!((dv.n, dv.l), (1, 1));
        assert_eq!(upper_index_jennings(&dv), 3);
    }

    #[test]
    fn c2_wreath_c4_dvector() {
        let w = wreath_cyclic(2, 4, DEFAULT_ORDER_CAP).unwrap();
        let rec = series_recursive(&w, 2).unwrap();
        let prod = series_product(&w, 2).unwrap();
        assert!(rec.same_terms(&prod));
        let dv = d_vector(&rec).unwrap();
        assert_eq!(dv.entries, BTreeMap::from([(2, 1), (3, 1), (4, 1)]));
        assert_eq!(dv.n, 3);
        assert_eq!(upper_index_jennings(&dv), 8);
    }

    #[test]
    fn c3_wreath_c3_routes_agree() {
        let w = wreath_cyclic(3, 3, DEFAULT_ORDER_CAP).unwrap();
        let rec = series_recursive(&w, 3).unwrap();
        let prod = series_product(&w, 3).unwrap();
        assert!(rec.same_terms(&prod));
        let dv = d_vector(&rec).unwrap();
        assert_eq!(upper_index_jennings(&dv), 8);
    }

    #[test]
    fn derived_term_is_commutator_subgroup() {
        for g in [
            dihedral(16).unwrap(),
            quaternion8().unwrap(),
            extraspecial(3).unwrap(),
        ] {
            let p = if g.order() == 27 { 3 } else { 2 };
            let s = series_product(&g, p).unwrap();
            assert_eq!(s.term(2), Subgroup::whole(&g).commutator_subgroup());
        }
    }

    #[test]
    fn jennings_formula_values() {
        let d = DVector::new(3, BTreeMap::from([(2, 1), (3, 1)]), 2, 1);
        assert_eq!(upper_index_jennings(&d), 8);
        let d = DVector::new(2, BTreeMap::new(), 0, 0);
        assert_eq!(upper_index_jennings(&d), 2);
    }

    #[test]
    fn corrupted_vector_fails_sum_rule() {
        let d = DVector::new(2, BTreeMap::from([(2, 2)]), 1, 1);
        assert!(!verify_sum_rule(&d));
    }

    #[test]
    fn not_lie_nilpotent_inputs() {
        let s3 = dihedral(6).unwrap();
        assert!(matches!(
            series_recursive(&s3, 3),
            Err(DimensionError::NotLieNilpotent(_))
        ));
        let d8 = dihedral(8).unwrap();
        assert!(matches!(
            series_product(&d8, 3),
            Err(DimensionError::NotLieNilpotent(_))
        ));
    }

    #[test]
    fn floor_rounding_breaks_route_equivalence_on_d16() {
        let d16 = dihedral(16).unwrap();
        let good = series_recursive(&d16, 2).unwrap();
        let bad = series_recursive_with(&d16, 2, Rounding::Floor).unwrap();
        let prod = series_product(&d16, 2).unwrap();
        assert!(good.same_terms(&prod));
        assert!(!bad.same_terms(&prod));
    }

    #[test]
    fn vanishing_holds_on_witnesses() {
        assert!(shalev_vanishing_report(&dihedral(8).unwrap(), 2)
            .unwrap()
            .is_empty());
        let w = wreath_cyclic(2, 4, DEFAULT_ORDER_CAP).unwrap();
        assert!(shalev_vanishing_report(&w, 2).unwrap().is_empty());
    }

    #[test]
    fn quotient_identity() {
        let d = dihedral(8).unwrap();
        assert!(quotient_series_check(&d, 2, &Subgroup::trivial(&d)).unwrap());
        let z = Subgroup::generated(&d, &[2]);
        assert!(quotient_series_check(&d, 2, &z).unwrap());

        let w = wreath_cyclic(2, 4, DEFAULT_ORDER_CAP).unwrap();
        let s = series_recursive(&w, 2).unwrap();
        let h = s.term(4);
        assert_eq!(h.order(), 2);
        assert!(quotient_series_check(&w, 2, &h).unwrap());

        let b = Subgroup::generated(&d, &[4]);
        assert!(matches!(
            quotient_series_check(&d, 2, &b),
            Err(DimensionError::Group(GroupError::NotCentral { .. }))
        ));
    }
}
