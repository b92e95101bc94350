//! Maximal and almost-maximal upper Lie nilpotency index.
//!
//! Three independent views of the same question: the structure of `G`
//! (class and the types of `γ₂`, `γ₃`), the shape of the d-vector, and the
//! index itself. [`cross_validate`] ties them together.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimension::{
    check_lie_nilpotent, d_vector, series_recursive, upper_index_jennings, DVector, DimensionError,
};
use crate::group::{lower_central_series, AbelianType, FiniteGroup};
use crate::oracle::{lower_lie_powers, upper_lie_powers, OracleError, OracleLimits};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("no almost-maximal witness for p = {0}")]
    NoWitnessFound(u64),
    #[error("sharpness is only stated for p = 2 and p = 3, not {0}")]
    UnsupportedPrime(u64),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
}

pub type Result<T> = std::result::Result<T, ClassifyError>;

/// Structural cases for an almost-maximal index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    I,
    Ii,
    Iii,
    Iv,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::I, Case::Ii, Case::Iii, Case::Iv];

    pub fn roman(self) -> &'static str {
        match self {
            Case::I => "i",
            Case::Ii => "ii",
            Case::Iii => "iii",
            Case::Iv => "iv",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

/// d-vector profiles for an almost-maximal index. Labelled like [`Case`]
/// but matched independently.
pub type Profile = Case;

/// Structural facts about `G` that the case test reads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub class: usize,
    pub gamma_orders: Vec<usize>,
    /// `γ₂` type, `None` when `γ₂` is nonabelian.
    pub gamma2: Option<AbelianType>,
    pub gamma3: Option<AbelianType>,
}

impl Evidence {
    pub fn of(g: &FiniteGroup) -> Self {
        let lcs = lower_central_series(g);
        let class = lcs.len() - 1;
        let ty = |i: usize| {
            lcs.get(i).map_or_else(
                || AbelianType::new(vec![]).ok(),
                |s| AbelianType::of_subgroup(s).ok(),
            )
        };
        Evidence {
            class,
            gamma_orders: lcs.iter().map(|s| s.order()).collect(),
            gamma2: ty(1),
            gamma3: ty(2),
        }
    }

    fn gamma2_is(&self, factors: &[u64]) -> bool {
        self.gamma2.as_ref().is_some_and(|t| t.factors() == factors)
    }

    fn gamma3_is(&self, factors: &[u64]) -> bool {
        self.gamma3.as_ref().is_some_and(|t| t.factors() == factors)
    }

    /// Every case whose conditions hold. At most one by construction.
    pub fn matching_cases(&self, p: u64) -> Vec<Case> {
        Case::ALL
            .into_iter()
            .filter(|&c| match c {
                Case::I => p == 2 && self.class == 2 && self.gamma2_is(&[2, 2]),
                Case::Ii => {
                    p == 2 && self.class == 4 && self.gamma2_is(&[4, 2]) && self.gamma3_is(&[2, 2])
                }
                Case::Iii => p == 2 && self.class == 4 && self.gamma2_is(&[2, 2, 2]),
                Case::Iv => p == 3 && self.class == 3 && self.gamma2_is(&[3, 3]),
            })
            .collect()
    }
}

/// First structural case matched by `G`, if any.
pub fn theorem1_structural_case(g: &FiniteGroup, p: u64) -> Result<Option<Case>> {
    check_lie_nilpotent(g, p)?;
    Ok(Evidence::of(g).matching_cases(p).first().copied())
}

fn required_positions(p: u64, n: u32) -> Option<BTreeMap<usize, u32>> {
    let mut positions: Vec<usize> = match (p, n) {
        (2, 2) => vec![2, 2],
        (3, 2) => vec![2, 3],
        (2 | 3, n) if n > 2 => {
            let mut v: Vec<usize> = (0..=n - 2).map(|i| p.pow(i) as usize + 1).collect();
            v.push(p.pow(n - 1) as usize);
            v
        }
        _ => return None,
    };
    positions.sort_unstable();
    let mut out = BTreeMap::new();
    for k in positions {
        *out.entry(k).or_insert(0) += 1;
    }
    Some(out)
}

/// Matches the d-vector against the almost-maximal profiles. Required
/// positions are a multiset, so coinciding positions add up.
pub fn lemma2_profile(d: &DVector) -> Option<Profile> {
    let expected = required_positions(d.prime, d.n)?;
    if expected != d.entries {
        return None;
    }
    Some(match (d.prime, d.n) {
        (2, 2) => Case::I,
        (2, _) => Case::Ii,
        (3, 2) => Case::Iii,
        _ => Case::Iv,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    NotLieNilpotent,
    Abelian,
    Maximal,
    AlmostMaximal(Option<Case>),
    Below,
    /// An index outside `[2, p^n + 1]` or strictly between the two top
    /// values. Never expected; reported rather than hidden.
    Anomalous,
}

impl Status {
    /// Dotted tag, e.g. `almost_maximal.iii`.
    pub fn tag(&self) -> String {
        match self {
            Status::NotLieNilpotent => "not_lie_nilpotent".into(),
            Status::Abelian => "abelian".into(),
            Status::Maximal => "maximal".into(),
            Status::AlmostMaximal(Some(c)) => format!("almost_maximal.{c}"),
            Status::AlmostMaximal(None) => "almost_maximal".into(),
            Status::Below => "below".into(),
            Status::Anomalous => "anomalous".into(),
        }
    }

    /// Same bucket, ignoring the attached case.
    pub fn same_bucket(&self, other: &Status) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

/// Buckets an index by comparison with `p^n + 1` and `p^n - p + 2`.
pub fn bucket(t: u64, n: u32, p: u64) -> Status {
    let pn = p.pow(n);
    if n == 0 {
        return if t == 2 {
            Status::Abelian
        } else {
            Status::Anomalous
        };
    }
    if t < 2 || t > pn + 1 {
        Status::Anomalous
    } else if t == pn + 1 {
        Status::Maximal
    } else if (p == 2 || p == 3) && t == pn - p + 2 {
        Status::AlmostMaximal(None)
    } else if t < pn - p + 2 {
        Status::Below
    } else {
        Status::Anomalous
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleIndices {
    pub t_upper: usize,
    pub t_lower: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub t_upper: Option<u64>,
    pub n: Option<u32>,
    pub p: u64,
    pub evidence: Evidence,
    pub oracle: Option<OracleIndices>,
}

/// Runs the oracle for both indices.
pub fn oracle_indices(
    g: &FiniteGroup,
    p: u64,
    limits: OracleLimits,
) -> std::result::Result<OracleIndices, OracleError> {
    let prime = u32::try_from(p).map_err(|_| OracleError::InvalidPrime(u32::MAX))?;
    Ok(OracleIndices {
        t_upper: upper_lie_powers(g, prime, limits)?.index,
        t_lower: lower_lie_powers(g, prime, limits)?.index,
    })
}

/// Classifies `KG` over `GF(p)`. With `limits`, the oracle indices are
/// attached when `|G|` is within the cap.
pub fn classify(g: &FiniteGroup, p: u64, limits: Option<OracleLimits>) -> Verdict {
    let evidence = Evidence::of(g);
    let not_ln = |evidence| Verdict {
        status: Status::NotLieNilpotent,
        t_upper: None,
        n: None,
        p,
        evidence,
        oracle: None,
    };
    if check_lie_nilpotent(g, p).is_err() {
        return not_ln(evidence);
    }
    let Ok(d) = series_recursive(g, p).and_then(|s| d_vector(&s)) else {
        return not_ln(evidence);
    };
    let t = upper_index_jennings(&d);
    let status = match bucket(t, d.n, p) {
        Status::AlmostMaximal(_) => {
            Status::AlmostMaximal(evidence.matching_cases(p).first().copied())
        }
        s => s,
    };
    let oracle = limits
        .filter(|l| g.order() <= l.cap)
        .and_then(|l| oracle_indices(g, p, l).ok());
    Verdict {
        status,
        t_upper: Some(t),
        n: Some(d.n),
        p,
        evidence,
        oracle,
    }
}

/// The three views side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub p: u64,
    pub structural: Option<Case>,
    pub profile: Option<Profile>,
    pub index_almost_maximal: bool,
    pub d_vector: DVector,
    pub t_upper: u64,
    pub evidence: Evidence,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.structural.is_some() == self.profile.is_some()
            && self.profile.is_some() == self.index_almost_maximal
    }
}

pub fn cross_validate(g: &FiniteGroup, p: u64) -> Result<ConsistencyReport> {
    check_lie_nilpotent(g, p)?;
    let evidence = Evidence::of(g);
    let d = d_vector(&series_recursive(g, p)?)?;
    let t = upper_index_jennings(&d);
    Ok(ConsistencyReport {
        p,
        structural: evidence.matching_cases(p).first().copied(),
        profile: lemma2_profile(&d),
        index_almost_maximal: matches!(bucket(t, d.n, p), Status::AlmostMaximal(_)),
        d_vector: d,
        t_upper: t,
        evidence,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessWitness {
    pub name: String,
    pub n: u32,
    pub t_upper: u64,
    /// `2^n` for `p = 2`, `3^n - 1` for `p = 3`.
    pub target: u64,
    /// `p^(n-1) + 2p - 1`
    pub p5_bound: u64,
    pub exceeds_p5_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub p: u64,
    pub witnesses: Vec<SharpnessWitness>,
}

/// Collects the groups attaining `t^L = 2^n` (p = 2) or `3^n - 1` (p = 3).
pub fn corollary_sharpness<'a, I>(p: u64, witnesses: I) -> Result<SharpnessReport>
where
    I: IntoIterator<Item = (&'a str, &'a FiniteGroup)>,
{
    if p != 2 && p != 3 {
        return Err(ClassifyError::UnsupportedPrime(p));
    }
    let mut found = Vec::new();
    for (name, g) in witnesses {
        if check_lie_nilpotent(g, p).is_err() {
            continue;
        }
        let d = d_vector(&series_recursive(g, p)?)?;
        if d.n == 0 {
            continue;
        }
        let t = upper_index_jennings(&d);
        let target = p.pow(d.n) - p + 2;
        if t != target {
            continue;
        }
        let p5_bound = p.pow(d.n - 1) + 2 * p - 1;
        found.push(SharpnessWitness {
            name: name.to_string(),
            n: d.n,
            t_upper: t,
            target,
            p5_bound,
            exceeds_p5_bound: t > p5_bound,
        });
    }
    if found.is_empty() {
        return Err(ClassifyError::NoWitnessFound(p));
    }
    Ok(SharpnessReport {
        p,
        witnesses: found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        cyclic, dihedral, direct_product, extraspecial, quaternion8, wreath_cyclic,
        DEFAULT_ORDER_CAP,
    };

    fn dv(p: u64, n: u32, entries: &[(usize, u32)]) -> DVector {
        DVector::new(p, entries.iter().copied().collect(), n, 1)
    }

    #[test]
    fn profiles() {
        assert_eq!(lemma2_profile(&dv(2, 2, &[(2, 2)])), Some(Case::I));
        assert_eq!(
            lemma2_profile(&dv(3, 2, &[(2, 1), (3, 1)])),
            Some(Case::Iii)
        );
        assert_eq!(lemma2_profile(&dv(2, 2, &[(2, 1), (3, 1)])), None);
        assert_eq!(
            lemma2_profile(&dv(2, 3, &[(2, 1), (3, 1), (4, 1)])),
            Some(Case::Ii)
        );
        assert_eq!(
            lemma2_profile(&dv(2, 4, &[(2, 1), (3, 1), (5, 1), (8, 1)])),
            Some(Case::Ii)
        );
        assert_eq!(
            lemma2_profile(&dv(3, 3, &[(2, 1), (4, 1), (9, 1)])),
            Some(Case::Iv)
        );
        assert_eq!(lemma2_profile(&dv(5, 2, &[(2, 2)])), None);
    }

    #[test]
    fn profiles_have_almost_maximal_index() {
        for (p, n) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 4)] {
            let entries = required_positions(p, n).unwrap();
            let d = DVector::new(p, entries, n, 1);
            assert_eq!(d.total(), n);
            assert_eq!(upper_index_jennings(&d), p.pow(n) - p + 2);
        }
    }

    #[test]
    fn bucketing() {
        assert_eq!(bucket(2, 0, 2), Status::Abelian);
        assert_eq!(bucket(3, 1, 2), Status::Maximal);
        assert_eq!(bucket(4, 2, 2), Status::AlmostMaximal(None));
        assert_eq!(bucket(8, 2, 3), Status::AlmostMaximal(None));
        assert_eq!(bucket(5, 2, 3), Status::Below);
        assert_eq!(bucket(21, 2, 5), Status::Below);
        assert_eq!(bucket(24, 2, 5), Status::Anomalous);
        assert_eq!(bucket(25, 2, 5), Status::Anomalous);
        assert_eq!(bucket(26, 2, 5), Status::Maximal);
        assert_eq!(
            Status::AlmostMaximal(Some(Case::Iii)).tag(),
            "almost_maximal.iii"
        );
    }

    #[test]
    fn structural_cases() {
        let d8 = dihedral(8).unwrap();
        let dd = direct_product(&d8, &d8, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(theorem1_structural_case(&dd, 2).unwrap(), Some(Case::I));
        let w = wreath_cyclic(2, 4, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(theorem1_structural_case(&w, 2).unwrap(), Some(Case::Iii));
        let w3 = wreath_cyclic(3, 3, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(theorem1_structural_case(&w3, 3).unwrap(), Some(Case::Iv));
        assert_eq!(Evidence::of(&w3).gamma3.unwrap().factors(), &[3]);
        assert_eq!(theorem1_structural_case(&d8, 2).unwrap(), None);
        assert!(theorem1_structural_case(&dihedral(6).unwrap(), 2).is_err());
    }

    #[test]
    fn case_order_is_immaterial() {
        let d8 = dihedral(8).unwrap();
        let groups = [
            direct_product(&d8, &d8, DEFAULT_ORDER_CAP).unwrap(),
            wreath_cyclic(2, 4, DEFAULT_ORDER_CAP).unwrap(),
            wreath_cyclic(3, 3, DEFAULT_ORDER_CAP).unwrap(),
            d8,
        ];
        for g in &groups {
            for p in [2, 3, 5] {
                assert!(Evidence::of(g).matching_cases(p).len() <= 1);
            }
        }
    }

    #[test]
    fn verdicts() {
        let lim = Some(OracleLimits::default());
        let d8 = dihedral(8).unwrap();
        let v = classify(&d8, 2, lim);
        assert_eq!((v.status, v.t_upper), (Status::Maximal, Some(3)));
        assert_eq!(
            v.oracle,
            Some(OracleIndices {
                t_upper: 3,
                t_lower: 3
            })
        );

        let dd = direct_product(&d8, &d8, DEFAULT_ORDER_CAP).unwrap();
        let v = classify(&dd, 2, None);
        assert_eq!(v.status, Status::AlmostMaximal(Some(Case::I)));
        assert_eq!(v.t_upper, Some(4));

        let v = classify(&cyclic(12).unwrap(), 3, lim);
        assert_eq!((v.status, v.t_upper), (Status::Abelian, Some(2)));

        let s3 = dihedral(6).unwrap();
        for p in [2, 3, 5, 7] {
            assert_eq!(classify(&s3, p, lim).status, Status::NotLieNilpotent);
        }

        let q = quaternion8().unwrap();
        assert_eq!(classify(&q, 2, lim).status, Status::Maximal);
        let h = extraspecial(3).unwrap();
        assert_eq!(classify(&h, 3, lim).t_upper, Some(4));
    }

    #[test]
    fn three_way_agreement() {
        let d8 = dihedral(8).unwrap();
        let r = cross_validate(&d8, 2).unwrap();
        assert!(r.consistent() && r.structural.is_none() && !r.index_almost_maximal);
        for (p, q) in [(2, 4), (3, 3)] {
            let w = wreath_cyclic(p, q, DEFAULT_ORDER_CAP).unwrap();
            let r = cross_validate(&w, p as u64).unwrap();
            assert!(r.consistent() && r.index_almost_maximal);
            assert_eq!(r.t_upper, 8);
        }
    }

    #[test]
    fn sharpness() {
        let w2 = wreath_cyclic(2, 4, DEFAULT_ORDER_CAP).unwrap();
        let d8 = dihedral(8).unwrap();
        let r = corollary_sharpness(2, [("D8", &d8), ("C2wrC4", &w2)]).unwrap();
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!((r.witnesses[0].t_upper, r.witnesses[0].target), (8, 8));
        assert!(r.witnesses[0].exceeds_p5_bound);

        let w3 = wreath_cyclic(3, 3, DEFAULT_ORDER_CAP).unwrap();
        let r = corollary_sharpness(3, [("C3wrC3", &w3)]).unwrap();
        assert_eq!((r.witnesses[0].t_upper, r.witnesses[0].p5_bound), (8, 8));

        assert_eq!(
            corollary_sharpness(2, std::iter::empty()).unwrap_err(),
            ClassifyError::NoWitnessFound(2)
        );
        assert!(corollary_sharpness(5, std::iter::empty()).is_err());
    }
}
