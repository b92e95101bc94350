//! The acceptance suite: one result per criterion, shared by the
//! `selftest` subcommand and the `acceptance` test target.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::Catalog;
use crate::classify::{classify, corollary_sharpness, cross_validate, oracle_indices, Status};
use crate::dimension::{
    check_lie_nilpotent, d_vector, quotient_series_check, series_product, series_recursive,
    series_recursive_with, shalev_vanishing_report, upper_index_jennings, verify_sum_rule,
    Rounding,
};
use crate::group::{is_power_of, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::oracle::{dimension_subgroups_direct, OracleLimits, DEFAULT_ORACLE_CAP};
use crate::report::{analyze, AnalyzeOptions, OracleMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: &'static str,
    pub title: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn ok(&self) -> bool {
        self.outcome != Outcome::Fail
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        };
        write!(
            f,
            "[{tag}] {:>2} {:<28} {} ({:.2?})",
            self.id, self.title, self.detail, self.elapsed
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AcceptanceOptions {
    pub oracle_cap: usize,
    pub seed: u64,
}

impl Default for AcceptanceOptions {
    fn default() -> Self {
        AcceptanceOptions {
            oracle_cap: DEFAULT_ORACLE_CAP,
            seed: 0x5eed,
        }
    }
}

/// Shipped catalog, built once.
pub struct Suite {
    opts: AcceptanceOptions,
    groups: Vec<(String, FiniteGroup)>,
}

const PRIMES: [u64; 3] = [2, 3, 5];

impl Suite {
    pub fn new(opts: AcceptanceOptions) -> Self {
        let catalog = Catalog::shipped();
        let groups = catalog
            .build_all(DEFAULT_ORDER_CAP)
            .into_iter()
            .map(|(e, g)| (e.name.clone(), g.expect("shipped catalog builds")))
            .collect();
        Suite { opts, groups }
    }

    fn group(&self, name: &str) -> &FiniteGroup {
        &self
            .groups
            .iter()
            .find(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("{name} is in the shipped catalog"))
            .1
    }

    fn limits(&self) -> OracleLimits {
        OracleLimits::with_cap(self.opts.oracle_cap)
    }

    fn oracle_fits(&self, g: &FiniteGroup) -> bool {
        g.order() <= self.opts.oracle_cap
    }

    /// Lie-nilpotent entries at `p` of order at most `max`.
    fn lie_nilpotent(&self, p: u64, max: usize) -> impl Iterator<Item = (&str, &FiniteGroup)> {
        self.groups
            .iter()
            .filter(move |(_, g)| g.order() <= max && check_lie_nilpotent(g, p).is_ok())
            .map(|(n, g)| (n.as_str(), g))
    }

    pub fn run_all(&self) -> Vec<CriterionResult> {
        vec![
            self.golden_indices(),
            self.route_equivalence(),
            self.biconditional(),
            self.bounds(),
            self.sharpness(),
            self.vanishing_and_quotients(),
            self.sum_rule_and_relabeling(),
            self.negative_control(),
            self.mutation(),
        ]
    }

    fn timed(
        id: &'static str,
        title: &'static str,
        f: impl FnOnce() -> (Outcome, String),
    ) -> CriterionResult {
        let start = Instant::now();
        let (outcome, detail) = f();
        CriterionResult {
            id,
            title,
            outcome,
            detail,
            elapsed: start.elapsed(),
        }
    }

    pub fn golden_indices(&self) -> CriterionResult {
        const GOLDEN: [(&str, u64, u64); 6] = [
            ("D8", 2, 3),
            ("Q8", 2, 3),
            ("D8xD8", 2, 4),
            ("C2wrC4", 2, 8),
            ("Heis3", 3, 4),
            ("C3wrC3", 3, 8),
        ];
        let mut r = Self::timed("1", "golden indices", || {
            let mut wrong = Vec::new();
            let mut skipped = Vec::new();
            for (name, p, t) in GOLDEN {
                let g = self.group(name);
                let jennings = series_recursive(g, p)
                    .and_then(|s| d_vector(&s))
                    .map(|d| upper_index_jennings(&d));
                if jennings != Ok(t) {
                    wrong.push(format!("{name}: Jennings {jennings:?}, expected {t}"));
                }
                if !self.oracle_fits(g) {
                    skipped.push(name);
                    continue;
                }
                match oracle_indices(g, p, self.limits()) {
                    Ok(o) if o.t_upper as u64 == t => {}
                    other => wrong.push(format!("{name}: oracle {other:?}, expected {t}")),
                }
            }
            if !wrong.is_empty() {
                (Outcome::Fail, wrong.join("; "))
            } else if !skipped.is_empty() {
                (
                    Outcome::Skipped,
                    format!("Jennings values correct; oracle skipped for {skipped:?}"),
                )
            } else {
                (
                    Outcome::Pass,
                    "3 3 4 8 4 8 by Jennings and by the oracle".into(),
                )
            }
        });
        within(&mut r, Duration::from_secs(10));
        r
    }

    pub fn route_equivalence(&self) -> CriterionResult {
        let mut r = Self::timed("2", "route triple-equivalence", || {
            let mut compared = 0;
            let mut mismatches = Vec::new();
            let mut unchecked = 0;
            for p in [2, 3] {
                for (name, g) in self.lie_nilpotent(p, 64) {
                    compared += 1;
                    let (Ok(rec), Ok(prod)) = (series_recursive(g, p), series_product(g, p)) else {
                        mismatches.push(format!("{name}/p={p}: series failed"));
                        continue;
                    };
                    if !rec.same_terms(&prod) {
                        mismatches.push(format!("{name}/p={p}: recursive vs product"));
                    }
                    if !self.oracle_fits(g) {
                        unchecked += 1;
                        continue;
                    }
                    match dimension_subgroups_direct(g, p as u32, self.limits()) {
                        Ok(direct) => {
                            let len = direct.len().max(rec.terms().len());
                            let trivial = direct.last().expect("non-empty");
                            for m in 1..=len {
                                let d = direct.get(m - 1).unwrap_or(trivial);
                                if rec.term(m).members() != d.members() {
                                    mismatches.push(format!("{name}/p={p}: direct at m={m}"));
                                }
                            }
                        }
                        Err(e) => mismatches.push(format!("{name}/p={p}: {e}")),
                    }
                }
            }
            if !mismatches.is_empty() {
                (Outcome::Fail, mismatches.join("; "))
            } else if unchecked > 0 {
                (
                    Outcome::Skipped,
                    format!("{compared} series agree; {unchecked} beyond the oracle cap"),
                )
            } else {
                (
                    Outcome::Pass,
                    format!("{compared} (group, p) pairs, zero mismatches"),
                )
            }
        });
        within(&mut r, Duration::from_secs(60));
        r
    }

    pub fn biconditional(&self) -> CriterionResult {
        Self::timed("3", "structural biconditional", || {
            let mut violations = Vec::new();
            let mut positive = Vec::new();
            let mut total = 0;
            for (p, max) in [(2u64, 64), (3, 81)] {
                for (name, g) in self.lie_nilpotent(p, max) {
                    if !is_power_of(g.order() as u64, p) {
                        continue;
                    }
                    total += 1;
                    match cross_validate(g, p) {
                        Ok(r) if r.consistent() => {
                            if let Some(c) = r.structural {
                                positive.push(format!("{name}:{c}"));
                            }
                        }
                        Ok(r) => violations.push(format!("{name}: {r:?}")),
                        Err(e) => violations.push(format!("{name}: {e}")),
                    }
                }
            }
            if violations.is_empty() {
                (
                    Outcome::Pass,
                    format!(
                        "{total} p-groups, zero violations; almost maximal: {}",
                        positive.join(" ")
                    ),
                )
            } else {
                (Outcome::Fail, violations.join("; "))
            }
        })
    }

    pub fn bounds(&self) -> CriterionResult {
        Self::timed("4", "index bounds", || {
            let mut violations = Vec::new();
            let mut checked = 0;
            let mut unchecked = 0;
            for p in PRIMES {
                for (name, g) in self.lie_nilpotent(p, usize::MAX) {
                    if !self.oracle_fits(g) {
                        unchecked += 1;
                        continue;
                    }
                    checked += 1;
                    let derived = series_recursive(g, p).map(|s| s.term(2).order());
                    match (oracle_indices(g, p, self.limits()), derived) {
                        (Ok(o), Ok(d)) => {
                            if !(o.t_lower <= o.t_upper && o.t_upper <= d + 1) {
                                violations.push(format!("{name}/p={p}: {o:?}, |G'| = {d}"));
                            }
                            if p == 5 && o.t_lower != o.t_upper {
                                violations.push(format!("{name}/p=5: t_L != t^L ({o:?})"));
                            }
                        }
                        (o, d) => violations.push(format!("{name}/p={p}: {o:?} {d:?}")),
                    }
                }
            }
            if !violations.is_empty() {
                (Outcome::Fail, violations.join("; "))
            } else if checked == 0 {
                (
                    Outcome::Skipped,
                    "oracle cap admits no catalog entry".into(),
                )
            } else {
                (
                    Outcome::Pass,
                    format!("{checked} oracle runs, zero violations ({unchecked} over the cap)"),
                )
            }
        })
    }

    pub fn sharpness(&self) -> CriterionResult {
        Self::timed("5", "sharpness", || {
            let mut detail = Vec::new();
            let mut ok = true;
            for (p, name) in [(2u64, "C2wrC4"), (3, "C3wrC3")] {
                let candidates = self
                    .groups
                    .iter()
                    .filter(|(_, g)| g.order() <= 128)
                    .map(|(n, g)| (n.as_str(), g));
                match corollary_sharpness(p, candidates) {
                    Ok(report) => match report.witnesses.iter().find(|w| w.name == name) {
                        Some(w) if w.t_upper == 8 && w.target == 8 => detail.push(format!(
                            "{name}: t^L = {} = {}, p>=5 bound {} ({})",
                            w.t_upper,
                            if p == 2 { "2^n" } else { "3^n-1" },
                            w.p5_bound,
                            if w.exceeds_p5_bound {
                                "exceeded"
                            } else {
                                "attained"
                            }
                        )),
                        other => {
                            ok = false;
                            detail.push(format!("{name}: {other:?}"));
                        }
                    },
                    Err(e) => {
                        ok = false;
                        detail.push(e.to_string());
                    }
                }
            }
            let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
            (outcome, detail.join("; "))
        })
    }

    pub fn vanishing_and_quotients(&self) -> CriterionResult {
        Self::timed("6", "vanishing and quotients", || {
            let mut problems = Vec::new();
            let mut series = 0;
            for p in PRIMES {
                for (name, g) in self.lie_nilpotent(p, usize::MAX) {
                    series += 1;
                    match shalev_vanishing_report(g, p) {
                        Ok(v) if v.is_empty() => {}
                        other => problems.push(format!("{name}/p={p}: {other:?}")),
                    }
                }
            }
            for (name, p) in [("C2wrC4", 2u64), ("C3wrC3", 3)] {
                let g = self.group(name);
                let outcome = series_recursive(g, p).and_then(|s| {
                    let d = d_vector(&s)?;
                    let h = s.term(p.pow(d.n - 1) as usize);
                    quotient_series_check(g, p, &h)
                });
                if outcome != Ok(true) {
                    problems.push(format!("{name}: quotient identity {outcome:?}"));
                }
            }
            if problems.is_empty() {
                (
                    Outcome::Pass,
                    format!(
                        "{series} series without violations; quotient identity on both witnesses"
                    ),
                )
            } else {
                (Outcome::Fail, problems.join("; "))
            }
        })
    }

    pub fn sum_rule_and_relabeling(&self) -> CriterionResult {
        Self::timed("7", "sum rule and relabeling", || {
            let mut problems = Vec::new();
            let mut vectors = 0;
            for p in PRIMES {
                for (name, g) in self.lie_nilpotent(p, usize::MAX) {
                    vectors += 1;
                    match series_recursive(g, p).and_then(|s| d_vector(&s)) {
                        Ok(d) if verify_sum_rule(&d) => {}
                        other => problems.push(format!("{name}/p={p}: {other:?}")),
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
            let opts = AnalyzeOptions {
                oracle: OracleMode::Auto,
                oracle_cap: self.opts.oracle_cap.min(64),
            };
            let mut relabeled = 0;
            for (name, g) in self.groups.iter().filter(|(_, g)| g.order() <= 64) {
                let mut perm: Vec<usize> = (0..g.order()).collect();
                perm.shuffle(&mut rng);
                let h = match g.relabeled(&perm) {
                    Ok(h) => h,
                    Err(e) => {
                        problems.push(format!("{name}: relabel failed: {e}"));
                        continue;
                    }
                };
                for p in PRIMES {
                    let a = analyze(name, g, p, opts).expect("prime");
                    let b = analyze(name, &h, p, opts).expect("prime");
                    relabeled += 1;
                    if a.to_json() != b.to_json() {
                        problems.push(format!("{name}/p={p}: report changed under relabeling"));
                    }
                }
            }
            if problems.is_empty() {
                (
                    Outcome::Pass,
                    format!("{vectors} d-vectors; {relabeled} relabeled reports identical"),
                )
            } else {
                (Outcome::Fail, problems.join("; "))
            }
        })
    }

    pub fn negative_control(&self) -> CriterionResult {
        Self::timed("8", "negative control", || {
            let mut problems = Vec::new();
            let s3 = self.group("S3");
            let lim = Some(self.limits());
            for p in [2, 3, 5, 7] {
                let v = classify(s3, p, lim);
                if v.status != Status::NotLieNilpotent {
                    problems.push(format!("S3/p={p}: {}", v.status.tag()));
                }
            }
            let mut abelian = 0;
            for (name, g) in &self.groups {
                if !g.is_abelian() {
                    continue;
                }
                for p in PRIMES {
                    abelian += 1;
                    let v = classify(g, p, lim);
                    let oracle_ok = v.oracle.is_none_or(|o| o.t_upper == 2 && o.t_lower == 2);
                    if v.status != Status::Abelian || v.t_upper != Some(2) || !oracle_ok {
                        problems.push(format!("{name}/p={p}: {v:?}"));
                    }
                }
            }
            if problems.is_empty() {
                (
                    Outcome::Pass,
                    format!("S3 not Lie nilpotent at 2, 3, 5, 7; {abelian} abelian cases give 2"),
                )
            } else {
                (Outcome::Fail, problems.join("; "))
            }
        })
    }

    /// Replacing `⌈m/p⌉` by `⌊m/p⌋` must be caught by the route comparison.
    pub fn mutation(&self) -> CriterionResult {
        Self::timed("M", "floor mutation detected", || {
            let mut caught = Vec::new();
            for (name, g) in self.lie_nilpotent(2, 64) {
                let (Ok(bad), Ok(prod)) = (
                    series_recursive_with(g, 2, Rounding::Floor),
                    series_product(g, 2),
                ) else {
                    caught.push(name.to_string());
                    continue;
                };
                if !bad.same_terms(&prod) {
                    caught.push(name.to_string());
                }
            }
            if caught.is_empty() {
                (
                    Outcome::Fail,
                    "no p=2 group distinguishes the mutation".into(),
                )
            } else {
                (
                    Outcome::Pass,
                    format!("route mismatch on {}", caught.join(" ")),
                )
            }
        })
    }
}

fn within(r: &mut CriterionResult, budget: Duration) {
    if r.elapsed > budget && r.outcome != Outcome::Fail {
        r.outcome = Outcome::Fail;
        r.detail = format!("{} (over the {budget:?} budget)", r.detail);
    }
}

/// Runs every criterion with the given options.
pub fn run_all(opts: AcceptanceOptions) -> Vec<CriterionResult> {
    Suite::new(opts).run_all()
}
