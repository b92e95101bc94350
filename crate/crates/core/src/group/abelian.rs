use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GroupError, Result, Subgroup};

/// Isomorphism type of a finite abelian group as a non-increasing list of
/// prime-power cyclic orders. The trivial group has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianType(Vec<u64>);

impl AbelianType {
    /// Validates and sorts a list of prime-power factors.
    pub fn new(mut factors: Vec<u64>) -> Result<Self> {
        for &f in &factors {
            if prime_power_base(f).is_none() {
                return Err(GroupError::InvalidParameter(format!(
                    "{f} is not a prime power > 1"
                )));
            }
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        Ok(AbelianType(factors))
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        // cyclic iff the prime bases are pairwise distinct
        let mut bases: Vec<u64> = self.0.iter().filter_map(|&f| prime_power_base(f)).collect();
        let len = bases.len();
        bases.sort_unstable();
        bases.dedup();
        bases.len() == len
    }

    /// Elementary abelian of order `p^rank`.
    pub fn is_elementary(&self, p: u64, rank: usize) -> bool {
        self.0.len() == rank && self.0.iter().all(|&f| f == p)
    }

    /// Reads the type off the counts `|{x : x^(p^k) = 1}|` of each Sylow
    /// component.
    pub fn of_subgroup(h: &Subgroup<'_>) -> Result<Self> {
        if !h.is_abelian() {
            return Err(GroupError::NotAbelian);
        }
        let g = h.group();
        let orders: Vec<u64> = h
            .members()
            .iter()
            .map(|&x| g.element_order(x) as u64)
            .collect();
        Ok(Self::from_element_orders(&orders))
    }

    /// Type of an abelian group given the multiset of its element orders.
    pub fn from_element_orders(orders: &[u64]) -> Self {
        let n = orders.len() as u64;
        let mut factors = Vec::new();
        for p in prime_factors(n) {
            // omega[k] = log_p |{x in Sylow_p : x^(p^k) = 1}|
            let mut omega = vec![0u32];
            let mut pk = 1u64;
            loop {
                pk *= p;
                let count = orders
                    .iter()
                    .filter(|&&o| pk.is_multiple_of(o) && crate::group::subgroup::is_power_of(o, p))
                    .count() as u64;
                let log = ilog(count, p);
                omega.push(log);
                if log == *omega.iter().rev().nth(1).unwrap() {
                    omega.pop();
                    break;
                }
            }
            // number of cyclic factors of order at least p^k is omega[k] - omega[k-1]
            let at_least: Vec<u32> = omega.windows(2).map(|w| w[1] - w[0]).collect();
            for k in 1..=at_least.len() {
                let here = at_least[k - 1];
                let next = at_least.get(k).copied().unwrap_or(0);
                for _ in 0..(here - next) {
                    factors.push(p.pow(k as u32));
                }
            }
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        AbelianType(factors)
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|x| format!("C{x}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime `p` when `q = p^k` with `k >= 1`.
pub(crate) fn prime_power_base(q: u64) -> Option<u64> {
    let ps = prime_factors(q);
    if ps.len() == 1 {
        Some(ps[0])
    } else {
        None
    }
}
