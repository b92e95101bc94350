use super::{FiniteGroup, GroupError, Result, Subgroup, TABLE_MAX};

/// `[γ1 = G, γ2, ...]` until the series stabilises. The repeated final
/// term is not duplicated, so a nilpotent group ends with `{1}`.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup<'_>> {
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let last = series.last().expect("non-empty");
        if last.is_trivial() {
            break;
        }
        let next = last.commutator_subgroup();
        if next.order() == last.order() {
            break;
        }
        series.push(next);
    }
    series
}

/// Smallest `c` with `γ_{c+1} = {1}`.
pub fn nilpotency_class(g: &FiniteGroup) -> Result<usize> {
    let series = lower_central_series(g);
    if series.last().expect("non-empty").is_trivial() {
        Ok(series.len() - 1)
    } else {
        Err(GroupError::NotNilpotent)
    }
}

pub fn center(g: &FiniteGroup) -> Subgroup<'_> {
    let central: Vec<usize> = (0..g.order())
        .filter(|&z| g.generators().iter().all(|&t| g.mul(z, t) == g.mul(t, z)))
        .collect();
    Subgroup::generated(g, &central)
}

/// A quotient group together with the projection from the parent.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset index of parent element `x`.
    pub projection: Vec<usize>,
    /// `representatives[c]` is the smallest parent index in coset `c`.
    pub representatives: Vec<usize>,
}

impl Quotient {
    /// Image of a parent subgroup in the quotient.
    pub fn image<'q>(&'q self, h: &Subgroup<'_>) -> Subgroup<'q> {
        let imgs: Vec<usize> = h.generators().iter().map(|&x| self.projection[x]).collect();
        Subgroup::generated(&self.group, &imgs)
    }
}

/// `G/N` with table backing. Cosets are numbered in order of their
/// smallest element, so the identity coset is 0.
pub fn quotient(g: &FiniteGroup, n: &Subgroup<'_>) -> Result<Quotient> {
    if !std::ptr::eq(n.group(), g) {
        return Err(GroupError::ParentMismatch);
    }
    n.check_normal()?;
    let index = g.order() / n.order();
    if index > TABLE_MAX {
        return Err(GroupError::CapExceeded { cap: TABLE_MAX });
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut representatives = Vec::with_capacity(index);
    for x in 0..g.order() {
        if projection[x] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(x);
        for &m in n.members() {
            projection[g.mul(x, m)] = c;
        }
    }
    let mut flat = vec![0u32; index * index];
    for (a, &ra) in representatives.iter().enumerate() {
        for (b, &rb) in representatives.iter().enumerate() {
            flat[a * index + b] = projection[g.mul(ra, rb)] as u32;
        }
    }
    let gens: Vec<usize> = g.generators().iter().map(|&x| projection[x]).collect();
    let group = FiniteGroup::from_trusted_table(index, flat).with_generators(gens);
    Ok(Quotient {
        group,
        projection,
        representatives,
    })
}
