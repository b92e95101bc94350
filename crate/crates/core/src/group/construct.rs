//! Standard constructions: cyclic, dihedral, quaternion, Heisenberg,
//! direct and semidirect products, and cyclic wreath products.

use std::collections::HashMap;

use super::{FiniteGroup, GroupError, PermBacking, Permutation, Result, TABLE_MAX};

fn table_from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let mut flat = vec![0u32; order * order];
    for a in 0..order {
        for b in 0..order {
            flat[a * order + b] = f(a, b) as u32;
        }
    }
    FiniteGroup::from_trusted_table(order, flat)
}

pub fn trivial() -> FiniteGroup {
    table_from_fn(1, |_, _| 0)
}

/// `C_n`; element `k` is `a^k`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > TABLE_MAX {
        return Err(GroupError::InvalidParameter(format!("cyclic order {n}")));
    }
    Ok(table_from_fn(n, |a, b| (a + b) % n).with_generators(vec![1 % n]))
}

/// Dihedral group of the given (even) order `2m`; element `i + m*e` is
/// `a^i b^e` with `a^m = b^2 = 1` and `a^b = a^-1`.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || !order.is_multiple_of(2) || order > TABLE_MAX {
        return Err(GroupError::InvalidParameter(format!(
            "dihedral order {order}"
        )));
    }
    let m = order / 2;
    let g = table_from_fn(order, |x, y| {
        let (i, e) = (x % m, x / m);
        let (j, f) = (y % m, y / m);
        let k = if e == 0 { (i + j) % m } else { (i + m - j) % m };
        k + m * ((e + f) % 2)
    });
    Ok(if m > 1 {
        g.with_generators(vec![1, m])
    } else {
        g
    })
}

/// Quaternion group of order 8; element `i + 4*e` is `a^i b^e` with
/// `a^4 = 1`, `b^2 = a^2`, `a^b = a^-1`.
pub fn quaternion8() -> Result<FiniteGroup> {
    let g = table_from_fn(8, |x, y| {
        let (i, e) = (x % 4, x / 4);
        let (j, f) = (y % 4, y / 4);
        let mut k = if e == 0 { (i + j) % 4 } else { (i + 4 - j) % 4 };
        let mut b = e + f;
        if b == 2 {
            k = (k + 2) % 4;
            b = 0;
        }
        k + 4 * b
    });
    Ok(g.with_generators(vec![1, 4]))
}

/// Extraspecial group of order `p^3` and exponent `p` (odd `p`), realised
/// as upper unitriangular 3x3 matrices over `GF(p)`. Element
/// `x + p*y + p^2*z` is the matrix with entries `(x, y, z)` above the
/// diagonal at positions (1,2), (2,3), (1,3).
pub fn extraspecial(p: usize) -> Result<FiniteGroup> {
    if p < 3 || !super::abelian::prime_factors(p as u64).eq(&[p as u64]) {
        return Err(GroupError::InvalidParameter(format!(
            "extraspecial exponent-p group needs an odd prime, got {p}"
        )));
    }
    let n = p * p * p;
    if n > TABLE_MAX {
        return Err(GroupError::InvalidParameter(format!("order {n} too large")));
    }
    let g = table_from_fn(n, |a, b| {
        let (x1, y1, z1) = (a % p, (a / p) % p, a / (p * p));
        let (x2, y2, z2) = (b % p, (b / p) % p, b / (p * p));
        let x = (x1 + x2) % p;
        let y = (y1 + y2) % p;
        let z = (z1 + z2 + x1 * y2) % p;
        x + p * y + p * p * z
    });
    Ok(g.with_generators(vec![1, p]))
}

/// Direct product with element `(i, j)` at index `i * |b| + j`.
///
/// Table-backed when the product order is at most [`TABLE_MAX`]; otherwise
/// the factors act on disjoint point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na.checked_mul(nb).ok_or(GroupError::CapExceeded { cap })?;
    if n > cap {
        return Err(GroupError::CapExceeded { cap });
    }
    let mut gens: Vec<usize> = a.generators().iter().map(|&x| x * nb).collect();
    gens.extend(b.generators().iter().copied());

    if n <= TABLE_MAX {
        let g = table_from_fn(n, |x, y| {
            let (i1, j1) = (x / nb, x % nb);
            let (i2, j2) = (y / nb, y % nb);
            a.mul(i1, i2) * nb + b.mul(j1, j2)
        });
        return Ok(g.with_generators(gens));
    }

    let (da, db) = (a.permutation_degree(), b.permutation_degree());
    let degree = da + db;
    let perms_a: Vec<Permutation> = (0..na).map(|i| a.as_permutation(i)).collect();
    let perms_b: Vec<Permutation> = (0..nb).map(|j| b.as_permutation(j)).collect();
    let mut points = Vec::with_capacity(n * degree);
    let mut index = HashMap::with_capacity(n);
    for (i, pa) in perms_a.iter().enumerate() {
        for (j, pb) in perms_b.iter().enumerate() {
            let mut img: Vec<u32> = pa.images().to_vec();
            img.extend(pb.images().iter().map(|&x| x + da as u32));
            points.extend_from_slice(&img);
            index.insert(img.into_boxed_slice(), (i * nb + j) as u32);
        }
    }
    let backing = PermBacking {
        degree,
        points,
        index,
    };
    Ok(FiniteGroup::from_perm_backing(backing, n, gens))
}

/// Semidirect product `n ⋊ h` with multiplication
/// `(n1, h1)(n2, h2) = (n1 * act(h1)(n2), h1 h2)`.
///
/// `action[x]` lists the images of the elements of `n` under the
/// automorphism attached to element `x` of `h`. Elements are indexed like
/// [`direct_product`]: `(i, j)` sits at `i * |h| + j`.
pub fn semidirect_product(
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteGroup> {
    let (nn, nh) = (n.order(), h.order());
    if action.len() != nh {
        return Err(GroupError::InvalidParameter(format!(
            "action has {} entries for a group of order {nh}",
            action.len()
        )));
    }
    for (x, phi) in action.iter().enumerate() {
        check_automorphism(n, phi).map_err(|_| GroupError::NotAutomorphism(x))?;
    }
    // act(x y) = act(x) ∘ act(y)
    for x in 0..nh {
        for y in 0..nh {
            let xy = h.mul(x, y);
            if (0..nn).any(|v| action[xy][v] != action[x][action[y][v]]) {
                return Err(GroupError::NotHomomorphism(x, y));
            }
        }
    }
    let order = nn * nh;
    if order > cap.min(TABLE_MAX) {
        return Err(GroupError::CapExceeded {
            cap: cap.min(TABLE_MAX),
        });
    }
    let g = table_from_fn(order, |a, b| {
        let (n1, h1) = (a / nh, a % nh);
        let (n2, h2) = (b / nh, b % nh);
        n.mul(n1, action[h1][n2]) * nh + h.mul(h1, h2)
    });
    let mut gens: Vec<usize> = n.generators().iter().map(|&x| x * nh).collect();
    gens.extend(h.generators().iter().copied());
    Ok(g.with_generators(gens))
}

fn check_automorphism(n: &FiniteGroup, phi: &[usize]) -> Result<()> {
    let order = n.order();
    if phi.len() != order {
        return Err(GroupError::NotAutomorphism(0));
    }
    let mut seen = vec![false; order];
    for &y in phi {
        if y >= order || seen[y] {
            return Err(GroupError::NotAutomorphism(0));
        }
        seen[y] = true;
    }
    for a in 0..order {
        for b in 0..order {
            if phi[n.mul(a, b)] != n.mul(phi[a], phi[b]) {
                return Err(GroupError::NotAutomorphism(0));
            }
        }
    }
    Ok(())
}

/// Extends automorphisms given on generators of `h` to a full action map
/// `element of h -> images of elements of n`, failing if the assignment is
/// not a homomorphism or the generators miss part of `h`.
pub fn extend_action(
    n: &FiniteGroup,
    h: &FiniteGroup,
    generator_images: &[(usize, Vec<usize>)],
) -> Result<Vec<Vec<usize>>> {
    for (x, phi) in generator_images {
        if *x >= h.order() {
            return Err(GroupError::InvalidParameter(format!(
                "no element {x} in acting group"
            )));
        }
        check_automorphism(n, phi).map_err(|_| GroupError::NotAutomorphism(*x))?;
    }
    let identity: Vec<usize> = (0..n.order()).collect();
    let mut action: Vec<Option<Vec<usize>>> = vec![None; h.order()];
    action[0] = Some(identity);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (s, phi_s) in generator_images {
            let y = h.mul(x, *s);
            let phi_x = action[x].as_ref().expect("visited");
            let composed: Vec<usize> = (0..n.order()).map(|v| phi_x[phi_s[v]]).collect();
            match &action[y] {
                Some(existing) if *existing != composed => {
                    return Err(GroupError::NotHomomorphism(x, *s));
                }
                Some(_) => {}
                None => {
                    action[y] = Some(composed);
                    queue.push(y);
                }
            }
        }
    }
    action
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(GroupError::IncompleteAction)
}

/// `C_p ≀ C_q`: the base `(C_p)^q` on `q` blocks of `p` points, extended
/// by the cyclic shift of blocks.
pub fn wreath_cyclic(p: usize, q: usize, cap: usize) -> Result<FiniteGroup> {
    if p == 0 || q == 0 {
        return Err(GroupError::InvalidParameter(
            "wreath factors must be positive".into(),
        ));
    }
    let degree = p * q;
    let base_cycle: Vec<usize> = (0..degree)
        .map(|x| if x < p { (x + 1) % p } else { x })
        .collect();
    let shift: Vec<usize> = (0..degree).map(|x| (x + p) % degree).collect();
    let gens = [
        Permutation::from_images(base_cycle)?,
        Permutation::from_images(shift)?,
    ];
    FiniteGroup::from_permutation_generators(degree, &gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{lower_central_series, nilpotency_class, Subgroup, DEFAULT_ORDER_CAP};

    fn orders(g: &FiniteGroup) -> Vec<usize> {
        let mut o: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
        o.sort_unstable();
        o
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion8().unwrap();
        assert_eq!(orders(&q).iter().filter(|&&o| o == 2).count(), 1);
        let d = dihedral(8).unwrap();
        assert_eq!(orders(&d).iter().filter(|&&o| o == 2).count(), 5);
    }

    #[test]
    fn heisenberg_exponent_p() {
        let h = extraspecial(3).unwrap();
        assert_eq!(h.order(), 27);
        assert!((1..27).all(|x| h.element_order(x) == 3));
        assert!(!h.is_abelian());
        assert!(extraspecial(2).is_err());
        assert!(extraspecial(9).is_err());
    }

    #[test]
    fn direct_product_with_trivial() {
        let a = dihedral(8).unwrap();
        let p = direct_product(&a, &trivial(), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(orders(&p), orders(&a));
        let dd = direct_product(&a, &a, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(dd.order(), 64);
        assert!(matches!(
            direct_product(&dd, &dd, 1000),
            Err(GroupError::CapExceeded { cap: 1000 })
        ));
    }

    #[test]
    fn d8_squared_derived_type() {
        let a = dihedral(8).unwrap();
        let dd = direct_product(&a, &a, DEFAULT_ORDER_CAP).unwrap();
        let g2 = Subgroup::whole(&dd).commutator_subgroup();
        assert_eq!(g2.abelian_invariants().unwrap().factors(), &[2, 2]);
    }

    #[test]
    fn trivial_action_matches_direct_product() {
        let n = cyclic(4).unwrap();
        let h = dihedral(6).unwrap();
        let id: Vec<usize> = (0..4).collect();
        let action = vec![id; 6];
        let s = semidirect_product(&n, &h, &action, DEFAULT_ORDER_CAP).unwrap();
        let d = direct_product(&n, &h, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(s.table_rows(), d.table_rows());
    }

    fn shift_action(p: usize, q: usize) -> (FiniteGroup, FiniteGroup, Vec<Vec<usize>>) {
        // base (C_p)^q with element sum c_k p^k; C_q acts by cyclic shift
        let mut base = cyclic(p).unwrap();
        for _ in 1..q {
            base = direct_product(&base, &cyclic(p).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        }
        // direct_product nests left factors in higher digits: (((c0, c1), c2), ...)
        // index = c0 p^(q-1) + c1 p^(q-2) + ... + c_{q-1}
        let digits = |x: usize| -> Vec<usize> {
            let mut d = vec![0; q];
            let mut x = x;
            for k in (0..q).rev() {
                d[k] = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().fold(0, |acc, &c| acc * p + c);
        let top = cyclic(q).unwrap();
        let shift: Vec<usize> = (0..base.order())
            .map(|x| {
                let d = digits(x);
                let rotated: Vec<usize> = (0..q).map(|k| d[(k + q - 1) % q]).collect();
                undigits(&rotated)
            })
            .collect();
        let action = extend_action(&base, &top, &[(1, shift)]).unwrap();
        (base, top, action)
    }

    #[test]
    fn c2_wreath_c4_as_semidirect() {
        let (base, top, action) = shift_action(2, 4);
        let w = semidirect_product(&base, &top, &action, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(w.order(), 64);
        assert_eq!(nilpotency_class(&w).unwrap(), 4);
        let via_perm = wreath_cyclic(2, 4, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(via_perm.order(), 64);
        assert_eq!(orders(&w), orders(&via_perm));
        let series: Vec<usize> = lower_central_series(&via_perm)
            .iter()
            .map(|s| s.order())
            .collect();
        assert_eq!(series, vec![64, 8, 4, 2, 1]);
    }

    #[test]
    fn c3_wreath_c3_class_three() {
        let (base, top, action) = shift_action(3, 3);
        let w = semidirect_product(&base, &top, &action, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(w.order(), 81);
        assert_eq!(nilpotency_class(&w).unwrap(), 3);
        assert_eq!(
            nilpotency_class(&wreath_cyclic(3, 3, DEFAULT_ORDER_CAP).unwrap()).unwrap(),
            3
        );
    }

    #[test]
    fn bad_actions() {
        let n = cyclic(4).unwrap();
        let h = cyclic(2).unwrap();
        // not a bijection
        let bad = vec![(0..4).collect(), vec![0, 0, 0, 0]];
        assert_eq!(
            semidirect_product(&n, &h, &bad, DEFAULT_ORDER_CAP).unwrap_err(),
            GroupError::NotAutomorphism(1)
        );
        // C3 can only act trivially on C4
        let h3 = cyclic(3).unwrap();
        let inv = vec![0, 3, 2, 1];
        let bad_hom = vec![(0..4).collect(), inv.clone(), inv];
        assert!(matches!(
            semidirect_product(&n, &h3, &bad_hom, DEFAULT_ORDER_CAP),
            Err(GroupError::NotHomomorphism(..))
        ));
        assert!(matches!(
            extend_action(&n, &h3, &[(1, vec![0, 3, 2, 1])]),
            Err(GroupError::NotHomomorphism(..))
        ));
        assert_eq!(
            extend_action(&n, &h3, &[]).unwrap_err(),
            GroupError::IncompleteAction
        );
    }

    #[test]
    fn large_direct_product_uses_permutations() {
        let h = extraspecial(5).unwrap();
        let hh = direct_product(&h, &h, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(hh.order(), 15625);
        assert_eq!(hh.backing_name(), "permutation");
        // spot-check the pairing order against the factors
        let (x, y) = (7 * 125 + 33, 91 * 125 + 2);
        assert_eq!(hh.mul(x, y), h.mul(7, 91) * 125 + h.mul(33, 2));
        assert_eq!(hh.mul(x, hh.inv(x)), 0);
    }

    #[test]
    fn large_wreath_uses_permutations() {
        let w = wreath_cyclic(5, 5, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(w.order(), 15625);
        assert_eq!(w.backing_name(), "permutation");
        assert_eq!(nilpotency_class(&w).unwrap(), 5);
    }
}
