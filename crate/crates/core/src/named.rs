//! Small standard groups built from permutation generators.

use alloc::vec::Vec;

use crate::{build_group, FiniteGroup, DEFAULT_ORDER_CAP};

/// Image array of a product of disjoint cycles on `1..=degree` (1-based points).
pub fn perm_from_cycles(degree: usize, cycles: &[&[u32]]) -> Vec<u32> {
    let mut p: Vec<u32> = (0..degree as u32).collect();
    for c in cycles {
        for k in 0..c.len() {
            p[c[k] as usize - 1] = c[(k + 1) % c.len()] - 1;
        }
    }
    p
}

fn from_perms(perms: &[Vec<u32>]) -> FiniteGroup {
    build_group(perms, &[], DEFAULT_ORDER_CAP).expect("standard group within the cap")
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n < 2 {
        return FiniteGroup::trivial();
    }
    let cycle: Vec<u32> = (1..=n as u32).collect();
    from_perms(&[perm_from_cycles(n, &[&[1, 2]]), perm_from_cycles(n, &[&cycle])])
}

pub fn alternating(n: usize) -> FiniteGroup {
    if n < 3 {
        return FiniteGroup::trivial();
    }
    let gens: Vec<Vec<u32>> = (3..=n as u32).map(|k| perm_from_cycles(n, &[&[1, 2, k]])).collect();
    from_perms(&gens)
}

/// Dihedral group of order `2m`.
pub fn dihedral(m: usize) -> FiniteGroup {
    let rot: Vec<u32> = (0..m as u32).map(|i| (i + 1) % m as u32).collect();
    let refl: Vec<u32> = (0..m as u32).map(|i| (m as u32 - i) % m as u32).collect();
    from_perms(&[rot, refl])
}

pub fn quaternion() -> FiniteGroup {
    from_perms(&[
        perm_from_cycles(8, &[&[1, 2, 4, 7], &[3, 6, 8, 5]]),
        perm_from_cycles(8, &[&[1, 3, 4, 8], &[2, 5, 7, 6]]),
    ])
}

/// `(C_p)^k` as disjoint `p`-cycles.
pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
    let degree = p * k;
    let gens: Vec<Vec<u32>> = (0..k)
        .map(|j| {
            let cycle: Vec<u32> = (1..=p as u32).map(|i| (j * p) as u32 + i).collect();
            perm_from_cycles(degree, &[&cycle])
        })
        .collect();
    if gens.is_empty() {
        return FiniteGroup::trivial();
    }
    from_perms(&gens)
}

/// Direct product `C_{n_1} × … × C_{n_k}` on disjoint cycles.
pub fn abelian(orders: &[usize]) -> FiniteGroup {
    let degree: usize = orders.iter().sum();
    let mut offset = 0u32;
    let mut gens = Vec::new();
    for &n in orders {
        let cycle: Vec<u32> = (1..=n as u32).map(|i| offset + i).collect();
        gens.push(perm_from_cycles(degree, &[&cycle]));
        offset += n as u32;
    }
    if gens.is_empty() {
        return FiniteGroup::trivial();
    }
    from_perms(&gens)
}

/// Direct product of two table groups; element `(a, b)` has index `a·|B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n as u32 {
        let (xa, xb) = (x / nb as u32, x % nb as u32);
        for y in 0..n as u32 {
            let (ya, yb) = (y / nb as u32, y % nb as u32);
            mul.push(a.mul(xa, ya) * nb as u32 + b.mul(xb, yb));
        }
    }
    FiniteGroup::from_table_unchecked(n, mul)
}
