//! Conjugacy classes, normal subgroups and the subgroup lattice.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::{BitSet, Cover, Error, FiniteGroup, Result, Subgroup};

/// Conjugacy classes, each sorted, listed by least element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<u32>> {
    let mut seen = BitSet::new(g.order());
    let mut classes = Vec::new();
    for x in g.elements() {
        if seen.contains(x as usize) {
            continue;
        }
        let class = conjugacy_class(g, x);
        for &y in &class {
            seen.insert(y as usize);
        }
        classes.push(class);
    }
    classes
}

pub fn conjugacy_class(g: &FiniteGroup, x: u32) -> Vec<u32> {
    let set = BitSet::from_indices(g.order(), g.elements().map(|s| g.conj(s, x) as usize));
    set.iter().map(|y| y as u32).collect()
}

/// Smallest normal subgroup containing `elems`.
pub fn normal_closure(g: &Arc<FiniteGroup>, elems: &[u32]) -> Subgroup {
    let mut gens = Vec::new();
    for &x in elems {
        gens.extend(conjugacy_class(g, x));
    }
    gens.sort_unstable();
    gens.dedup();
    Subgroup::generated(g, &gens)
}

/// Normal subgroups of the parent of `m` contained in `m`, canonically sorted.
fn normal_inside(m: &Subgroup) -> Vec<Subgroup> {
    let g = m.parent();
    let mut closures: Vec<Subgroup> = Vec::new();
    let mut seen = BitSet::new(g.order());
    for &x in m.elements().iter().skip(1) {
        if seen.contains(x as usize) {
            continue;
        }
        for y in conjugacy_class(g, x) {
            seen.insert(y as usize);
        }
        let n = normal_closure(g, &[x]);
        if !closures.contains(&n) {
            closures.push(n);
        }
    }
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    let trivial = Subgroup::trivial(g);
    found.insert(trivial.clone());
    let mut work = vec![trivial];
    while let Some(n) = work.pop() {
        for c in &closures {
            if c.is_subgroup_of(&n) {
                continue;
            }
            let joined = n.join(c);
            if !found.contains(&joined) {
                found.insert(joined.clone());
                work.push(joined);
            }
        }
    }
    found.into_iter().collect()
}

/// All normal subgroups, each once, sorted by order then elements.
pub fn normal_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    normal_inside(&Subgroup::whole(g))
}

/// Normal subgroups of the ambient group lying inside the normal subgroup `m`.
pub fn normal_subgroups_within(m: &Subgroup) -> Result<Vec<Subgroup>> {
    if !m.is_normal() {
        return Err(Error::NotNormal);
    }
    Ok(normal_inside(m))
}

/// All subgroups by cyclic extension, sorted by order then elements.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut cyclic_gens: Vec<u32> = Vec::new();
    let mut cyclic: BTreeSet<BitSet> = BTreeSet::new();
    for x in g.elements().skip(1) {
        if cyclic.insert(g.closure(&[x])) {
            cyclic_gens.push(x);
        }
    }
    let mut found: BTreeSet<BitSet> = BTreeSet::new();
    let trivial = g.closure(&[]);
    found.insert(trivial.clone());
    let mut layer = vec![(trivial, Vec::<u32>::new())];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (members, gens) in &layer {
            for &x in &cyclic_gens {
                if members.contains(x as usize) {
                    continue;
                }
                let mut ext = gens.clone();
                ext.push(x);
                let span = g.closure(&ext);
                if found.insert(span.clone()) {
                    next.push((span, ext));
                }
            }
        }
        layer = next;
    }
    let mut subs: Vec<Subgroup> = found.into_iter().map(|m| Subgroup::from_members(g.clone(), m)).collect();
    subs.sort();
    subs
}

fn maximal_among(strict: Vec<Subgroup>) -> Vec<Subgroup> {
    strict.iter().filter(|n| !strict.iter().any(|l| l.order() > n.order() && n.is_subgroup_of(l))).cloned().collect()
}

/// The maximal normal subgroups of the ambient group strictly inside `m`.
pub fn maximal_normal_in(m: &Subgroup) -> Result<Vec<Subgroup>> {
    let inside = normal_subgroups_within(m)?;
    Ok(maximal_normal_from(&inside, m))
}

/// Same as [`maximal_normal_in`], reading from a precomputed list of normal subgroups.
pub(crate) fn maximal_normal_from(normals: &[Subgroup], m: &Subgroup) -> Vec<Subgroup> {
    let strict = normals.iter().filter(|n| n.order() < m.order() && n.is_subgroup_of(m)).cloned().collect();
    maximal_among(strict)
}

/// Whether `m` is a minimal normal subgroup of its parent.
pub fn is_minimal_normal(m: &Subgroup) -> Result<bool> {
    if !m.is_normal() {
        return Err(Error::NotNormal);
    }
    Ok(minimal_normal_unchecked(m))
}

fn minimal_normal_unchecked(m: &Subgroup) -> bool {
    if m.is_trivial() {
        return false;
    }
    let g = m.parent();
    let mut seen = BitSet::new(g.order());
    for &x in m.elements().iter().skip(1) {
        if seen.contains(x as usize) {
            continue;
        }
        for y in conjugacy_class(g, x) {
            seen.insert(y as usize);
        }
        if normal_closure(g, &[x]).order() != m.order() {
            return false;
        }
    }
    true
}

pub fn minimal_normal_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    normal_subgroups(g).into_iter().filter(minimal_normal_unchecked).collect()
}

/// Whether the kernel of the cover is a minimal normal subgroup of its source.
pub fn is_indecomposable(pi: &Cover) -> bool {
    minimal_normal_unchecked(pi.kernel())
}

/// Whether the group has no normal subgroups besides 1 and itself.
pub fn is_simple_group(g: &Arc<FiniteGroup>) -> bool {
    g.order() > 1 && minimal_normal_unchecked(&Subgroup::whole(g))
}
