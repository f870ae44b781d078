//! Backtracking search for homomorphisms with prescribed generator fibers.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::hom::extend_on_generators;
use crate::{Cover, FiniteGroup, GroupHom};

/// Depth-first search over images of the source's generators.
///
/// Candidates are tried in the given order, so results are deterministic.
/// Each partial assignment is checked for consistency on the subgroup its
/// generators span before the search descends.
pub struct HomSearch<'a> {
    source: &'a Arc<FiniteGroup>,
    target: &'a Arc<FiniteGroup>,
    candidates: Vec<Vec<u32>>,
    injective: bool,
}

impl<'a> HomSearch<'a> {
    /// `candidates[i]` lists the allowed images of `source.generators()[i]`.
    /// Images whose order does not divide the generator's order are dropped.
    pub fn new(source: &'a Arc<FiniteGroup>, target: &'a Arc<FiniteGroup>, candidates: Vec<Vec<u32>>) -> Self {
        let candidates = source
            .generators()
            .iter()
            .zip(candidates)
            .map(|(&g, cands)| {
                let k = source.element_order(g);
                cands.into_iter().filter(|&t| k % target.element_order(t) == 0).collect()
            })
            .collect();
        HomSearch { source, target, candidates, injective: false }
    }

    /// Candidates for each generator: every target element lying over the
    /// generator's image under `base_src`, read through `base_tgt`.
    pub fn over(
        source: &'a Arc<FiniteGroup>,
        target: &'a Arc<FiniteGroup>,
        base_src: impl Fn(u32) -> u32,
        base_tgt: impl Fn(u32) -> u32,
    ) -> Self {
        let candidates = source
            .generators()
            .iter()
            .map(|&g| {
                let want = base_src(g);
                target.elements().filter(|&t| base_tgt(t) == want).collect()
            })
            .collect();
        Self::new(source, target, candidates)
    }

    /// Restricts to injective maps, pruning partial assignments early.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        let src = self.source;
        let tgt = self.target;
        for (cands, &g) in self.candidates.iter_mut().zip(src.generators()) {
            cands.retain(|&t| tgt.element_order(t) == src.element_order(g));
        }
        self
    }

    /// The first homomorphism accepted by `accept`.
    pub fn find(&self, mut accept: impl FnMut(&[u32]) -> bool) -> Option<GroupHom> {
        let gens = self.source.generators();
        if gens.is_empty() {
            let table = vec![0; self.source.order()];
            return accept(&table).then(|| GroupHom::new_unchecked(self.source.clone(), self.target.clone(), table));
        }
        let mut chosen = Vec::with_capacity(gens.len());
        self.descend(&mut chosen, &mut accept)
            .map(|table| GroupHom::new_unchecked(self.source.clone(), self.target.clone(), table))
    }

    fn descend(&self, chosen: &mut Vec<u32>, accept: &mut impl FnMut(&[u32]) -> bool) -> Option<Vec<u32>> {
        let gens = self.source.generators();
        let level = chosen.len();
        for &t in &self.candidates[level] {
            chosen.push(t);
            if level + 1 == gens.len() {
                if let Some(table) = extend_on_generators(self.source, self.target, gens, chosen) {
                    if (!self.injective || is_injective(&table, self.target.order())) && accept(&table) {
                        return Some(table);
                    }
                }
            } else if self.consistent_prefix(chosen) {
                if let Some(found) = self.descend(chosen, accept) {
                    return Some(found);
                }
            }
            chosen.pop();
        }
        None
    }

    /// Whether the partial assignment extends to a homomorphism on the
    /// subgroup spanned by the assigned generators.
    fn consistent_prefix(&self, images: &[u32]) -> bool {
        const UNSET: u32 = u32::MAX;
        let (src, tgt) = (self.source, self.target);
        let gens = &src.generators()[..images.len()];
        let mut map = vec![UNSET; src.order()];
        let mut hit = vec![false; if self.injective { tgt.order() } else { 0 }];
        map[0] = 0;
        if self.injective {
            hit[0] = true;
        }
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&g, &t) in gens.iter().zip(images) {
                let y = src.mul(x, g);
                let ty = tgt.mul(map[x as usize], t);
                match map[y as usize] {
                    UNSET => {
                        if self.injective {
                            if hit[ty as usize] {
                                return false;
                            }
                            hit[ty as usize] = true;
                        }
                        map[y as usize] = ty;
                        queue.push(y);
                    }
                    v if v != ty => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

fn is_injective(table: &[u32], target_order: usize) -> bool {
    let mut hit = vec![false; target_order];
    table.iter().all(|&y| !core::mem::replace(&mut hit[y as usize], true))
}

fn is_surjective(table: &[u32], target_order: usize) -> bool {
    let mut hit = vec![false; target_order];
    let mut count = 0;
    for &y in table {
        if !core::mem::replace(&mut hit[y as usize], true) {
            count += 1;
        }
    }
    count == target_order
}

/// An isomorphism `θ: H → H'` with `π' ∘ θ = π`, if any.
pub fn find_isomorphism_over(pi: &Cover, pi2: &Cover) -> Option<GroupHom> {
    if pi.source().order() != pi2.source().order() || pi.target().order() != pi2.target().order() {
        return None;
    }
    HomSearch::over(pi.source(), pi2.source(), |h| pi.apply(h), |h| pi2.apply(h)).injective().find(|_| true)
}

/// An epimorphism `ψ: H ↠ H'` with `τ' ∘ ψ = τ`, if any.
pub fn find_epimorphism_over(tau: &Cover, tau2: &Cover) -> Option<GroupHom> {
    if tau.source().order() % tau2.source().order() != 0 {
        return None;
    }
    let n = tau2.source().order();
    HomSearch::over(tau.source(), tau2.source(), |h| tau.apply(h), |h| tau2.apply(h))
        .find(|table| is_surjective(table, n))
}

/// An epimorphism between two groups with no base constraint, if any.
pub fn find_epimorphism(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Option<GroupHom> {
    if source.order() % target.order() != 0 {
        return None;
    }
    let n = target.order();
    HomSearch::over(source, target, |_| 0, |_| 0).find(|table| is_surjective(table, n))
}

/// An isomorphism between two groups with no base constraint, if any.
pub fn find_isomorphism(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Option<GroupHom> {
    if source.order() != target.order() {
        return None;
    }
    HomSearch::over(source, target, |_| 0, |_| 0).injective().find(|_| true)
}

pub(crate) fn table_is_surjective(table: &[u32], target_order: usize) -> bool {
    is_surjective(table, target_order)
}
