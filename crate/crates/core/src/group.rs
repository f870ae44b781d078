//! Multiplication-table groups and their subgroups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{BitSet, Error, Result};

/// Closure order above which group construction fails.
pub const DEFAULT_ORDER_CAP: usize = 5000;

/// Tables up to this order are checked for associativity on construction.
const ASSOCIATIVITY_CHECK_CAP: usize = 256;

/// A finite group given by its multiplication table. The identity is index 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    generators: Vec<u32>,
    generator_labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

/// Builds the group generated by permutations given as 0-based image arrays.
///
/// Elements are numbered in breadth-first order from the identity, extending
/// each element by the generators in input order. Products compose left to
/// right: `(x*y)(i) = y(x(i))`.
pub fn build_group(perms: &[Vec<u32>], labels: &[String], cap: usize) -> Result<FiniteGroup> {
    let degree = perms.first().map_or(0, Vec::len);
    for (k, p) in perms.iter().enumerate() {
        if p.len() != degree {
            return Err(Error::MalformedPermutation(format!(
                "generator {k} has degree {} instead of {degree}",
                p.len()
            )));
        }
        let mut seen = vec![false; degree];
        for &x in p {
            let x = x as usize;
            if x >= degree || seen[x] {
                return Err(Error::MalformedPermutation(format!("generator {k} is not a bijection")));
            }
            seen[x] = true;
        }
    }
    if !labels.is_empty() && labels.len() != perms.len() {
        return Err(Error::MalformedPermutation("label count differs from generator count".into()));
    }

    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut elements = vec![identity.clone()];
    let mut index = BTreeMap::new();
    index.insert(identity, 0u32);
    // parent[x] = (p, g) with x = elements[p] * perms[g]; right[g][x] = x * perms[g].
    let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
    let mut right = vec![Vec::new(); perms.len()];
    let mut head = 0;
    while head < elements.len() {
        for (g, p) in perms.iter().enumerate() {
            let prod: Vec<u32> = elements[head].iter().map(|&i| p[i as usize]).collect();
            let next = elements.len() as u32;
            let idx = *index.entry(prod.clone()).or_insert(next);
            if idx == next {
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                elements.push(prod);
                parent.push((head as u32, g as u32));
            }
            right[g].push(idx);
        }
        head += 1;
    }

    let n = elements.len();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        mul[a * n] = a as u32;
    }
    for b in 1..n {
        let (pb, g) = parent[b];
        for a in 0..n {
            mul[a * n + b] = right[g as usize][mul[a * n + pb as usize] as usize];
        }
    }

    let generators: Vec<u32> = perms.iter().map(|p| index[p]).collect();
    let labels =
        if labels.is_empty() { (0..perms.len()).map(|k| format!("g{}", k + 1)).collect() } else { labels.to_vec() };
    Ok(FiniteGroup::assemble(n, mul, generators, labels))
}

impl FiniteGroup {
    /// Validates and wraps a row-major multiplication table with identity 0.
    pub fn from_table(order: usize, mul: Vec<u32>) -> Result<Self> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::MalformedTable("table size is not order squared".into()));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::MalformedTable("entry out of range".into()));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::MalformedTable("index 0 is not a two-sided identity".into()));
            }
        }
        for a in 0..order {
            let mut seen = vec![false; order];
            for b in 0..order {
                let c = mul[a * order + b] as usize;
                if seen[c] {
                    return Err(Error::MalformedTable("row is not a permutation".into()));
                }
                seen[c] = true;
            }
        }
        let g = Self::assemble(order, mul, Vec::new(), Vec::new());
        for x in 0..order as u32 {
            if g.mul(g.inv(x), x) != 0 {
                return Err(Error::MalformedTable("left and right inverses differ".into()));
            }
        }
        if order <= ASSOCIATIVITY_CHECK_CAP && !g.is_associative() {
            return Err(Error::MalformedTable("table is not associative".into()));
        }
        Ok(g)
    }

    /// As [`from_table`](Self::from_table), keeping the given labeled
    /// generators; they must be distinct, non-identity and generate the group.
    pub fn from_table_with_generators(
        order: usize,
        mul: Vec<u32>,
        generators: Vec<u32>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let g = Self::from_table(order, mul)?;
        if labels.len() != generators.len() || generators.iter().any(|&x| x as usize >= order) {
            return Err(Error::MalformedTable("generator list does not match its labels".into()));
        }
        let mut distinct = generators.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let generates = g.closure(&generators).count() == order;
        if distinct.len() != generators.len() || distinct.first() == Some(&0) || !generates {
            return Err(Error::MalformedTable("generators are repeated, trivial or do not generate".into()));
        }
        Ok(g.with_generators(generators, labels))
    }

    /// Table constructor for tables that are groups by construction.
    pub(crate) fn from_table_unchecked(order: usize, mul: Vec<u32>) -> Self {
        Self::assemble(order, mul, Vec::new(), Vec::new())
    }

    pub(crate) fn with_generators(mut self, generators: Vec<u32>, labels: Vec<String>) -> Self {
        let mut gens = Vec::new();
        let mut keep = Vec::new();
        for (g, l) in generators.into_iter().zip(labels) {
            if g != 0 && !gens.contains(&g) {
                gens.push(g);
                keep.push(l);
            }
        }
        if self.closure(&gens).count() == self.order {
            self.generators = gens;
            self.generator_labels = keep;
        }
        self
    }

    fn assemble(order: usize, mul: Vec<u32>, generators: Vec<u32>, labels: Vec<String>) -> Self {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            inv[a] = row.iter().position(|&c| c == 0).unwrap_or(0) as u32;
        }
        let mut elem_order = vec![1u32; order];
        for a in 1..order {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mul[x * order + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }
        let mut g = FiniteGroup { order, mul, inv, elem_order, generators, generator_labels: labels };
        if g.generators.is_empty() && order > 1 {
            g.generators = g.greedy_generators();
            g.generator_labels = (0..g.generators.len()).map(|k| format!("x{}", k + 1)).collect();
        }
        g
    }

    /// Exhaustive associativity check.
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul[a * n + b] as usize;
                (0..n).all(|c| self.mul[ab * n + c] == self.mul[a * n + self.mul[b * n + c] as usize])
            })
        })
    }

    pub fn trivial() -> Self {
        Self::assemble(1, vec![0], Vec::new(), Vec::new())
    }

    /// Cyclic group of order `n`, element `k` being the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        let labels = if n > 1 { vec!["c".into()] } else { Vec::new() };
        Self::assemble(n, mul, gens, labels)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: u32, k: u32) -> u32 {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    #[inline]
    pub fn element_order(&self, a: u32) -> u32 {
        self.elem_order[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup closure of `gens` as a membership set.
    pub fn closure(&self, gens: &[u32]) -> BitSet {
        let mut set = BitSet::new(self.order);
        set.insert(0);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y as usize) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// A small generating set of the subgroup with the given members,
    /// preferring elements of large order.
    pub fn generating_set_of(&self, members: &BitSet) -> Vec<u32> {
        let mut cands: Vec<u32> = members.iter().map(|x| x as u32).filter(|&x| x != 0).collect();
        cands.sort_by_key(|&x| (core::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = self.closure(&[]);
        for x in cands {
            if span.count() == members.count() {
                break;
            }
            if !span.contains(x as usize) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn greedy_generators(&self) -> Vec<u32> {
        self.generating_set_of(&BitSet::full(self.order))
    }
}

/// A subgroup, stored as a membership set inside its parent group.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: BitSet,
    elements: Vec<u32>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup").field("elements", &self.elements).finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by size, then by sorted element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.elements.len(), &self.elements).cmp(&(other.elements.len(), &other.elements))
    }
}

impl Subgroup {
    pub(crate) fn from_members(parent: Arc<FiniteGroup>, members: BitSet) -> Self {
        let elements = members.iter().map(|x| x as u32).collect();
        Subgroup { parent, members, elements }
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_members(parent.clone(), BitSet::from_indices(parent.order(), [0]))
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_members(parent.clone(), BitSet::full(parent.order()))
    }

    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[u32]) -> Self {
        Self::from_members(parent.clone(), parent.closure(gens))
    }

    /// Validates that `elements` is closed under multiplication.
    pub fn from_elements(parent: &Arc<FiniteGroup>, elements: &[u32]) -> Result<Self> {
        let n = parent.order();
        if elements.iter().any(|&x| x as usize >= n) {
            return Err(Error::Mismatch("element index out of range"));
        }
        let members = BitSet::from_indices(n, elements.iter().map(|&x| x as usize));
        if !members.contains(0) {
            return Err(Error::Mismatch("subset does not contain the identity"));
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(parent.mul(a as u32, b as u32) as usize) {
                    return Err(Error::Mismatch("subset is not closed under multiplication"));
                }
            }
        }
        Ok(Self::from_members(parent.clone(), members))
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn generators(&self) -> Vec<u32> {
        self.parent.generating_set_of(&self.members)
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        let own = self.generators();
        g.generators().iter().all(|&s| own.iter().all(|&x| self.contains(g.conj(s, x))))
    }

    /// Whether `self` is normalized by every element of `other`.
    pub fn is_normalized_by(&self, other: &Subgroup) -> bool {
        let g = &self.parent;
        let own = self.generators();
        other.generators().iter().all(|&s| own.iter().all(|&x| self.contains(g.conj(s, x))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        let own = self.generators();
        own.iter().all(|&a| own.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Self::from_members(self.parent.clone(), self.members.intersection(&other.members))
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Self::generated(&self.parent, &gens)
    }

    /// Centralizer of `self` inside `within`.
    pub fn centralizer_in(&self, within: &Subgroup) -> Subgroup {
        let g = &self.parent;
        let own = self.generators();
        let members = BitSet::from_indices(
            g.order(),
            within.elements().iter().filter(|&&h| own.iter().all(|&x| g.mul(h, x) == g.mul(x, h))).map(|&h| h as usize),
        );
        Self::from_members(g.clone(), members)
    }

    /// Whether every non-identity element has order `p`.
    pub fn exponent_is_prime(&self, p: u32) -> bool {
        self.elements.iter().skip(1).all(|&x| self.parent.element_order(x) == p)
    }
}
