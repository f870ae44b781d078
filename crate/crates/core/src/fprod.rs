//! Fiber products of finitely many covers of a common base.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::split_along_duals;
use crate::hom::same_group;
use crate::lattice::{all_subgroups, is_indecomposable};
use crate::linalg::{Echelon, Matrix};
use crate::module::{complement, hom_space, kernel_module, module_from_cover, simple_module_isomorphism, GModule};
use crate::squares::{make_square, CommSquare};
use crate::{BitSet, Cover, Error, FiniteGroup, GroupHom, Result, Subgroup, DEFAULT_ORDER_CAP};

/// The subgroup of `∏ H_i` on which all structure maps agree.
///
/// Carrier elements are numbered in lexicographic order of their coordinate
/// tuples. With no factors the carrier is the base; with one factor it is
/// that factor's source.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    base: Arc<FiniteGroup>,
    factors: Vec<Cover>,
    carrier: Arc<FiniteGroup>,
    coords: Vec<u32>,
    fiber_pos: Vec<Vec<u32>>,
    radix: Vec<usize>,
    projections: Vec<Cover>,
    structure_map: Cover,
    axis_kernels: Vec<Subgroup>,
}

pub fn fiber_product(base: &Arc<FiniteGroup>, factors: &[Cover]) -> Result<FiberProduct> {
    fiber_product_capped(base, factors, DEFAULT_ORDER_CAP)
}

pub fn fiber_product_capped(base: &Arc<FiniteGroup>, factors: &[Cover], cap: usize) -> Result<FiberProduct> {
    for (index, f) in factors.iter().enumerate() {
        if !same_group(f.target(), base) {
            return Err(Error::TargetMismatch { index });
        }
    }
    let k = factors.len();
    if k == 0 {
        let id = Cover::identity(base);
        return Ok(FiberProduct {
            base: base.clone(),
            factors: Vec::new(),
            carrier: base.clone(),
            coords: Vec::new(),
            fiber_pos: Vec::new(),
            radix: Vec::new(),
            projections: Vec::new(),
            structure_map: id,
            axis_kernels: Vec::new(),
        });
    }

    // Position of each element inside its fiber; fibers are sorted.
    let mut fiber_pos = Vec::with_capacity(k);
    let mut fibers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(k);
    for f in factors {
        let mut by_base = vec![Vec::new(); base.order()];
        let mut pos = vec![0u32; f.source().order()];
        for h in f.source().elements() {
            let b = &mut by_base[f.apply(h) as usize];
            pos[h as usize] = b.len() as u32;
            b.push(h);
        }
        fiber_pos.push(pos);
        fibers.push(by_base);
    }
    let kernel_sizes: Vec<usize> = factors.iter().map(|f| f.kernel().order()).collect();
    let mut radix = vec![1usize; k];
    for i in (1..k.saturating_sub(1)).rev() {
        radix[i] = radix[i + 1] * kernel_sizes[i + 1];
    }
    let block: usize = kernel_sizes[1..].iter().product();
    let order = factors[0].source().order().checked_mul(block).filter(|&n| n <= cap);
    let order = order.ok_or(Error::OrderCapExceeded { cap })?;
    if k > 1 {
        radix[0] = block;
    }

    let mut coords = Vec::with_capacity(order * k);
    if k == 1 {
        coords.extend(factors[0].source().elements());
    } else {
        for h0 in factors[0].source().elements() {
            let g = factors[0].apply(h0) as usize;
            let mut digits = vec![0usize; k];
            loop {
                coords.push(h0);
                for i in 1..k {
                    coords.push(fibers[i][g][digits[i]]);
                }
                let mut i = k - 1;
                loop {
                    if i == 0 {
                        break;
                    }
                    digits[i] += 1;
                    if digits[i] < kernel_sizes[i] {
                        break;
                    }
                    digits[i] = 0;
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
            }
        }
    }
    debug_assert_eq!(coords.len(), order * k);

    let mut fp = FiberProduct {
        base: base.clone(),
        factors: factors.to_vec(),
        carrier: base.clone(),
        coords,
        fiber_pos,
        radix,
        projections: Vec::new(),
        structure_map: Cover::identity(base),
        axis_kernels: Vec::new(),
    };

    fp.carrier = if k == 1 {
        factors[0].source().clone()
    } else {
        let mut mul = Vec::with_capacity(order * order);
        let mut prod = vec![0u32; k];
        for a in 0..order {
            for b in 0..order {
                let (ta, tb) = (fp.tuple(a as u32), fp.tuple(b as u32));
                for i in 0..k {
                    prod[i] = factors[i].source().mul(ta[i], tb[i]);
                }
                mul.push(fp.index_of_unchecked(&prod));
            }
        }
        Arc::new(FiniteGroup::from_table_unchecked(order, mul))
    };

    fp.projections = (0..k)
        .map(|i| {
            let image = (0..order as u32).map(|x| fp.tuple(x)[i]).collect();
            Cover::from_surjection(GroupHom::new_unchecked(fp.carrier.clone(), factors[i].source().clone(), image))
        })
        .collect();
    let image = (0..order as u32).map(|x| factors[0].apply(fp.tuple(x)[0])).collect();
    fp.structure_map = Cover::from_surjection(GroupHom::new_unchecked(fp.carrier.clone(), base.clone(), image));
    fp.axis_kernels = (0..k)
        .map(|j| {
            let members = BitSet::from_indices(
                order,
                (0..order).filter(|&x| {
                    fp.structure_map.apply(x as u32) == 0
                        && fp.tuple(x as u32).iter().enumerate().all(|(i, &h)| i == j || h == 0)
                }),
            );
            Subgroup::from_members(fp.carrier.clone(), members)
        })
        .collect();
    Ok(fp)
}

impl FiberProduct {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn factors(&self) -> &[Cover] {
        &self.factors
    }

    pub fn carrier(&self) -> &Arc<FiniteGroup> {
        &self.carrier
    }

    pub fn projections(&self) -> &[Cover] {
        &self.projections
    }

    pub fn structure_map(&self) -> &Cover {
        &self.structure_map
    }

    pub fn axis_kernels(&self) -> &[Subgroup] {
        &self.axis_kernels
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Coordinates of a carrier element.
    pub fn tuple(&self, x: u32) -> &[u32] {
        let k = self.factors.len();
        &self.coords[x as usize * k..(x as usize + 1) * k]
    }

    /// Carrier index of a coordinate tuple, if it lies in the fiber product.
    pub fn index_of(&self, tuple: &[u32]) -> Option<u32> {
        let k = self.factors.len();
        if tuple.len() != k || k == 0 {
            return None;
        }
        let g = self.factors[0].apply(*tuple.first()?);
        for (f, &h) in self.factors.iter().zip(tuple) {
            if h as usize >= f.source().order() || f.apply(h) != g {
                return None;
            }
        }
        Some(self.index_of_unchecked(tuple))
    }

    fn index_of_unchecked(&self, tuple: &[u32]) -> u32 {
        if tuple.len() == 1 {
            return tuple[0];
        }
        let mut idx = tuple[0] as usize * self.radix[0];
        for (i, &t) in tuple.iter().enumerate().skip(1) {
            idx += self.fiber_pos[i][t as usize] as usize * self.radix[i];
        }
        idx as u32
    }

    /// `Ker η_J = ∏_{j∈J} K_j`.
    pub fn kernel_product(&self, indices: &[usize]) -> Subgroup {
        let mut acc = Subgroup::trivial(&self.carrier);
        for &j in indices {
            acc = acc.join(&self.axis_kernels[j]);
        }
        acc
    }

    /// The cartesian square splitting off factor `j`:
    /// top `pr_{I∖{j}}`, left `pr_j`, bottom `η_j`, right `η_{I∖{j}}`.
    pub fn split_square(&self, j: usize) -> Result<CommSquare> {
        let rest: Vec<usize> = (0..self.len()).filter(|&i| i != j).collect();
        let (sub, pr) = restrict(self, &rest)?;
        let pj = self.projections.get(j).ok_or(Error::BadIndex { index: j, len: self.len() })?;
        make_square(pr, pj.clone(), self.factors[j].clone(), sub.structure_map.clone())
    }
}

/// The fiber product over a subset of the factors and the projection onto it.
pub fn restrict(fp: &FiberProduct, subset: &[usize]) -> Result<(FiberProduct, Cover)> {
    let len = fp.len();
    if let Some(&index) = subset.iter().find(|&&i| i >= len) {
        return Err(Error::BadIndex { index, len });
    }
    let mut idx = subset.to_vec();
    idx.sort_unstable();
    idx.dedup();
    let factors: Vec<Cover> = idx.iter().map(|&i| fp.factors[i].clone()).collect();
    let sub = fiber_product_capped(&fp.base, &factors, usize::MAX)?;
    if idx.is_empty() {
        let pr = fp.structure_map.clone();
        return Ok((sub, pr));
    }
    let mut buf = vec![0u32; idx.len()];
    let image = (0..fp.carrier.order() as u32)
        .map(|x| {
            let t = fp.tuple(x);
            for (slot, &i) in buf.iter_mut().zip(&idx) {
                *slot = t[i];
            }
            sub.index_of_unchecked(&buf)
        })
        .collect();
    let pr = Cover::from_surjection(GroupHom::new_unchecked(fp.carrier.clone(), sub.carrier.clone(), image));
    Ok((sub, pr))
}

fn check_family(p_list: &[Cover], etas: &[Cover]) -> Result<Cover> {
    if p_list.len() != etas.len() || p_list.is_empty() {
        return Err(Error::Incompatible("one structure map is needed per cover"));
    }
    let h = p_list[0].source();
    let base = etas[0].target();
    for (p, eta) in p_list.iter().zip(etas) {
        if !same_group(p.source(), h) || !same_group(p.target(), eta.source()) || !same_group(eta.target(), base) {
            return Err(Error::Incompatible("covers do not share source and base"));
        }
    }
    let first = p_list[0].then(&etas[0])?;
    for (p, eta) in p_list.iter().zip(etas).skip(1) {
        if p.then(eta)? != first {
            return Err(Error::Incompatible("composites to the base differ"));
        }
    }
    Ok(first)
}

/// Whether `h ↦ (p_i(h))` is an isomorphism onto the fiber product of
/// `etas`, by the criterion `L = ∏ L_j` with `L = Ker(η_i ∘ p_i)` and
/// `L_j = ⋂_{i≠j} Ker p_i`.
pub fn is_fiber_presentation(p_list: &[Cover], etas: &[Cover]) -> Result<bool> {
    let composite = check_family(p_list, etas)?;
    if p_list.len() < 2 {
        return Err(Error::Incompatible("at least two covers are required"));
    }
    let h = p_list[0].source();
    let mut product = Subgroup::trivial(h);
    for j in 0..p_list.len() {
        let mut lj = Subgroup::whole(h);
        for (i, p) in p_list.iter().enumerate() {
            if i != j {
                lj = lj.intersect(p.kernel());
            }
        }
        product = product.join(&lj);
    }
    Ok(product == *composite.kernel())
}

/// The induced homomorphism `h ↦ (p_i(h))` into an already built fiber product.
pub fn induced_map(fp: &FiberProduct, p_list: &[Cover]) -> Result<GroupHom> {
    check_family(p_list, fp.factors())?;
    let h = p_list[0].source();
    let mut buf = vec![0u32; p_list.len()];
    let image = h
        .elements()
        .map(|x| {
            for (slot, p) in buf.iter_mut().zip(p_list) {
                *slot = p.apply(x);
            }
            fp.index_of_unchecked(&buf)
        })
        .collect();
    Ok(GroupHom::new_unchecked(h.clone(), fp.carrier.clone(), image))
}

/// No proper subgroup of the carrier maps onto every factor.
pub fn is_compact_fiber_product(fp: &FiberProduct) -> Result<bool> {
    if fp.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    if fp.len() == 1 {
        return Ok(true);
    }
    if fp.carrier.order() >= EXHAUSTIVE_COMPACTNESS_LIMIT {
        if let Some(answer) = crate::fundament::compact_by_independence(fp) {
            return Ok(answer);
        }
    }
    Ok(compact_exhaustive(fp))
}

/// Carrier order from which the independence criterion replaces the lattice search.
pub const EXHAUSTIVE_COMPACTNESS_LIMIT: usize = 2000;

/// Compactness by exhaustive search over the subgroup lattice.
pub fn is_compact_fiber_product_exhaustive(fp: &FiberProduct) -> Result<bool> {
    if fp.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    Ok(compact_exhaustive(fp))
}

fn compact_exhaustive(fp: &FiberProduct) -> bool {
    !all_subgroups(&fp.carrier)
        .iter()
        .any(|e| !e.is_whole() && fp.projections.iter().all(|p| p.hom().image_of(e).order() == p.target().order()))
}

/// Factor indices grouped by the kind of their kernel: non-abelian, or
/// abelian with a given `G`-module class (first occurrence as representative).
#[derive(Clone, Debug)]
pub struct FactorPartition {
    pub na: Vec<usize>,
    pub ab: Vec<(Arc<GModule>, Vec<usize>)>,
}

pub fn partition_factors(fp: &FiberProduct) -> Result<FactorPartition> {
    let mut part = FactorPartition { na: Vec::new(), ab: Vec::new() };
    for (i, eta) in fp.factors.iter().enumerate() {
        if !is_indecomposable(eta) {
            return Err(Error::Incompatible("factors must be indecomposable"));
        }
        if !eta.kernel().is_abelian() {
            part.na.push(i);
            continue;
        }
        let a = Arc::new(module_from_cover(eta, eta.kernel())?);
        match part.ab.iter_mut().find(|(rep, _)| simple_module_isomorphism(&a, rep).is_some()) {
            Some((_, idx)) => idx.push(i),
            None => part.ab.push((a, vec![i])),
        }
    }
    Ok(part)
}

/// `L = ∏_{i∈I_na,L} K_i × ∏_A (L ∩ K_{I_A})` for a normal `L ≤ Ker η_I`.
#[derive(Clone, Debug)]
pub struct KernelDecomposition {
    pub partition: FactorPartition,
    /// Non-abelian indices `i` with `K_i ≤ L`.
    pub na_in: Vec<usize>,
    /// `L ∩ K_{I_A}`, aligned with `partition.ab`.
    pub ab_components: Vec<Subgroup>,
}

impl KernelDecomposition {
    /// The internal product of the components.
    pub fn reconstruct(&self, fp: &FiberProduct) -> Subgroup {
        self.ab_components.iter().fold(fp.kernel_product(&self.na_in), |acc, c| acc.join(c))
    }
}

fn check_normal_in_kernel(fp: &FiberProduct, l: &Subgroup) -> Result<()> {
    if !same_group(l.parent(), &fp.carrier) {
        return Err(Error::Mismatch("subgroup of a different group"));
    }
    if !l.is_normal() {
        return Err(Error::NotNormal);
    }
    if !l.is_subgroup_of(fp.structure_map.kernel()) {
        return Err(Error::NotInsideKernel);
    }
    Ok(())
}

pub fn kernel_normal_decomposition(fp: &FiberProduct, l: &Subgroup) -> Result<KernelDecomposition> {
    check_normal_in_kernel(fp, l)?;
    let partition = partition_factors(fp)?;
    let na_in = partition.na.iter().copied().filter(|&i| fp.axis_kernels[i].is_subgroup_of(l)).collect();
    let ab_components = partition.ab.iter().map(|(_, idx)| l.intersect(&fp.kernel_product(idx))).collect();
    Ok(KernelDecomposition { partition, na_in, ab_components })
}

/// An isomorphic presentation `ω` over the base in which `ω(L) = ∏_{i∈Ī} K̄_i`.
///
/// Non-abelian factors are kept. Each abelian block `I_A` is replaced by the
/// extensions along a basis of `Hom_G(K_{I_A}, A)` whose first members vanish
/// on a complement of `L ∩ K_{I_A}` and whose remaining members vanish on it.
pub fn align_normal_to_axes(fp: &FiberProduct, l: &Subgroup) -> Result<(FiberProduct, GroupHom, Vec<usize>)> {
    let decomp = kernel_normal_decomposition(fp, l)?;
    let n = fp.carrier.order();
    let mut factors = fp.factors.clone();
    let mut tuples: Vec<Vec<u32>> = (0..n as u32).map(|x| fp.tuple(x).to_vec()).collect();
    let mut axes = decomp.na_in.clone();
    for ((a, idx), component) in decomp.partition.ab.iter().zip(&decomp.ab_components) {
        let (sub, pr) = restrict(fp, idx)?;
        let pi_a = sub.structure_map();
        let kernel = kernel_module(pi_a, pi_a.kernel())?;
        let image = pr.hom().image_of(component);
        let p = a.characteristic();
        let l_vecs = image.elements().iter().map(|&x| kernel.vector(x).expect("inside the kernel")).collect::<Vec<_>>();
        let l_span = Echelon::spanned_by(p, kernel.module().dim(), &l_vecs);
        let m_span = complement(kernel.module(), a, &l_span)?;
        let dual = hom_space(kernel.module(), a)?;
        let mut coords = dual.annihilator(m_span.rows());
        let on_l = coords.len();
        coords.extend(dual.annihilator(l_span.rows()));
        let phis: Vec<Matrix> = coords.iter().map(|c| dual.combination(c)).collect();
        let (covers, local) = split_along_duals(pi_a, a, &phis)?;
        for (k, &i) in idx.iter().enumerate() {
            factors[i] = covers[k].clone();
        }
        for (x, t) in tuples.iter_mut().enumerate() {
            let y = pr.apply(x as u32) as usize;
            for (k, &i) in idx.iter().enumerate() {
                t[i] = local[y][k];
            }
        }
        axes.extend_from_slice(&idx[..on_l]);
    }
    axes.sort_unstable();
    let aligned = fiber_product(&fp.base, &factors)?;
    let image = tuples
        .iter()
        .map(|t| aligned.index_of(t).ok_or(Error::Mismatch("aligned coordinates leave the fiber product")))
        .collect::<Result<Vec<u32>>>()?;
    let omega = GroupHom::new(fp.carrier.clone(), aligned.carrier.clone(), image)?;
    if !omega.is_bijective() || omega.image_of(l) != aligned.kernel_product(&axes) {
        return Err(Error::Mismatch("aligned presentation does not carry L onto axis kernels"));
    }
    Ok((aligned, omega, axes))
}
