//! Fundament kernels and series, the classification invariants of
//! fundamental covers, and the decision procedures built on them.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::{cocycle_of_cover, cohom_space_of, inflate_into, split_along_duals, transport, x2, CohomSpace};
use crate::fprod::{fiber_product, partition_factors, FiberProduct};
use crate::hom::same_group;
use crate::lattice::maximal_normal_in;
use crate::linalg::Matrix;
use crate::module::{hom_space_with, module_from_cover, simple_module_isomorphism, EndoField, GModule};
use crate::search::find_isomorphism_over;
use crate::squares::{is_semi_cartesian, make_square};
use crate::{quotient, Cover, Error, FiniteGroup, GroupHom, Result, Subgroup};

/// The cover `Q ↠ G` with `π̄ ∘ ρ = π`, for `Ker ρ ≤ Ker π`.
pub fn induced_cover(rho: &Cover, pi: &Cover) -> Result<Cover> {
    if !same_group(rho.source(), pi.source()) {
        return Err(Error::Mismatch("covers from different groups"));
    }
    if !rho.kernel().is_subgroup_of(pi.kernel()) {
        return Err(Error::NotInsideKernel);
    }
    let mut table = vec![0u32; rho.target().order()];
    for h in rho.source().elements() {
        table[rho.apply(h) as usize] = pi.apply(h);
    }
    Ok(Cover::from_surjection(GroupHom::new_unchecked(rho.target().clone(), pi.target().clone(), table)))
}

/// `(H/N ↠ G, H ↠ H/N)` for a normal `N ≤ Ker π`.
pub fn quotient_cover(pi: &Cover, n: &Subgroup) -> Result<(Cover, Cover)> {
    let (_, rho) = quotient(pi.source(), n)?;
    Ok((induced_cover(&rho, pi)?, rho))
}

/// The maximal normal subgroups of the source strictly inside `Ker π`:
/// the kernels of the indecomposable quotient covers of `π`.
fn indecomposable_kernels(pi: &Cover) -> Vec<Subgroup> {
    if pi.kernel().is_trivial() {
        return Vec::new();
    }
    maximal_normal_in(pi.kernel()).expect("kernels are normal")
}

/// `M(π)`, the intersection of the maximal normal subgroups strictly inside
/// `Ker π`; trivial when `Ker π` is.
pub fn fundament_kernel(pi: &Cover) -> Subgroup {
    indecomposable_kernels(pi).iter().fold(pi.kernel().clone(), |acc, n| acc.intersect(n))
}

/// `(π̄, ρ)` with `Ker ρ = M(π)` and `π̄ ∘ ρ = π`.
pub fn fundament(pi: &Cover) -> (Cover, Cover) {
    let m = fundament_kernel(pi);
    if m.is_trivial() {
        return (pi.clone(), Cover::identity(pi.source()));
    }
    quotient_cover(pi, &m).expect("M(π) is normal inside Ker π")
}

pub fn is_fundamental(pi: &Cover) -> bool {
    fundament_kernel(pi).is_trivial()
}

/// `M_0 = Ker π ≥ M_1 ≥ … ≥ M_t = 1` with the stage covers `π_k: G_k ↠ G_{k−1}`.
///
/// `G_0` is the target of `π`, `G_t` is the source, and the intermediate
/// stages are the quotients `H/M_k`.
#[derive(Clone, Debug)]
pub struct FundamentSeries {
    cover: Cover,
    kernels: Vec<Subgroup>,
    stages: Vec<Cover>,
    quotients: Vec<Cover>,
}

impl FundamentSeries {
    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn kernels(&self) -> &[Subgroup] {
        &self.kernels
    }

    /// `π_1, …, π_t`.
    pub fn stages(&self) -> &[Cover] {
        &self.stages
    }

    /// `ρ_k: H ↠ G_k` for `k = 0, …, t`.
    pub fn quotients(&self) -> &[Cover] {
        &self.quotients
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

pub fn fundament_series(pi: &Cover) -> FundamentSeries {
    let h = pi.source();
    let mut kernels = vec![pi.kernel().clone()];
    let mut quotients = vec![pi.clone()];
    let mut stages = Vec::new();
    while !kernels.last().expect("nonempty").is_trivial() {
        let prev = quotients.last().expect("nonempty");
        let m = fundament_kernel(prev);
        let rho =
            if m.is_trivial() { Cover::identity(h) } else { quotient(h, &m).expect("fundament kernels are normal").1 };
        stages.push(induced_cover(&rho, prev).expect("M_k ≤ M_{k-1}"));
        kernels.push(m);
        quotients.push(rho);
    }
    FundamentSeries { cover: pi.clone(), kernels, stages, quotients }
}

/// A class of indecomposable covers with non-abelian kernel and its multiplicity.
#[derive(Clone, Debug)]
pub struct NaClass {
    pub representative: Cover,
    pub mult: usize,
}

/// A class of simple modules `A` with `supp_A` (reduced echelon rows over
/// `F_A` in the coordinates of `H²(G, A)`) and `mult_A = dim Ker S_A`.
#[derive(Clone, Debug)]
pub struct AbClass {
    pub space: Arc<CohomSpace>,
    pub supp: Vec<Vec<usize>>,
    pub mult: usize,
}

impl AbClass {
    pub fn module(&self) -> &Arc<GModule> {
        self.space.module()
    }

    pub fn field(&self) -> &Arc<EndoField> {
        self.space.field()
    }

    /// `dim B_A* = dim supp_A + mult_A`.
    pub fn dual_dim(&self) -> usize {
        self.supp.len() + self.mult
    }
}

/// The complete invariants of a fundamental cover, over the classes that occur.
#[derive(Clone, Debug)]
pub struct CoverInvariants {
    pub base: Arc<FiniteGroup>,
    pub na_classes: Vec<NaClass>,
    pub ab_classes: Vec<AbClass>,
}

/// The indecomposable quotients of `π` grouped into classes.
struct QuotientClasses {
    na: Vec<(Cover, Vec<(Cover, Cover)>)>,
    ab: Vec<(Arc<GModule>, Vec<Subgroup>)>,
}

fn quotient_classes(pi: &Cover) -> Result<QuotientClasses> {
    let mut classes = QuotientClasses { na: Vec::new(), ab: Vec::new() };
    for n in indecomposable_kernels(pi) {
        let (eta, rho) = quotient_cover(pi, &n)?;
        if eta.kernel().is_abelian() {
            let a = Arc::new(module_from_cover(&eta, eta.kernel())?);
            match classes.ab.iter_mut().find(|(rep, _)| simple_module_isomorphism(&a, rep).is_some()) {
                Some((_, ns)) => ns.push(n),
                None => classes.ab.push((a, vec![n])),
            }
        } else {
            match classes.na.iter_mut().find(|(rep, _)| find_isomorphism_over(&eta, rep).is_some()) {
                Some((_, members)) => members.push((eta, rho)),
                None => classes.na.push((eta.clone(), vec![(eta, rho)])),
            }
        }
    }
    Ok(classes)
}

/// `H_A = H/N_A ↠ G` with `N_A` the intersection of the given kernels.
fn isotypic_quotient(pi: &Cover, ns: &[Subgroup]) -> Result<(Cover, Cover)> {
    let n_a = ns.iter().fold(pi.kernel().clone(), |acc, n| acc.intersect(n));
    quotient_cover(pi, &n_a)
}

pub fn invariants(pi: &Cover) -> Result<CoverInvariants> {
    if !is_fundamental(pi) {
        return Err(Error::NotFundamental);
    }
    let classes = quotient_classes(pi)?;
    let na_classes = classes
        .na
        .into_iter()
        .map(|(representative, members)| NaClass { representative, mult: members.len() })
        .collect();
    let mut ab_classes = Vec::with_capacity(classes.ab.len());
    for (a, ns) in &classes.ab {
        let (eta_a, _) = isotypic_quotient(pi, ns)?;
        let space = cohom_space_of(pi.target(), a)?;
        let s = x2(&eta_a, &space)?;
        ab_classes.push(AbClass { supp: s.image(), mult: s.nullity(), space });
    }
    Ok(CoverInvariants { base: pi.target().clone(), na_classes, ab_classes })
}

fn span_contains(field: &EndoField, big: &[Vec<usize>], small: &[Vec<usize>]) -> bool {
    let rank = field.rref(big).len();
    let mut all = big.to_vec();
    all.extend(small.iter().cloned());
    field.rref(&all).len() == rank
}

/// Coordinates of the classes with coordinates `rows` in `from`, carried to `to` along `ψ`.
fn transport_rows(
    rows: &[Vec<usize>],
    from: &Arc<CohomSpace>,
    psi: &crate::module::ModuleHom,
    to: &Arc<CohomSpace>,
) -> Result<Vec<Vec<usize>>> {
    rows.iter().map(|r| Ok(transport(&from.class(r.clone())?, psi, to)?.coordinates().to_vec())).collect()
}

/// One class of the union of occurring classes: multiplicities and supports
/// of both covers, the supports in a common space.
struct Matched {
    mult: (usize, usize),
    supp: Option<SupportPair>,
}

/// The field and the two supports, first cover's then second's.
type SupportPair = (Arc<EndoField>, Vec<Vec<usize>>, Vec<Vec<usize>>);

fn match_classes(first: &CoverInvariants, second: &CoverInvariants) -> Result<Vec<Matched>> {
    if !same_group(&first.base, &second.base) {
        return Err(Error::BaseMismatch);
    }
    let mut out = Vec::new();
    let mut used = vec![false; second.na_classes.len()];
    for c in &first.na_classes {
        let hit = second
            .na_classes
            .iter()
            .position(|d| find_isomorphism_over(&c.representative, &d.representative).is_some());
        let other = hit.map_or(0, |j| {
            used[j] = true;
            second.na_classes[j].mult
        });
        out.push(Matched { mult: (c.mult, other), supp: None });
    }
    for (d, _) in second.na_classes.iter().zip(&used).filter(|(_, &u)| !u) {
        out.push(Matched { mult: (0, d.mult), supp: None });
    }
    let mut used = vec![false; second.ab_classes.len()];
    for c in &first.ab_classes {
        let hit = second
            .ab_classes
            .iter()
            .enumerate()
            .find_map(|(j, d)| simple_module_isomorphism(c.module(), d.module()).map(|psi| (j, psi)));
        match hit {
            Some((j, psi)) => {
                used[j] = true;
                let d = &second.ab_classes[j];
                let moved = d.field().rref(&transport_rows(&c.supp, &c.space, &psi, &d.space)?);
                out.push(Matched { mult: (c.mult, d.mult), supp: Some((d.field().clone(), moved, d.supp.clone())) });
            }
            None => {
                out.push(Matched { mult: (c.mult, 0), supp: Some((c.field().clone(), c.supp.clone(), Vec::new())) })
            }
        }
    }
    for (d, _) in second.ab_classes.iter().zip(&used).filter(|(_, &u)| !u) {
        out.push(Matched { mult: (0, d.mult), supp: Some((d.field().clone(), Vec::new(), d.supp.clone())) });
    }
    Ok(out)
}

/// `τ' ⪯ τ` from invariants: `mult_λ(τ') ≤ mult_λ(τ)` and `supp_A(τ') ⊆ supp_A(τ)`.
pub fn dominates_by_invariants(smaller: &CoverInvariants, larger: &CoverInvariants) -> Result<bool> {
    Ok(match_classes(smaller, larger)?
        .iter()
        .all(|m| m.mult.0 <= m.mult.1 && m.supp.as_ref().map_or(true, |(f, s, l)| span_contains(f, l, s))))
}

pub fn isomorphic_by_invariants(a: &CoverInvariants, b: &CoverInvariants) -> Result<bool> {
    Ok(match_classes(a, b)?.iter().all(|m| {
        m.mult.0 == m.mult.1
            && m.supp.as_ref().map_or(true, |(f, s, l)| span_contains(f, l, s) && span_contains(f, s, l))
    }))
}

fn check_pair(smaller: &Cover, larger: &Cover) -> Result<()> {
    if !same_group(smaller.target(), larger.target()) {
        return Err(Error::BaseMismatch);
    }
    if !is_fundamental(smaller) || !is_fundamental(larger) {
        return Err(Error::NotFundamental);
    }
    Ok(())
}

/// Whether `smaller` factors through `larger` by an epimorphism over their common base.
pub fn dominates(smaller: &Cover, larger: &Cover) -> Result<bool> {
    check_pair(smaller, larger)?;
    dominates_by_invariants(&invariants(smaller)?, &invariants(larger)?)
}

pub fn isomorphic_fundamental(a: &Cover, b: &Cover) -> Result<bool> {
    check_pair(a, b)?;
    isomorphic_by_invariants(&invariants(a)?, &invariants(b)?)
}

/// The pullback of a cover `ζ: X ↠ G'` along `π: G ↠ G'`, as a cover of `G`.
pub fn inflate_cover(zeta: &Cover, pi: &Cover) -> Result<Cover> {
    let fp = fiber_product(pi.target(), &[zeta.clone(), pi.clone()])?;
    Ok(fp.projections()[1].clone())
}

/// Whether some `θ: H ↠ H'` makes the square `θ, τ, π, τ'` semi-cartesian,
/// for `τ: H ↠ G`, `τ': H' ↠ G'` fundamental and `π: G ↠ G'`.
pub fn exists_semicartesian_lift(pi: &Cover, tau: &Cover, tau2: &Cover) -> Result<bool> {
    if !same_group(tau.target(), pi.source()) || !same_group(tau2.target(), pi.target()) {
        return Err(Error::BaseMismatch);
    }
    if !is_fundamental(tau) || !is_fundamental(tau2) {
        return Err(Error::NotFundamental);
    }
    let inv = invariants(tau)?;
    let inv2 = invariants(tau2)?;
    for c in &inv2.na_classes {
        let inflated = inflate_cover(&c.representative, pi)?;
        let mult = inv
            .na_classes
            .iter()
            .find(|d| find_isomorphism_over(&inflated, &d.representative).is_some())
            .map_or(0, |d| d.mult);
        if c.mult > mult {
            return Ok(false);
        }
    }
    for c in &inv2.ab_classes {
        let inflated = Arc::new(c.module().inflate(pi)?);
        let infl_space = cohom_space_of(pi.source(), &inflated)?;
        let images = c
            .supp
            .iter()
            .map(|r| inflate_into(pi, &c.space.class(r.clone())?, &infl_space))
            .collect::<Result<Vec<_>>>()?;
        let target =
            inv.ab_classes.iter().find_map(|d| simple_module_isomorphism(&inflated, d.module()).map(|psi| (d, psi)));
        let (field, rows, supp, mult) = match target {
            Some((d, psi)) => {
                let rows = images
                    .iter()
                    .map(|x| Ok(transport(x, &psi, &d.space)?.coordinates().to_vec()))
                    .collect::<Result<Vec<_>>>()?;
                (d.field().clone(), rows, d.supp.clone(), d.mult)
            }
            None => {
                (infl_space.field().clone(), images.iter().map(|x| x.coordinates().to_vec()).collect(), Vec::new(), 0)
            }
        };
        let nullity = c.supp.len() - field.rref(&rows).len();
        if !span_contains(&field, &supp, &rows) || nullity + c.mult > mult {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A fundamental cover presented as the fiber product of indecomposable covers.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<Cover>,
    pub fiber_product: FiberProduct,
    /// Isomorphism from the source of the cover onto the carrier, over the base.
    pub iso: GroupHom,
}

/// `F`-coordinates `c` with `Σ c_j columns_j = target`.
fn solve_over(field: &EndoField, columns: &[Vec<usize>], target: &[usize]) -> Option<Vec<usize>> {
    let mut all = columns.to_vec();
    all.push(target.to_vec());
    let rel = field.relations(target.len(), &all).into_iter().find(|r| r[columns.len()] != 0)?;
    let scale = field.neg(field.inv(rel[columns.len()])?);
    Some(rel[..columns.len()].iter().map(|&x| field.mul(x, scale)).collect())
}

/// Non-abelian factors are the indecomposable quotients themselves; each
/// abelian class contributes extensions realizing the echelon basis of
/// `supp_A`, followed by split extensions for a basis of `Ker S_A`.
pub fn decompose_fundamental(pi: &Cover) -> Result<Decomposition> {
    if !is_fundamental(pi) {
        return Err(Error::NotFundamental);
    }
    let (h, g) = (pi.source(), pi.target());
    let classes = quotient_classes(pi)?;
    let mut factors = Vec::new();
    let mut tuples: Vec<Vec<u32>> = vec![Vec::new(); h.order()];
    for (_, members) in &classes.na {
        for (eta, rho) in members {
            factors.push(eta.clone());
            for (x, t) in tuples.iter_mut().enumerate() {
                t.push(rho.apply(x as u32));
            }
        }
    }
    for (a, ns) in &classes.ab {
        let (eta_a, rho_a) = isotypic_quotient(pi, ns)?;
        let space = cohom_space_of(g, a)?;
        let s = x2(&eta_a, &space)?;
        let field = space.field();
        let columns: Vec<Vec<usize>> = s.images().iter().map(|c| c.coordinates().to_vec()).collect();
        let mut coeffs = s
            .image()
            .iter()
            .map(|row| solve_over(field, &columns, row).ok_or(Error::Mismatch("support row outside the image")))
            .collect::<Result<Vec<_>>>()?;
        coeffs.extend(s.kernel_basis());
        let dual = hom_space_with(s.dual().module(), field)?;
        let phis: Vec<Matrix> = coeffs.iter().map(|c| dual.combination(c)).collect();
        let (covers, coords) = split_along_duals(&eta_a, a, &phis)?;
        factors.extend(covers);
        for (x, t) in tuples.iter_mut().enumerate() {
            t.extend_from_slice(&coords[rho_a.apply(x as u32) as usize]);
        }
    }
    let fp = fiber_product(g, &factors)?;
    let image = if factors.is_empty() {
        pi.hom().table().to_vec()
    } else {
        tuples
            .iter()
            .map(|t| fp.index_of(t).ok_or(Error::Mismatch("coordinates leave the fiber product")))
            .collect::<Result<Vec<u32>>>()?
    };
    let iso = GroupHom::new(h.clone(), fp.carrier().clone(), image)?;
    if !iso.is_bijective() {
        return Err(Error::NotIsomorphism);
    }
    Ok(Decomposition { factors, fiber_product: fp, iso })
}

/// Compactness of a fiber product of indecomposable covers by the criterion
/// that the factors are pairwise non-isomorphic and, for every abelian
/// kernel class, at most one factor splits and the non-split classes are
/// linearly independent over `End_G(A)`. `None` if a factor is decomposable
/// or a needed space cannot be computed.
pub fn compact_by_independence(fp: &FiberProduct) -> Option<bool> {
    let part = partition_factors(fp).ok()?;
    let factors = fp.factors();
    for (k, &i) in part.na.iter().enumerate() {
        for &j in &part.na[k + 1..] {
            if find_isomorphism_over(&factors[i], &factors[j]).is_some() {
                return Some(false);
            }
        }
    }
    for (a, idx) in &part.ab {
        let space = cohom_space_of(fp.base(), a).ok()?;
        let mut split = 0;
        let mut rows = Vec::new();
        for &i in idx {
            let (kernel, f) = cocycle_of_cover(&factors[i]).ok()?;
            let psi = simple_module_isomorphism(kernel.module(), a)?;
            let class = space.class_of(&f.push_forward(psi.matrix(), a).ok()?).ok()?;
            if class.is_zero() {
                split += 1;
            } else {
                rows.push(class.coordinates().to_vec());
            }
        }
        if split > 1 || space.field().rref(&rows).len() < rows.len() {
            return Some(false);
        }
    }
    Some(true)
}

fn no_double_square_exists(rho: &Cover, pibar: &Cover, pi: &Cover) -> Result<bool> {
    for n in indecomposable_kernels(pi) {
        let (eta0, gamma) = quotient_cover(pi, &n)?;
        if is_semi_cartesian(&make_square(rho.clone(), gamma, eta0, pibar.clone())?) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_fundament_pair(rho: &Cover, pibar: &Cover) -> Result<Cover> {
    if !same_group(rho.target(), pibar.source()) {
        return Err(Error::Mismatch("covers do not compose"));
    }
    if !is_fundamental(pibar) {
        return Err(Error::NotFundamental);
    }
    rho.then(pibar)
}

/// Whether `π̄` is the fundament of `π̄ ∘ ρ` by `ρ`: `Ker ρ = M(π̄ ∘ ρ)`.
pub fn is_fundament_of(rho: &Cover, pibar: &Cover) -> Result<bool> {
    let pi = check_fundament_pair(rho, pibar)?;
    Ok(*rho.kernel() == fundament_kernel(&pi))
}

/// As [`is_fundament_of`], by the absence of a semi-cartesian square
/// `ρ, γ, η_0, π̄` with `η_0` indecomposable.
pub fn is_fundament_of_by_squares(rho: &Cover, pibar: &Cover) -> Result<bool> {
    let pi = check_fundament_pair(rho, pibar)?;
    Ok(!no_double_square_exists(rho, pibar, &pi)?)
}

fn check_chain(chain: &[Cover]) -> Result<()> {
    for (k, stage) in chain.iter().enumerate() {
        if k + 1 < chain.len() && !same_group(chain[k + 1].target(), stage.source()) {
            return Err(Error::Mismatch("chain stages do not compose"));
        }
        if !is_fundamental(stage) {
            return Err(Error::NotFundamentalStage { index: k });
        }
    }
    Ok(())
}

/// Whether `chain = [π_1, π_2, …]`, `π_k: G_k ↠ G_{k−1}`, is the fundament
/// series of its composite: no semi-cartesian square `π_{k+1}, τ, η_{k−1}, π_k`
/// with `η_{k−1}` indecomposable.
pub fn is_fundament_series(chain: &[Cover]) -> Result<bool> {
    check_chain(chain)?;
    for k in 1..chain.len() {
        let composite = chain[k].then(&chain[k - 1])?;
        for n in indecomposable_kernels(&composite) {
            let (eta, tau) = quotient_cover(&composite, &n)?;
            if is_semi_cartesian(&make_square(chain[k].clone(), tau, eta, chain[k - 1].clone())?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// As [`is_fundament_series`], comparing the kernels of `G_t ↠ G_k` with the
/// computed fundament series of the composite.
pub fn is_fundament_series_by_kernels(chain: &[Cover]) -> Result<bool> {
    check_chain(chain)?;
    let Some(last) = chain.last() else {
        return Ok(true);
    };
    let h = last.source();
    let mut rhos = vec![Cover::identity(h)];
    for stage in chain.iter().rev() {
        let next = rhos.last().expect("nonempty").then(stage)?;
        rhos.push(next);
    }
    rhos.reverse();
    let series = fundament_series(&rhos[0]);
    let trivial = Subgroup::trivial(h);
    let len = rhos.len().max(series.kernels.len());
    Ok((0..len).all(|k| {
        let ours = rhos.get(k).map_or(&trivial, |r| r.kernel());
        let theirs = series.kernels.get(k).unwrap_or(&trivial);
        ours == theirs
    }))
}
