//! Degree-two cohomology `H²(G, A)`, extensions, inflation and the functors
//! between covers with `A`-generated kernel and pairs `(V, S: V → H²)`.
//!
//! Cocycles are normalized: `f(1, τ) = f(σ, 1) = 0`. A cocycle is determined
//! by its values `f(σ, s)` for `s` in the generating set of `G`, through
//! `f(σ, τs) = f(στ, s) + f(σ, τ) − σ·f(τ, s)`; those values are the
//! coordinates in which `Z²` and `B²` are computed.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::fprod::{fiber_product, FiberProduct};
use crate::hom::same_group;
use crate::linalg::{self, Echelon, Matrix, SpanSolver};
use crate::module::{
    endo_field, hom_space_with, is_a_generated, is_simple_module, kernel_module, DualSpace, EndoField, GModule,
    KernelModule, ModuleHom,
};
use crate::{BitSet, Cover, Error, FiniteGroup, GroupHom, Result, Subgroup, DEFAULT_ORDER_CAP};

/// An `A`-valued function on `G × G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCochain {
    group: Arc<FiniteGroup>,
    module: Arc<GModule>,
    values: Vec<u32>,
}

impl TwoCochain {
    pub fn zero(module: &Arc<GModule>) -> Self {
        let n = module.group().order();
        TwoCochain { group: module.group().clone(), module: module.clone(), values: vec![0; n * n * module.dim()] }
    }

    /// Builds a cochain from `value(σ, τ)`.
    pub fn from_fn(module: &Arc<GModule>, mut value: impl FnMut(u32, u32) -> Vec<u32>) -> Result<Self> {
        let g = module.group();
        let mut values = Vec::with_capacity(g.order() * g.order() * module.dim());
        for s in g.elements() {
            for t in g.elements() {
                let v = value(s, t);
                if v.len() != module.dim() || v.iter().any(|&x| x >= module.characteristic()) {
                    return Err(Error::Mismatch("cochain value is not a module vector"));
                }
                values.extend(v);
            }
        }
        Ok(TwoCochain { group: g.clone(), module: module.clone(), values })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn value(&self, s: u32, t: u32) -> &[u32] {
        let (n, d) = (self.group.order(), self.module.dim());
        let at = (s as usize * n + t as usize) * d;
        &self.values[at..at + d]
    }

    pub fn is_normalized(&self) -> bool {
        self.group
            .elements()
            .all(|x| self.value(0, x).iter().all(|&v| v == 0) && self.value(x, 0).iter().all(|&v| v == 0))
    }

    /// The cocycle identity for all `σ1, σ2` and `σ3` among the generators of `G`,
    /// which implies it for all `σ3`.
    pub fn is_cocycle(&self) -> bool {
        if !self.is_normalized() {
            return false;
        }
        let (g, a, p) = (&self.group, &self.module, self.module.characteristic());
        for s1 in g.elements() {
            for s2 in g.elements() {
                let s12 = g.mul(s1, s2);
                for &s3 in g.generators() {
                    let lhs = a.act(s1, self.value(s2, s3));
                    let ok = (0..a.dim()).all(|r| {
                        let x = linalg::sub(lhs[r], self.value(s12, s3)[r], p);
                        let x = linalg::add(x, self.value(s1, g.mul(s2, s3))[r], p);
                        linalg::sub(x, self.value(s1, s2)[r], p) == 0
                    });
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn add(&self, other: &TwoCochain) -> Result<TwoCochain> {
        if self.module != other.module {
            return Err(Error::Mismatch("cochains with different coefficients"));
        }
        let p = self.module.characteristic();
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| linalg::add(a, b, p)).collect();
        Ok(TwoCochain { group: self.group.clone(), module: self.module.clone(), values })
    }

    /// `φ ∘ f` for a linear map `φ` into `target` (a `target.dim × dim` matrix).
    pub fn push_forward(&self, phi: &Matrix, target: &Arc<GModule>) -> Result<TwoCochain> {
        if phi.cols() != self.module.dim() || phi.rows() != target.dim() {
            return Err(Error::Mismatch("matrix shape does not match the coefficients"));
        }
        let p = self.module.characteristic();
        let n = self.group.order();
        let d = self.module.dim();
        let mut values = Vec::with_capacity(n * n * target.dim());
        for chunk in self.values.chunks(d.max(1)).take(n * n) {
            if d == 0 {
                values.extend(core::iter::repeat(0).take(target.dim()));
            } else {
                values.extend(phi.mul_vec(chunk, p));
            }
        }
        Ok(TwoCochain { group: self.group.clone(), module: target.clone(), values })
    }

    /// `(σ, τ) ↦ f(π(σ), π(τ))` with coefficients in the inflated module.
    pub fn inflate(&self, pi: &Cover, inflated: &Arc<GModule>) -> Result<TwoCochain> {
        if !same_group(pi.target(), &self.group) || !same_group(inflated.group(), pi.source()) {
            return Err(Error::Mismatch("cover does not end at the cochain's group"));
        }
        TwoCochain::from_fn(inflated, |s, t| self.value(pi.apply(s), pi.apply(t)).to_vec())
    }

    /// `δh(σ, τ) = σ·h(τ) − h(στ) + h(σ)` for a normalized 1-cochain `h`.
    pub fn coboundary(module: &Arc<GModule>, h: &[Vec<u32>]) -> Result<TwoCochain> {
        let g = module.group();
        let p = module.characteristic();
        if h.len() != g.order() || h[0].iter().any(|&x| x != 0) {
            return Err(Error::Mismatch("1-cochain must be normalized with one value per element"));
        }
        TwoCochain::from_fn(module, |s, t| {
            let st = module.act(s, &h[t as usize]);
            (0..module.dim())
                .map(|r| linalg::add(linalg::sub(st[r], h[g.mul(s, t) as usize][r], p), h[s as usize][r], p))
                .collect()
        })
    }
}

/// `Z²`, `B²` and `H²(G, A)` for a simple module `A`, with an `F_A`-basis of `H²`.
#[derive(Clone, Debug)]
pub struct CohomSpace {
    group: Arc<FiniteGroup>,
    module: Arc<GModule>,
    field: Arc<EndoField>,
    gens: Vec<u32>,
    tree: Vec<(u32, usize)>,
    bfs: Vec<u32>,
    z2: Echelon,
    b2: Echelon,
    basis: Vec<Vec<u32>>,
    solver: SpanSolver,
}

pub fn cohom_space(g: &Arc<FiniteGroup>, a: &Arc<GModule>, field: &Arc<EndoField>) -> Result<Arc<CohomSpace>> {
    if !same_group(a.group(), g) {
        return Err(Error::Mismatch("module over a different group"));
    }
    if field.module().as_ref() != a.as_ref() || !is_simple_module(a) {
        return Err(Error::NotSimple);
    }
    let cochain_dim = g.order().saturating_sub(1).pow(2) * a.dim();
    if cochain_dim > DEFAULT_ORDER_CAP * DEFAULT_ORDER_CAP {
        return Err(Error::OrderCapExceeded { cap: DEFAULT_ORDER_CAP });
    }
    Ok(Arc::new(CohomSpace::build(g.clone(), a.clone(), field.clone())))
}

/// As [`cohom_space`], computing the endomorphism field first.
pub fn cohom_space_of(g: &Arc<FiniteGroup>, a: &Arc<GModule>) -> Result<Arc<CohomSpace>> {
    let field = Arc::new(endo_field(a)?);
    cohom_space(g, a, &field)
}

impl CohomSpace {
    fn build(group: Arc<FiniteGroup>, module: Arc<GModule>, field: Arc<EndoField>) -> Self {
        let gens = group.generators().to_vec();
        let n = group.order();
        let (mut tree, mut bfs) = (vec![(0u32, usize::MAX); n], vec![0u32]);
        let mut seen = BitSet::from_indices(n, [0]);
        let mut head = 0;
        while head < bfs.len() {
            let t = bfs[head];
            head += 1;
            for (j, &s) in gens.iter().enumerate() {
                let y = group.mul(t, s);
                if seen.insert(y as usize) {
                    tree[y as usize] = (t, j);
                    bfs.push(y);
                }
            }
        }
        let p = module.characteristic();
        let mut space = CohomSpace {
            group,
            module,
            field,
            gens,
            tree,
            bfs,
            z2: Echelon::new(p, 0),
            b2: Echelon::new(p, 0),
            basis: Vec::new(),
            solver: SpanSolver::new(p, &[]),
        };
        let nc = space.coord_len();
        space.z2 = space.cocycle_coordinates();
        let b2_rows: Vec<Vec<u32>> = space.coboundary_generators();
        space.b2 = Echelon::spanned_by(p, nc, &b2_rows);

        // F_p complement of B² in Z², then an F-basis of H² from it.
        let mut quotient = space.b2.clone();
        let mut f_span = space.b2.clone();
        let mut basis = Vec::new();
        for z in space.z2.rows().to_vec() {
            if !quotient.insert(&z) || f_span.contains(&z) {
                continue;
            }
            for &b in space.field.fp_basis() {
                f_span.insert(&space.scale_coords(b, &z));
            }
            basis.push(z);
        }
        let mut gens_for_solver: Vec<Vec<u32>> = Vec::new();
        for z in &basis {
            for &b in space.field.fp_basis() {
                gens_for_solver.push(space.scale_coords(b, z));
            }
        }
        gens_for_solver.extend(space.b2.rows().iter().cloned());
        space.solver = SpanSolver::new(p, &gens_for_solver);
        space.basis = basis;
        space
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn field(&self) -> &Arc<EndoField> {
        &self.field
    }

    /// `dim_F H²`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim_{F_p} H²`.
    pub fn dim_fp(&self) -> usize {
        self.z2.rank() - self.b2.rank()
    }

    pub fn z2_dim(&self) -> usize {
        self.z2.rank()
    }

    pub fn b2_dim(&self) -> usize {
        self.b2.rank()
    }

    fn coord_len(&self) -> usize {
        self.group.order().saturating_sub(1) * self.gens.len() * self.module.dim()
    }

    fn coord_index(&self, s: u32, j: usize) -> usize {
        ((s as usize - 1) * self.gens.len() + j) * self.module.dim()
    }

    /// Values `f(σ, s_j)` of a cochain.
    pub fn restrict(&self, f: &TwoCochain) -> Vec<u32> {
        let mut c = vec![0u32; self.coord_len()];
        let d = self.module.dim();
        for s in self.group.elements().skip(1) {
            for (j, &g) in self.gens.iter().enumerate() {
                let at = self.coord_index(s, j);
                c[at..at + d].copy_from_slice(f.value(s, g));
            }
        }
        c
    }

    fn param<'a>(&self, c: &'a [u32], s: u32, j: usize) -> Option<&'a [u32]> {
        (s != 0).then(|| {
            let at = self.coord_index(s, j);
            &c[at..at + self.module.dim()]
        })
    }

    /// The row `τ ↦ f(σ, τ)` determined by the coordinates.
    fn row(&self, c: &[u32], s: u32) -> Vec<u32> {
        let (n, d, p) = (self.group.order(), self.module.dim(), self.module.characteristic());
        let mut row = vec![0u32; n * d];
        if s == 0 {
            return row;
        }
        for &t in self.bfs.iter().skip(1) {
            let (prev, j) = self.tree[t as usize];
            let mut v = match self.param(c, self.group.mul(s, prev), j) {
                Some(x) => x.to_vec(),
                None => vec![0; d],
            };
            for r in 0..d {
                v[r] = linalg::add(v[r], row[prev as usize * d + r], p);
            }
            if let Some(x) = self.param(c, prev, j) {
                let acted = self.module.act(s, x);
                for r in 0..d {
                    v[r] = linalg::sub(v[r], acted[r], p);
                }
            }
            row[t as usize * d..(t as usize + 1) * d].copy_from_slice(&v);
        }
        row
    }

    /// The full cochain determined by coordinates.
    pub fn expand(&self, c: &[u32]) -> TwoCochain {
        let mut values = Vec::with_capacity(self.group.order().pow(2) * self.module.dim());
        for s in self.group.elements() {
            values.extend(self.row(c, s));
        }
        TwoCochain { group: self.group.clone(), module: self.module.clone(), values }
    }

    fn cocycle_coordinates(&self) -> Echelon {
        let (n, d, p) = (self.group.order(), self.module.dim(), self.module.characteristic());
        let nc = self.coord_len();
        // Non-tree edges (τ, s_j) carry the constraints.
        let edges: Vec<(u32, usize)> = self
            .group
            .elements()
            .flat_map(|t| (0..self.gens.len()).map(move |j| (t, j)))
            .filter(|&(t, j)| {
                let y = self.group.mul(t, self.gens[j]);
                y == 0 || self.tree[y as usize] != (t, j)
            })
            .collect();
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(nc);
        for unit in 0..nc {
            let mut c = vec![0u32; nc];
            c[unit] = 1;
            let rows: Vec<Vec<u32>> = self.group.elements().map(|s| self.row(&c, s)).collect();
            let mut col = Vec::with_capacity(n * edges.len() * d);
            for s in self.group.elements() {
                for &(t, j) in &edges {
                    let g = self.gens[j];
                    let tg = self.group.mul(t, g);
                    let st = self.group.mul(s, t);
                    let acted = match self.param(&c, t, j) {
                        Some(x) => self.module.act(s, x),
                        None => vec![0; d],
                    };
                    for r in 0..d {
                        let mut x = acted[r];
                        if let Some(v) = self.param(&c, st, j) {
                            x = linalg::sub(x, v[r], p);
                        }
                        x = linalg::add(x, rows[s as usize][tg as usize * d + r], p);
                        x = linalg::sub(x, rows[s as usize][t as usize * d + r], p);
                        col.push(x);
                    }
                }
            }
            columns.push(col);
        }
        let nrows = columns.first().map_or(0, Vec::len);
        let mut rowspace = Echelon::new(p, nc);
        let mut buf = vec![0u32; nc];
        for r in 0..nrows {
            let mut nonzero = false;
            for (slot, col) in buf.iter_mut().zip(&columns) {
                *slot = col[r];
                nonzero |= *slot != 0;
            }
            if nonzero {
                rowspace.insert(&buf);
            }
            if rowspace.rank() == nc {
                break;
            }
        }
        let m = Matrix::from_rows(rowspace.rank(), nc, rowspace.rows().concat());
        let null = if rowspace.rank() == 0 {
            (0..nc)
                .map(|i| {
                    let mut v = vec![0; nc];
                    v[i] = 1;
                    v
                })
                .collect()
        } else {
            m.nullspace(p)
        };
        Echelon::spanned_by(p, nc, &null)
    }

    fn coboundary_generators(&self) -> Vec<Vec<u32>> {
        let (d, p) = (self.module.dim(), self.module.characteristic());
        let mut out = Vec::new();
        for x in self.group.elements().skip(1) {
            for r in 0..d {
                let mut h = vec![0u32; d];
                h[r] = 1;
                // δh for h supported at x with value e_r.
                let hv = |y: u32| if y == x { h.clone() } else { vec![0u32; d] };
                let mut c = vec![0u32; self.coord_len()];
                for s in self.group.elements().skip(1) {
                    for (j, &g) in self.gens.iter().enumerate() {
                        let at = self.coord_index(s, j);
                        let a = self.module.act(s, &hv(g));
                        let b = hv(self.group.mul(s, g));
                        let e = hv(s);
                        for k in 0..d {
                            c[at + k] = linalg::add(linalg::sub(a[k], b[k], p), e[k], p);
                        }
                    }
                }
                out.push(c);
            }
        }
        out
    }

    fn scale_coords(&self, x: usize, c: &[u32]) -> Vec<u32> {
        let d = self.module.dim().max(1);
        let m = self.field.matrix(x);
        let p = self.module.characteristic();
        c.chunks(d).flat_map(|v| m.mul_vec(v, p)).collect()
    }

    /// `F`-coordinates of the class of a cocycle given in coordinates.
    fn f_coordinates(&self, c: &[u32]) -> Vec<usize> {
        let k = self.field.degree();
        let sol = self.solver.solve(c).expect("cocycle coordinates lie in Z²");
        sol[..self.basis.len() * k].chunks(k).map(|ch| self.field.from_fp_coords(ch)).collect()
    }

    /// The class of a normalized cocycle.
    pub fn class_of(self: &Arc<Self>, f: &TwoCochain) -> Result<CohomClass> {
        if f.module.as_ref() != self.module.as_ref() {
            return Err(Error::SpaceMismatch);
        }
        if !f.is_cocycle() {
            return Err(Error::NotCocycle);
        }
        let coords = self.f_coordinates(&self.restrict(f));
        Ok(CohomClass { space: self.clone(), coords })
    }

    /// The class with the given `F`-coordinates.
    pub fn class(self: &Arc<Self>, coords: Vec<usize>) -> Result<CohomClass> {
        if coords.len() != self.dim() || coords.iter().any(|&c| c >= self.field.order()) {
            return Err(Error::SpaceMismatch);
        }
        Ok(CohomClass { space: self.clone(), coords })
    }

    pub fn zero(self: &Arc<Self>) -> CohomClass {
        CohomClass { space: self.clone(), coords: vec![0; self.dim()] }
    }

    /// Every class, in lexicographic order of coordinates.
    pub fn classes(self: &Arc<Self>) -> Vec<CohomClass> {
        let q = self.field.order();
        let m = self.dim();
        (0..q.pow(m as u32))
            .map(|mut code| {
                let mut coords = vec![0; m];
                for slot in coords.iter_mut().rev() {
                    *slot = code % q;
                    code /= q;
                }
                CohomClass { space: self.clone(), coords }
            })
            .collect()
    }

    /// The representative `Σ c_i f_i` of the basis combination.
    fn representative_coords(&self, coords: &[usize]) -> Vec<u32> {
        let p = self.module.characteristic();
        let mut acc = vec![0u32; self.coord_len()];
        for (&c, z) in coords.iter().zip(&self.basis) {
            let v = self.scale_coords(c, z);
            linalg::axpy(&mut acc, 1, &v, p);
        }
        acc
    }

    pub fn is_coboundary(&self, f: &TwoCochain) -> bool {
        f.is_cocycle() && self.b2.contains(&self.restrict(f))
    }

    fn same(&self, other: &CohomSpace) -> bool {
        core::ptr::eq(self, other) || (self.module == other.module && self.field == other.field)
    }
}

/// An element of `H²(G, A)`, stored by its `F_A`-coordinates.
#[derive(Clone, Debug)]
pub struct CohomClass {
    space: Arc<CohomSpace>,
    coords: Vec<usize>,
}

impl PartialEq for CohomClass {
    fn eq(&self, other: &Self) -> bool {
        self.space.same(&other.space) && self.coords == other.coords
    }
}
impl Eq for CohomClass {}

impl CohomClass {
    pub fn space(&self) -> &Arc<CohomSpace> {
        &self.space
    }

    pub fn coordinates(&self) -> &[usize] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn representative(&self) -> TwoCochain {
        self.space.expand(&self.space.representative_coords(&self.coords))
    }

    pub fn scale(&self, c: usize) -> CohomClass {
        CohomClass { space: self.space.clone(), coords: self.space.field.scale(c, &self.coords) }
    }

    pub fn add(&self, other: &CohomClass) -> Result<CohomClass> {
        if !self.space.same(&other.space) {
            return Err(Error::SpaceMismatch);
        }
        let f = &self.space.field;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(CohomClass { space: self.space.clone(), coords })
    }
}

pub fn are_congruent(c1: &CohomClass, c2: &CohomClass) -> Result<bool> {
    if !c1.space.same(&c2.space) {
        return Err(Error::SpaceMismatch);
    }
    Ok(c1.coords == c2.coords)
}

/// Whether `c2 = α·c1` for a unit `α` of `F_A = Aut_G(A) ∪ {0}`.
pub fn are_isomorphic_extensions(c1: &CohomClass, c2: &CohomClass) -> Result<bool> {
    if !c1.space.same(&c2.space) {
        return Err(Error::SpaceMismatch);
    }
    Ok(c1.space.field.units().any(|a| c1.scale(a).coords == c2.coords))
}

/// A cover built from a cocycle, with its kernel identified with `A`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub cover: Cover,
    pub kernel: KernelModule,
    pub ident: ModuleHom,
}

/// The group on pairs `(a, g)` with
/// `(a1, g1)(a2, g2) = (a1 + g1·a2 + f(g1, g2), g1 g2)`; the pair `(a, g)`
/// has index `g·|A| + code(a)`.
pub fn extension_from_cocycle(f: &TwoCochain) -> Result<Extension> {
    if !f.is_cocycle() {
        return Err(Error::NotCocycle);
    }
    let (g, a) = (&f.group, &f.module);
    let (na, p, d) = (a.size(), a.characteristic(), a.dim());
    let order = g.order() * na;
    if order > DEFAULT_ORDER_CAP {
        return Err(Error::OrderCapExceeded { cap: DEFAULT_ORDER_CAP });
    }
    let vectors: Vec<Vec<u32>> = (0..na as u32).map(|c| a.decode(c)).collect();
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (g1, a1) = ((x / na) as u32, &vectors[x % na]);
        for y in 0..order {
            let (g2, a2) = ((y / na) as u32, &vectors[y % na]);
            let acted = a.act(g1, a2);
            let fv = f.value(g1, g2);
            let sum: Vec<u32> = (0..d).map(|r| linalg::add(linalg::add(a1[r], acted[r], p), fv[r], p)).collect();
            mul.push(g.mul(g1, g2) * na as u32 + a.encode(&sum));
        }
    }
    let h = Arc::new(FiniteGroup::from_table_unchecked(order, mul));
    let image = (0..order as u32).map(|x| x / na as u32).collect();
    let cover = Cover::from_surjection(GroupHom::new_unchecked(h, g.clone(), image));
    let kernel = kernel_module(&cover, cover.kernel())?;
    let ident = ModuleHom::new(kernel.module().clone(), a.clone(), Matrix::identity(d))?;
    Ok(Extension { cover, kernel, ident })
}

/// `f(σ, τ) = ident(u(σ) u(τ) u(στ)^{-1})` for the least-index section `u`.
pub fn cocycle_from_extension(pi: &Cover, kernel: &KernelModule, ident: &ModuleHom) -> Result<TwoCochain> {
    if kernel.subgroup() != pi.kernel() {
        return Err(Error::Mismatch("kernel module is not on the kernel of the cover"));
    }
    if !pi.kernel().is_abelian() {
        return Err(Error::KernelNotAbelian);
    }
    if ident.source().as_ref() != kernel.module().as_ref() || !ident.is_isomorphism() {
        return Err(Error::NotIsomorphism);
    }
    let (h, g) = (pi.source(), pi.target());
    let mut section = vec![u32::MAX; g.order()];
    for x in h.elements() {
        let y = pi.apply(x) as usize;
        if section[y] == u32::MAX {
            section[y] = x;
        }
    }
    TwoCochain::from_fn(ident.target(), |s, t| {
        let u = h.mul(h.mul(section[s as usize], section[t as usize]), h.inv(section[g.mul(s, t) as usize]));
        ident.apply(&kernel.vector(u).expect("lies in the kernel"))
    })
}

/// The cocycle of a cover with elementary abelian kernel, with coefficients
/// in the kernel itself.
pub fn cocycle_of_cover(pi: &Cover) -> Result<(KernelModule, TwoCochain)> {
    if !pi.kernel().is_abelian() {
        return Err(Error::KernelNotAbelian);
    }
    let kernel = kernel_module(pi, pi.kernel())?;
    let ident = ModuleHom::identity(kernel.module());
    let f = cocycle_from_extension(pi, &kernel, &ident)?;
    Ok((kernel, f))
}

/// The class of an extension whose kernel is identified with the space's module.
pub fn class_of_extension(
    space: &Arc<CohomSpace>,
    pi: &Cover,
    kernel: &KernelModule,
    ident: &ModuleHom,
) -> Result<CohomClass> {
    space.class_of(&cocycle_from_extension(pi, kernel, ident)?)
}

/// Pulls a class back along `π: G ↠ G'` into `H²(G, Inf A')`.
pub fn inflate(pi: &Cover, c: &CohomClass) -> Result<CohomClass> {
    let inflated = Arc::new(c.space.module.inflate(pi)?);
    let space = cohom_space_of(pi.source(), &inflated)?;
    inflate_into(pi, c, &space)
}

/// As [`inflate`], into an already computed target space.
pub fn inflate_into(pi: &Cover, c: &CohomClass, target: &Arc<CohomSpace>) -> Result<CohomClass> {
    let f = c.representative().inflate(pi, target.module())?;
    target.class_of(&f)
}

/// Transports a class along a module isomorphism `ψ: A → A'`.
pub fn transport(c: &CohomClass, psi: &ModuleHom, target: &Arc<CohomSpace>) -> Result<CohomClass> {
    if psi.source().as_ref() != c.space.module.as_ref() || psi.target().as_ref() != target.module.as_ref() {
        return Err(Error::SpaceMismatch);
    }
    target.class_of(&c.representative().push_forward(psi.matrix(), target.module())?)
}

/// The pair `(K*, S)` of a cover with `A`-generated elementary abelian
/// kernel `K`: `S(φ) = [φ ∘ f]` for the cocycle `f` of the cover.
#[derive(Clone, Debug)]
pub struct DualPairS {
    dual: DualSpace,
    space: Arc<CohomSpace>,
    kernel: KernelModule,
    cocycle: TwoCochain,
    images: Vec<CohomClass>,
}

pub fn x2(pi: &Cover, space: &Arc<CohomSpace>) -> Result<DualPairS> {
    if !same_group(pi.target(), space.group()) {
        return Err(Error::Mismatch("cover and cohomology over different groups"));
    }
    let (kernel, cocycle) = cocycle_of_cover(pi)?;
    let a = space.module();
    if kernel.module().characteristic() != a.characteristic() && kernel.module().dim() > 0 {
        return Err(Error::NotAGenerated);
    }
    let k = kernel.module();
    if k.dim() > 0 && !is_a_generated(k, a)? {
        return Err(Error::NotAGenerated);
    }
    let k = if k.dim() == 0 { Arc::new(GModule::zero(space.group(), a.characteristic())) } else { k.clone() };
    let dual = hom_space_with(&k, space.field())?;
    let cocycle = if kernel.module().dim() == 0 { TwoCochain::zero(&k) } else { cocycle };
    let images =
        dual.basis().iter().map(|phi| space.class_of(&cocycle.push_forward(phi, a)?)).collect::<Result<Vec<_>>>()?;
    Ok(DualPairS { dual, space: space.clone(), kernel, cocycle, images })
}

impl DualPairS {
    pub fn dual(&self) -> &DualSpace {
        &self.dual
    }

    pub fn space(&self) -> &Arc<CohomSpace> {
        &self.space
    }

    pub fn kernel(&self) -> &KernelModule {
        &self.kernel
    }

    pub fn cocycle(&self) -> &TwoCochain {
        &self.cocycle
    }

    /// `S(φ_i)` for the basis `φ_i` of `K*`.
    pub fn images(&self) -> &[CohomClass] {
        &self.images
    }

    fn columns(&self) -> Vec<Vec<usize>> {
        self.images.iter().map(|c| c.coords.clone()).collect()
    }

    /// `S(Σ c_i φ_i)`.
    pub fn apply(&self, coeffs: &[usize]) -> CohomClass {
        let f = self.space.field();
        let mut acc = vec![0usize; self.space.dim()];
        for (&c, col) in coeffs.iter().zip(self.columns()) {
            for (slot, &x) in acc.iter_mut().zip(&col) {
                *slot = f.add(*slot, f.mul(c, x));
            }
        }
        CohomClass { space: self.space.clone(), coords: acc }
    }

    /// `Img S` in reduced echelon form over `F`.
    pub fn image(&self) -> Vec<Vec<usize>> {
        self.space.field.rref(&self.columns())
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    /// `dim_F Ker S`.
    pub fn nullity(&self) -> usize {
        self.dual.dim() - self.rank()
    }

    /// Basis of `Ker S` as coordinate vectors over `F`.
    pub fn kernel_basis(&self) -> Vec<Vec<usize>> {
        self.space.field.relations(self.space.dim(), &self.columns())
    }
}

/// The fiber product of the extensions realizing each class.
pub fn y2(space: &Arc<CohomSpace>, values: &[CohomClass]) -> Result<FiberProduct> {
    let mut covers = Vec::with_capacity(values.len());
    for v in values {
        if !space.same(&v.space) {
            return Err(Error::SpaceMismatch);
        }
        covers.push(extension_from_cocycle(&v.representative())?.cover);
    }
    fiber_product(space.group(), &covers)
}

/// `g(σ, τ) = (f_i(σ, τ))_i` with coefficients in `A^n`.
pub fn fiber_cocycle(cocycles: &[TwoCochain]) -> Result<TwoCochain> {
    let first = cocycles.first().ok_or(Error::Mismatch("no cocycles given"))?;
    if cocycles.iter().any(|f| f.module != first.module) {
        return Err(Error::Mismatch("cocycles with different coefficients"));
    }
    let power = Arc::new(first.module.power(cocycles.len()));
    TwoCochain::from_fn(&power, |s, t| cocycles.iter().flat_map(|f| f.value(s, t).iter().copied()).collect())
}

/// Splits a cover with `A`-generated kernel `B` along maps `φ_i: B → A`.
///
/// Returns the extensions with cocycles `φ_i ∘ f` (where `f` is the cocycle
/// of the cover for the least-index section) and, for every element `y` of
/// the cover's source, its tuple of coordinates in those extensions. The
/// coordinate maps are homomorphisms over `G`.
pub(crate) fn split_along_duals(pi: &Cover, a: &Arc<GModule>, phis: &[Matrix]) -> Result<(Vec<Cover>, Vec<Vec<u32>>)> {
    let (kernel, f) = cocycle_of_cover(pi)?;
    let mut covers = Vec::with_capacity(phis.len());
    for phi in phis {
        covers.push(extension_from_cocycle(&f.push_forward(phi, a)?)?.cover);
    }
    let (h, g) = (pi.source(), pi.target());
    let mut section = vec![u32::MAX; g.order()];
    for x in h.elements() {
        let y = pi.apply(x) as usize;
        if section[y] == u32::MAX {
            section[y] = x;
        }
    }
    let p = a.characteristic();
    let na = a.size() as u32;
    let coords = h
        .elements()
        .map(|y| {
            let s = pi.apply(y);
            let b = h.mul(y, h.inv(section[s as usize]));
            let v = kernel.vector(b).expect("lies in the kernel");
            phis.iter().map(|phi| s * na + a.encode(&phi.mul_vec(&v, p))).collect()
        })
        .collect();
    Ok((covers, coords))
}

/// Subgroup of the extension group corresponding to a submodule of `A`.
pub fn kernel_subgroup(ext: &Extension, sub: &Echelon) -> Subgroup {
    let h = ext.cover.source();
    let a = ext.ident.target();
    let members = BitSet::from_indices(
        h.order(),
        (0..a.size() as u32).map(|c| a.decode(c)).filter(|v| sub.contains(v)).map(|v| {
            let back = ext.ident.inverse().expect("isomorphism").apply(&v);
            ext.kernel.element(&back) as usize
        }),
    );
    Subgroup::from_members(h.clone(), members)
}
