//! Finite G-modules over prime fields, the endomorphism field of a simple
//! module, and the dual space `K* = Hom_G(K, A)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::hom::same_group;
use crate::linalg::{self, Echelon, Matrix, SpanSolver};
use crate::{Cover, Error, FiniteGroup, Result, Subgroup};

/// A finite-dimensional `F_p`-space with a linear left action of `G`
/// on column vectors, stored as one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    p: u32,
    dim: usize,
    action: Vec<Matrix>,
}

impl GModule {
    /// Validates a full action table.
    pub fn new(group: Arc<FiniteGroup>, p: u32, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if !linalg::is_prime(p) {
            return Err(Error::InvalidModule("characteristic is not prime"));
        }
        if action.len() != group.order() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule("one d×d matrix per group element is required"));
        }
        if action.iter().any(|m| m.data().iter().any(|&x| x >= p)) {
            return Err(Error::InvalidModule("matrix entry out of range"));
        }
        if action[0] != Matrix::identity(dim) {
            return Err(Error::InvalidModule("identity does not act trivially"));
        }
        for a in group.elements() {
            for b in group.elements() {
                if action[group.mul(a, b) as usize] != action[a as usize].mul(&action[b as usize], p) {
                    return Err(Error::InvalidModule("action is not a homomorphism"));
                }
            }
        }
        Ok(GModule { group, p, dim, action })
    }

    /// Extends matrices for the group's generators to a full action.
    pub fn from_generator_matrices(group: Arc<FiniteGroup>, p: u32, dim: usize, mats: &[Matrix]) -> Result<Self> {
        if !linalg::is_prime(p) {
            return Err(Error::InvalidModule("characteristic is not prime"));
        }
        let gens = group.generators().to_vec();
        if mats.len() != gens.len() || mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule("one d×d matrix per generator is required"));
        }
        let mut action: Vec<Option<Matrix>> = vec![None; group.order()];
        action[0] = Some(Matrix::identity(dim));
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&g, m) in gens.iter().zip(mats) {
                let y = group.mul(x, g);
                let my = action[x as usize].as_ref().expect("visited").mul(m, p);
                match &action[y as usize] {
                    None => {
                        action[y as usize] = Some(my);
                        queue.push(y);
                    }
                    Some(existing) if *existing != my => {
                        return Err(Error::InvalidModule("generator matrices violate a relation"))
                    }
                    _ => {}
                }
            }
        }
        let action = action.into_iter().map(|m| m.expect("generators span the group")).collect();
        Ok(GModule { group, p, dim, action })
    }

    pub fn trivial(group: &Arc<FiniteGroup>, p: u32, dim: usize) -> Self {
        GModule { group: group.clone(), p, dim, action: vec![Matrix::identity(dim); group.order()] }
    }

    pub fn zero(group: &Arc<FiniteGroup>, p: u32) -> Self {
        Self::trivial(group, p, 0)
    }

    /// One-dimensional module where `g` acts by the scalar `chi[g]`.
    pub fn from_character(group: &Arc<FiniteGroup>, p: u32, chi: &[u32]) -> Result<Self> {
        let action = chi.iter().map(|&c| Matrix::from_rows(1, 1, vec![c % p])).collect();
        Self::new(group.clone(), p, 1, action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of elements, `p^dim`.
    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.dim as u32)
    }

    pub fn action(&self, g: u32) -> &Matrix {
        &self.action[g as usize]
    }

    pub fn act(&self, g: u32, v: &[u32]) -> Vec<u32> {
        self.action[g as usize].mul_vec(v, self.p)
    }

    /// Integer code `Σ v_i p^i` of a vector.
    pub fn encode(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn decode(&self, mut code: u32) -> Vec<u32> {
        (0..self.dim)
            .map(|_| {
                let x = code % self.p;
                code /= self.p;
                x
            })
            .collect()
    }

    /// The module pulled back along `pi: G' ↠ G`.
    pub fn inflate(&self, pi: &Cover) -> Result<GModule> {
        if !same_group(pi.target(), &self.group) {
            return Err(Error::Mismatch("cover does not end at the module's group"));
        }
        let action = pi.source().elements().map(|g| self.action[pi.apply(g) as usize].clone()).collect();
        Ok(GModule { group: pi.source().clone(), p: self.p, dim: self.dim, action })
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::Mismatch("modules over different groups"));
        }
        if self.p != other.p {
            return Err(Error::CharacteristicMismatch(self.p, other.p));
        }
        let d = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = Matrix::zero(d, d);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(GModule { group: self.group.clone(), p: self.p, dim: d, action })
    }

    /// `A^n`.
    pub fn power(&self, n: usize) -> GModule {
        let mut acc = GModule::zero(&self.group, self.p);
        for _ in 0..n {
            acc = acc.direct_sum(self).expect("same group and characteristic");
        }
        acc
    }

    /// Whether the subspace is stable under the action.
    pub fn is_invariant(&self, sub: &Echelon) -> bool {
        self.group.generators().iter().all(|&g| sub.rows().iter().all(|v| sub.contains(&self.act(g, v))))
    }

    /// Smallest submodule containing the vectors.
    pub fn submodule_generated(&self, vectors: &[Vec<u32>]) -> Echelon {
        let mut span = Echelon::new(self.p, self.dim);
        let mut queue: Vec<Vec<u32>> = Vec::new();
        for v in vectors {
            if span.insert(v) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for &g in self.group.generators() {
                let w = self.act(g, &v);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        span
    }

    /// The module structure on an invariant subspace, in its echelon basis.
    pub fn submodule(&self, sub: &Echelon) -> Result<GModule> {
        if !self.is_invariant(sub) {
            return Err(Error::NotSubmodule);
        }
        let basis: Vec<Vec<u32>> = sub.rows().to_vec();
        let solver = SpanSolver::new(self.p, &basis);
        let m = basis.len();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<u32>> =
                    basis.iter().map(|b| solver.solve(&a.mul_vec(b, self.p)).expect("invariant")).collect();
                Matrix::from_columns(m, &cols)
            })
            .collect();
        Ok(GModule { group: self.group.clone(), p: self.p, dim: m, action })
    }

    /// Matrices of all `G`-maps `self → target` over `F_p`, as a basis.
    pub fn hom_basis(&self, target: &GModule) -> Result<Vec<Matrix>> {
        if self.p != target.p {
            return Err(Error::CharacteristicMismatch(self.p, target.p));
        }
        if !same_group(&self.group, &target.group) {
            return Err(Error::Mismatch("modules over different groups"));
        }
        let (dk, da, p) = (self.dim, target.dim, self.p);
        let unknowns = da * dk;
        if unknowns == 0 {
            return Ok(Vec::new());
        }
        let gens = self.group.generators();
        let mut eqs = Matrix::zero(gens.len() * unknowns, unknowns);
        for (gi, &g) in gens.iter().enumerate() {
            let (rk, ra) = (self.action(g), target.action(g));
            for i in 0..da {
                for j in 0..dk {
                    let row = gi * unknowns + i * dk + j;
                    // (X ρ_K(g))_{ij} − (ρ_A(g) X)_{ij}
                    for l in 0..dk {
                        let c = eqs.get(row, i * dk + l);
                        eqs.set(row, i * dk + l, linalg::add(c, rk.get(l, j), p));
                    }
                    for l in 0..da {
                        let c = eqs.get(row, l * dk + j);
                        eqs.set(row, l * dk + j, linalg::sub(c, ra.get(i, l), p));
                    }
                }
            }
        }
        Ok(eqs.nullspace(p).into_iter().map(|v| Matrix::from_rows(da, dk, v)).collect())
    }
}

/// A `G`-equivariant linear map, as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    source: Arc<GModule>,
    target: Arc<GModule>,
    matrix: Matrix,
}

impl ModuleHom {
    pub fn new(source: Arc<GModule>, target: Arc<GModule>, matrix: Matrix) -> Result<Self> {
        if source.p != target.p {
            return Err(Error::CharacteristicMismatch(source.p, target.p));
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::Mismatch("matrix shape does not match the modules"));
        }
        let p = source.p;
        for &g in source.group.generators() {
            if matrix.mul(source.action(g), p) != target.action(g).mul(&matrix, p) {
                return Err(Error::Mismatch("matrix is not G-equivariant"));
            }
        }
        Ok(ModuleHom { source, target, matrix })
    }

    pub fn identity(m: &Arc<GModule>) -> Self {
        ModuleHom { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.dim) }
    }

    pub fn source(&self) -> &Arc<GModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v, self.source.p)
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &ModuleHom) -> Result<ModuleHom> {
        if self.target.as_ref() != then.source.as_ref() {
            return Err(Error::Mismatch("composition of module maps"));
        }
        let matrix = then.matrix.mul(&self.matrix, self.source.p);
        Ok(ModuleHom { source: self.source.clone(), target: then.target.clone(), matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank(self.source.p)
    }

    pub fn kernel(&self) -> Echelon {
        Echelon::spanned_by(self.source.p, self.source.dim, &self.matrix.nullspace(self.source.p))
    }

    pub fn image(&self) -> Echelon {
        let cols: Vec<Vec<u32>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        Echelon::spanned_by(self.source.p, self.target.dim, &cols)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Result<ModuleHom> {
        let inv = self.matrix.inverse(self.source.p).ok_or(Error::NotIsomorphism)?;
        Ok(ModuleHom { source: self.target.clone(), target: self.source.clone(), matrix: inv })
    }
}

/// Whether the module is nonzero with no proper nonzero submodule.
pub fn is_simple_module(a: &GModule) -> bool {
    if a.dim == 0 {
        return false;
    }
    let total = a.size() as u32;
    (1..total).all(|code| {
        let v = a.decode(code);
        // One representative per line: leading coordinate equal to 1.
        v.iter().find(|&&x| x != 0) != Some(&1) || a.submodule_generated(&[v]).rank() == a.dim
    })
}

/// An isomorphism between two simple modules, if any.
pub fn simple_module_isomorphism(a: &Arc<GModule>, b: &Arc<GModule>) -> Option<ModuleHom> {
    if a.p != b.p || a.dim != b.dim || !same_group(&a.group, &b.group) {
        return None;
    }
    let basis = a.hom_basis(b).ok()?;
    let m = basis.into_iter().find(|m| m.inverse(a.p).is_some())?;
    Some(ModuleHom { source: a.clone(), target: b.clone(), matrix: m })
}

/// The finite field `End_G(A)` of a simple module, with elements listed in
/// increasing order of their matrix entries. Element 0 is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoField {
    module: Arc<GModule>,
    p: u32,
    degree: usize,
    elements: Vec<Matrix>,
    add: Vec<u32>,
    mul: Vec<u32>,
    one: usize,
    generator: usize,
    log: Vec<u32>,
    fp_basis: Vec<usize>,
    fp_coords: Vec<Vec<u32>>,
    from_coords: BTreeMap<Vec<u32>, usize>,
}

pub fn endo_field(a: &Arc<GModule>) -> Result<EndoField> {
    if !is_simple_module(a) {
        return Err(Error::NotSimple);
    }
    let p = a.p;
    let basis = a.hom_basis(a)?;
    let k = basis.len();
    let q = (p as usize).pow(k as u32);
    let mut elements: Vec<Matrix> = (0..q)
        .map(|mut code| {
            let mut m = Matrix::zero(a.dim, a.dim);
            for b in &basis {
                let c = (code % p as usize) as u32;
                code /= p as usize;
                m = m.add(&b.scale(c, p), p);
            }
            m
        })
        .collect();
    elements.sort_by(|x, y| x.data().cmp(y.data()));
    let index: BTreeMap<&[u32], usize> = elements.iter().enumerate().map(|(i, m)| (m.data(), i)).collect();
    let lookup = |m: &Matrix| index[m.data()];
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    for i in 0..q {
        for j in 0..q {
            add[i * q + j] = lookup(&elements[i].add(&elements[j], p)) as u32;
            mul[i * q + j] = lookup(&elements[i].mul(&elements[j], p)) as u32;
        }
    }
    let one = lookup(&Matrix::identity(a.dim));
    for i in 0..q {
        for j in 0..q {
            if mul[i * q + j] != mul[j * q + i] {
                return Err(Error::NotSimple);
            }
        }
        if i != 0 && !(0..q).any(|j| mul[i * q + j] as usize == one) {
            return Err(Error::NotSimple);
        }
    }
    let mult_order = |x: usize| {
        let (mut y, mut n) = (x, 1);
        while y != one {
            y = mul[y * q + x] as usize;
            n += 1;
        }
        n
    };
    let generator = (1..q).find(|&x| (x != one || q == 2) && mult_order(x) == q - 1).expect("finite fields are cyclic");
    let mut log = vec![u32::MAX; q];
    let mut y = one;
    for e in 0..q - 1 {
        log[y] = e as u32;
        y = mul[y * q + generator] as usize;
    }
    let mut fp_basis = vec![one];
    for _ in 1..k {
        let last = *fp_basis.last().expect("nonempty");
        fp_basis.push(mul[last * q + generator] as usize);
    }
    let mut fp_coords = vec![Vec::new(); q];
    let mut from_coords = BTreeMap::new();
    for mut code in 0..q {
        let coords: Vec<u32> = (0..k)
            .map(|_| {
                let c = (code % p as usize) as u32;
                code /= p as usize;
                c
            })
            .collect();
        let mut m = Matrix::zero(a.dim, a.dim);
        for (&c, &b) in coords.iter().zip(&fp_basis) {
            m = m.add(&elements[b].scale(c, p), p);
        }
        let e = lookup(&m);
        fp_coords[e] = coords.clone();
        from_coords.insert(coords, e);
    }
    Ok(EndoField {
        module: a.clone(),
        p,
        degree: k,
        elements,
        add,
        mul,
        one,
        generator,
        log,
        fp_basis,
        fp_coords,
        from_coords,
    })
}

impl EndoField {
    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// `[F : F_p]`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// Least element generating the unit group.
    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn matrix(&self, x: usize) -> &Matrix {
        &self.elements[x]
    }

    pub fn element_of(&self, m: &Matrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order() + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| (0..self.order()).find(|&b| self.mul(a, b) == self.one).expect("field"))
    }

    /// Nonzero elements.
    pub fn units(&self) -> impl Iterator<Item = usize> {
        1..self.order()
    }

    /// `0`, `1`, integers for prime fields, `w^k` powers of the generator otherwise.
    pub fn label(&self, x: usize) -> String {
        if x == 0 {
            return "0".into();
        }
        if self.degree == 1 {
            return format!("{}", self.elements[x].get(0, 0));
        }
        match self.log[x] {
            0 => "1".into(),
            1 => "w".into(),
            e => format!("w^{e}"),
        }
    }

    pub fn parse_label(&self, s: &str) -> Option<usize> {
        (0..self.order()).find(|&x| self.label(x) == s)
    }

    /// The `F_p`-basis `1, w, …, w^{k-1}` of `F`.
    pub fn fp_basis(&self) -> &[usize] {
        &self.fp_basis
    }

    pub fn fp_coords(&self, x: usize) -> &[u32] {
        &self.fp_coords[x]
    }

    pub fn from_fp_coords(&self, c: &[u32]) -> usize {
        self.from_coords[c]
    }

    /// Flattens an `F`-vector into `F_p` coordinates.
    pub fn expand(&self, v: &[usize]) -> Vec<u32> {
        v.iter().flat_map(|&x| self.fp_coords[x].iter().copied()).collect()
    }

    pub fn scale(&self, c: usize, v: &[usize]) -> Vec<usize> {
        v.iter().map(|&x| self.mul(c, x)).collect()
    }

    /// `F_p`-echelon form of the `F`-span of the rows.
    pub fn span_fp(&self, n: usize, rows: &[Vec<usize>]) -> Echelon {
        let mut e = Echelon::new(self.p, n * self.degree);
        for r in rows {
            for &b in &self.fp_basis {
                e.insert(&self.expand(&self.scale(b, r)));
            }
        }
        e
    }

    /// Basis of `{c : Σ c_i v_i = 0}` for vectors `v_i` of length `len`.
    pub fn relations(&self, len: usize, vectors: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let n = vectors.len();
        let rows: Vec<Vec<usize>> = (0..len).map(|r| vectors.iter().map(|v| v[r]).collect()).collect();
        let reduced = self.rref(&rows);
        let pivots: Vec<usize> =
            reduced.iter().map(|row| row.iter().position(|&x| x != 0).expect("nonzero row")).collect();
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0usize; n];
                v[free] = self.one;
                for (row, &pc) in reduced.iter().zip(&pivots) {
                    v[pc] = self.neg(row[free]);
                }
                v
            })
            .collect()
    }

    /// Reduced row echelon form over `F`, zero rows dropped.
    pub fn rref(&self, rows: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut m: Vec<Vec<usize>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(pr, r);
            let s = self.inv(m[r][c]).expect("nonzero pivot");
            m[r] = self.scale(s, &m[r]);
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = self.neg(m[i][c]);
                    let pivot_row = m[r].clone();
                    for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                        *x = self.add(*x, self.mul(f, y));
                    }
                }
            }
            r += 1;
        }
        m.truncate(r);
        m
    }
}

/// `Hom_G(K, A)` as an `F`-vector space with a chosen `F`-basis.
#[derive(Clone, Debug)]
pub struct DualSpace {
    module: Arc<GModule>,
    target: Arc<GModule>,
    field: Arc<EndoField>,
    basis: Vec<Matrix>,
    solver: SpanSolver,
}

pub fn hom_space(k: &Arc<GModule>, a: &Arc<GModule>) -> Result<DualSpace> {
    if k.p != a.p {
        return Err(Error::CharacteristicMismatch(k.p, a.p));
    }
    let field = Arc::new(endo_field(a)?);
    hom_space_with(k, &field)
}

/// `Hom_G(K, A)` for the module of an already computed endomorphism field.
pub fn hom_space_with(k: &Arc<GModule>, field: &Arc<EndoField>) -> Result<DualSpace> {
    let a = field.module();
    if k.p != a.p {
        return Err(Error::CharacteristicMismatch(k.p, a.p));
    }
    let p = k.p;
    let flat_dim = a.dim * k.dim;
    let mut span = Echelon::new(p, flat_dim);
    let mut basis = Vec::new();
    for phi in k.hom_basis(a)? {
        if span.contains(phi.data()) {
            continue;
        }
        for &b in field.fp_basis() {
            span.insert(field.matrix(b).mul(&phi, p).data());
        }
        basis.push(phi);
    }
    let solver = SpanSolver::new(p, &spread(field, &basis));
    Ok(DualSpace { module: k.clone(), target: a.clone(), field: field.clone(), basis, solver })
}

fn spread(field: &EndoField, basis: &[Matrix]) -> Vec<Vec<u32>> {
    let p = field.characteristic();
    basis
        .iter()
        .flat_map(|phi| field.fp_basis().iter().map(move |&b| field.matrix(b).mul(phi, p).data().to_vec()))
        .collect()
}

impl DualSpace {
    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn field(&self) -> &Arc<EndoField> {
        &self.field
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// `dim_F K*`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_hom(&self, i: usize) -> ModuleHom {
        ModuleHom { source: self.module.clone(), target: self.target.clone(), matrix: self.basis[i].clone() }
    }

    /// `Σ c_i φ_i`.
    pub fn combination(&self, coeffs: &[usize]) -> Matrix {
        let p = self.field.characteristic();
        let mut m = Matrix::zero(self.target.dim, self.module.dim);
        for (&c, phi) in coeffs.iter().zip(&self.basis) {
            m = m.add(&self.field.matrix(c).mul(phi, p), p);
        }
        m
    }

    /// `F`-coordinates of a `G`-map in the chosen basis.
    pub fn coordinates(&self, phi: &Matrix) -> Option<Vec<usize>> {
        let k = self.field.degree();
        let c = self.solver.solve(phi.data())?;
        Some(c.chunks(k.max(1)).take(self.dim()).map(|ch| self.field.from_fp_coords(ch)).collect())
    }

    /// Common kernel of all maps in `K*`.
    pub fn common_kernel(&self) -> Echelon {
        let p = self.field.characteristic();
        let (da, dk) = (self.target.dim, self.module.dim);
        let mut stacked = Matrix::zero(self.basis.len() * da, dk);
        for (i, phi) in self.basis.iter().enumerate() {
            for r in 0..da {
                for c in 0..dk {
                    stacked.set(i * da + r, c, phi.get(r, c));
                }
            }
        }
        Echelon::spanned_by(p, dk, &stacked.nullspace(p))
    }

    /// `F`-basis, in coordinates, of the maps vanishing on every given vector.
    pub fn annihilator(&self, vectors: &[Vec<u32>]) -> Vec<Vec<usize>> {
        let p = self.field.characteristic();
        let (k, n, da) = (self.field.degree(), self.basis.len(), self.target.dim);
        let mut m = Matrix::zero(vectors.len() * da, n * k);
        for (j, phi) in self.basis.iter().enumerate() {
            for (t, &b) in self.field.fp_basis().iter().enumerate() {
                let scaled = self.field.matrix(b).mul(phi, p);
                for (w, v) in vectors.iter().enumerate() {
                    for (r, x) in scaled.mul_vec(v, p).into_iter().enumerate() {
                        m.set(w * da + r, j * k + t, x);
                    }
                }
            }
        }
        let mut basis: Vec<Vec<usize>> = Vec::new();
        for v in m.nullspace(p) {
            let coords: Vec<usize> = v.chunks(k).map(|ch| self.field.from_fp_coords(ch)).collect();
            let mut trial = basis.clone();
            trial.push(coords.clone());
            if self.field.rref(&trial).len() > basis.len() {
                basis.push(coords);
            }
        }
        basis
    }

    /// The map `K → A^n`, `b ↦ (φ_i(b))`.
    pub fn evaluation(&self) -> ModuleHom {
        let (da, dk, n) = (self.target.dim, self.module.dim, self.basis.len());
        let mut m = Matrix::zero(n * da, dk);
        for (i, phi) in self.basis.iter().enumerate() {
            for r in 0..da {
                for c in 0..dk {
                    m.set(i * da + r, c, phi.get(r, c));
                }
            }
        }
        ModuleHom { source: self.module.clone(), target: Arc::new(self.target.power(n)), matrix: m }
    }
}

/// Whether the common kernel of `Hom_G(K, A)` is zero.
pub fn is_a_generated(k: &Arc<GModule>, a: &Arc<GModule>) -> Result<bool> {
    if k.dim == 0 {
        return Ok(true);
    }
    let basis = k.hom_basis(a)?;
    let p = k.p;
    let mut stacked = Matrix::zero(basis.len() * a.dim, k.dim);
    for (i, phi) in basis.iter().enumerate() {
        for r in 0..a.dim {
            for c in 0..k.dim {
                stacked.set(i * a.dim + r, c, phi.get(r, c));
            }
        }
    }
    Ok(stacked.rank(p) == k.dim)
}

/// The isomorphism `K → A^n` given by an `F`-basis of `K*`.
pub fn decompose_isotypic(k: &Arc<GModule>, a: &Arc<GModule>) -> Result<(DualSpace, ModuleHom)> {
    if !is_a_generated(k, a)? {
        return Err(Error::NotAGenerated);
    }
    let dual = hom_space(k, a)?;
    let eval = dual.evaluation();
    if !eval.is_isomorphism() {
        return Err(Error::NotAGenerated);
    }
    Ok((dual, eval))
}

/// A submodule `M` with `K = L ⊕ M`, cut out by maps in `K*` whose
/// restrictions form a basis of `L*`.
pub fn complement(k: &Arc<GModule>, a: &Arc<GModule>, l: &Echelon) -> Result<Echelon> {
    if l.ambient_dim() != k.dim || !k.is_invariant(l) {
        return Err(Error::NotSubmodule);
    }
    if !is_a_generated(k, a)? {
        return Err(Error::NotAGenerated);
    }
    let p = k.p;
    if k.dim == 0 {
        return Ok(Echelon::new(p, 0));
    }
    let dual = hom_space(k, a)?;
    let field = dual.field().clone();
    let lb: Vec<Vec<u32>> = l.rows().to_vec();
    let restrict = |phi: &Matrix| -> Vec<u32> { lb.iter().flat_map(|v| phi.mul_vec(v, p)).collect() };
    let mut restricted = Echelon::new(p, lb.len() * a.dim);
    let mut chosen = Vec::new();
    for phi in dual.basis() {
        if restricted.contains(&restrict(phi)) {
            continue;
        }
        for &b in field.fp_basis() {
            restricted.insert(&restrict(&field.matrix(b).mul(phi, p)));
        }
        chosen.push(phi.clone());
    }
    let mut stacked = Matrix::zero(chosen.len() * a.dim, k.dim);
    for (i, phi) in chosen.iter().enumerate() {
        for r in 0..a.dim {
            for c in 0..k.dim {
                stacked.set(i * a.dim + r, c, phi.get(r, c));
            }
        }
    }
    let m = Echelon::spanned_by(p, k.dim, &stacked.nullspace(p));
    debug_assert_eq!(m.rank() + l.rank(), k.dim);
    Ok(m)
}

/// The natural map `Θ_K: K → Hom_F(K*, A) ≅ A^n` for an `F`-basis of `K*`.
pub fn theta(k: &Arc<GModule>, a: &Arc<GModule>) -> Result<ModuleHom> {
    Ok(hom_space(k, a)?.evaluation())
}

/// The natural map `Λ_V: F^n → (V*)* = Hom_G(A^n, A)`, as the `F`-coordinates
/// of the images of the standard basis vectors in the chosen basis of `(A^n)*`.
pub fn lambda(field: &Arc<EndoField>, n: usize) -> Result<(DualSpace, Vec<Vec<usize>>)> {
    let a = field.module();
    let vstar = Arc::new(a.power(n));
    let dual = hom_space_with(&vstar, field)?;
    let images = (0..n)
        .map(|i| {
            // ψ ↦ ψ(e_i) is the projection of A^n onto its i-th summand.
            let mut m = Matrix::zero(a.dim, a.dim * n);
            for r in 0..a.dim {
                m.set(r, i * a.dim + r, 1);
            }
            dual.coordinates(&m).expect("projections are G-maps")
        })
        .collect();
    Ok((dual, images))
}

/// The module on an elementary abelian normal subgroup `L ≤ Z(Ker π)`, with
/// `G` acting by conjugation through any preimage.
#[derive(Clone, Debug)]
pub struct KernelModule {
    subgroup: Subgroup,
    module: Arc<GModule>,
    basis: Vec<u32>,
    code_of: Vec<u32>,
    element_of: Vec<u32>,
}

pub fn module_from_cover(pi: &Cover, l: &Subgroup) -> Result<GModule> {
    Ok(kernel_module(pi, l)?.module.as_ref().clone())
}

/// As [`module_from_cover`], keeping the identification of group elements
/// with vectors. The basis is chosen greedily from the least element indices.
pub fn kernel_module(pi: &Cover, l: &Subgroup) -> Result<KernelModule> {
    let h = pi.source();
    if !same_group(l.parent(), h) {
        return Err(Error::Mismatch("subgroup of a different group"));
    }
    if !l.is_normal() {
        return Err(Error::NotNormal);
    }
    if !l.is_subgroup_of(pi.kernel()) {
        return Err(Error::NotInsideKernel);
    }
    if !pi.kernel().is_subgroup_of(&l.centralizer_in(pi.kernel())) {
        return Err(Error::NotCentralInKernel);
    }
    let p = if l.is_trivial() { 2 } else { h.element_order(l.elements()[1]) };
    if !linalg::is_prime(p) || !l.exponent_is_prime(p) || !l.is_abelian() {
        return Err(Error::NotElementaryAbelian);
    }
    let mut basis: Vec<u32> = Vec::new();
    let mut span = h.closure(&[]);
    for &x in l.elements() {
        if !span.contains(x as usize) {
            basis.push(x);
            span = h.closure(&basis);
        }
    }
    let d = basis.len();
    let size = (p as usize).pow(d as u32);
    let mut code_of = vec![u32::MAX; h.order()];
    let mut element_of = vec![0u32; size];
    for code in 0..size as u32 {
        let mut c = code;
        let mut x = 0u32;
        for &b in &basis {
            x = h.mul(x, h.pow(b, c % p));
            c /= p;
        }
        element_of[code as usize] = x;
        code_of[x as usize] = code;
    }
    let g = pi.target();
    let mut preimage = vec![u32::MAX; g.order()];
    for x in h.elements() {
        let y = pi.apply(x) as usize;
        if preimage[y] == u32::MAX {
            preimage[y] = x;
        }
    }
    let decode = |mut code: u32| -> Vec<u32> {
        (0..d)
            .map(|_| {
                let v = code % p;
                code /= p;
                v
            })
            .collect()
    };
    let action = g
        .elements()
        .map(|s| {
            let t = preimage[s as usize];
            let cols: Vec<Vec<u32>> = basis.iter().map(|&b| decode(code_of[h.conj(t, b) as usize])).collect();
            Matrix::from_columns(d, &cols)
        })
        .collect();
    let module = Arc::new(GModule { group: g.clone(), p, dim: d, action });
    Ok(KernelModule { subgroup: l.clone(), module, basis, code_of, element_of })
}

impl KernelModule {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    /// Group elements matching the standard basis vectors.
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    /// Coordinates of a subgroup element.
    pub fn vector(&self, x: u32) -> Option<Vec<u32>> {
        let code = *self.code_of.get(x as usize)?;
        (code != u32::MAX).then(|| self.module.decode(code))
    }

    /// The subgroup element with the given coordinates.
    pub fn element(&self, v: &[u32]) -> u32 {
        self.element_of[self.module.encode(v) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{named, quotient, FiniteGroup};

    fn sign_module() -> Arc<GModule> {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        Arc::new(GModule::from_character(&c2, 3, &[1, 2]).unwrap())
    }

    fn f4_over_c3() -> Arc<GModule> {
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let m = Matrix::from_rows(2, 2, vec![0, 1, 1, 1]);
        Arc::new(GModule::from_generator_matrices(c3, 2, 2, &[m]).unwrap())
    }

    #[test]
    fn modules_from_covers() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let k = Subgroup::generated(&c4, &[2]);
        let (_, eta1) = quotient(&c4, &k).unwrap();
        let m = module_from_cover(&eta1, &k).unwrap();
        assert_eq!((m.characteristic(), m.dim()), (2, 1));
        assert_eq!(m, GModule::trivial(eta1.target(), 2, 1));

        let s3 = Arc::new(named::symmetric(3));
        let a3 = Subgroup::generated(&s3, &[2]);
        let (_, sign) = quotient(&s3, &a3).unwrap();
        let m = module_from_cover(&sign, &a3).unwrap();
        assert_eq!(m.characteristic(), 3);
        assert_eq!(m.action(1).get(0, 0), 2);

        let id = Cover::identity(&c4);
        assert_eq!(module_from_cover(&id, &Subgroup::trivial(&c4)).unwrap().dim(), 0);
        let to_one = Cover::to_trivial(&c4);
        assert_eq!(module_from_cover(&to_one, &Subgroup::whole(&c4)).unwrap_err(), Error::NotElementaryAbelian);
        let q8 = Arc::new(named::quaternion());
        let to_one = Cover::to_trivial(&q8);
        let v = crate::lattice::normal_subgroups(&q8).into_iter().find(|n| n.order() == 4).unwrap();
        assert_eq!(module_from_cover(&to_one, &v).unwrap_err(), Error::NotCentralInKernel);
    }

    #[test]
    fn simplicity_and_fields() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let f2 = Arc::new(GModule::trivial(&c2, 2, 1));
        assert!(is_simple_module(&f2));
        assert!(!is_simple_module(&GModule::trivial(&c2, 2, 2)));
        assert!(is_simple_module(&sign_module()));
        assert_eq!(endo_field(&f2).unwrap().order(), 2);
        let f3 = endo_field(&sign_module()).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.label(f3.generator()), "2");
        let f4 = endo_field(&f4_over_c3()).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(f4.degree(), 2);
        let w = f4.generator();
        assert_eq!(f4.mul(w, f4.mul(w, w)), f4.one());
        assert_eq!(endo_field(&Arc::new(GModule::trivial(&c2, 2, 2))).unwrap_err(), Error::NotSimple);
    }

    #[test]
    fn dual_spaces() {
        let a = f4_over_c3();
        let k2 = Arc::new(a.power(2));
        let d = hom_space(&k2, &a).unwrap();
        assert_eq!(d.dim(), 2);
        assert!(d.evaluation().is_isomorphism());
        assert_eq!(hom_space(&a, &a).unwrap().dim(), 1);
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let f2 = Arc::new(GModule::trivial(&c2, 2, 1));
        assert_eq!(hom_space(&sign_module(), &f2).unwrap_err(), Error::CharacteristicMismatch(3, 2));
        for c in 0..4 {
            for e in 0..4 {
                let phi = d.combination(&[c, e]);
                assert_eq!(d.coordinates(&phi).unwrap(), vec![c, e]);
            }
        }
    }

    #[test]
    fn generation_and_complements() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let f3 = Arc::new(GModule::trivial(&c2, 3, 1));
        let sign = sign_module();
        let mixed = Arc::new(f3.direct_sum(&sign).unwrap());
        assert!(!is_a_generated(&mixed, &f3).unwrap());
        assert!(is_a_generated(&Arc::new(f3.power(3)), &f3).unwrap());
        assert!(is_a_generated(&Arc::new(GModule::zero(&c2, 3)), &f3).unwrap());

        let f2 = Arc::new(GModule::trivial(&c2, 2, 1));
        let k = Arc::new(f2.power(2));
        let diag = Echelon::spanned_by(2, 2, &[vec![1, 1]]);
        let m = complement(&k, &f2, &diag).unwrap();
        assert_eq!(m.rows(), &[vec![0, 1]]);
        assert_eq!(complement(&k, &f2, &Echelon::new(2, 2)).unwrap().rank(), 2);
        assert_eq!(complement(&k, &f2, &Echelon::spanned_by(2, 2, &[vec![1, 0], vec![0, 1]])).unwrap().rank(), 0);
    }
}
