//! Linear algebra over prime fields `F_p`.

use alloc::vec;
use alloc::vec::Vec;

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `y += c·x`.
pub fn axpy(y: &mut [u32], c: u32, x: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        *a = add(*a, mul(c, b, p), p);
    }
}

pub fn scaled(x: &[u32], c: u32, p: u32) -> Vec<u32> {
    x.iter().map(|&a| mul(a, c, p)).collect()
}

/// Dense row-major matrix with entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate().take(rows) {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, p: u32) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimensions do not match");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    let (row, src) = (i * other.cols, k * other.cols);
                    for j in 0..other.cols {
                        out.data[row + j] = add(out.data[row + j], mul(a, other.data[src + j], p), p);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], p: u32) -> Vec<u32> {
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| add(acc, mul(a, b, p), p))).collect()
    }

    pub fn add(&self, other: &Matrix, p: u32) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(a, b, p)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32, p: u32) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scaled(&self.data, c, p) }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, p: u32) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(pr, r);
            let s = inv(m.get(r, c), p);
            for j in 0..m.cols {
                m.data[r * m.cols + j] = mul(m.data[r * m.cols + j], s, p);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && f != 0 {
                    for j in 0..m.cols {
                        let v = mul(f, m.data[r * m.cols + j], p);
                        m.data[i * m.cols + j] = sub(m.data[i * m.cols + j], v, p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self, p: u32) -> usize {
        self.rref(p).1.len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column.
    pub fn nullspace(&self, p: u32) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref(p);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = neg(r.get(i, free), p);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self, p: u32) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref(p);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }
}

/// A subspace of `F_p^dim` kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, dim: usize) -> Self {
        Echelon { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by<'a>(p: u32, dim: usize, vectors: impl IntoIterator<Item = &'a Vec<u32>>) -> Self {
        let mut e = Self::new(p, dim);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows sorted by pivot column.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The residue of `v` after clearing all pivot columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = w[c];
            if f != 0 {
                axpy(&mut w, neg(f, self.p), row, self.p);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(w[c], self.p);
        w = scaled(&w, s, self.p);
        for row in &mut self.rows {
            let f = row[c];
            if f != 0 {
                axpy(row, neg(f, self.p), &w, self.p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, w);
        true
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Echelon) -> Echelon {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }
}

/// Expresses vectors as combinations of a fixed generator list.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    p: u32,
    generators: usize,
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
}

impl SpanSolver {
    pub fn new(p: u32, generators: &[Vec<u32>]) -> Self {
        let mut solver = SpanSolver { p, generators: generators.len(), rows: Vec::new() };
        for (i, g) in generators.iter().enumerate() {
            let mut coeff = vec![0u32; generators.len()];
            coeff[i] = 1;
            solver.absorb(g.clone(), coeff);
        }
        solver
    }

    fn reduce(&self, mut v: Vec<u32>, mut coeff: Vec<u32>) -> (Vec<u32>, Vec<u32>) {
        for (c, row, rc) in &self.rows {
            let f = v[*c];
            if f != 0 {
                let m = neg(f, self.p);
                axpy(&mut v, m, row, self.p);
                axpy(&mut coeff, m, rc, self.p);
            }
        }
        (v, coeff)
    }

    fn absorb(&mut self, v: Vec<u32>, coeff: Vec<u32>) {
        let (v, coeff) = self.reduce(v, coeff);
        if let Some(c) = v.iter().position(|&x| x != 0) {
            let s = inv(v[c], self.p);
            self.rows.push((c, scaled(&v, s, self.p), scaled(&coeff, s, self.p)));
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Coefficients `c` with `Σ c_i g_i = v`, if `v` lies in the span.
    pub fn solve(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (rest, coeff) = self.reduce(v.to_vec(), vec![0u32; self.generators]);
        if rest.iter().any(|&x| x != 0) {
            return None;
        }
        Some(coeff.iter().map(|&c| neg(c, self.p)).collect())
    }
}
