//! Dense linear algebra over the prime fields F_2, F_3, F_5 and F_7.
//!
//! Everything here is exact residue arithmetic. Row reduction always picks the
//! leftmost pivot column and, within it, the topmost usable row, so every
//! routine is deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SUPPORTED_PRIMES: [u8; 4] = [2, 3, 5, 7];

/// A prime field F_p with p in [`SUPPORTED_PRIMES`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    p: u8,
}

impl TryFrom<u32> for Field {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Field::new(p)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.p as u32
    }
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if SUPPORTED_PRIMES.iter().any(|&q| q as u32 == p) {
            Ok(Field { p: p as u8 })
        } else {
            Err(Error::UnsupportedModulus(p))
        }
    }

    pub const F2: Field = Field { p: 2 };

    #[inline]
    pub fn p(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0 && a < self.p);
        (1..self.p).find(|&b| self.mul(a, b) == 1).expect("nonzero residue is invertible")
    }

    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }

    pub fn check(self, v: u32) -> Result<u8> {
        if v < self.p as u32 {
            Ok(v as u8)
        } else {
            Err(Error::EntryOutOfRange { value: v, p: self.p })
        }
    }

    /// `y += c * x` on residue vectors.
    pub fn axpy(self, y: &mut [u8], c: u8, x: &[u8]) {
        if c == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = self.add(*yi, self.mul(c, xi));
            }
        }
    }

    pub fn scale(self, v: &mut [u8], c: u8) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Scales `v` so that its first nonzero entry is 1. Returns false for the zero vector.
    pub fn normalize(self, v: &mut [u8]) -> bool {
        match v.iter().position(|&x| x != 0) {
            Some(i) => {
                let c = self.inv(v[i]);
                self.scale(v, c);
                true
            }
            None => false,
        }
    }

    /// All vectors of length `n` in lexicographic order, as an iterator.
    pub fn all_vectors(self, n: usize) -> impl Iterator<Item = Vec<u8>> {
        let p = self.p;
        let total = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut k| {
            let mut v = vec![0u8; n];
            for slot in v.iter_mut().rev() {
                *slot = (k % p as u64) as u8;
                k /= p as u64;
            }
            v
        })
    }

    /// Nonzero vectors of length `n` whose first nonzero entry is 1 (points of P^{n-1}).
    pub fn projective_points(self, n: usize) -> impl Iterator<Item = Vec<u8>> {
        self.all_vectors(n)
            .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
    }
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<u8>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}/F{}[", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major residues, validating ranges and shape.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        for &x in &data {
            field.check(x as u32)?;
        }
        Ok(Matrix { rows, cols, field, data })
    }

    pub fn from_rows(field: Field, rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u8>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, &x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(v < self.field.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a != 0 {
                    f.axpy(out_row, a, other.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u32;
                for (&a, &b) in self.row(r).iter().zip(v) {
                    acc += a as u32 * b as u32;
                }
                (acc % f.p as u32) as u8
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn scaled(&self, c: u8) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..*self }
    }

    /// In-place `self += c * other`.
    pub fn add_scaled(&mut self, c: u8, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix { rows, cols, field, data }
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = b.get(r, c);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = self.get(r0 + r, c0 + c);
            }
        }
        m
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(sel) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, sel);
            let inv = f.inv(m.get(row, col));
            {
                let cols = m.cols;
                f.scale(&mut m.data[row * cols..(row + 1) * cols], inv);
            }
            let pivot_row = m.row(row).to_vec();
            for r in 0..m.rows {
                if r != row {
                    let c = m.get(r, col);
                    if c != 0 {
                        let cols = m.cols;
                        f.axpy(&mut m.data[r * cols..(r + 1) * cols], f.neg(c), &pivot_row);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u8; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let f = self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.data[r * (self.cols + 1) + c] = self.get(r, c);
            }
            aug.data[r * (self.cols + 1) + self.cols] = b[r];
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u8; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(i, self.cols);
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(self.field, n));
        let (red, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        Some(red.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Column space as a subspace of F_p^rows.
    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.field, self.rows, (0..self.cols).map(|c| self.column(c)))
    }

    /// Null space as a subspace of F_p^cols.
    pub fn null_space(&self) -> Subspace {
        Subspace::span(self.field, self.cols, self.kernel_basis())
    }
}

/// A subspace of F_p^n kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0u8; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn span<I: IntoIterator<Item = Vec<u8>>>(field: Field, ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis as the rows of a `dim x ambient` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix {
            rows: self.rows.len(),
            cols: self.ambient,
            field: self.field,
            data: self.rows.concat(),
        }
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &mut [u8]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                f.axpy(v, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds a vector; returns true if the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let f = self.field;
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        f.scale(&mut v, inv);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                f.axpy(row, f.neg(c), &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of a member vector with respect to the echelon basis.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        let coords: Vec<u8> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let mut w = v.to_vec();
        let f = self.field;
        for (row, &c) in self.rows.iter().zip(&coords) {
            f.axpy(&mut w, f.neg(c), row);
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }

    /// Columns not used as pivots, i.e. unit vectors spanning a complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(f, self.ambient);
        }
        // x = sum a_i u_i = sum b_j w_j: kernel of [U^T | -W^T].
        let n = self.ambient;
        let (k1, k2) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(f, n, k1 + k2);
        for (i, u) in self.rows.iter().enumerate() {
            for r in 0..n {
                m.set(r, i, u[r]);
            }
        }
        for (j, w) in other.rows.iter().enumerate() {
            for r in 0..n {
                m.set(r, k1 + j, f.neg(w[r]));
            }
        }
        let vecs = m.kernel_basis().into_iter().map(|coef| {
            let mut x = vec![0u8; n];
            for (i, u) in self.rows.iter().enumerate() {
                f.axpy(&mut x, coef[i], u);
            }
            x
        });
        Subspace::span(f, n, vecs)
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::span(self.field, m.rows(), self.rows.iter().map(|v| m.mul_vec(v)))
    }

    /// Preimage `{v : m v in self}` for a map into the ambient space.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        // Compose with the projection onto the complement coordinates.
        let comp = self.complement_columns();
        let f = self.field;
        let mut proj = Matrix::zeros(f, comp.len(), m.cols());
        for c in 0..m.cols() {
            let mut col = m.column(c);
            self.reduce(&mut col);
            for (i, &cc) in comp.iter().enumerate() {
                proj.set(i, c, col[cc]);
            }
        }
        proj.null_space()
    }
}

/// Polynomials over F_p, coefficients from the constant term upward, no trailing zeros.
pub mod poly {
    use super::{Field, Matrix};

    pub fn trim(mut a: Vec<u8>) -> Vec<u8> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u8]) -> Option<usize> {
        a.iter().rposition(|&x| x != 0)
    }

    /// Quotient and remainder of `a / b` for nonzero `b`.
    pub fn divrem(f: Field, a: &[u8], b: &[u8]) -> (Vec<u8>, Vec<u8>) {
        let db = degree(b).expect("division by zero polynomial");
        let mut r = trim(a.to_vec());
        let lead_inv = f.inv(b[db]);
        let mut q = vec![0u8; r.len().saturating_sub(db).max(1)];
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = f.mul(r[dr], lead_inv);
            q[dr - db] = c;
            for (i, &bi) in b.iter().enumerate().take(db + 1) {
                r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, bi));
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn is_zero(a: &[u8]) -> bool {
        degree(a).is_none()
    }

    /// Monic polynomials of the given degree, in a fixed order.
    pub fn monics(f: Field, deg: usize) -> impl Iterator<Item = Vec<u8>> {
        f.all_vectors(deg).map(|mut low| {
            low.push(1);
            low
        })
    }

    /// Smallest-degree monic factor of degree >= 1, or `None` if `a` is irreducible
    /// (or constant).
    pub fn smallest_factor(f: Field, a: &[u8]) -> Option<Vec<u8>> {
        let d = degree(a)?;
        for k in 1..=d / 2 {
            for g in monics(f, k) {
                if is_zero(&divrem(f, a, &g).1) {
                    return Some(g);
                }
            }
        }
        None
    }

    /// Evaluates the polynomial at a square matrix.
    pub fn eval_matrix(f: Field, a: &[u8], m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for &c in a.iter().rev() {
            acc = acc.mul(m);
            if c != 0 {
                acc.add_scaled(c, &Matrix::identity(f, n));
            }
        }
        acc
    }
}
