//! Exact linear algebra over GF(p).
//!
//! [`Matrix`] stores GF(2) matrices as packed bit rows and all other primes as
//! dense `u32` rows; every public operation behaves identically on both.
//! Vectors are plain `Vec<u32>` with entries in `0..p`.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Store {
    Bits { stride: usize, words: Vec<u64> },
    Dense(Vec<u32>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    store: Store,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over GF({})", self.rows, self.cols, self.field.characteristic())?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        let store = if field.is_gf2() {
            let stride = cols.div_ceil(64);
            Store::Bits { stride, words: vec![0; stride * rows] }
        } else {
            Store::Dense(vec![0; rows * cols])
        };
        Matrix { field, rows, cols, store }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, &v) in col.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
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
    pub fn get(&self, r: usize, c: usize) -> u32 {
        debug_assert!(r < self.rows && c < self.cols);
        match &self.store {
            Store::Bits { stride, words } => ((words[r * stride + c / 64] >> (c % 64)) & 1) as u32,
            Store::Dense(d) => d[r * self.cols + c],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(r < self.rows && c < self.cols);
        let cols = self.cols;
        match &mut self.store {
            Store::Bits { stride, words } => {
                let w = &mut words[r * *stride + c / 64];
                if v & 1 == 1 {
                    *w |= 1 << (c % 64);
                } else {
                    *w &= !(1 << (c % 64));
                }
            }
            Store::Dense(d) => d[r * cols + c] = v,
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let cur = self.get(r, c);
        self.set(r, c, self.field.add(cur, v));
    }

    pub fn row(&self, r: usize) -> Vec<u32> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Bits { words, .. } => words.iter().all(|&w| w == 0),
            Store::Dense(d) => d.iter().all(|&v| v == 0),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    t.set(c, r, v);
                }
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a != 0 {
                    out.row_axpy_from(r, other, k, a);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let f = self.field;
        let mut out = vec![0u32; self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0u32;
            for (c, &x) in v.iter().enumerate() {
                if x != 0 {
                    let a = self.get(r, c);
                    if a != 0 {
                        acc = f.add(acc, f.mul(a, x));
                    }
                }
            }
            *o = acc;
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum dimension mismatch");
        let mut out = self.clone();
        match (&mut out.store, &other.store) {
            (Store::Bits { words: a, .. }, Store::Bits { words: b, .. }) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= *y;
                }
            }
            _ => {
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        let v = other.get(r, c);
                        if v != 0 {
                            out.add_at(r, c, v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let mut neg = other.clone();
        if !f.is_gf2() {
            for r in 0..neg.rows {
                for c in 0..neg.cols {
                    let v = neg.get(r, c);
                    neg.set(r, c, f.neg(v));
                }
            }
        }
        self.add(&neg)
    }

    /// row `dst` += coef * row `src_row` of `src`.
    fn row_axpy_from(&mut self, dst: usize, src: &Matrix, src_row: usize, coef: u32) {
        debug_assert_eq!(self.cols, src.cols);
        let f = self.field;
        match (&mut self.store, &src.store) {
            (Store::Bits { stride, words }, Store::Bits { words: sw, .. }) => {
                let s = *stride;
                for i in 0..s {
                    words[dst * s + i] ^= sw[src_row * s + i];
                }
            }
            (Store::Dense(d), Store::Dense(sd)) => {
                let n = self.cols;
                for c in 0..n {
                    let x = sd[src_row * n + c];
                    if x != 0 {
                        d[dst * n + c] = f.add(d[dst * n + c], f.mul(coef, x));
                    }
                }
            }
            _ => unreachable!("mixed matrix storage"),
        }
    }

    fn row_axpy(&mut self, dst: usize, src: usize, coef: u32) {
        debug_assert!(dst != src);
        let f = self.field;
        match &mut self.store {
            Store::Bits { stride, words } => {
                let s = *stride;
                for i in 0..s {
                    let v = words[src * s + i];
                    words[dst * s + i] ^= v;
                }
            }
            Store::Dense(d) => {
                let n = self.cols;
                for c in 0..n {
                    let x = d[src * n + c];
                    if x != 0 {
                        d[dst * n + c] = f.add(d[dst * n + c], f.mul(coef, x));
                    }
                }
            }
        }
    }

    fn scale_row(&mut self, r: usize, coef: u32) {
        if let Store::Dense(d) = &mut self.store {
            let f = self.field;
            let n = self.cols;
            for v in &mut d[r * n..(r + 1) * n] {
                *v = f.mul(*v, coef);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.store {
            Store::Bits { stride, words } => {
                let s = *stride;
                for i in 0..s {
                    words.swap(a * s + i, b * s + i);
                }
            }
            Store::Dense(d) => {
                let n = self.cols;
                for c in 0..n {
                    d.swap(a * n + c, b * n + c);
                }
            }
        }
    }

    /// Reduced row echelon form in place, pivoting only on the first
    /// `pivot_cols` columns. Returns the pivot columns.
    pub fn rref_prefix(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..pivot_cols.min(self.cols) {
            if next == self.rows {
                break;
            }
            let Some(pr) = (next..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(pr, next);
            let lead = self.get(next, c);
            if lead != 1 {
                self.scale_row(next, f.inv(lead));
            }
            for r in 0..self.rows {
                if r != next {
                    let v = self.get(r, c);
                    if v != 0 {
                        self.row_axpy(r, next, f.neg(v));
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_prefix(self.cols)
    }

    pub fn rank(&self) -> usize {
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        m.rref().len()
    }

    /// Basis of the right null space `{x : self * x = 0}`, returned in
    /// reduced echelon form (pivot = leftmost nonzero coordinate).
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = EchelonBasis::new(f, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                let x = m.get(i, free);
                if x != 0 {
                    v[p] = f.neg(x);
                }
            }
            basis.insert(v);
        }
        basis.into_rows()
    }
}

/// A subspace of `GF(p)^dim` kept as a fully reduced echelon basis.
///
/// Rows are sorted by pivot (leftmost nonzero entry); each row is monic at
/// its pivot and zero at every other row's pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: Field, dim: usize) -> Self {
        EchelonBasis { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors(field: Field, dim: usize, vs: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut b = EchelonBasis::new(field, dim);
        for v in vs {
            b.insert(v);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<Vec<u32>> {
        self.rows
    }

    /// Reduces `v` so that it vanishes at every pivot of the basis. The
    /// result is the lexicographically smallest element of `v + span`.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let x = out[p];
            if x != 0 {
                let c = f.neg(x);
                for (o, &r) in out.iter_mut().zip(row) {
                    if r != 0 {
                        *o = f.add(*o, f.mul(c, r));
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span. Returns false if it was already contained.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let f = self.field;
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[p]);
        if inv != 1 {
            for x in &mut r {
                *x = f.mul(*x, inv);
            }
        }
        for row in &mut self.rows {
            let x = row[p];
            if x != 0 {
                let c = f.neg(x);
                for (a, &b) in row.iter_mut().zip(&r) {
                    if b != 0 {
                        *a = f.add(*a, f.mul(c, b));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }

    /// Coordinates of `v` in terms of the rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }
}

/// Solves `A x = b` for a fixed `A`, returning the lexicographically smallest solution.
#[derive(Clone, Debug)]
pub struct Solver {
    field: Field,
    rows: usize,
    cols: usize,
    /// `[R | T]` with `T A = R` in reduced echelon form.
    reduced: Matrix,
    pivots: Vec<usize>,
    kernel: EchelonBasis,
}

impl Solver {
    pub fn new(a: &Matrix) -> Self {
        let field = a.field();
        let (rows, cols) = (a.rows(), a.cols());
        let mut aug = Matrix::zeros(field, rows, cols + rows);
        for r in 0..rows {
            for c in 0..cols {
                let v = a.get(r, c);
                if v != 0 {
                    aug.set(r, c, v);
                }
            }
            aug.set(r, cols + r, 1);
        }
        let pivots = aug.rref_prefix(cols);
        let kernel = EchelonBasis::from_vectors(field, cols, a.kernel());
        Solver { field, rows, cols, reduced: aug, pivots, kernel }
    }

    pub fn kernel(&self) -> &EchelonBasis {
        &self.kernel
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = self.field;
        // c = T b
        let mut c = vec![0u32; self.rows];
        for (r, cr) in c.iter_mut().enumerate() {
            let mut acc = 0;
            for (k, &bk) in b.iter().enumerate() {
                if bk != 0 {
                    let t = self.reduced.get(r, self.cols + k);
                    if t != 0 {
                        acc = f.add(acc, f.mul(t, bk));
                    }
                }
            }
            *cr = acc;
        }
        if c[self.pivots.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = c[i];
        }
        Some(self.kernel.reduce(&x))
    }
}

pub fn dot(field: Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// `acc += coef * v`
pub fn axpy(field: Field, acc: &mut [u32], coef: u32, v: &[u32]) {
    if coef == 0 {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        if x != 0 {
            *a = field.add(*a, field.mul(coef, x));
        }
    }
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}
