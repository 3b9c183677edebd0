//! Compressed sparse column matrices and sorted sparse vectors.
//!
//! Green-ansatz generators live on tensor spaces whose dimension grows like
//! `(copy dim)^p`, while each ladder operator has at most one nonzero per
//! column. They are stored here instead of as dense matrices.

use std::collections::BTreeMap;

use crate::limits;
use crate::linalg::dense::ComplexMatrix;
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

fn is_zero(z: C64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, C64)>,
}

impl SparseVec {
    pub fn zeros(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        SparseVec {
            dim,
            entries: vec![(index, C64::new(1.0, 0.0))],
        }
    }

    pub fn from_dense(v: &[C64]) -> Self {
        SparseVec {
            dim: v.len(),
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, z)| !is_zero(**z))
                .map(|(i, &z)| (i, z))
                .collect(),
        }
    }

    /// Builds a vector from unsorted `(index, value)` pairs, summing repeats.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (usize, C64)>) -> Self {
        let mut map: BTreeMap<usize, C64> = BTreeMap::new();
        for (i, z) in pairs {
            assert!(i < dim, "sparse index out of range");
            *map.entry(i).or_insert(ZERO) += z;
        }
        SparseVec {
            dim,
            entries: map.into_iter().filter(|(_, z)| !is_zero(*z)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, C64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> C64 {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => ZERO,
        }
    }

    pub fn to_dense(&self) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim];
        for &(i, z) in &self.entries {
            v[i] = z;
        }
        v
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        SparseVec {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|&(i, z)| (i, z * s))
                .filter(|(_, z)| !is_zero(*z))
                .collect(),
        }
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn dot(&self, other: &SparseVec) -> C64 {
        let (mut a, mut b) = (0, 0);
        let mut acc = ZERO;
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, za) = self.entries[a];
            let (ib, zb) = other.entries[b];
            match ia.cmp(&ib) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += za.conj() * zb;
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: C64, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let next_a = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let next_b = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            let (i, z) = if next_a < next_b {
                a += 1;
                (next_a, self.entries[a - 1].1)
            } else if next_b < next_a {
                b += 1;
                (next_b, s * other.entries[b - 1].1)
            } else {
                a += 1;
                b += 1;
                (next_a, self.entries[a - 1].1 + s * other.entries[b - 1].1)
            };
            if !is_zero(z) {
                out.push((i, z));
            }
        }
        SparseVec {
            dim: self.dim,
            entries: out,
        }
    }

    /// Keeps only the coordinates where `keep` is true.
    pub fn mask(&self, keep: &[bool]) -> SparseVec {
        SparseVec {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|&(i, _)| keep[i])
                .collect(),
        }
    }
}

/// Compressed sparse column complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    colptr: Vec<usize>,
    rowidx: Vec<usize>,
    values: Vec<C64>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            colptr: vec![0; cols + 1],
            rowidx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![C64::new(1.0, 0.0); n])
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut colptr = Vec::with_capacity(n + 1);
        let mut rowidx = Vec::new();
        let mut values = Vec::new();
        colptr.push(0);
        for (i, &d) in diag.iter().enumerate() {
            if !is_zero(d) {
                rowidx.push(i);
                values.push(d);
            }
            colptr.push(rowidx.len());
        }
        SparseMatrix {
            rows: n,
            cols: n,
            colptr,
            rowidx,
            values,
        }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed
    /// and exact zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Result<Self> {
        let mut per_col: Vec<BTreeMap<usize, C64>> = vec![BTreeMap::new(); cols];
        for (i, j, z) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::shape(format!(
                    "triplet ({i},{j}) outside a {rows}x{cols} matrix"
                )));
            }
            *per_col[j].entry(i).or_insert(ZERO) += z;
        }
        let columns = per_col
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, z)| !is_zero(*z)).collect());
        Ok(Self::from_columns(rows, cols, columns))
    }

    fn from_columns(
        rows: usize,
        cols: usize,
        columns: impl IntoIterator<Item = Vec<(usize, C64)>>,
    ) -> Self {
        let mut colptr = Vec::with_capacity(cols + 1);
        let mut rowidx = Vec::new();
        let mut values = Vec::new();
        colptr.push(0);
        for col in columns {
            for (i, z) in col {
                rowidx.push(i);
                values.push(z);
            }
            colptr.push(rowidx.len());
        }
        debug_assert_eq!(colptr.len(), cols + 1);
        SparseMatrix {
            rows,
            cols,
            colptr,
            rowidx,
            values,
        }
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_sparse_columns(rows: usize, cols: &[SparseVec]) -> Result<Self> {
        if let Some(bad) = cols.iter().find(|v| v.dim() != rows) {
            return Err(Error::shape(format!(
                "column of length {} in a matrix with {rows} rows",
                bad.dim()
            )));
        }
        Ok(Self::from_columns(
            rows,
            cols.len(),
            cols.iter().map(|v| v.entries().to_vec()),
        ))
    }

    pub fn from_dense(m: &ComplexMatrix) -> Self {
        let columns = (0..m.cols()).map(|j| {
            (0..m.rows())
                .filter_map(|i| {
                    let z = m[(i, j)];
                    (!is_zero(z)).then_some((i, z))
                })
                .collect::<Vec<_>>()
        });
        Self::from_columns(m.rows(), m.cols(), columns)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Nonzeros of column `j` as `(row, value)` pairs.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let range = self.colptr[j]..self.colptr[j + 1];
        self.rowidx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn column_vec(&self, j: usize) -> SparseVec {
        SparseVec {
            dim: self.rows,
            entries: self.column(j).collect(),
        }
    }

    /// All stored entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.cols).flat_map(move |j| self.column(j).map(move |(i, z)| (i, j, z)))
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        let range = self.colptr[j]..self.colptr[j + 1];
        match self.rowidx[range.clone()].binary_search(&i) {
            Ok(pos) => self.values[range.start + pos],
            Err(_) => ZERO,
        }
    }

    pub fn to_dense(&self) -> Result<ComplexMatrix> {
        let max = limits::max_dense_dim();
        limits::check("dense conversion rows", self.rows, max)?;
        limits::check("dense conversion cols", self.cols, max)?;
        let mut m = ComplexMatrix::zeros(self.rows, self.cols);
        for (i, j, z) in self.triplets() {
            m[(i, j)] = z;
        }
        Ok(m)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for z in &mut out.values {
            *z *= s;
        }
        out.prune()
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    fn prune(self) -> Self {
        if self.values.iter().all(|z| !is_zero(*z)) {
            return self;
        }
        let cols = self.cols;
        let rows = self.rows;
        let columns: Vec<Vec<(usize, C64)>> = (0..cols)
            .map(|j| self.column(j).filter(|(_, z)| !is_zero(*z)).collect())
            .collect();
        Self::from_columns(rows, cols, columns)
    }

    pub fn adjoint(&self) -> Self {
        let mut per_row: Vec<Vec<(usize, C64)>> = vec![Vec::new(); self.rows];
        for j in 0..self.cols {
            for (i, z) in self.column(j) {
                per_row[i].push((j, z.conj()));
            }
        }
        Self::from_columns(self.cols, self.rows, per_row)
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: C64, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape(format!(
                "sparse add: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns: Vec<Vec<(usize, C64)>> = (0..self.cols)
            .map(|j| {
                self.column_vec(j)
                    .axpy(s, &other.column_vec(j))
                    .entries
            })
            .collect();
        Ok(Self::from_columns(self.rows, self.cols, columns))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.axpy(C64::new(1.0, 0.0), other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.axpy(C64::new(-1.0, 0.0), other)
    }

    /// Sparse product `self * other`.
    pub fn try_matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "sparse matmul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = vec![ZERO; self.rows];
        let mut touched: Vec<usize> = Vec::new();
        let mut marker = vec![usize::MAX; self.rows];
        let mut columns = Vec::with_capacity(other.cols);
        for j in 0..other.cols {
            touched.clear();
            for (k, b) in other.column(j) {
                for (i, a) in self.column(k) {
                    if marker[i] != j {
                        marker[i] = j;
                        acc[i] = ZERO;
                        touched.push(i);
                    }
                    acc[i] += a * b;
                }
            }
            touched.sort_unstable();
            let col: Vec<(usize, C64)> = touched
                .iter()
                .map(|&i| (i, acc[i]))
                .filter(|(_, z)| !is_zero(*z))
                .collect();
            columns.push(col);
        }
        Ok(Self::from_columns(self.rows, other.cols, columns))
    }

    pub fn apply(&self, v: &SparseVec) -> Result<SparseVec> {
        if v.dim() != self.cols {
            return Err(Error::shape(format!(
                "sparse apply: {}x{} times length {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(SparseVec::from_pairs(
            self.rows,
            v.entries()
                .iter()
                .flat_map(|&(k, b)| self.column(k).map(move |(i, a)| (i, a * b))),
        ))
    }

    pub fn mul_dense_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::shape("sparse matrix-vector length mismatch"));
        }
        let mut out = vec![ZERO; self.rows];
        for (j, &b) in v.iter().enumerate() {
            if is_zero(b) {
                continue;
            }
            for (i, a) in self.column(j) {
                out[i] += a * b;
            }
        }
        Ok(out)
    }

    /// Columns `idx` of `self`, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_columns(
            self.rows,
            idx.len(),
            idx.iter().map(|&j| self.column(j).collect::<Vec<_>>()),
        )
    }

    /// `B† A B` as a dense matrix, for `B` with few columns.
    pub fn compress(&self, basis: &SparseMatrix) -> Result<ComplexMatrix> {
        let ab = self.try_matmul(basis)?;
        let k = basis.cols();
        let mut out = ComplexMatrix::zeros(k, k);
        for i in 0..k {
            let bi = basis.column_vec(i);
            for j in 0..k {
                out[(i, j)] = bi.dot(&ab.column_vec(j));
            }
        }
        Ok(out)
    }

    /// Largest modulus among entries whose row is flagged in `rows`.
    pub fn max_abs_in_rows(&self, rows: &[bool]) -> f64 {
        self.rowidx
            .iter()
            .zip(&self.values)
            .filter(|(i, _)| rows[**i])
            .map(|(_, z)| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::shape("pow of a non-square matrix"));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.try_matmul(self)?;
        }
        Ok(acc)
    }

    /// Diagonal entries, when the matrix has no off-diagonal nonzeros.
    pub fn diagonal_if_diagonal(&self) -> Option<Vec<C64>> {
        let mut d = vec![ZERO; self.rows.min(self.cols)];
        for (i, j, z) in self.triplets() {
            if i != j {
                return None;
            }
            d[i] = z;
        }
        Some(d)
    }
}

/// Sparse Kronecker product, bounded by the sparse dimension limit.
pub fn sparse_kron(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    let max = limits::max_sparse_dim();
    let rows = limits::checked_product("sparse kron rows", &[a.rows, b.rows], max)?;
    let cols = limits::checked_product("sparse kron cols", &[a.cols, b.cols], max)?;
    let mut columns = Vec::with_capacity(cols);
    for ja in 0..a.cols {
        for jb in 0..b.cols {
            let mut col = Vec::new();
            for (ia, x) in a.column(ja) {
                for (ib, y) in b.column(jb) {
                    col.push((ia * b.rows + ib, x * y));
                }
            }
            columns.push(col);
        }
    }
    Ok(SparseMatrix::from_columns(rows, cols, columns))
}

/// Kronecker product of a list of factors, left to right.
pub fn sparse_kron_all(factors: &[SparseMatrix]) -> Result<SparseMatrix> {
    let mut iter = factors.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::arg("empty Kronecker product"))?
        .clone();
    iter.try_fold(first, |acc, f| sparse_kron(&acc, f))
}

/// Sparse commutator or anticommutator.
pub fn sparse_bracket(
    a: &SparseMatrix,
    b: &SparseMatrix,
    kind: crate::linalg::BracketKind,
) -> Result<SparseMatrix> {
    if !a.is_square() || !b.is_square() || a.rows != b.rows {
        return Err(Error::shape("bracket needs equal square matrices"));
    }
    let ab = a.try_matmul(b)?;
    let ba = b.try_matmul(a)?;
    ab.axpy(C64::new(kind.sign(), 0.0), &ba)
}
