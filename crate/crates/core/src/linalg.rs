//! Sparse exact linear algebra: row reduction, kernels, and linear solves.
//!
//! Matrices are stored row-wise as sorted `(column, value)` lists with no
//! stored zeros. Reduction is deterministic: pivots are taken at the lowest
//! column, and within a column at the lowest row.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Field;

/// Matrices narrower than this are reduced with a dense kernel.
pub const DENSE_CUTOFF: usize = 64;

/// A sparse vector: strictly increasing column indices, no zero values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Field> SparseVec<T> {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    /// Build from arbitrary `(index, value)` pairs; duplicates are summed.
    pub fn from_pairs<I: IntoIterator<Item = (usize, T)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, T> = BTreeMap::new();
        for (i, v) in pairs {
            let slot = map.entry(i).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        Self::from_map(map)
    }

    pub fn from_map(map: BTreeMap<usize, T>) -> Self {
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[T]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<T> {
        let mut out = vec![T::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, T)> {
        self.entries.iter()
    }

    pub fn get(&self, index: usize) -> T {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<&(usize, T)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, factor: &T) -> Self {
        if factor.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, v.clone() * factor.clone()))
                .collect(),
        }
    }

    /// `self + factor * other`, merged in one pass.
    pub fn add_scaled(&self, factor: &T, other: &Self) -> Self {
        if factor.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, factor.clone() * y.clone()));
                        b.next();
                    } else {
                        let s = x.clone() + factor.clone() * y.clone();
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, factor.clone() * y.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot_dense(&self, dense: &[T]) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, (i, v)| acc + v.clone() * dense[*i].clone())
    }
}

/// Row-major sparse matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("right-hand side has length {got}, expected {expected}")]
    RhsLength { got: usize, expected: usize },
    #[error("ragged dense input: row {row} has length {got}, expected {expected}")]
    Ragged {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

impl<T: Field> SparseMatrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n)
                .map(|i| SparseVec {
                    entries: vec![(i, T::one())],
                })
                .collect(),
        }
    }

    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut per_row: Vec<Vec<(usize, T)>> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            per_row[r].push((c, v));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            data: per_row.into_iter().map(SparseVec::from_pairs).collect(),
        })
    }

    pub fn from_dense(values: &[Vec<T>]) -> Result<Self, LinalgError> {
        let cols = values.first().map_or(0, Vec::len);
        for (row, r) in values.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Ragged {
                    row,
                    got: r.len(),
                    expected: cols,
                });
            }
        }
        Ok(SparseMatrix {
            rows: values.len(),
            cols,
            data: values.iter().map(|r| SparseVec::from_dense(r)).collect(),
        })
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec<T>>) -> Result<Self, LinalgError> {
        for (r, row) in rows.iter().enumerate() {
            if let Some(c) = row.max_index() {
                if c >= cols {
                    return Err(LinalgError::OutOfBounds {
                        row: r,
                        col: c,
                        rows: rows.len(),
                        cols,
                    });
                }
            }
        }
        Ok(SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<T> {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        self.data.iter().map(|row| row.dot_dense(x)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut per_col: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            per_col[c].push((r, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: per_col
                .into_iter()
                .map(|entries| SparseVec { entries })
                .collect(),
        }
    }
}

impl<T: Field> fmt::Display for SparseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// An incrementally built row space in semi-echelon form.
///
/// Every stored row has leading coefficient one at a distinct pivot column.
/// [`EchelonBasis::reduce`] returns the unique representative of a vector
/// modulo the span that vanishes on all pivot columns.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    cols: usize,
    rows: Vec<SparseVec<T>>,
    pivot_row: Vec<Option<usize>>,
}

impl<T: Field> EchelonBasis<T> {
    pub fn new(cols: usize) -> Self {
        EchelonBasis {
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<T>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| !self.is_pivot(c)).collect()
    }

    pub fn reduce(&self, v: &SparseVec<T>) -> SparseVec<T> {
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut work: BTreeMap<usize, T> = v.iter().cloned().collect();
        let mut cursor = 0;
        loop {
            let hit = work
                .range(cursor..)
                .find(|(c, _)| self.pivot_row[**c].is_some())
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coeff)) = hit else { break };
            let row = &self.rows[self.pivot_row[col].expect("pivot")];
            for (j, a) in row.iter() {
                let entry = work.entry(*j).or_insert_with(T::zero);
                *entry = entry.clone() - coeff.clone() * a.clone();
                if entry.is_zero() {
                    work.remove(j);
                }
            }
            cursor = col + 1;
        }
        SparseVec::from_map(work)
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Add `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &SparseVec<T>) -> bool {
        let r = self.reduce(v);
        let Some((lead, coeff)) = r.leading().cloned() else {
            return false;
        };
        let inv = T::one() / coeff;
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(r.scale(&inv));
        true
    }

    /// Fully reduced rows sorted by pivot column.
    pub fn reduced_rows(&self) -> Vec<SparseVec<T>> {
        let mut out = Vec::with_capacity(self.rows.len());
        for col in 0..self.cols {
            let Some(idx) = self.pivot_row[col] else {
                continue;
            };
            let row = &self.rows[idx];
            let tail = SparseVec {
                entries: row.entries[1..].to_vec(),
            };
            let mut entries = vec![(col, T::one())];
            entries.extend(self.reduce(&tail).entries);
            out.push(SparseVec { entries });
        }
        out
    }
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<T: Field>(m: &SparseMatrix<T>) -> (SparseMatrix<T>, Vec<usize>) {
    if m.cols < DENSE_CUTOFF {
        rref_dense(m)
    } else {
        rref_sparse(m)
    }
}

pub(crate) fn rref_sparse<T: Field>(m: &SparseMatrix<T>) -> (SparseMatrix<T>, Vec<usize>) {
    let mut basis = EchelonBasis::new(m.cols);
    for row in &m.data {
        basis.insert(row);
    }
    let mut data = basis.reduced_rows();
    let pivots: Vec<usize> = data
        .iter()
        .map(|r| r.leading().expect("nonzero row").0)
        .collect();
    data.resize(m.rows, SparseVec::new());
    (
        SparseMatrix {
            rows: m.rows,
            cols: m.cols,
            data,
        },
        pivots,
    )
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn rref_dense<T: Field>(m: &SparseMatrix<T>) -> (SparseMatrix<T>, Vec<usize>) {
    let mut a = m.to_dense();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = T::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..m.cols {
                let d = f.clone() * a[r][j].clone();
                a[i][j] = a[i][j].clone() - d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let data = a.iter().map(|row| SparseVec::from_dense(row)).collect();
    (
        SparseMatrix {
            rows: m.rows,
            cols: m.cols,
            data,
        },
        pivots,
    )
}

pub fn rank<T: Field>(m: &SparseMatrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of the right null space, one dense vector per free column.
pub fn kernel_basis<T: Field>(m: &SparseMatrix<T>) -> Vec<Vec<T>> {
    let (red, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![T::zero(); m.cols];
            v[free] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red.get(r, free);
            }
            v
        })
        .collect()
}

/// Exact inverse of a square matrix, or `None` when it is singular.
pub fn inverse<T: Field>(m: &SparseMatrix<T>) -> Result<Option<SparseMatrix<T>>, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.cols;
    if n == 0 {
        return Ok(Some(SparseMatrix::zero(0, 0)));
    }
    let augmented = SparseMatrix {
        rows: n,
        cols: 2 * n,
        data: m
            .data
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut entries = row.entries.clone();
                entries.push((n + r, T::one()));
                SparseVec { entries }
            })
            .collect(),
    };
    let (red, pivots) = rref(&augmented);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Ok(None);
    }
    let data = red
        .data
        .into_iter()
        .map(|row| SparseVec {
            entries: row
                .entries
                .into_iter()
                .filter(|(c, _)| *c >= n)
                .map(|(c, x)| (c - n, x))
                .collect(),
        })
        .collect();
    Ok(Some(SparseMatrix {
        rows: n,
        cols: n,
        data,
    }))
}

/// One exact solution of `m x = rhs`, or `None` when the system is inconsistent.
pub fn solve_linear<T: Field>(
    m: &SparseMatrix<T>,
    rhs: &[T],
) -> Result<Option<Vec<T>>, LinalgError> {
    if rhs.len() != m.rows {
        return Err(LinalgError::RhsLength {
            got: rhs.len(),
            expected: m.rows,
        });
    }
    let augmented = SparseMatrix {
        rows: m.rows,
        cols: m.cols + 1,
        data: m
            .data
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut entries = row.entries.clone();
                if !b.is_zero() {
                    entries.push((m.cols, b.clone()));
                }
                SparseVec { entries }
            })
            .collect(),
    };
    let (red, pivots) = rref(&augmented);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![T::zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red.get(r, m.cols);
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> SparseMatrix<Q> {
        let dense: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        SparseMatrix::from_dense(&dense).unwrap()
    }

    #[test]
    fn rref_identity() {
        let id = SparseMatrix::<Q>::identity(3);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_dependent_rows() {
        let (r, p) = rref(&mat(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, mat(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_permutation() {
        let (r, p) = rref(&mat(&[&[0, 1], &[1, 0]]));
        assert_eq!(r, SparseMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::<Q>::identity(4)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::<Q>::zero(2, 3)).len(), 3);
        let k = kernel_basis(&mat(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn solve_examples() {
        let v = vec![q(3), q(-1), q(7)];
        let x = solve_linear(&SparseMatrix::identity(3), &v)
            .unwrap()
            .unwrap();
        assert_eq!(x, v);

        let m = mat(&[&[1, 2], &[2, 4]]);
        let x = solve_linear(&m, &[q(1), q(2)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1), q(2)]);
        assert_eq!(solve_linear(&m, &[q(1), q(3)]).unwrap(), None);
        assert!(solve_linear(&m, &[q(1)]).is_err());
    }

    #[test]
    fn out_of_bounds_entry_rejected() {
        assert!(SparseMatrix::<Q>::from_entries(2, 2, [(0, 2, q(1))]).is_err());
    }

    #[test]
    fn echelon_reduce_is_canonical() {
        let mut b = EchelonBasis::<Q>::new(3);
        assert!(b.insert(&SparseVec::from_dense(&[q(1), q(1), q(0)])));
        assert!(!b.insert(&SparseVec::from_dense(&[q(2), q(2), q(0)])));
        let x = b.reduce(&SparseVec::from_dense(&[q(0), q(1), q(5)]));
        let y = b.reduce(&SparseVec::from_dense(&[q(-1), q(0), q(5)]));
        assert_eq!(x, y);
        assert_eq!(b.free_columns(), vec![1, 2]);
    }

    fn small_matrix(max_cols: usize) -> impl Strategy<Value = SparseMatrix<Q>> {
        (1usize..6, 1usize..max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r).prop_map(|rows| {
                let dense: Vec<Vec<Q>> = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(Q::from_int).collect())
                    .collect();
                SparseMatrix::from_dense(&dense).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix(8)) {
            prop_assert_eq!(rank(&m) + kernel_basis(&m).len(), m.cols());
            for k in kernel_basis(&m) {
                prop_assert!(m.mul_vec(&k).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn rref_idempotent(m in small_matrix(8)) {
            let (once, p1) = rref(&m);
            let (twice, p2) = rref(&once);
            prop_assert_eq!(once, twice);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn dense_and_sparse_paths_agree(m in small_matrix(8)) {
            prop_assert_eq!(rref_dense(&m), rref_sparse(&m));
        }

        #[test]
        fn solutions_have_zero_residual(m in small_matrix(6), seed in proptest::collection::vec(-4i64..5, 6)) {
            let rhs: Vec<Q> = (0..m.rows()).map(|i| Q::from_int(seed[i])).collect();
            if let Some(x) = solve_linear(&m, &rhs).unwrap() {
                prop_assert_eq!(m.mul_vec(&x), rhs);
            }
            // A consistent right-hand side built from a known x must be solved.
            let x0: Vec<Q> = (0..m.cols()).map(|i| Q::from_int(seed[i % seed.len()])).collect();
            let b = m.mul_vec(&x0);
            let x = solve_linear(&m, &b).unwrap().expect("consistent");
            prop_assert_eq!(m.mul_vec(&x), b);
        }

        #[test]
        fn inverse_is_two_sided(entries in proptest::collection::vec(-3i64..4, 16)) {
            let dense: Vec<Vec<Q>> = entries.chunks(4).map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect();
            let m = SparseMatrix::from_dense(&dense).unwrap();
            match inverse(&m).unwrap() {
                None => prop_assert!(rank(&m) < 4),
                Some(inv) => {
                    let product: Vec<Vec<Q>> = (0..4)
                        .map(|c| m.mul_vec(&inv.transpose().row(c).to_dense(4)))
                        .collect();
                    prop_assert_eq!(SparseMatrix::from_dense(&product).unwrap(), SparseMatrix::identity(4));
                }
            }
        }
    }
}
