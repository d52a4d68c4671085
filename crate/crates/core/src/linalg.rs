//! Sparse exact linear algebra over the rationals.
//!
//! Rows are stored as sorted `(column, value)` lists. Pivoting always takes
//! the first nonzero column, so the echelon form (and therefore every normal
//! form chosen from it) depends only on the column order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sorted sparse row: strictly increasing columns, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseVec>,
    labels: Vec<u64>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { cols, rows: vec![Vec::new(); rows], labels: (0..cols as u64).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Rational::ONE)]).collect();
        SparseMatrix { cols: n, rows, labels: (0..n as u64).collect() }
    }

    /// Builds a matrix from sparse rows. Entries are sorted, merged and
    /// zero-filtered; columns out of range panic.
    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        let rows = rows.into_iter().map(|r| normalize_row(cols, r)).collect();
        SparseMatrix { cols, rows, labels: (0..cols as u64).collect() }
    }

    pub fn from_dense(cols: usize, dense: &[Vec<Rational>]) -> Self {
        let rows = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
            })
            .collect();
        SparseMatrix { cols, rows, labels: (0..cols as u64).collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect()).collect();
        Self::from_dense(cols, &dense)
    }

    /// Replaces the column labels. `labels.len()` must equal the column count.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Self {
        assert_eq!(labels.len(), self.cols, "one label per column");
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        match self.rows[row].binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.rows[row][i].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.labels != other.labels {
            return Err(Error::ColumnLabelMismatch);
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(SparseMatrix { cols: self.cols, rows, labels: self.labels.clone() })
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![Rational::ZERO; self.cols];
                for (c, v) in r {
                    d[*c] = v.clone();
                }
                d
            })
            .collect()
    }
}

fn normalize_row(cols: usize, row: SparseVec) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in row {
        assert!(c < cols, "column {c} out of range");
        let e = acc.entry(c).or_insert(Rational::ZERO);
        *e += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Result of [`rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: SparseMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Incremental row echelon builder.
///
/// Rows are inserted one at a time and reduced against the pivots found so
/// far; [`RowReducer::finish`] back-substitutes into reduced row echelon
/// form.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    pivot_row: Vec<Option<u32>>,
    rows: Vec<SparseVec>,
}

fn sort_merge(mut v: SparseVec) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += &x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `row - a·other`.
fn sub_scaled(row: &[(usize, Rational)], a: &Rational, other: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = other.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -&(a * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(a * &other[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, pivot_row: vec![None; cols], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Reduces `row` and adds it to the basis if it is independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let reduced = self.reduce(row);
        let Some((lead, lv)) = reduced.first() else { return false };
        let lead = *lead;
        let inv = lv.recip();
        let r: SparseVec = reduced.into_iter().map(|(c, v)| (c, if inv.is_one() { v } else { &v * &inv })).collect();
        self.pivot_row[lead] = Some(self.rows.len() as u32);
        self.rows.push(r);
        true
    }

    /// Reduces `row` modulo the current basis: the result has no entry in
    /// any pivot column.
    pub fn reduce(&self, row: SparseVec) -> SparseVec {
        let mut acc = sort_merge(row);
        let mut start = 0;
        while let Some(i) = (start..acc.len()).find(|&i| self.pivot_row[acc[i].0].is_some()) {
            let (col, factor) = acc[i].clone();
            let prow = &self.rows[self.pivot_row[col].unwrap() as usize];
            let next = sub_scaled(&acc, &factor, prow);
            acc = next;
            start = i;
        }
        acc
    }

    /// Back-substitutes and returns `(rows sorted by pivot, pivots)` in
    /// reduced row echelon form.
    pub fn finish(mut self) -> (Vec<SparseVec>, Vec<usize>) {
        let order: Vec<(usize, usize)> =
            self.pivot_row.iter().enumerate().filter_map(|(c, r)| r.map(|r| (c, r as usize))).collect();
        // Later pivots first, so every row used for elimination is already fully reduced.
        for &(_, ri) in order.iter().rev() {
            let mut acc = core::mem::take(&mut self.rows[ri]);
            let mut start = 1;
            while let Some(i) = (start..acc.len()).find(|&i| self.pivot_row[acc[i].0].is_some()) {
                let (col, factor) = acc[i].clone();
                let prow = &self.rows[self.pivot_row[col].unwrap() as usize];
                let next = sub_scaled(&acc, &factor, prow);
                acc = next;
                start = i;
            }
            self.rows[ri] = acc;
        }
        let mut rows = self.rows;
        (order.iter().map(|&(_, r)| core::mem::take(&mut rows[r])).collect(), order.iter().map(|&(c, _)| c).collect())
    }
}

/// Reduced row echelon form, rank and pivot columns.
pub fn rref(m: &SparseMatrix) -> Rref {
    let mut reducer = RowReducer::new(m.cols);
    for row in &m.rows {
        reducer.insert(row.clone());
    }
    let (rows, pivots) = reducer.finish();
    let rank = rows.len();
    Rref { reduced: SparseMatrix { cols: m.cols, rows, labels: m.labels.clone() }, rank, pivots }
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut reducer = RowReducer::new(m.cols);
    for row in &m.rows {
        reducer.insert(row.clone());
    }
    reducer.rank()
}

/// A basis of the right null space `{v : m v = 0}` as dense vectors, one per
/// free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let r = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut v = vec![Rational::ZERO; m.cols];
            v[free] = Rational::ONE;
            for (row, &p) in r.reduced.rows.iter().zip(&r.pivots) {
                if let Ok(i) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    v[p] = -&row[i].1;
                }
            }
            v
        })
        .collect()
}

/// Whether the row spaces of `a` and `b` coincide.
pub fn subspace_equal(a: &SparseMatrix, b: &SparseMatrix) -> Result<bool> {
    let stacked = a.stack(b)?;
    let ra = rank(a);
    Ok(ra == rank(b) && ra == rank(&stacked))
}

/// Whether the row space of `a` is contained in that of `b`.
pub fn subspace_contains(b: &SparseMatrix, a: &SparseMatrix) -> Result<bool> {
    let stacked = b.stack(a)?;
    Ok(rank(b) == rank(&stacked))
}

/// Product `m · v` for a dense vector `v`.
pub fn mul_vec(m: &SparseMatrix, v: &[Rational]) -> Vec<Rational> {
    m.rows
        .iter()
        .map(|row| row.iter().fold(Rational::ZERO, |acc, (c, x)| &acc + &(x * &v[*c])))
        .collect()
}

/// Coefficients `c` with `Σ c_i rows[i] = target`, or `None` when `target`
/// is outside the span. `rows` must be linearly independent.
pub fn solve_combination(cols: usize, rows: &[SparseVec], target: &[(usize, Rational)]) -> Option<Vec<Rational>> {
    let k = rows.len();
    let mut reducer = RowReducer::new(cols + k);
    for (i, r) in rows.iter().enumerate() {
        let mut aug = r.clone();
        aug.push((cols + i, Rational::ONE));
        let grew = reducer.insert(aug);
        assert!(grew && reducer.rows.last().is_some_and(|r| r[0].0 < cols), "rows are dependent");
    }
    let rest = reducer.reduce(target.to_vec());
    if rest.first().is_some_and(|(c, _)| *c < cols) {
        return None;
    }
    let mut out = vec![Rational::ZERO; k];
    for (c, x) in rest {
        out[c - cols] = -x;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn rref_identity() {
        let r = rref(&SparseMatrix::identity(2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let r = rref(&SparseMatrix::zero(2, 2));
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_proportional_rows() {
        let r = rref(&SparseMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced.rows()[0], vec![(0, q(1)), (1, q(2))]);
    }

    #[test]
    fn rref_is_fully_reduced() {
        let m = SparseMatrix::from_i64(&[&[0, 2, 4, 1], &[1, 1, 1, 1], &[1, 3, 5, 2]]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced.to_dense()[0], vec![q(1), q(0), Rational::new(-1, 1), Rational::new(1, 2)]);
        assert_eq!(r.reduced.to_dense()[1], vec![q(0), q(1), q(2), Rational::new(1, 2)]);
    }

    #[test]
    fn empty_matrix() {
        let r = rref(&SparseMatrix::zero(0, 0));
        assert_eq!(r.rank, 0);
        assert!(kernel_basis(&SparseMatrix::zero(0, 3)).len() == 3);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zero(1, 2)).len(), 2);
        let k = kernel_basis(&SparseMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn subspace_examples() {
        let e = |rows: &[&[i64]]| SparseMatrix::from_i64(rows);
        assert!(subspace_equal(&e(&[&[1, 0]]), &e(&[&[2, 0]])).unwrap());
        assert!(!subspace_equal(&e(&[&[1, 0]]), &e(&[&[0, 1]])).unwrap());
        assert!(subspace_equal(&e(&[&[1, 1], &[1, -1]]), &SparseMatrix::identity(2)).unwrap());
        let relabeled = e(&[&[1, 0]]).with_labels(vec![7, 8]);
        assert_eq!(subspace_equal(&e(&[&[1, 0]]), &relabeled), Err(Error::ColumnLabelMismatch));
    }

    #[test]
    fn reducer_reduce_leaves_no_pivot_entries() {
        let mut red = RowReducer::new(3);
        red.insert(vec![(0, q(1)), (1, q(1))]);
        let out = red.reduce(vec![(0, q(2)), (2, q(5))]);
        assert_eq!(out, vec![(1, q(-2)), (2, q(5))]);
    }

    #[test]
    fn combination_solver() {
        let rows = SparseMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]]).into_rows();
        let c = solve_combination(3, &rows, &[(0, q(2)), (1, q(5)), (2, q(3))]).unwrap();
        assert_eq!(c, vec![q(2), q(3)]);
        assert!(solve_combination(3, &rows, &[(0, q(1))]).is_none());
        assert_eq!(solve_combination(3, &rows, &[]).unwrap(), vec![q(0), q(0)]);
    }
}
