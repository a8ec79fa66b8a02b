//! Sparse and dense exact linear algebra over a generic scalar.
//!
//! Everything here assumes the scalar is a field under the `Num` operations
//! (division by a nonzero pivot is exact). With [`crate::Rat`] all results
//! are exact; there is no pivoting by magnitude and no tolerance anywhere.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major sparse matrix; each row holds `(column, value)` pairs sorted by
/// column, with no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMat<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMat<T> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, T::one())]).collect();
        SparseMat {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    /// Build from `(row, col, value)` triplets; duplicate positions are summed.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut cells: Vec<std::collections::BTreeMap<usize, T>> =
            vec![std::collections::BTreeMap::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet out of bounds");
            let slot = cells[r].entry(c).or_insert_with(T::zero);
            *slot += v;
        }
        let rows = cells
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMat {
            nrows,
            ncols,
            rows,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.rows[r].binary_search_by_key(&c, |&(col, _)| col) {
            Ok(idx) => self.rows[r][idx].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for r in 0..self.nrows.min(self.ncols) {
            acc += self.get(r, r);
        }
        acc
    }

    pub fn scale(&self, factor: &T) -> Self {
        if factor.is_zero() {
            return Self::zero(self.nrows, self.ncols);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, v.clone() * factor.clone()))
                    .collect()
            })
            .collect();
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut rows = Vec::with_capacity(self.nrows);
        for (a, b) in self.rows.iter().zip(&other.rows) {
            let mut merged: std::collections::BTreeMap<usize, T> = std::collections::BTreeMap::new();
            for (c, v) in a.iter().chain(b.iter()) {
                let slot = merged.entry(*c).or_insert_with(T::zero);
                *slot += v.clone();
            }
            rows.push(merged.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in mul");
        let mut rows = Vec::with_capacity(self.nrows);
        for row in &self.rows {
            let mut acc: std::collections::BTreeMap<usize, T> = std::collections::BTreeMap::new();
            for (k, v) in row {
                for (j, w) in &other.rows[*k] {
                    let slot = acc.entry(*j).or_insert_with(T::zero);
                    *slot += v.clone() * w.clone();
                }
            }
            rows.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        SparseMat {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    /// Matrix times dense column vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = T::zero();
                for (c, val) in row {
                    acc += val.clone() * v[*c].clone();
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Scalar>(mat: &mut [Vec<T>]) -> Vec<usize> {
    let nrows = mat.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = mat[0].len();
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        if pivot_row >= nrows {
            break;
        }
        let found = (pivot_row..nrows).find(|&r| !mat[r][col].is_zero());
        let Some(r) = found else { continue };
        mat.swap(pivot_row, r);
        let inv = T::one() / mat[pivot_row][col].clone();
        for c in col..ncols {
            let v = mat[pivot_row][c].clone() * inv.clone();
            mat[pivot_row][c] = v;
        }
        for r2 in 0..nrows {
            if r2 == pivot_row || mat[r2][col].is_zero() {
                continue;
            }
            let factor = mat[r2][col].clone();
            for c in col..ncols {
                let delta = factor.clone() * mat[pivot_row][c].clone();
                let v = mat[r2][c].clone() - delta;
                mat[r2][c] = v;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(mat: &[Vec<T>]) -> usize {
    let mut work: Vec<Vec<T>> = mat.to_vec();
    rref(&mut work).len()
}

/// Basis of the column space of a sparse operator, via elimination.
///
/// Returns `(basis, pivots)` where each basis vector `b_j` has length
/// `nrows()`, the pivot coordinates satisfy `b_j[pivots[l]] = delta_{jl}`,
/// and the basis spans exactly the image.
pub fn column_space_basis<T: Scalar>(op: &SparseMat<T>) -> (Vec<Vec<T>>, Vec<usize>) {
    // rows of `work` are the columns of `op`
    let mut work = vec![vec![T::zero(); op.nrows()]; op.ncols()];
    for r in 0..op.nrows() {
        for (c, v) in op.row(r) {
            work[*c][r] = v.clone();
        }
    }
    let pivots = rref(&mut work);
    let basis = work.into_iter().take(pivots.len()).collect();
    (basis, pivots)
}

/// Matrix of `op` restricted to the invariant subspace spanned by `basis`.
///
/// `basis` and `pivots` must come from [`column_space_basis`]-style data:
/// `basis[j][pivots[l]] = delta_{jl}`. Each image vector is checked to lie in
/// the span; a nonzero residual yields [`Error::NotInvariant`] rather than a
/// silently wrong restriction.
pub fn restrict<T: Scalar>(
    op: &SparseMat<T>,
    basis: &[Vec<T>],
    pivots: &[usize],
) -> Result<Vec<Vec<T>>> {
    let dim = basis.len();
    assert_eq!(dim, pivots.len());
    let mut restricted = vec![vec![T::zero(); dim]; dim];
    for (m, b) in basis.iter().enumerate() {
        let image = op.apply(b);
        let coords: Vec<T> = pivots.iter().map(|&p| image[p].clone()).collect();
        // verify image = sum_j coords[j] * basis[j]
        for r in 0..op.nrows() {
            let mut acc = T::zero();
            for (j, c) in coords.iter().enumerate() {
                acc += c.clone() * basis[j][r].clone();
            }
            if acc != image[r] {
                return Err(Error::NotInvariant);
            }
        }
        for (j, c) in coords.into_iter().enumerate() {
            restricted[j][m] = c;
        }
    }
    Ok(restricted)
}

/// Characteristic polynomial `det(tI - A)` by the division-free
/// Samuelson-Berkowitz recursion. Coefficients are returned in descending
/// order, `[1, c_{n-1}, ..., c_0]`.
pub fn char_poly<T: Scalar>(a: &[Vec<T>]) -> Vec<T> {
    let n = a.len();
    let mut p = vec![T::one()]; // char poly of the empty matrix
    for k in 1..=n {
        // leading principal k x k block, partitioned at its last row/column
        let diag = a[k - 1][k - 1].clone();
        let mut v = vec![T::zero(); k + 1];
        // (t - diag) * p
        for (m, slot) in v.iter_mut().enumerate() {
            let mut val = if m < p.len() { p[m].clone() } else { T::zero() };
            if m >= 1 {
                val = val - diag.clone() * p[m - 1].clone();
            }
            *slot = val;
        }
        // subtract (R M^i C) * (polynomial part of p / t^{i+1})
        if k >= 2 {
            let mut u: Vec<T> = (0..k - 1).map(|r| a[r][k - 1].clone()).collect(); // C
            for i in 0..=k - 2 {
                let mut w = T::zero(); // R M^i C
                for (c, uc) in u.iter().enumerate() {
                    w += a[k - 1][c].clone() * uc.clone();
                }
                if !w.is_zero() {
                    for j in 0..=k - 2 - i {
                        let delta = w.clone() * p[j].clone();
                        let val = v[i + 2 + j].clone() - delta;
                        v[i + 2 + j] = val;
                    }
                }
                if i < k - 2 {
                    // u <- M u
                    let mut next = vec![T::zero(); k - 1];
                    for (r, slot) in next.iter_mut().enumerate() {
                        for (c, uc) in u.iter().enumerate() {
                            *slot += a[r][c].clone() * uc.clone();
                        }
                    }
                    u = next;
                }
            }
        }
        p = v;
    }
    p
}

/// Divide a monic-in-descending-coefficients polynomial by `(t - root)`.
/// Returns the quotient if the division is exact.
fn deflate<T: Scalar>(coeffs: &[T], root: i64) -> Option<Vec<T>> {
    let c = crate::scalar::from_i64::<T>(root);
    let mut quotient = Vec::with_capacity(coeffs.len() - 1);
    let mut carry = T::zero();
    for (i, a) in coeffs.iter().enumerate() {
        let b = a.clone() + c.clone() * carry.clone();
        if i == coeffs.len() - 1 {
            return if b.is_zero() { Some(quotient) } else { None };
        }
        quotient.push(b.clone());
        carry = b;
    }
    unreachable!()
}

/// Integer eigenvalue multiset (with algebraic multiplicities) of an exact
/// square matrix known a priori to have spectrum inside `[-bound, bound]`.
///
/// Strategy: geometric multiplicities from kernel ranks over all integer
/// candidates. If they sum to the dimension, the matrix is semisimple and the
/// geometric data *is* the characteristic polynomial; otherwise fall back to
/// the Berkowitz characteristic polynomial and deflate integer roots. A
/// residual nonconstant factor means a genuinely non-integral spectrum and is
/// reported as an error, never guessed.
pub fn integer_spectrum<T: Scalar>(mat: &[Vec<T>], bound: i64) -> Result<Vec<(i64, usize)>> {
    let dim = mat.len();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    let mut total = 0usize;
    for cand in -bound..=bound {
        let c = crate::scalar::from_i64::<T>(cand);
        let mut shifted = mat.to_vec();
        for (i, row) in shifted.iter_mut().enumerate() {
            let v = row[i].clone() - c.clone();
            row[i] = v;
        }
        let mult = dim - rank(&shifted);
        if mult > 0 {
            found.push((cand, mult));
            total += mult;
        }
    }
    if total == dim {
        return Ok(found);
    }
    // Defective or out-of-range spectrum: take the slow exact route.
    let mut coeffs = char_poly(mat);
    let mut spectrum = Vec::new();
    let mut root = -bound;
    while coeffs.len() > 1 && root <= bound {
        match deflate(&coeffs, root) {
            Some(q) => {
                coeffs = q;
                match spectrum.last_mut() {
                    Some((r, m)) if *r == root => *m += 1,
                    _ => spectrum.push((root, 1usize)),
                }
            }
            None => root += 1,
        }
    }
    if coeffs.len() > 1 {
        return Err(Error::NonIntegralSpectrum(
            coeffs.iter().map(|c| c.to_string()).collect(),
        ));
    }
    Ok(spectrum)
}
