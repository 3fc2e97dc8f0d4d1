//! Sparse matrices over the rationals with exact Gaussian elimination.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};

pub type SparseVector = BTreeMap<usize, Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!("cannot stack {} and {} columns", self.cols, other.cols)));
        }
        let mut out = self.clone();
        out.rows += other.rows;
        for (&(i, j), v) in &other.entries {
            out.entries.insert((i + self.rows, j), v.clone());
        }
        Ok(out)
    }

    pub fn mul_vector(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), v) in &self.entries {
            out[i] += v * &x[j];
        }
        Ok(out)
    }

    fn row_vectors(&self) -> Vec<SparseVector> {
        let mut rows = vec![SparseVector::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        rows
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce(self.row_vectors()).pivots.len()
    }

    /// A basis of the null space. Vectors are indexed by free columns in
    /// increasing order, each with a one in its free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let ech = Echelon::reduce(self.row_vectors());
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for &(r, c) in &ech.pivots {
                if let Some(x) = ech.rows[r].get(&free) {
                    v[c] = -x.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self · x = rhs`, with free variables set to zero.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", rhs.len(), self.rows)));
        }
        let mut rows = self.row_vectors();
        let aug = self.cols;
        for (row, b) in rows.iter_mut().zip(rhs) {
            if !b.is_zero() {
                row.insert(aug, b.clone());
            }
        }
        let ech = Echelon::reduce_until(rows, aug);
        // any row whose only entry is in the augmented column is inconsistent
        for row in &ech.rows {
            if let Some((&c, _)) = row.iter().next() {
                if c == aug {
                    return Err(Error::Inconsistent);
                }
            }
        }
        let mut x = vec![Rational::zero(); self.cols];
        for &(r, c) in &ech.pivots {
            x[c] = ech.rows[r].get(&aug).cloned().unwrap_or_else(Rational::zero);
        }
        Ok(x)
    }
}

/// Reduced row echelon form of a list of sparse rows.
struct Echelon {
    rows: Vec<SparseVector>,
    /// (row index, pivot column), in increasing column order.
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    fn reduce(rows: Vec<SparseVector>) -> Self {
        Self::reduce_until(rows, usize::MAX)
    }

    /// Eliminates using pivots in columns `< limit` only.
    fn reduce_until(mut rows: Vec<SparseVector>, limit: usize) -> Self {
        rows.retain(|r| !r.is_empty());
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut done = 0usize;
        loop {
            // choose the remaining row with the smallest leading column, preferring short rows
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in rows.iter().enumerate().skip(done) {
                if let Some((&c, _)) = row.iter().next() {
                    if c >= limit {
                        continue;
                    }
                    let key = (c, row.len(), i);
                    if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
            let Some((col, _, idx)) = best else { break };
            rows.swap(done, idx);
            let inv = Rational::one() / rows[done][&col].clone();
            for v in rows[done].values_mut() {
                *v *= &inv;
            }
            let pivot_row = rows[done].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == done {
                    continue;
                }
                if let Some(factor) = row.get(&col).cloned() {
                    for (c, v) in &pivot_row {
                        let entry = row.entry(*c).or_insert_with(Rational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                }
            }
            pivots.push((done, col));
            done += 1;
        }
        pivots.sort_by_key(|&(_, c)| c);
        Echelon { rows, pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn identity_has_empty_kernel() {
        assert!(SparseMatrix::identity(4).kernel().is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        assert_eq!(SparseMatrix::new(3, 3).kernel().len(), 3);
    }

    #[test]
    fn rank_one_two_by_two() {
        let m = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert_eq!(m.kernel(), vec![vec![q(-2), q(1)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(2), q(4)]]);
        let x = m.solve(&[q(3), q(6)]).unwrap();
        assert_eq!(m.mul_vector(&x).unwrap(), vec![q(3), q(6)]);
        assert_eq!(m.solve(&[q(3), q(7)]), Err(Error::Inconsistent));
        assert!(matches!(m.solve(&[q(1)]), Err(Error::Dimension(_))));
    }

    #[test]
    fn stack_checks_columns() {
        let a = SparseMatrix::new(1, 2);
        let b = SparseMatrix::new(1, 3);
        assert!(a.stack(&b).is_err());
    }
}
