use std::fmt;

use crate::{LinalgError, Scalar, Span, SparseVec};

/// Sparse matrix stored column by column.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: Vec<SparseVec<usize>>,
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMat {}x{}", self.rows, self.cols.len())?;
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols.len())
                .map(|c| self.get(r, c).to_string())
                .collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        Ok(())
    }
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: (0..n).map(SparseVec::basis).collect(),
        }
    }

    /// Builds a matrix from its columns. Entries outside `rows` are rejected.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec<usize>>) -> Result<Self, LinalgError> {
        for c in &cols {
            if let Some(k) = c.keys().next_back() {
                if *k >= rows {
                    return Err(LinalgError::IndexOutOfRange {
                        index: *k,
                        dim: rows,
                    });
                }
            }
        }
        Ok(Self { rows, cols })
    }

    /// Builds a matrix from dense row-major integer data.
    pub fn from_rows_i64(data: &[&[i64]]) -> Self {
        let rows = data.len();
        let ncols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows, ncols);
        for (i, r) in data.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                m.cols[j].add_term(i, crate::int(*x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<usize> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<usize>] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(&r)
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        let cur = self.cols[c].get(&r);
        self.cols[c].add_term(r, value - cur);
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn mul_vec(&self, x: &SparseVec<usize>) -> Result<SparseVec<usize>, LinalgError> {
        if let Some(k) = x.keys().next_back() {
            if *k >= self.cols() {
                return Err(LinalgError::DimensionMismatch {
                    expected: self.cols(),
                    found: *k + 1,
                });
            }
        }
        Ok(x.linear_map(|j| self.cols[*j].clone()))
    }

    pub fn mul(&self, other: &SparseMat) -> Result<SparseMat, LinalgError> {
        if self.cols() != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols(),
                found: other.rows,
            });
        }
        let cols = other
            .cols
            .iter()
            .map(|c| c.linear_map(|j| self.cols[*j].clone()))
            .collect();
        Ok(SparseMat {
            rows: self.rows,
            cols,
        })
    }

    pub fn transpose(&self) -> SparseMat {
        let mut t = SparseMat::zeros(self.cols(), self.rows);
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                t.cols[*i].add_term(j, v.clone());
            }
        }
        t
    }

    /// Kronecker product; basis pair `(i1, i2)` sits at index `i1 * dim2 + i2`.
    pub fn tensor(&self, other: &SparseMat) -> SparseMat {
        let mut cols = Vec::with_capacity(self.cols() * other.cols());
        for c1 in &self.cols {
            for c2 in &other.cols {
                let mut v = SparseVec::new();
                for (i1, a) in c1.iter() {
                    for (i2, b) in c2.iter() {
                        v.add_term(i1 * other.rows + i2, a * b);
                    }
                }
                cols.push(v);
            }
        }
        SparseMat {
            rows: self.rows * other.rows,
            cols,
        }
    }

    pub fn column_span(&self) -> Span<usize> {
        Span::from_vectors(self.cols.iter().cloned())
    }

    pub fn rank(&self) -> usize {
        self.column_span().dim()
    }

    /// Basis of the null space, one vector per dependent column.
    pub fn kernel_basis(&self) -> Vec<SparseVec<usize>> {
        self.column_span().relations().to_vec()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &SparseVec<usize>) -> Result<Option<SparseVec<usize>>, LinalgError> {
        self.check_rhs(b)?;
        Ok(self.column_span().express(b))
    }

    /// Solves several right-hand sides against a single elimination.
    pub fn solve_many(
        &self,
        bs: &[SparseVec<usize>],
    ) -> Result<Vec<Option<SparseVec<usize>>>, LinalgError> {
        for b in bs {
            self.check_rhs(b)?;
        }
        let span = self.column_span();
        Ok(bs.iter().map(|b| span.express(b)).collect())
    }

    fn check_rhs(&self, b: &SparseVec<usize>) -> Result<(), LinalgError> {
        match b.keys().next_back() {
            Some(k) if *k >= self.rows => Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: *k + 1,
            }),
            _ => Ok(()),
        }
    }
}

/// Permutation matrix of the flip `x ⊗ y ↦ y ⊗ x` on an `n²`-dimensional tensor square.
pub fn flip(n: usize) -> SparseMat {
    let cols = (0..n * n)
        .map(|k| SparseVec::basis((k % n) * n + k / n))
        .collect();
    SparseMat { rows: n * n, cols }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use num_traits::Zero;

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(SparseMat::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix() {
        let k = SparseMat::zeros(2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        assert_eq!(Span::from_vectors(k).dim(), 3);
    }

    #[test]
    fn kernel_of_all_ones() {
        let m = SparseMat::from_rows_i64(&[&[1, 1], &[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].get(&0), -k[0].get(&1));
        assert!(!k[0].get(&0).is_zero());
        assert!(m.mul_vec(&k[0]).unwrap().is_zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMat::identity(4).rank(), 4);
        assert_eq!(SparseMat::from_rows_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(SparseMat::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn solve_examples() {
        let b = SparseVec::from_terms([(0usize, int(3)), (2, int(-1))]);
        assert_eq!(SparseMat::identity(3).solve(&b).unwrap(), Some(b.clone()));
        let m = SparseMat::from_rows_i64(&[&[1, 1], &[1, 1]]);
        let b = SparseVec::from_terms([(0usize, int(1)), (1, int(2))]);
        assert_eq!(m.solve(&b).unwrap(), None);
        let m = SparseMat::from_rows_i64(&[&[2]]);
        let x = m.solve(&SparseVec::basis(0)).unwrap().unwrap();
        assert_eq!(x.get(&0), crate::parse_scalar("1/2").unwrap());
    }

    #[test]
    fn solve_rejects_wrong_dimension() {
        let m = SparseMat::identity(2);
        assert!(m.solve(&SparseVec::basis(5)).is_err());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(
            SparseMat::identity(2).tensor(&SparseMat::identity(3)),
            SparseMat::identity(6)
        );
        let m1 = SparseMat::from_rows_i64(&[&[1, 0], &[0, 0]]);
        let m2 = SparseMat::from_rows_i64(&[&[1]]);
        assert_eq!(m1.tensor(&m2).rank(), m1.rank() * m2.rank());
    }

    #[test]
    fn flip_conjugates_kronecker() {
        let m1 = SparseMat::from_rows_i64(&[&[1, 2], &[3, 4]]);
        let m2 = SparseMat::from_rows_i64(&[&[0, -1], &[5, 7]]);
        let z = flip(2);
        let lhs = z.mul(&m1.tensor(&m2)).unwrap().mul(&z).unwrap();
        assert_eq!(lhs, m2.tensor(&m1));
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip(1), SparseMat::identity(1));
        let z = flip(2);
        assert_eq!(z.get(2, 1), int(1));
        assert_eq!(z.get(1, 2), int(1));
        assert_eq!(z.get(0, 0), int(1));
        assert_eq!(z.get(3, 3), int(1));
        let z3 = flip(3);
        assert_eq!(z3.mul(&z3).unwrap(), SparseMat::identity(9));
    }
}
