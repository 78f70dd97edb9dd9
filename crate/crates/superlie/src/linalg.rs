//! Exact linear algebra over the rationals: row reduction, rank, nullspace.

use crate::rat::Rat;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rat>>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rat::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Rat>>) -> Matrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols));
        Matrix { rows, cols, data }
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.data[r][col].is_zero()) else {
                continue;
            };
            m.data.swap(row, p);
            let inv = Rat::from_integer(1.into()) / m.data[row][col].clone();
            for c in col..m.cols {
                m.data[row][c] = &m.data[row][c] * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m.data[r][col].is_zero() {
                    let f = m.data[r][col].clone();
                    for c in col..m.cols {
                        let delta = &f * &m.data[row][c];
                        m.data[r][c] = &m.data[r][c] - &delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, one vector per free column, produced in
    /// ascending free-column order (deterministic).
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::from_integer(1.into());
            for (col, &pr) in pivot_set.iter().enumerate() {
                if let Some(prow) = pr {
                    vec[col] = -r.data[prow][free].clone();
                }
            }
            basis.push(vec);
        }
        basis
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

/// Rank of a set of vectors given as rows.
pub fn span_rank(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Whether `v` lies in the row span of `vectors`.
pub fn in_span(vectors: &[Vec<Rat>], v: &[Rat]) -> bool {
    let base = span_rank(vectors);
    let mut rows = vectors.to_vec();
    rows.push(v.to_vec());
    span_rank(&rows) == base
}
