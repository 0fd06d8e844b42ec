//! Small exact linear algebra over field elements: reduced row echelon
//! form, null spaces and determinants. Pivoting picks the first nonzero
//! entry — exactness makes stability concerns moot and keeps every result
//! deterministic.

use alloc::vec;
use alloc::vec::Vec;

use crate::numfield::{FieldDescriptor, FieldElement};

/// Dense row-major matrix of exact field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(field: &FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).inverse().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.at(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c).sub(&factor.mul(self.at(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space `{x : Mx = 0}`.
    pub fn nullspace(&self, field: &FieldDescriptor) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![field.zero(); self.cols];
                v[fc] = field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.at(r, fc).neg();
                }
                v
            })
            .collect()
    }

    /// Determinant of a square matrix by exact Gaussian elimination.
    pub fn det(&self, field: &FieldDescriptor) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return field.zero();
            };
            if p != col {
                m.swap_rows(col, p);
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inverse().expect("pivot is nonzero");
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).mul(&inv);
                for c in col..n {
                    let v = m.at(r, c).sub(&factor.mul(m.at(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

/// 3x3 determinant of column vectors, expanded directly.
pub fn det3(a: &[FieldElement; 3], b: &[FieldElement; 3], c: &[FieldElement; 3]) -> FieldElement {
    let m01 = b[1].mul(&c[2]).sub(&b[2].mul(&c[1]));
    let m11 = b[0].mul(&c[2]).sub(&b[2].mul(&c[0]));
    let m21 = b[0].mul(&c[1]).sub(&b[1].mul(&c[0]));
    a[0].mul(&m01).sub(&a[1].mul(&m11)).add(&a[2].mul(&m21))
}
