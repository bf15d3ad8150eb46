//! Dense exact linear algebra: rank, right kernels and incremental
//! row-echelon spans over any [`Field`].
//!
//! Everything is plain Gaussian elimination with first-nonzero pivoting.
//! Matrices here are a few hundred rows at most, so no fraction-free or
//! blocked variants are needed; exactness is the whole point.

use crate::field::Field;

/// A dense rows x cols matrix of field elements, row-major.
#[derive(Debug, Clone)]
pub struct ScalarMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for ScalarMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> ScalarMatrix<F> {
    pub fn zero(field: &F, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<F::Elem>>) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == width), "ragged rows");
        ScalarMatrix {
            rows: height,
            cols: width,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    /// Exact rank by Gaussian elimination on a working copy, pivoting on the
    /// first nonzero entry of each column.
    pub fn rank(&self, field: &F) -> usize {
        let mut work = self.clone();
        let mut next_row = 0;
        for col in 0..work.cols {
            if next_row == work.rows {
                break;
            }
            let Some(pivot) = (next_row..work.rows).find(|&r| !field.is_zero(work.get(r, col)))
            else {
                continue;
            };
            work.swap_rows(next_row, pivot);
            let inv = field
                .inv(work.get(next_row, col))
                .expect("pivot is nonzero");
            for r in next_row + 1..work.rows {
                if field.is_zero(work.get(r, col)) {
                    continue;
                }
                let factor = field.mul(work.get(r, col), &inv);
                for c in col..work.cols {
                    let v = field.mul_sub(work.get(r, c), &factor, work.get(next_row, c));
                    work.set(r, c, v);
                }
            }
            next_row += 1;
        }
        next_row
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right kernel `{ v : M v = 0 }`, one vector per free
    /// column of the reduced row echelon form. The basis is canonical for a
    /// given matrix: each vector has a one in its free coordinate.
    pub fn kernel_basis(&self, field: &F) -> Vec<Vec<F::Elem>> {
        let mut work = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut next_row = 0;
        for col in 0..work.cols {
            if next_row == work.rows {
                break;
            }
            let Some(pivot) = (next_row..work.rows).find(|&r| !field.is_zero(work.get(r, col)))
            else {
                continue;
            };
            work.swap_rows(next_row, pivot);
            let inv = field
                .inv(work.get(next_row, col))
                .expect("pivot is nonzero");
            for c in col..work.cols {
                let v = field.mul(work.get(next_row, c), &inv);
                work.set(next_row, c, v);
            }
            for r in 0..work.rows {
                if r == next_row || field.is_zero(work.get(r, col)) {
                    continue;
                }
                let factor = work.get(r, col).clone();
                for c in col..work.cols {
                    let v = field.mul_sub(work.get(r, c), &factor, work.get(next_row, c));
                    work.set(r, c, v);
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
        }

        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::with_capacity(work.cols - pivot_cols.len());
        for free in 0..work.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![field.zero(); work.cols];
            v[free] = field.one();
            for &(r, c) in &pivots {
                v[c] = field.neg(work.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// `M v` as a new vector.
    pub fn apply(&self, field: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for j in 0..self.cols {
                    acc = field.add(&acc, &field.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }
}

/// A growing reduced-row-echelon span: vectors are inserted one at a time
/// and the basis stays canonical. This is the workhorse of the per-degree
/// ideal and syzygy sweeps.
#[derive(Debug, Clone)]
pub struct EchelonSpan<F: Field> {
    ncols: usize,
    /// Rows in ascending pivot order, each monic at its pivot and reduced
    /// against all the others.
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonSpan<F> {
    pub fn new(ncols: usize) -> Self {
        EchelonSpan {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// Reduces `v` against the span in place.
    pub fn reduce(&self, field: &F, v: &mut [F::Elem]) {
        assert_eq!(v.len(), self.ncols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for c in p..self.ncols {
                v[c] = field.mul_sub(&v[c], &factor, &row[c]);
            }
        }
    }

    pub fn contains(&self, field: &F, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|x| field.is_zero(x))
    }

    /// Inserts a vector; returns whether the dimension grew.
    pub fn insert(&mut self, field: &F, mut v: Vec<F::Elem>) -> bool {
        self.reduce(field, &mut v);
        let Some(pivot) = v.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&v[pivot]).expect("pivot is nonzero");
        for c in pivot..self.ncols {
            v[c] = field.mul(&v[c], &inv);
        }
        // Keep the basis fully reduced.
        for row in &mut self.rows {
            if field.is_zero(&row[pivot]) {
                continue;
            }
            let factor = row[pivot].clone();
            for c in pivot..self.ncols {
                row[c] = field.mul_sub(&row[c], &factor, &v[c]);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }
}
