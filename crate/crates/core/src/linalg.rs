//! Exact dense matrices over a [`FieldCtx`] and Gaussian elimination.
//!
//! Maps are stored row-major with one row per domain basis vector, so the
//! rank of a map is the rank of its row set and kernels are left kernels.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::{FieldCtx, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    /// Build from row vectors, all of length `cols`.
    pub fn from_rows(ctx: &FieldCtx, cols: usize, rows: Vec<Vec<FieldElem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix {
            ctx: ctx.clone(),
            rows: n,
            cols,
            data,
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.ctx, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: std::ops::Range<usize>) -> Matrix {
        let rows = self
            .rows()
            .map(|r| r[cols.clone()].to_vec())
            .collect();
        Matrix::from_rows(&self.ctx, cols.len(), rows)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Matrix::from_rows(&self.ctx, self.cols, rows)
    }

    /// `v · M` for a row vector `v` of length `nrows`.
    pub fn left_apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.ctx.zero(); self.cols];
        for (r, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = &*slot + &(coeff * self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form with pivots chosen leftmost-first, together
    /// with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(lead, j) * &inv;
                m.set(lead, j, v);
            }
            for r in 0..m.rows {
                if r == lead || m.get(r, c).is_zero() {
                    continue;
                }
                let factor = m.get(r, c).clone();
                for j in c..m.cols {
                    let v = m.get(r, j) - &(&factor * m.get(lead, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of `{ v : v · M = 0 }`, one vector per free column of `Mᵀ` in
    /// left-to-right order.
    pub fn left_kernel(&self) -> Vec<Vec<FieldElem>> {
        let t = self.transpose();
        let (r, pivots) = t.rref();
        let n = t.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.ctx.zero(); n];
                v[fc] = self.ctx.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, fc);
                }
                v
            })
            .collect()
    }

    /// Coefficients `x` with `x · M = target`, if `target` is in the row span.
    pub fn solve_left(&self, target: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(target.len(), self.cols);
        // Mᵀ x = targetᵀ as an augmented system
        let mut rows: Vec<Vec<FieldElem>> = self.transpose().rows().map(|r| r.to_vec()).collect();
        for (row, t) in rows.iter_mut().zip(target) {
            row.push(t.clone());
        }
        let aug = Matrix::from_rows(&self.ctx, self.rows + 1, rows);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![self.ctx.zero(); self.rows];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.rows).clone();
        }
        Some(x)
    }

    pub fn row_span_contains(&self, v: &[FieldElem]) -> bool {
        self.solve_left(v).is_some()
    }

    /// Randomly permute rows and columns and scale each row by a random
    /// nonzero scalar. Rank is invariant under all three.
    pub fn scrambled<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix {
        let mut row_order: Vec<usize> = (0..self.rows).collect();
        let mut col_order: Vec<usize> = (0..self.cols).collect();
        row_order.shuffle(rng);
        col_order.shuffle(rng);
        let rows = row_order
            .iter()
            .map(|&r| {
                let s = self.ctx.random_nonzero(rng);
                col_order.iter().map(|&c| &s * self.get(r, c)).collect()
            })
            .collect();
        Matrix::from_rows(&self.ctx, self.cols, rows)
    }
}
