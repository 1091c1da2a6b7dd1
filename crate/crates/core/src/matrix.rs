//! Dense integer matrices.
//!
//! Matrices act on column vectors: an `m x n` matrix is a homomorphism
//! `Z^n -> Z^m`, and composition `g ∘ f` is the product `g * f`.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

use crate::int::Int;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Int::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::ONE;
        }
        m
    }

    /// Diagonal matrix; `diag.len()` square.
    pub fn diagonal(diag: &[Int]) -> Matrix {
        let mut m = Matrix::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to give empty row lists a width.
    pub fn from_rows(rows: Vec<Vec<Int>>, cols: usize) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
            cols,
        )
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<Int>], rows: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Int] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Int::from(-1))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn block_diagonal(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                if !b[(i, j)].is_zero() {
                    self[(r0 + i, c0 + j)] += &b[(i, j)];
                }
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(
            idx.iter().map(|&i| self.row(i).to_vec()).collect(),
            self.cols,
        )
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m[(i, j)] = self[(i, c)].clone();
            }
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j];
            if !v.is_zero() {
                let add = v * k;
                self.data[dst * self.cols + j] += add;
            }
        }
    }

    /// `col[dst] += k * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src];
            if !v.is_zero() {
                let add = v * k;
                self.data[i * self.cols + dst] += add;
            }
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for v in self.row_mut(r) {
            *v = -&*v;
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + c;
            self.data[idx] = -&self.data[idx];
        }
    }

    /// Applies the 2x2 unimodular transform `[a b; c d]` to rows `(r1, r2)`.
    pub fn combine_rows(&mut self, r1: usize, r2: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        for j in 0..self.cols {
            let x = self.data[r1 * self.cols + j].clone();
            let y = self.data[r2 * self.cols + j].clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.data[r1 * self.cols + j] = &(a * &x) + &(b * &y);
            self.data[r2 * self.cols + j] = &(c * &x) + &(d * &y);
        }
    }

    /// Applies `[a b; c d]` to columns: `c1' = a*c1 + b*c2`, `c2' = c*c1 + d*c2`.
    pub fn combine_cols(&mut self, c1: usize, c2: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        for i in 0..self.rows {
            let x = self.data[i * self.cols + c1].clone();
            let y = self.data[i * self.cols + c2].clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.data[i * self.cols + c1] = &(a * &x) + &(b * &y);
            self.data[i * self.cols + c2] = &(c * &x) + &(d * &y);
        }
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Int::to_i64).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.row_vecs()).finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Row-list wire form: `[[1, 0], [0, 1]]`, plus the shape so empty matrices round-trip.
#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Int>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows,
            cols: self.cols,
            data: self.row_vecs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let w = MatrixWire::deserialize(d)?;
        if w.data.len() != w.rows || w.data.iter().any(|r| r.len() != w.cols) {
            return Err(serde::de::Error::custom(format!(
                "matrix data does not match its declared {}x{} shape",
                w.rows, w.cols
            )));
        }
        Ok(Matrix::from_rows(w.data, w.cols))
    }
}
