//! Exact dense linear algebra over ℚ(√2, √3): elimination, rank, solving and
//! Sylvester signature of symmetric forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::FieldElem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![FieldElem::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElem::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of equal length).
    pub fn from_columns(columns: &[&[FieldElem]]) -> Self {
        let rows = columns.first().map_or(0, |c| c.len());
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols)
                .filter(|&k| !self[(i, k)].is_zero() && !rhs[(k, j)].is_zero())
                .map(|k| &self[(i, k)] * &rhs[(k, j)])
                .sum()
        })
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &self[(r, j)];
                    self[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    pub fn determinant(&self) -> FieldElem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = FieldElem::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return FieldElem::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().expect("pivot is nonzero");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    let delta = &factor * &m[(c, j)];
                    m[(i, j)] -= delta;
                }
            }
        }
        det
    }

    /// Unique solution of the square system `self · x = b`.
    pub fn solve(&self, b: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if self.rows != self.cols {
            return Err(Error::Singular);
        }
        match solve_in_span(self, b) {
            SpanSolution::Solution(x) if self.rank() == self.cols => Ok(x),
            _ => Err(Error::Singular),
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::Singular);
        }
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                FieldElem::one()
            } else {
                FieldElem::zero()
            }
        });
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElem;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElem {
        &mut self.data[i * self.cols + j]
    }
}

/// Outcome of solving `A x = b` when `b` may or may not lie in the column space of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SpanSolution {
    /// One solution (free variables set to zero).
    Solution(Vec<FieldElem>),
    /// The reduced augmented system contains `0 = value` at `row` with `value ≠ 0`.
    Inconsistent { row: usize, value: FieldElem },
}

pub fn solve_in_span(a: &Matrix, b: &[FieldElem]) -> SpanSolution {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let n = a.cols;
    let mut aug = Matrix::from_fn(a.rows, n + 1, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let pivots = aug.row_reduce();
    if let Some(r) = pivots.iter().position(|&c| c == n) {
        return SpanSolution::Inconsistent {
            row: r,
            value: aug[(r, n)].clone(),
        };
    }
    let mut x = vec![FieldElem::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, n)].clone();
    }
    SpanSolution::Solution(x)
}

/// Inertia of a symmetric bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0 && self.positive > 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0 && self.negative > 0
    }

    pub fn is_totally_degenerate(&self) -> bool {
        self.positive == 0 && self.negative == 0
    }

    pub fn describe(&self) -> String {
        if self.is_totally_degenerate() {
            "totally degenerate".into()
        } else if self.is_positive_definite() {
            "positive definite".into()
        } else if self.is_negative_definite() {
            "negative definite".into()
        } else if self.zero > 0 {
            format!("degenerate ({}+, {}-, {}0)", self.positive, self.negative, self.zero)
        } else {
            format!("indefinite ({}+, {}-)", self.positive, self.negative)
        }
    }
}

/// Diagonalizes a symmetric matrix by congruence and returns its inertia
/// together with the diagonal entries found.
pub fn signature(sym: &Matrix) -> (Signature, Vec<FieldElem>) {
    assert_eq!(sym.rows, sym.cols, "signature of a non-square matrix");
    let n = sym.rows;
    let mut m = sym.clone();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if m[(k, k)].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !m[(i, i)].is_zero()) {
                swap_sym(&mut m, k, p);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                // Hyperbolic pair: e_k ↦ e_k + e_j makes the diagonal 2·m[k][j].
                add_sym(&mut m, k, j);
            } else if let Some((i, j)) = (k + 1..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[(i, j)].is_zero())
            {
                swap_sym(&mut m, k, i);
                add_sym(&mut m, k, j);
            }
        }
        let pivot = m[(k, k)].clone();
        if !pivot.is_zero() {
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in k + 1..n {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let factor = &m[(i, k)] * &inv;
                // row_i -= factor * row_k, col_i -= factor * col_k
                for j in 0..n {
                    let delta = &factor * &m[(k, j)];
                    m[(i, j)] -= delta;
                }
                for j in 0..n {
                    let delta = &factor * &m[(j, k)];
                    m[(j, i)] -= delta;
                }
            }
        }
        diag.push(pivot);
    }
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for d in &diag {
        match d.signum() {
            1 => sig.positive += 1,
            -1 => sig.negative += 1,
            _ => sig.zero += 1,
        }
    }
    (sig, diag)
}

fn swap_sym(m: &mut Matrix, a: usize, b: usize) {
    m.swap_rows(a, b);
    for i in 0..m.rows {
        m.data.swap(i * m.cols + a, i * m.cols + b);
    }
}

/// Congruence by `e_a ↦ e_a + e_b`.
fn add_sym(m: &mut Matrix, a: usize, b: usize) {
    let n = m.rows;
    for j in 0..n {
        let v = m[(b, j)].clone();
        m[(a, j)] += v;
    }
    for i in 0..n {
        let v = m[(i, b)].clone();
        m[(i, a)] += v;
    }
}
