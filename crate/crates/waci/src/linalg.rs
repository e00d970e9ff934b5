//! Exact linear algebra over the rationals.
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination on
//! integer matrices obtained by clearing denominators row by row; kernels
//! come from a plain rational reduced row echelon form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{Int, Rat};

/// Dense rational matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rat>>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![vec![Rat::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Rat>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        debug_assert!(data.iter().all(|r| r.len() == cols));
        QMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::new(n, n);
        for i in 0..n {
            m.data[i][i] = Rat::one();
        }
        m
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::new(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::new(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += p;
                }
            }
        }
        out
    }

    /// Clear denominators in each row, yielding an integer matrix with the
    /// same row space.
    fn to_integer_rows(&self) -> Vec<Vec<Int>> {
        self.data
            .iter()
            .map(|row| {
                let mut lcm = Int::one();
                for c in row {
                    if !c.is_zero() {
                        lcm = num_integer::lcm(lcm, c.denom().abs());
                    }
                }
                row.iter()
                    .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
                    .collect()
            })
            .collect()
    }
}

/// Rank via fraction-free Bareiss elimination.
pub fn rank(m: &QMatrix) -> usize {
    let mut a = m.to_integer_rows();
    let rows = m.rows;
    let cols = m.cols;
    let mut prev = Int::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !a[i][c].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = &t / &prev;
            }
            a[i][c] = Int::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square matrix via Bareiss on the scaled integer matrix,
/// with the accumulated row scalings divided back out.
pub fn det(m: &QMatrix) -> Rat {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return Rat::one();
    }
    let mut scale = Rat::one();
    let mut a: Vec<Vec<Int>> = Vec::with_capacity(n);
    for row in &m.data {
        let mut lcm = Int::one();
        for c in row {
            if !c.is_zero() {
                lcm = num_integer::lcm(lcm, c.denom().abs());
            }
        }
        scale *= Rat::from_integer(lcm.clone());
        a.push(
            row.iter()
                .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
                .collect(),
        );
    }
    let mut sign = 1i64;
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Rat::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let d = Rat::from_integer(a[n - 1][n - 1].clone() * BigInt::from(sign));
    d / scale
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else {
            continue;
        };
        m.data.swap(r, p);
        let inv = m.data[r][c].clone();
        for j in c..m.cols {
            m.data[r][j] = &m.data[r][j] / &inv;
        }
        for i in 0..m.rows {
            if i != r && !m.data[i][c].is_zero() {
                let f = m.data[i][c].clone();
                for j in c..m.cols {
                    let t = &m.data[r][j] * &f;
                    m.data[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{v | Mv = 0}`.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Rat>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    let mut pivot_of_col = vec![None; m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        pivot_of_col[c] = Some(r);
    }
    for free in 0..m.cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); m.cols];
        v[free] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -a.data[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `Mx = b`; `None` when inconsistent. Free coordinates are set to 0.
pub fn solve(m: &QMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(m.rows, b.len());
    let mut aug = QMatrix::new(m.rows, m.cols + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..m.cols {
            aug.data[i][j] = m.data[i][j].clone();
        }
        aug.data[i][m.cols] = bi.clone();
    }
    let pivots = rref(&mut aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.data[r][m.cols].clone();
    }
    Some(x)
}

impl QMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(Int::from(v))).collect())
                .collect(),
        )
    }
}
