//! Dense matrices over an exact field, with the deterministic linear solver
//! every interpolation step depends on.
//!
//! The solver always picks the lexicographically first independent columns as
//! pivots and sets free variables to zero, so per-prime particular solutions
//! of one rational system agree as reductions of a single rational vector.

use crate::scalar::Field;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinAlgError {
    InconsistentSystem,
    DimensionMismatch,
    Singular,
}

impl core::fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LinAlgError::InconsistentSystem => write!(f, "linear system has no solution"),
            LinAlgError::DimensionMismatch => write!(f, "matrix dimensions do not match"),
            LinAlgError::Singular => write!(f, "matrix is singular"),
        }
    }
}

/// Particular solution with free variables zeroed, plus rank data.
#[derive(Clone, Debug)]
pub struct LinearSolution<F: Field> {
    pub solution: Vec<F>,
    pub rank: usize,
    pub kernel_rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(rows * cols, data.len());
        assert!(!data.is_empty(), "matrices must be nonempty");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows_in: Vec<Vec<F>>) -> Self {
        let rows = rows_in.len();
        let cols = rows_in[0].len();
        let mut data = Vec::with_capacity(rows * cols);
        for r in rows_in {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix::new(rows, cols, data)
    }

    pub fn identity(n: usize, ctx: &F) -> Self {
        let zero = ctx.zero_like();
        let one = ctx.one_like();
        let mut data = vec![zero; n * n];
        for i in 0..n {
            data[i * n + i] = one.clone();
        }
        Matrix { rows: n, cols: n, data }
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn ctx(&self) -> &F {
        &self.data[0]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.at(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_mat(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let zero = self.ctx().zero_like();
        let mut data = vec![zero; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    data[idx] = data[idx].add(&a.mul(rhs.at(k, j)));
                }
            }
        }
        Matrix { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ctx().zero_like();
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Gaussian elimination determinant (first-nonzero pivoting).
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = self.ctx().one_like();
        for col in 0..n {
            let mut piv = None;
            for r in col..n {
                if !m[r * n + col].is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let piv = match piv {
                Some(p) => p,
                None => return self.ctx().zero_like(),
            };
            if piv != col {
                for j in 0..n {
                    m.swap(col * n + j, piv * n + j);
                }
                det = det.neg();
            }
            let d = m[col * n + col].clone();
            det = det.mul(&d);
            let dinv = d.inv().expect("nonzero pivot");
            for r in (col + 1)..n {
                let factor = m[r * n + col].mul(&dinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = factor.mul(&m[col * n + j]);
                    m[r * n + j] = m[r * n + j].sub(&sub);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self, LinAlgError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let zero = self.ctx().zero_like();
        let one = self.ctx().one_like();
        // augmented [A | I]
        let mut m: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let mut row: Vec<F> = self.row(i).to_vec();
                for j in 0..n {
                    row.push(if i == j { one.clone() } else { zero.clone() });
                }
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(LinAlgError::Singular)?;
            m.swap(col, piv);
            let dinv = m[col][col].inv().unwrap();
            for j in 0..2 * n {
                m[col][j] = m[col][j].mul(&dinv);
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for j in col..2 * n {
                    let sub = factor.mul(&m[col][j]);
                    m[r][j] = m[r][j].sub(&sub);
                }
            }
        }
        let mut data = Vec::with_capacity(n * n);
        for r in m {
            data.extend_from_slice(&r[n..]);
        }
        Ok(Matrix { rows: n, cols: n, data })
    }

    /// 3x3 adjugate (classical adjoint): A * adj(A) = det(A) * I.
    pub fn adjugate3(&self) -> Self {
        assert_eq!((self.rows, self.cols), (3, 3));
        let a = |r: usize, c: usize| self.at(r, c);
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            a(r0, c0).mul(a(r1, c1)).sub(&a(r0, c1).mul(a(r1, c0)))
        };
        // adj[i][j] = (-1)^{i+j} * minor with row j and column i removed
        let cof = |j: usize, i: usize| {
            let rs: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cs: Vec<usize> = (0..3).filter(|&cc| cc != i).collect();
            let m = minor(rs[0], rs[1], cs[0], cs[1]);
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        };
        let mut out = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                out.push(cof(j, i));
            }
        }
        Matrix { rows: 3, cols: 3, data: out }
    }
}

/// Solve A x = b with deterministic pivoting; free variables are set to zero.
pub fn solve_linear<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<LinearSolution<F>, LinAlgError> {
    if a.rows != b.len() {
        return Err(LinAlgError::DimensionMismatch);
    }
    let rows = a.rows;
    let cols = a.cols;
    let zero = a.ctx().zero_like();
    let mut m: Vec<Vec<F>> = (0..rows)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut prow = 0usize;
    for col in 0..cols {
        if prow == rows {
            break;
        }
        let piv = (prow..rows).find(|&r| !m[r][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        m.swap(prow, piv);
        let dinv = m[prow][col].inv().unwrap();
        for j in col..=cols {
            m[prow][j] = m[prow][j].mul(&dinv);
        }
        for r in 0..rows {
            if r == prow || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in col..=cols {
                let sub = factor.mul(&m[prow][j]);
                m[r][j] = m[r][j].sub(&sub);
            }
        }
        pivot_cols.push(col);
        prow += 1;
    }
    // consistency: all-zero rows must have zero rhs
    for r in prow..rows {
        if !m[r][cols].is_zero() {
            return Err(LinAlgError::InconsistentSystem);
        }
    }
    let mut solution = vec![zero; cols];
    for (k, &col) in pivot_cols.iter().enumerate() {
        solution[col] = m[k][cols].clone();
    }
    let rank = pivot_cols.len();
    Ok(LinearSolution { solution, rank, kernel_rank: cols - rank, pivot_cols })
}
