//! Small dense linear algebra: row-major storage, products and LU with partial pivoting.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Pivots below `SINGULAR_RTOL * ||a||_inf` are treated as zero.
pub const SINGULAR_RTOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend_from_slice(row);
        }
        Ok(DenseMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Max absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let mut sums = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (s, v) in sums.iter_mut().zip(self.row(i)) {
                *s += v.abs();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scaled(&self, s: f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// Copy of the block picked out by the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            let src = self.row(i);
            let dst = m.row_mut(a);
            for (b, &j) in cols.iter().enumerate() {
                dst[b] = src[j];
            }
        }
        m
    }

    /// Columns `from..to` as a new matrix.
    pub fn columns(&self, from: usize, to: usize) -> DenseMatrix {
        let cols: Vec<usize> = (from..to).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, &cols)
    }

    /// Row-major CSV, 17 significant digits in scientific notation.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Matrix product; the inner sum runs left to right over k.
pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut c = DenseMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let ai = a.row(i);
        let ci = &mut c.data[i * b.cols..(i + 1) * b.cols];
        for (k, &aik) in ai.iter().enumerate() {
            if aik == 0.0 {
                continue;
            }
            let bk = &b.data[k * b.cols..(k + 1) * b.cols];
            for (cij, bkj) in ci.iter_mut().zip(bk) {
                *cij += aik * bkj;
            }
        }
    }
    Ok(c)
}

/// LU factors of a square matrix, `P a = L U`, unit lower L stored below the diagonal.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: DenseMatrix,
    perm: Vec<usize>,
    norm_one: f64,
}

impl Lu {
    pub fn factor(a: &DenseMatrix) -> Result<Lu> {
        if a.rows != a.cols {
            return Err(Error::DimensionMismatch(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows, a.cols
            )));
        }
        if !a.is_finite() {
            return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
        }
        let n = a.rows;
        let tol = SINGULAR_RTOL * a.norm_inf();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].abs();
            for i in k + 1..n {
                let v = lu[(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > tol) || best == 0.0 {
                return Err(Error::SingularMatrix {
                    context: "lu".into(),
                    column: k,
                    pivot: best,
                });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let m = lu[(i, k)] / pivot;
                lu[(i, k)] = m;
                if m != 0.0 {
                    for j in k + 1..n {
                        lu.data[i * n + j] -= m * lu.data[k * n + j];
                    }
                }
            }
        }
        Ok(Lu {
            n,
            lu,
            perm,
            norm_one: a.norm_one(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve_vec(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "rhs has {} entries, system has {n}",
                b.len()
            )));
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s = dot(&self.lu.row(i)[..i], &x[..i]);
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let r = self.lu.row(i);
            let s = dot(&r[i + 1..], &x[i + 1..]);
            x[i] = (x[i] - s) / r[i];
        }
        Ok(x)
    }

    /// Solves `a^T x = b`.
    pub fn solve_transpose_vec(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch("rhs length".into()));
        }
        let mut z = b.to_vec();
        for i in 0..n {
            let mut s = z[i];
            for k in 0..i {
                s -= self.lu[(k, i)] * z[k];
            }
            z[i] = s / self.lu[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = z[i];
            for k in i + 1..n {
                s -= self.lu[(k, i)] * z[k];
            }
            z[i] = s;
        }
        let mut x = vec![0.0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = z[i];
        }
        Ok(x)
    }

    pub fn solve_mat(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        if b.rows != self.n {
            return Err(Error::DimensionMismatch("rhs rows".into()));
        }
        let bt = b.transpose();
        let mut out = DenseMatrix::zeros(b.cols, b.rows);
        for j in 0..b.cols {
            let x = self.solve_vec(bt.row(j))?;
            out.row_mut(j).copy_from_slice(&x);
        }
        Ok(out.transpose())
    }

    /// 1-norm condition estimate (Hager's method on the inverse).
    pub fn condition_estimate(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 1.0;
        }
        let mut x = vec![1.0 / n as f64; n];
        let mut est = 0.0;
        for _ in 0..5 {
            let y = match self.solve_vec(&x) {
                Ok(y) => y,
                Err(_) => return f64::INFINITY,
            };
            let norm: f64 = y.iter().map(|v| v.abs()).sum();
            if norm <= est {
                break;
            }
            est = norm;
            let xi: Vec<f64> = y.iter().map(|v| if *v >= 0.0 { 1.0 } else { -1.0 }).collect();
            let z = match self.solve_transpose_vec(&xi) {
                Ok(z) => z,
                Err(_) => return f64::INFINITY,
            };
            let (jmax, zmax) = z
                .iter()
                .enumerate()
                .fold((0, 0.0), |acc, (j, v)| if v.abs() > acc.1 { (j, v.abs()) } else { acc });
            if zmax <= dot(&z, &x) {
                break;
            }
            x = vec![0.0; n];
            x[jmax] = 1.0;
        }
        est * self.norm_one
    }
}

pub fn lu_solve(a: &DenseMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    Lu::factor(a)?.solve_vec(rhs)
}

pub fn lu_solve_mat(a: &DenseMatrix, rhs: &DenseMatrix) -> Result<DenseMatrix> {
    Lu::factor(a)?.solve_mat(rhs)
}
