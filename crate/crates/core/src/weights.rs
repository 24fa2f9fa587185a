//! Differential quadrature weighting coefficients.
//!
//! Conventional Lagrange matrices act on nodal values only. The modified
//! matrices are `N x (N+4)` and act on the extended vector
//! `[w_1..w_N, w'_1, w'_N, w''_1, w''_N]`, which is what lets a sixth-order
//! equation carry three conditions per end.

use crate::error::{Error, Result};
use crate::grid::{Grid1D, MIN_POINTS};
use crate::linalg::{lu_solve, matmul, DenseMatrix};

/// Number of boundary extras appended to the nodal values.
pub const EXTRA_DOFS: usize = 4;

/// Column offsets of the boundary extras, relative to `N`.
pub const SLOPE_FIRST: usize = 0;
pub const SLOPE_LAST: usize = 1;
pub const CURV_FIRST: usize = 2;
pub const CURV_LAST: usize = 3;

/// First derivative matrix of the Lagrange basis on `points` (any `n >= 2`).
pub fn lagrange_first_derivative(points: &[f64]) -> DenseMatrix {
    let n = points.len();
    // m[i] = prod_{k != i} (x_i - x_k)
    let m: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&k| k != i)
                .map(|k| points[i] - points[k])
                .product()
        })
        .collect();
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let dx = points[i] - points[j];
            a[(i, j)] = m[i] / (dx * m[j]);
            diag += 1.0 / dx;
        }
        a[(i, i)] = diag;
    }
    a
}

/// Integrals of the Lagrange basis over the grid interval.
///
/// Solved from the moment conditions on Chebyshev polynomials, which is
/// well conditioned for cosine-spaced points.
pub fn quadrature_weights(points: &[f64]) -> Result<Vec<f64>> {
    let n = points.len();
    let (lo, hi) = (points[0], points[n - 1]);
    let half = 0.5 * (hi - lo);
    let mut vt = DenseMatrix::zeros(n, n);
    for (j, &x) in points.iter().enumerate() {
        let t = (x - lo) / half - 1.0;
        let (mut t0, mut t1) = (1.0, t);
        for k in 0..n {
            let tk = match k {
                0 => 1.0,
                1 => t,
                _ => {
                    let t2 = 2.0 * t * t1 - t0;
                    t0 = t1;
                    t1 = t2;
                    t2
                }
            };
            vt[(k, j)] = tk;
        }
    }
    let moments: Vec<f64> = (0..n)
        .map(|k| {
            if k % 2 == 1 {
                0.0
            } else {
                2.0 / (1.0 - (k * k) as f64)
            }
        })
        .collect();
    let w = lu_solve(&vt, &moments)?;
    Ok(w.into_iter().map(|v| v * half).collect())
}

/// Value at `x` of the Lagrange interpolant through `(points, values)`.
pub fn lagrange_interpolate(points: &[f64], values: &[f64], x: f64) -> f64 {
    let n = points.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..n {
        let dx = x - points[j];
        if dx == 0.0 {
            return values[j];
        }
        let wj: f64 = 1.0
            / (0..n)
                .filter(|&k| k != j)
                .map(|k| points[j] - points[k])
                .product::<f64>();
        num += wj / dx * values[j];
        den += wj / dx;
    }
    num / den
}

/// Extended dof vector of a function: nodal samples, then end slopes and curvatures.
pub fn extended_dofs(
    points: &[f64],
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    d2f: impl Fn(f64) -> f64,
) -> Vec<f64> {
    let (a, b) = (points[0], points[points.len() - 1]);
    let mut v: Vec<f64> = points.iter().map(|&x| f(x)).collect();
    v.extend([df(a), df(b), d2f(a), d2f(b)]);
    v
}

/// Conventional matrices for derivative orders 1 to 4.
#[derive(Debug, Clone)]
pub struct DiffMatrixSet {
    pub a: DenseMatrix,
    pub b: DenseMatrix,
    pub c: DenseMatrix,
    pub d: DenseMatrix,
}

impl DiffMatrixSet {
    pub fn from_first(a: DenseMatrix) -> Result<Self> {
        let b = matmul(&a, &a)?;
        let c = matmul(&b, &a)?;
        let d = matmul(&b, &b)?;
        Ok(DiffMatrixSet { a, b, c, d })
    }

    pub fn new(grid: &Grid1D) -> Result<Self> {
        Self::from_first(lagrange_first_derivative(grid.points()))
    }
}

/// The six modified matrices plus the helpers used to build them.
#[derive(Debug, Clone)]
pub struct ModifiedWeightSet {
    pub a_bar: DenseMatrix,
    pub b_bar: DenseMatrix,
    pub c_bar: DenseMatrix,
    pub d_bar: DenseMatrix,
    pub e_bar: DenseMatrix,
    pub f_bar: DenseMatrix,
    /// Fourth-order helper whose boundary rows carry the curvature columns.
    pub v: DenseMatrix,
    /// Third-order matrix `a * b_bar`: boundary curvature enters through the
    /// slope columns only. Used for shear and corner-force rows.
    pub c_shear: DenseMatrix,
    pub conventional: DiffMatrixSet,
}

impl ModifiedWeightSet {
    pub fn new(grid: &Grid1D) -> Result<Self> {
        Self::from_points(grid.points())
    }

    pub fn from_points(points: &[f64]) -> Result<Self> {
        let n = points.len();
        if n < MIN_POINTS {
            return Err(Error::InvalidArgument(format!(
                "modified weights need n >= {MIN_POINTS}, got {n}"
            )));
        }
        let conv = DiffMatrixSet::from_first(lagrange_first_derivative(points))?;
        let (a, b) = (&conv.a, &conv.b);
        let m = n + EXTRA_DOFS;
        let ends = [0, n - 1];
        let interior = 1..n - 1;

        let mut a_bar = DenseMatrix::zeros(n, m);
        let mut b_bar = DenseMatrix::zeros(n, m);
        for i in 0..n {
            a_bar.row_mut(i)[..n].copy_from_slice(a.row(i));
            b_bar.row_mut(i)[..n].copy_from_slice(b.row(i));
        }
        for &i in &ends {
            let row = b_bar.row_mut(i);
            for j in 0..n {
                row[j] = interior.clone().map(|k| a[(i, k)] * a[(k, j)]).sum();
            }
            row[n + SLOPE_FIRST] = a[(i, 0)];
            row[n + SLOPE_LAST] = a[(i, n - 1)];
        }

        // interior rows of c_bar: b_bar * a restricted to nodal columns
        let mut c_bar = DenseMatrix::zeros(n, m);
        for i in 1..n - 1 {
            let row = c_bar.row_mut(i);
            for j in 0..n {
                row[j] = (0..n).map(|k| b_bar[(i, k)] * a[(k, j)]).sum();
            }
        }
        for &i in &ends {
            let row = c_bar.row_mut(i);
            for j in 0..n {
                row[j] = interior.clone().map(|k| a[(i, k)] * b[(k, j)]).sum();
            }
            row[n + CURV_FIRST] = a[(i, 0)];
            row[n + CURV_LAST] = a[(i, n - 1)];
        }

        let d_bar = matmul(b, &b_bar)?;

        // interior rows keep all of d_bar, slope columns included
        let mut v = d_bar.clone();
        for &i in &ends {
            let row = v.row_mut(i);
            row.iter_mut().for_each(|x| *x = 0.0);
            for j in 0..n {
                row[j] = interior.clone().map(|k| b[(i, k)] * b[(k, j)]).sum();
            }
            row[n + CURV_FIRST] = b[(i, 0)];
            row[n + CURV_LAST] = b[(i, n - 1)];
        }
        let e_bar = matmul(a, &v)?;
        let f_bar = matmul(b, &v)?;
        let c_shear = matmul(a, &b_bar)?;

        Ok(ModifiedWeightSet {
            a_bar,
            b_bar,
            c_bar,
            d_bar,
            e_bar,
            f_bar,
            v,
            c_shear,
            conventional: conv,
        })
    }

    pub fn n(&self) -> usize {
        self.a_bar.rows()
    }

    /// Modified matrix of derivative order 1 to 6.
    pub fn order(&self, k: usize) -> &DenseMatrix {
        match k {
            1 => &self.a_bar,
            2 => &self.b_bar,
            3 => &self.c_bar,
            4 => &self.d_bar,
            5 => &self.e_bar,
            6 => &self.f_bar,
            _ => panic!("derivative order {k} out of range 1..=6"),
        }
    }
}
