//! C2 Hermite basis: nodal values everywhere plus slope and curvature at both ends.
//!
//! Every basis function is a Lagrange polynomial `L_p` times a low-degree
//! polynomial factor, so derivatives follow from the Leibniz rule with
//! `L_p^(k)(y_i) = (A^k)_{ip}`. No numerical differentiation is involved.

use crate::error::{Error, Result};
use crate::grid::{Grid1D, MIN_POINTS};
use crate::linalg::{matmul, DenseMatrix};
use crate::weights::{lagrange_first_derivative, CURV_FIRST, CURV_LAST, EXTRA_DOFS, SLOPE_FIRST, SLOPE_LAST};

pub const MAX_ORDER: usize = 6;

/// Polynomial with ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<f64>);

impl Poly {
    fn linear(root: f64) -> Poly {
        Poly(vec![-root, 1.0])
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut c = vec![0.0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly(c)
    }

    fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0.0) - o.0.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }

    fn deriv(&self, k: usize) -> Poly {
        let mut c = self.0.clone();
        for _ in 0..k {
            if c.len() <= 1 {
                return Poly(vec![0.0]);
            }
            c = c.iter().enumerate().skip(1).map(|(i, v)| v * i as f64).collect();
        }
        Poly(c)
    }

    fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Derivative matrices `gamma[n]`, each `N x (N+4)`, columns `[v_1..v_N, v'_1, v'_N, v''_1, v''_N]`.
#[derive(Debug, Clone)]
pub struct HermiteBasisSet {
    pub gamma: Vec<DenseMatrix>,
}

impl HermiteBasisSet {
    pub fn new(grid: &Grid1D, max_order: usize) -> Result<Self> {
        Self::from_points(grid.points(), max_order)
    }

    pub fn from_points(y: &[f64], max_order: usize) -> Result<Self> {
        if max_order > MAX_ORDER {
            return Err(Error::InvalidArgument(format!(
                "Hermite derivative order {max_order} exceeds {MAX_ORDER}"
            )));
        }
        let n = y.len();
        if n < MIN_POINTS {
            return Err(Error::InvalidArgument(format!(
                "Hermite basis needs n >= {MIN_POINTS}, got {n}"
            )));
        }
        let a = lagrange_first_derivative(y);
        let mut apow = vec![DenseMatrix::identity(n)];
        // The end-dof corrections need the first derivative even when only values are requested.
        for k in 0..max_order.max(1) {
            let next = matmul(&apow[k], &a)?;
            apow.push(next);
        }
        let mut gamma = vec![DenseMatrix::zeros(n, n + EXTRA_DOFS); max_order + 1];

        // Fills column `col` with derivatives of L_p * poly.
        let mut put = |col: usize, p: usize, poly: &Poly| {
            for (order, g) in gamma.iter_mut().enumerate() {
                let ders: Vec<Poly> = (0..=order).map(|k| poly.deriv(k)).collect();
                for i in 0..n {
                    let s: f64 = (0..=order)
                        .map(|k| binom(order, k) * apow[k][(i, p)] * ders[order - k].eval(y[i]))
                        .sum();
                    g[(i, col)] += s;
                }
            }
        };

        let (y1, yn) = (y[0], y[n - 1]);
        for p in 1..n - 1 {
            let f = Poly::linear(y1).mul(&Poly::linear(y1)).mul(&Poly::linear(yn)).mul(&Poly::linear(yn));
            let s = 1.0 / ((y[p] - y1).powi(2) * (y[p] - yn).powi(2));
            put(p, p, &f.scale(s));
        }
        for (p, o, slope_col, curv_col) in [
            (0, n - 1, n + SLOPE_FIRST, n + CURV_FIRST),
            (n - 1, 0, n + SLOPE_LAST, n + CURV_LAST),
        ] {
            let d = y[p] - y[o];
            let l1 = apow[1][(p, p)];
            let l2 = a_sq_diag(&a, p);
            let sp = Poly::linear(y[p]);
            let so = Poly::linear(y[o]);
            let so2 = so.mul(&so);
            let curv = sp.mul(&sp).mul(&so2).scale(1.0 / (2.0 * d * d));
            let slope = sp.mul(&so2).scale(1.0 / (d * d)).sub(&curv.scale(2.0 * l1 + 4.0 / d));
            let value = so2
                .scale(1.0 / (d * d))
                .sub(&slope.scale(l1 + 2.0 / d))
                .sub(&curv.scale(l2 + 4.0 * l1 / d + 2.0 / (d * d)));
            put(curv_col, p, &curv);
            put(slope_col, p, &slope);
            put(p, p, &value);
        }
        Ok(HermiteBasisSet { gamma })
    }

    pub fn max_order(&self) -> usize {
        self.gamma.len() - 1
    }
}

fn a_sq_diag(a: &DenseMatrix, p: usize) -> f64 {
    (0..a.rows()).map(|k| a[(p, k)] * a[(k, p)]).sum()
}
