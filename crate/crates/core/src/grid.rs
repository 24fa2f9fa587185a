//! Gauss-Lobatto-Chebyshev collocation grids.

use crate::error::{Error, Result};

/// Smallest grid accepted by the element constructors.
pub const MIN_POINTS: usize = 5;

/// Collocation points on `[0, length]`, stored in physical coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    length: f64,
    points: Vec<f64>,
}

/// Raw point formula `x_i = (L/2)(1 - cos(i pi / (n-1)))` for any `n >= 2`.
///
/// Evaluated as `L sin^2(i pi / (2(n-1)))`, which avoids cancellation near the
/// left end, and mirrored so the set is symmetric about `L/2`.
pub fn gauss_lobatto_chebyshev_points(n: usize, length: f64) -> Vec<f64> {
    assert!(n >= 2, "need at least two points");
    let m = (n - 1) as f64;
    let mut pts = vec![0.0; n];
    for i in 0..n {
        if 2 * i < n - 1 {
            let s = (i as f64 * std::f64::consts::PI / (2.0 * m)).sin();
            pts[i] = length * s * s;
        } else if 2 * i == n - 1 {
            pts[i] = 0.5 * length;
        } else {
            pts[i] = length - pts[n - 1 - i];
        }
    }
    pts[0] = 0.0;
    pts[n - 1] = length;
    pts
}

impl Grid1D {
    pub fn gauss_lobatto_chebyshev(n: usize, length: f64) -> Result<Self> {
        if n < MIN_POINTS {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least {MIN_POINTS} points, got {n}"
            )));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "grid length must be positive and finite, got {length}"
            )));
        }
        let points = gauss_lobatto_chebyshev_points(n, length);
        for w in points.windows(2) {
            if w[1] - w[0] <= 1e-14 * length {
                return Err(Error::InvalidArgument(
                    "grid points coincide to within 1e-14 of the length".into(),
                ));
            }
        }
        Ok(Grid1D { length, points })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Index of the point at `x`, if one lies within `tol * length` of it.
    pub fn index_of(&self, x: f64, tol: f64) -> Option<usize> {
        self.points
            .iter()
            .position(|&p| (p - x).abs() <= tol * self.length)
    }

    /// Index of the midpoint; only odd grids have one.
    pub fn mid_index(&self) -> Option<usize> {
        let n = self.n();
        if n % 2 == 1 {
            Some(n / 2)
        } else {
            None
        }
    }
}
