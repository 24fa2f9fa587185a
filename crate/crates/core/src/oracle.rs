//! Closed-form beam solution used as an independent check on the DQ element.
//!
//! `w = c1 x^3 + c2 x^2 + c3 x + c4 + c5 g^2 e^{-x/g} + c6 g^2 e^{-(L-x)/g} + q x^4 / 24EI`.
//!
//! The decaying exponentials span the same space as `sinh(x/g)`, `cosh(x/g)`
//! but stay bounded for small `g`. The six constants come from the same end
//! conditions the DQ element uses, so any valid configuration is covered.
//! Below `g = 1e-3 L` the classical cubic-plus-quartic solution is used.

use crate::beam::{BeamLoad, BeamProblem, NonClassical, Support};
use crate::error::{Error, Result};
use crate::linalg::{lu_solve, DenseMatrix};

/// Ratio `g / L` below which the classical solution replaces the gradient one.
pub const CLASSICAL_BELOW: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticalBeamSolution {
    /// Six constants; the last two are zero in the classical regime.
    pub c: [f64; 6],
    pub ei: f64,
    pub g: f64,
    pub length: f64,
    pub q: f64,
    pub classical: bool,
}

/// Field values at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValues {
    pub w: f64,
    pub slope: f64,
    pub curvature: f64,
    pub shear: f64,
    pub moment: f64,
    pub higher_moment: f64,
}

#[derive(Clone, Copy)]
enum Quantity {
    W,
    Slope,
    Curvature,
    Shear,
    Moment,
    HigherMoment,
}

impl AnalyticalBeamSolution {
    /// k-th derivative of basis function `j` at `x`.
    fn basis(&self, j: usize, k: usize, x: f64) -> f64 {
        let falling = |p: i32| -> f64 {
            if k as i32 > p {
                0.0
            } else {
                let coef: f64 = (0..k as i32).map(|i| (p - i) as f64).product();
                coef * x.powi(p - k as i32)
            }
        };
        match j {
            0 => falling(3),
            1 => falling(2),
            2 => falling(1),
            3 => falling(0),
            4 => self.g * self.g * (-1.0 / self.g).powi(k as i32) * (-x / self.g).exp(),
            5 => self.g * self.g * (1.0 / self.g).powi(k as i32) * (-(self.length - x) / self.g).exp(),
            _ => unreachable!(),
        }
    }

    fn particular(&self, k: usize, x: f64) -> f64 {
        let s = self.q / (24.0 * self.ei);
        match k {
            0 => s * x.powi(4),
            1 => 4.0 * s * x.powi(3),
            2 => 12.0 * s * x * x,
            3 => 24.0 * s * x,
            4 => 24.0 * s,
            _ => 0.0,
        }
    }

    fn nbasis(&self) -> usize {
        if self.classical {
            4
        } else {
            6
        }
    }

    /// Derivative of order `k` of the full solution.
    pub fn derivative(&self, k: usize, x: f64) -> f64 {
        (0..self.nbasis()).map(|j| self.c[j] * self.basis(j, k, x)).sum::<f64>() + self.particular(k, x)
    }

    /// Gradient length entering the resultants; zero in the classical regime.
    fn g_eff(&self) -> f64 {
        if self.classical {
            0.0
        } else {
            self.g
        }
    }

    fn apply(&self, qty: Quantity, f: impl Fn(usize) -> f64) -> f64 {
        let g2 = self.g_eff() * self.g_eff();
        match qty {
            Quantity::W => f(0),
            Quantity::Slope => f(1),
            Quantity::Curvature => f(2),
            Quantity::Shear => self.ei * (f(3) - g2 * f(5)),
            Quantity::Moment => self.ei * (f(2) - g2 * f(4)),
            Quantity::HigherMoment => g2 * self.ei * f(3),
        }
    }

    pub fn evaluate(&self, x: f64) -> Result<OracleValues> {
        let tol = 1e-12 * self.length;
        if x < -tol || x > self.length + tol {
            return Err(Error::OutOfRange(format!("x = {x} outside [0, {}]", self.length)));
        }
        let d = |k| self.derivative(k, x);
        Ok(OracleValues {
            w: d(0),
            slope: d(1),
            curvature: d(2),
            shear: self.apply(Quantity::Shear, d),
            moment: self.apply(Quantity::Moment, d),
            higher_moment: self.apply(Quantity::HigherMoment, d),
        })
    }

    /// `EI (w'''' - g^2 w^(6)) - q`, which vanishes for the exact solution.
    pub fn residual(&self, x: f64) -> f64 {
        let g = self.g_eff();
        self.ei * (self.derivative(4, x) - g * g * self.derivative(6, x)) - self.q
    }
}

fn end_quantities(support: Support, nc: NonClassical, classical: bool) -> Vec<Quantity> {
    let mut out = vec![
        match support {
            Support::Free => Quantity::Shear,
            _ => Quantity::W,
        },
        match support {
            Support::Clamped => Quantity::Slope,
            _ => Quantity::Moment,
        },
    ];
    if !classical {
        out.push(match nc {
            NonClassical::CurvatureZero => Quantity::Curvature,
            NonClassical::HigherMomentZero => Quantity::HigherMoment,
        });
    }
    out
}

/// Solves for the constants of the problem's boundary configuration.
pub fn solve_constants(problem: &BeamProblem) -> Result<AnalyticalBeamSolution> {
    problem.validate()?;
    let l = problem.length;
    let (q, tip) = match problem.load {
        BeamLoad::Udl { q } => (q, [0.0, 0.0]),
        BeamLoad::Point { p, x } => {
            let tol = 1e-9 * l;
            if x.abs() <= tol {
                (0.0, [p, 0.0])
            } else if (x - l).abs() <= tol {
                (0.0, [0.0, p])
            } else {
                return Err(Error::UnsupportedLoad(
                    "the analytical solution covers udl and end point loads only".into(),
                ));
            }
        }
    };
    let classical = problem.g < CLASSICAL_BELOW * l;
    let mut sol = AnalyticalBeamSolution {
        c: [0.0; 6],
        ei: problem.ei,
        g: problem.g,
        length: l,
        q,
        classical,
    };
    let nb = sol.nbasis();
    let mut rows = Vec::with_capacity(nb);
    let mut rhs = Vec::with_capacity(nb);
    for (side, end) in [problem.left, problem.right].into_iter().enumerate() {
        let x = if side == 0 { 0.0 } else { l };
        for qty in end_quantities(end.support, end.nonclassical, classical) {
            let mut row: Vec<f64> = (0..nb).map(|j| sol.apply(qty, |k| sol.basis(j, k, x))).collect();
            let target = match qty {
                Quantity::Shear if side == 0 => tip[0],
                Quantity::Shear => -tip[1],
                _ => 0.0,
            };
            let mut r = target - sol.apply(qty, |k| sol.particular(k, x));
            // equilibrate: exponentials and powers of g make row scales very uneven
            let s = row.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            if s > 0.0 {
                row.iter_mut().for_each(|v| *v /= s);
                r /= s;
            }
            rows.push(row);
            rhs.push(r);
        }
    }
    let k = DenseMatrix::from_rows(&rows)?;
    let c = lu_solve(&k, &rhs).map_err(|e| e.in_context("analytical constants"))?;
    sol.c[..nb].copy_from_slice(&c);
    Ok(sol)
}

/// The sinh/cosh form with its coefficient systems for the simply supported
/// and clamped beams under udl. Usable only at moderate `g / L`.
pub mod printed {
    use crate::error::Result;
    use crate::linalg::{lu_solve, DenseMatrix};

    pub fn simply_supported(g: f64, l: f64, ei: f64, q: f64) -> Result<[f64; 6]> {
        let (s, c) = ((l / g).sinh(), (l / g).cosh());
        let g2 = g * g;
        let g4 = g2 * g2;
        let k = DenseMatrix::from_rows(&[
            vec![0.0, 0.0, 0.0, 1.0, 0.0, g4],
            vec![0.0, 2.0, 0.0, 0.0, 0.0, 0.0],
            vec![l.powi(3), l * l, l, 1.0, g4 * s, g4 * c],
            vec![6.0 * l, 2.0, 0.0, 0.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0, 0.0, 0.0, g2],
            vec![6.0 * l, 2.0, 0.0, 0.0, g2 * s, g2 * c],
        ])?;
        let f = [
            0.0,
            g2 * q / ei,
            -q * l.powi(4) / (24.0 * ei),
            g2 * q / ei - q * l * l / (2.0 * ei),
            0.0,
            -q * l * l / (2.0 * ei),
        ];
        to_array(lu_solve(&k, &f)?)
    }

    pub fn clamped(g: f64, l: f64, ei: f64, q: f64) -> Result<[f64; 6]> {
        let (s, c) = ((l / g).sinh(), (l / g).cosh());
        let g2 = g * g;
        let (g3, g4) = (g2 * g, g2 * g2);
        let k = DenseMatrix::from_rows(&[
            vec![0.0, 0.0, 0.0, 1.0, 0.0, g4],
            vec![0.0, 0.0, 1.0, 0.0, g3, 0.0],
            vec![l.powi(3), l * l, l, 1.0, g4 * s, g4 * c],
            vec![3.0 * l * l, 2.0 * l, 1.0, 0.0, g3 * c, g3 * s],
            vec![0.0, 2.0, 0.0, 0.0, 0.0, g2],
            vec![6.0 * l, 2.0, 0.0, 0.0, g2 * s, g2 * c],
        ])?;
        let f = [
            0.0,
            0.0,
            -q * l.powi(4) / (24.0 * ei),
            -q * l.powi(3) / (6.0 * ei),
            0.0,
            -q * l * l / (2.0 * ei),
        ];
        to_array(lu_solve(&k, &f)?)
    }

    /// Deflection of the sinh/cosh form.
    pub fn deflection(c: &[f64; 6], x: f64, g: f64, ei: f64, q: f64) -> f64 {
        let g4 = g.powi(4);
        c[0] * x.powi(3)
            + c[1] * x * x
            + c[2] * x
            + c[3]
            + c[4] * g4 * (x / g).sinh()
            + c[5] * g4 * (x / g).cosh()
            + q * x.powi(4) / (24.0 * ei)
    }

    fn to_array(v: Vec<f64>) -> Result<[f64; 6]> {
        let mut out = [0.0; 6];
        out.copy_from_slice(&v);
        Ok(out)
    }
}
