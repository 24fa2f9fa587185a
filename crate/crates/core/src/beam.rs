//! Gradient Euler-Bernoulli beam element.
//!
//! Governing equation `EI (w'''' - g^2 w^(6)) = q`, collocated at interior
//! points. Each end carries three conditions, one from each pair
//! (w or V), (w' or M), (w'' or Mbar).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::linalg::dot;
use crate::system::AssembledSystem;
use crate::weights::{
    lagrange_interpolate, quadrature_weights, ModifiedWeightSet, CURV_FIRST, CURV_LAST, SLOPE_FIRST, SLOPE_LAST,
};

/// Points closer than this fraction of the length are treated as coincident.
const SNAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    SimplySupported,
    Clamped,
    Free,
}

/// The extra condition each end needs under gradient elasticity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonClassical {
    CurvatureZero,
    HigherMomentZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeamEnd {
    pub support: Support,
    pub nonclassical: NonClassical,
}

impl BeamEnd {
    /// Supported ends default to zero curvature, free ends to zero higher-order moment.
    pub fn new(support: Support) -> Self {
        let nonclassical = match support {
            Support::Free => NonClassical::HigherMomentZero,
            _ => NonClassical::CurvatureZero,
        };
        BeamEnd { support, nonclassical }
    }

    pub fn with(support: Support, nonclassical: NonClassical) -> Self {
        BeamEnd { support, nonclassical }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BeamLoad {
    /// Uniform load per unit length.
    Udl { q: f64 },
    /// Concentrated force at `x`. At an end it must be a free end.
    Point { p: f64, x: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamProblem {
    pub length: f64,
    pub ei: f64,
    pub g: f64,
    pub load: BeamLoad,
    pub left: BeamEnd,
    pub right: BeamEnd,
    pub n: usize,
}

impl BeamProblem {
    /// Unit beam under a unit udl.
    pub fn udl(left: Support, right: Support, g: f64, n: usize) -> Self {
        BeamProblem {
            length: 1.0,
            ei: 1.0,
            g,
            load: BeamLoad::Udl { q: 1.0 },
            left: BeamEnd::new(left),
            right: BeamEnd::new(right),
            n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.length > 0.0 && self.length.is_finite()) {
            return bad(format!("length must be positive, got {}", self.length));
        }
        if !(self.ei > 0.0 && self.ei.is_finite()) {
            return bad(format!("flexural rigidity must be positive, got {}", self.ei));
        }
        if !(self.g >= 0.0 && self.g.is_finite()) {
            return bad(format!("gradient length must be non-negative, got {}", self.g));
        }
        if self.n < crate::grid::MIN_POINTS {
            return bad(format!("grid size must be at least 5, got {}", self.n));
        }
        use Support::*;
        let rigid_ok = matches!(
            (self.left.support, self.right.support),
            (Clamped, _) | (_, Clamped) | (SimplySupported, SimplySupported)
        );
        if !rigid_ok {
            return bad("unconstrained rigid motion: the end conditions do not restrain the beam".into());
        }
        for (name, end) in [("left", self.left), ("right", self.right)] {
            if end.support == Free && end.nonclassical == NonClassical::CurvatureZero {
                return bad(format!("{name} end is free and needs higher_moment_zero"));
            }
        }
        match self.load {
            BeamLoad::Udl { q } if !q.is_finite() => bad("load intensity must be finite".into()),
            BeamLoad::Point { p, x } => {
                if !p.is_finite() || !x.is_finite() {
                    return bad("point load must be finite".into());
                }
                if x < -SNAP_TOL * self.length || x > self.length * (1.0 + SNAP_TOL) {
                    return Err(Error::OutOfRange(format!("point load at x = {x} outside [0, {}]", self.length)));
                }
                for (at, end) in [(0.0, self.left), (self.length, self.right)] {
                    if (x - at).abs() <= SNAP_TOL * self.length && end.support != Free {
                        return Err(Error::UnsupportedLoad(
                            "a point load at a supported end is carried by the support".into(),
                        ));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::gauss_lobatto_chebyshev(self.n, self.length)
    }
}

/// Dof index helpers for the extended vector `[w_1..w_N, w'_1, w'_N, w''_1, w''_N]`.
fn end_dofs(n: usize, side: usize) -> (usize, usize, usize) {
    if side == 0 {
        (0, n + SLOPE_FIRST, n + CURV_FIRST)
    } else {
        (n - 1, n + SLOPE_LAST, n + CURV_LAST)
    }
}

/// Force rows of the beam, each acting on the extended dof vector.
pub struct BeamOperators<'a> {
    w: &'a ModifiedWeightSet,
    ei: f64,
    g2: f64,
}

impl<'a> BeamOperators<'a> {
    pub fn new(w: &'a ModifiedWeightSet, ei: f64, g: f64) -> Self {
        BeamOperators { w, ei, g2: g * g }
    }

    fn combine(&self, a: &[f64], ca: f64, b: &[f64], cb: f64) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| ca * x + cb * y).collect()
    }

    /// Collocated governing equation at row `i`.
    pub fn governing(&self, i: usize) -> Vec<f64> {
        self.combine(self.w.d_bar.row(i), self.ei, self.w.f_bar.row(i), -self.g2 * self.ei)
    }

    /// `V = EI w''' - g^2 EI w^(5)`.
    pub fn shear(&self, i: usize) -> Vec<f64> {
        self.combine(self.w.c_shear.row(i), self.ei, self.w.e_bar.row(i), -self.g2 * self.ei)
    }

    /// `M = EI w'' - g^2 EI w''''`.
    pub fn moment(&self, i: usize) -> Vec<f64> {
        self.combine(self.w.b_bar.row(i), self.ei, self.w.d_bar.row(i), -self.g2 * self.ei)
    }

    /// `Mbar = g^2 EI w'''`.
    pub fn higher_moment(&self, i: usize) -> Vec<f64> {
        self.w.c_bar.row(i).iter().map(|v| self.g2 * self.ei * v).collect()
    }
}

pub fn assemble_beam(problem: &BeamProblem, weights: &ModifiedWeightSet) -> Result<AssembledSystem> {
    problem.validate()?;
    let n = problem.n;
    if weights.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "weights built for {} points, problem has {n}",
            weights.n()
        )));
    }
    let m = n + 4;
    let ops = BeamOperators::new(weights, problem.ei, problem.g);
    let mut k = crate::linalg::DenseMatrix::zeros(m, m);
    let mut f = vec![0.0; m];
    for i in 1..n - 1 {
        k.row_mut(i).copy_from_slice(&ops.governing(i));
    }

    let mut tip = [0.0; 2];
    match problem.load {
        BeamLoad::Udl { q } => f[1..n - 1].iter_mut().for_each(|v| *v = q),
        BeamLoad::Point { p, x } => {
            let l = problem.length;
            if x.abs() <= SNAP_TOL * l {
                tip[0] = p;
            } else if (x - l).abs() <= SNAP_TOL * l {
                tip[1] = p;
            } else {
                let grid = problem.grid()?;
                let c = grid.index_of(x, SNAP_TOL).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "point load at x = {x} is not a grid point; use an odd grid for midspan loads"
                    ))
                })?;
                let wq = quadrature_weights(grid.points())?;
                f[c] = p / wq[c];
            }
        }
    }

    let mut eliminated = Vec::new();
    let mut boundary = Vec::new();
    for side in 0..2 {
        let end = if side == 0 { problem.left } else { problem.right };
        let i = if side == 0 { 0 } else { n - 1 };
        let (wd, sd, cd) = end_dofs(n, side);
        match end.support {
            Support::Free => {
                k.row_mut(wd).copy_from_slice(&ops.shear(i));
                // outward shear balances the applied force
                f[wd] = if side == 0 { tip[side] } else { -tip[side] };
                boundary.push(wd);
            }
            _ => eliminated.push(wd),
        }
        match end.support {
            Support::Clamped => eliminated.push(sd),
            _ => {
                k.row_mut(sd).copy_from_slice(&ops.moment(i));
                boundary.push(sd);
            }
        }
        match end.nonclassical {
            NonClassical::CurvatureZero => eliminated.push(cd),
            NonClassical::HigherMomentZero => {
                k.row_mut(cd).copy_from_slice(&ops.higher_moment(i));
                boundary.push(cd);
            }
        }
    }
    boundary.sort_unstable();
    eliminated.sort_unstable();
    let sys = AssembledSystem {
        k,
        f,
        boundary_dofs: boundary,
        domain_dofs: (1..n - 1).collect(),
        eliminated_dofs: eliminated,
    };
    sys.check_partition()?;
    Ok(sys)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndForces {
    pub shear: f64,
    pub moment: f64,
    pub higher_moment: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BeamSolution {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
    pub end_slopes: [f64; 2],
    pub end_curvatures: [f64; 2],
    /// Slope at every grid point; end values are the solved dofs.
    pub slope: Vec<f64>,
    /// Curvature at every grid point; end values are the solved dofs.
    pub curvature: Vec<f64>,
    pub reactions: [EndForces; 2],
    /// Full extended dof vector.
    pub dofs: Vec<f64>,
    pub boundary_condition: f64,
    pub domain_condition: f64,
}

impl BeamSolution {
    /// Deflection anywhere, by interpolating the nodal values.
    pub fn deflection_at(&self, x: f64) -> f64 {
        lagrange_interpolate(&self.x, &self.w, x)
    }
}

/// Post-processes the force resultants at both ends.
pub fn postprocess_reactions(dofs: &[f64], weights: &ModifiedWeightSet, problem: &BeamProblem) -> [EndForces; 2] {
    let ops = BeamOperators::new(weights, problem.ei, problem.g);
    let n = weights.n();
    [0, n - 1].map(|i| EndForces {
        shear: dot(&ops.shear(i), dofs),
        moment: dot(&ops.moment(i), dofs),
        higher_moment: dot(&ops.higher_moment(i), dofs),
    })
}

pub fn condense_and_solve(
    problem: &BeamProblem,
    grid: &Grid1D,
    weights: &ModifiedWeightSet,
    system: &AssembledSystem,
) -> Result<BeamSolution> {
    let sol = system.condense_and_solve()?;
    let dofs = sol.dofs;
    let n = grid.n();
    let w = dofs[..n].to_vec();
    let mut slope = weights.a_bar.mul_vec(&dofs)?;
    let mut curvature = weights.b_bar.mul_vec(&dofs)?;
    let end_slopes = [dofs[n + SLOPE_FIRST], dofs[n + SLOPE_LAST]];
    let end_curvatures = [dofs[n + CURV_FIRST], dofs[n + CURV_LAST]];
    slope[0] = end_slopes[0];
    slope[n - 1] = end_slopes[1];
    curvature[0] = end_curvatures[0];
    curvature[n - 1] = end_curvatures[1];
    Ok(BeamSolution {
        x: grid.points().to_vec(),
        w,
        end_slopes,
        end_curvatures,
        slope,
        curvature,
        reactions: postprocess_reactions(&dofs, weights, problem),
        dofs,
        boundary_condition: sol.boundary_condition,
        domain_condition: sol.domain_condition,
    })
}

/// Builds, assembles and solves in one call.
pub fn solve_beam(problem: &BeamProblem) -> Result<BeamSolution> {
    problem.validate()?;
    let grid = problem.grid()?;
    let weights = ModifiedWeightSet::new(&grid)?;
    let system = assemble_beam(problem, &weights)?;
    condense_and_solve(problem, &grid, &weights, &system)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadScaling {
    Udl,
    Point,
}

/// Nondimensional quantities.
///
/// udl: `w_b = 100 EI w / q L^4`, `B_m = M / q L^2`, `H_m = Mbar / q L^3`.
/// point: `w_b = 100 EI w / P L^3`, `B_m = M / P L`, `H_m = Mbar / P L^2`.
/// In both cases `w''_b = w'' L`.
#[derive(Debug, Clone, Serialize)]
pub struct BeamReport {
    pub scaling: LoadScaling,
    pub x_over_l: Vec<f64>,
    pub w_b: Vec<f64>,
    /// Same as `w_b` without the factor 100.
    pub w_b_unscaled: Vec<f64>,
    pub curvature_b: Vec<f64>,
    pub w_b_mid: f64,
    /// Largest-magnitude nodal deflection, signed.
    pub w_b_peak: f64,
    pub moment_b: [f64; 2],
    pub higher_moment_b: [f64; 2],
}

pub fn nondimensionalize(sol: &BeamSolution, problem: &BeamProblem) -> BeamReport {
    let l = problem.length;
    let (scaling, load) = match problem.load {
        BeamLoad::Udl { q } => (LoadScaling::Udl, q),
        BeamLoad::Point { p, .. } => (LoadScaling::Point, p),
    };
    let (wd, md, hd) = match scaling {
        LoadScaling::Udl => (load * l.powi(4), load * l * l, load * l.powi(3)),
        LoadScaling::Point => (load * l.powi(3), load * l, load * l * l),
    };
    let unscaled: Vec<f64> = sol.w.iter().map(|w| problem.ei * w / wd).collect();
    let peak = unscaled.iter().fold(0.0f64, |a, &v| if v.abs() > a.abs() { v } else { a });
    BeamReport {
        scaling,
        x_over_l: sol.x.iter().map(|x| x / l).collect(),
        w_b: unscaled.iter().map(|v| 100.0 * v).collect(),
        curvature_b: sol.curvature.iter().map(|c| c * l).collect(),
        w_b_mid: 100.0 * problem.ei * sol.deflection_at(0.5 * l) / wd,
        w_b_peak: 100.0 * peak,
        moment_b: sol.reactions.map(|r| r.moment / md),
        higher_moment_b: sol.reactions.map(|r| r.higher_moment / hd),
        w_b_unscaled: unscaled,
    }
}
