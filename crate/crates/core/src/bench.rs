//! Benchmark table reproduction and convergence series.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::beam::{nondimensionalize, solve_beam, BeamEnd, BeamLoad, BeamProblem, Support};
use crate::error::{Error, Result};
use crate::export::sig6;
use crate::grid::Grid1D;
use crate::oracle::solve_constants;
use crate::plate::{
    nondimensionalize_plate, parse_edges, solve_plate, ExtraKind, PlateDofLayout, PlateLoad, PlateProblem,
    PlateSolution, Variant,
};
use crate::weights::{lagrange_interpolate, ModifiedWeightSet};

const DATA: &str = include_str!("../data/benchmarks.toml");

pub const TABLES: [&str; 9] = [
    "table1", "table2", "table3", "table4", "table5", "table6", "table7", "table8", "table9",
];

#[derive(Debug, Clone, Deserialize)]
pub struct BenchmarkFile {
    pub row: Vec<BenchRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BeamCaseLoad {
    Udl,
    MidPoint,
    TipPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlateCaseLoad {
    Udl,
    CenterPoint,
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Case {
    Beam {
        left: Support,
        right: Support,
        load: BeamCaseLoad,
    },
    Plate {
        edges: String,
        variant: Variant,
        load: PlateCaseLoad,
        #[serde(default = "unit")]
        ly: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    WMid,
    WTip,
    WMidUnscaled,
    MomentLeft,
    HigherMomentLeft,
    OracleWMid,
    OracleWTip,
    OracleMomentLeft,
    OracleHigherMomentLeft,
    WCenter,
    WEdgeMid,
    SlopeXEdge,
    CurvatureCenter,
    HigherMomentEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tolerance {
    Abs(f64),
    Rel(f64),
    Informational,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    One(usize),
    PerCell(Vec<usize>),
}

#[derive(Debug, Clone, Deserialize)]
pub struct BenchRow {
    pub table: String,
    pub label: String,
    pub case: Case,
    pub n: GridSpec,
    pub quantity: Quantity,
    #[serde(default = "unit")]
    pub scale: f64,
    #[serde(default)]
    pub magnitude: bool,
    pub g: Vec<f64>,
    pub reference: Vec<f64>,
    pub tolerance: Tolerance,
    #[serde(default)]
    pub informational: Vec<usize>,
}

impl BenchRow {
    fn check(&self) -> Result<()> {
        let len_ok = match &self.n {
            GridSpec::One(_) => true,
            GridSpec::PerCell(v) => v.len() == self.g.len(),
        };
        if self.g.len() != self.reference.len() || !len_ok {
            return Err(Error::DimensionMismatch(format!("row {:?}: cell counts differ", self.label)));
        }
        Ok(())
    }

    fn grid_size(&self, cell: usize) -> usize {
        match &self.n {
            GridSpec::One(n) => *n,
            GridSpec::PerCell(v) => v[cell],
        }
    }
}

/// The bundled benchmark data.
pub fn benchmarks() -> Result<BenchmarkFile> {
    let file: BenchmarkFile =
        toml::from_str(DATA).map_err(|e| Error::InvalidArgument(format!("benchmark data: {e}")))?;
    for r in &file.row {
        r.check()?;
    }
    Ok(file)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Informational,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Informational => "informational",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellResult {
    pub table: String,
    pub label: String,
    pub g_over_l: f64,
    pub n: usize,
    pub computed: f64,
    pub reference: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub status: Status,
    /// Solver error message when the cell could not be computed.
    pub error: Option<String>,
}

fn beam_problem(left: Support, right: Support, load: BeamCaseLoad, g: f64, n: usize) -> BeamProblem {
    let load = match load {
        BeamCaseLoad::Udl => BeamLoad::Udl { q: 1.0 },
        BeamCaseLoad::MidPoint => BeamLoad::Point { p: 1.0, x: 0.5 },
        BeamCaseLoad::TipPoint => BeamLoad::Point { p: 1.0, x: 1.0 },
    };
    BeamProblem {
        length: 1.0,
        ei: 1.0,
        g,
        load,
        left: BeamEnd::new(left),
        right: BeamEnd::new(right),
        n,
    }
}

fn plate_problem(edges: &str, variant: Variant, load: PlateCaseLoad, ly: f64, g: f64, n: usize) -> Result<PlateProblem> {
    let mut p = PlateProblem::square_udl(parse_edges(edges)?, g, n, variant);
    p.ly = ly;
    if load == PlateCaseLoad::CenterPoint {
        p.load = PlateLoad::Point {
            p: 1.0,
            x: 0.5 * p.lx,
            y: 0.5 * ly,
        };
    }
    Ok(p)
}

/// `d^k w / dx^k` on grid row `s`, using the edge extras for the boundary terms.
fn x_derivative_row(sol: &PlateSolution, weights: &ModifiedWeightSet, order: usize, s: usize) -> Vec<f64> {
    let n = sol.n();
    let layout = PlateDofLayout { n };
    let ext: Vec<f64> = (0..n + 4).map(|q| sol.dofs[layout.extended(q, s).unwrap()]).collect();
    let m = weights.order(order);
    (0..n).map(|p| crate::linalg::dot(m.row(p), &ext)).collect()
}

fn load_magnitude(p: &PlateProblem) -> f64 {
    match p.load {
        PlateLoad::Udl { q } => q,
        PlateLoad::Point { p, .. } => p,
    }
}

fn plate_quantity(q: Quantity, problem: &PlateProblem, sol: &PlateSolution) -> Result<f64> {
    let report = nondimensionalize_plate(sol, problem);
    let n = sol.n();
    let d = problem.rigidity();
    let lx = problem.lx;
    let mid_y = 0.5 * problem.ly;
    let weights = || -> Result<ModifiedWeightSet> {
        ModifiedWeightSet::new(&Grid1D::gauss_lobatto_chebyshev(n, lx)?)
    };
    Ok(match q {
        Quantity::WCenter => report.w_p_center,
        Quantity::WEdgeMid => report.w_p_edge_mid,
        Quantity::HigherMomentEdge => report.higher_moment_p,
        Quantity::SlopeXEdge => {
            let layout = PlateDofLayout { n };
            let col: Vec<f64> = (0..n)
                .map(|s| sol.dofs[layout.x_extra(ExtraKind::SlopeLast, s)])
                .collect();
            100.0 * d * lagrange_interpolate(&sol.y, &col, mid_y) / (load_magnitude(problem) * lx.powi(3))
        }
        Quantity::CurvatureCenter => {
            let w = weights()?;
            let col: Vec<f64> = (0..n)
                .map(|s| lagrange_interpolate(&sol.x, &x_derivative_row(sol, &w, 2, s), 0.5 * lx))
                .collect();
            100.0 * d * lagrange_interpolate(&sol.y, &col, mid_y) / (load_magnitude(problem) * lx * lx)
        }
        other => return Err(Error::InvalidArgument(format!("{other:?} is not a plate quantity"))),
    })
}

fn beam_quantity(q: Quantity, problem: &BeamProblem) -> Result<f64> {
    let l = problem.length;
    let (load, point) = match problem.load {
        BeamLoad::Udl { q } => (q, false),
        BeamLoad::Point { p, .. } => (p, true),
    };
    let wd = if point { load * l.powi(3) } else { load * l.powi(4) };
    let md = if point { load * l } else { load * l * l };
    let hd = if point { load * l * l } else { load * l.powi(3) };
    let oracle = || solve_constants(problem);
    let dq = || -> Result<_> {
        let sol = solve_beam(problem)?;
        Ok(nondimensionalize(&sol, problem))
    };
    Ok(match q {
        Quantity::WMid => dq()?.w_b_mid,
        Quantity::WTip => *dq()?.w_b.last().unwrap(),
        Quantity::WMidUnscaled => dq()?.w_b_mid / 100.0,
        Quantity::MomentLeft => dq()?.moment_b[0],
        Quantity::HigherMomentLeft => dq()?.higher_moment_b[0],
        Quantity::OracleWMid => 100.0 * problem.ei * oracle()?.evaluate(0.5 * l)?.w / wd,
        Quantity::OracleWTip => 100.0 * problem.ei * oracle()?.evaluate(l)?.w / wd,
        Quantity::OracleMomentLeft => oracle()?.evaluate(0.0)?.moment / md,
        Quantity::OracleHigherMomentLeft => oracle()?.evaluate(0.0)?.higher_moment / hd,
        other => return Err(Error::InvalidArgument(format!("{other:?} is not a beam quantity"))),
    })
}

fn compute_cell(row: &BenchRow, cell: usize) -> Result<f64> {
    let g = row.g[cell];
    let n = row.grid_size(cell);
    let v = match &row.case {
        Case::Beam { left, right, load } => beam_quantity(row.quantity, &beam_problem(*left, *right, *load, g, n))?,
        Case::Plate {
            edges,
            variant,
            load,
            ly,
        } => {
            let p = plate_problem(edges, *variant, *load, *ly, g, n)?;
            let sol = solve_plate(&p)?;
            plate_quantity(row.quantity, &p, &sol)?
        }
    };
    let v = v * row.scale;
    Ok(if row.magnitude { v.abs() } else { v })
}

fn judge(row: &BenchRow, cell: usize, computed: f64, reference: f64) -> Status {
    if row.informational.contains(&cell) {
        return Status::Informational;
    }
    let ok = match row.tolerance {
        Tolerance::Informational => return Status::Informational,
        Tolerance::Abs(t) => (computed - reference).abs() <= t,
        Tolerance::Rel(t) if reference == 0.0 => computed.abs() <= t,
        Tolerance::Rel(t) => (computed - reference).abs() <= t * reference.abs(),
    };
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn run_cell(row: &BenchRow, cell: usize) -> CellResult {
    let reference = row.reference[cell];
    let (computed, error) = match compute_cell(row, cell) {
        Ok(v) => (v, None),
        Err(e) => (f64::NAN, Some(e.to_string())),
    };
    let abs_dev = (computed - reference).abs();
    let rel_dev = if reference != 0.0 { abs_dev / reference.abs() } else { f64::NAN };
    let status = if error.is_some() { Status::Fail } else { judge(row, cell, computed, reference) };
    CellResult {
        table: row.table.clone(),
        label: row.label.clone(),
        g_over_l: row.g[cell],
        n: row.grid_size(cell),
        computed,
        reference,
        abs_dev,
        rel_dev,
        status,
        error,
    }
}

/// Runs every cell of a table. Cells are solved concurrently; the output
/// order follows the data file.
pub fn reproduce(table: &str) -> Result<Vec<CellResult>> {
    if !TABLES.contains(&table) {
        return Err(Error::InvalidArgument(format!(
            "unknown table {table:?}, expected one of {}",
            TABLES.join(", ")
        )));
    }
    let file = benchmarks()?;
    let jobs: Vec<(&BenchRow, usize)> = file
        .row
        .iter()
        .filter(|r| r.table == table)
        .flat_map(|r| (0..r.g.len()).map(move |c| (r, c)))
        .collect();
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(r, c)| scope.spawn(move || run_cell(r, c)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("benchmark cell panicked")).collect()
    });
    Ok(results)
}

pub fn write_report_csv<W: Write>(mut out: W, cells: &[CellResult]) -> std::io::Result<()> {
    writeln!(out, "table,label,g_over_l,n,computed,reference,abs_dev,rel_dev,status")?;
    for c in cells {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            c.table,
            c.label.replace(',', ";"),
            sig6(c.g_over_l),
            c.n,
            sig6(c.computed),
            sig6(c.reference),
            sig6(c.abs_dev),
            sig6(c.rel_dev),
            c.status.as_str()
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub n: usize,
    pub value: f64,
    /// Relative error against the exact value when known, else against the
    /// finest grid in the series.
    pub error: f64,
}

fn series(ns: &[usize], exact: Option<f64>, values: Vec<Result<f64>>) -> Result<Vec<ConvergencePoint>> {
    let values: Vec<f64> = values.into_iter().collect::<Result<_>>()?;
    let finest = ns
        .iter()
        .zip(&values)
        .max_by_key(|(n, _)| **n)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::InvalidArgument("empty grid list".into()))?;
    let target = exact.unwrap_or(finest);
    Ok(ns
        .iter()
        .zip(values)
        .map(|(&n, value)| ConvergencePoint {
            n,
            value,
            error: (value - target).abs() / target.abs().max(f64::MIN_POSITIVE),
        })
        .collect())
}

fn peak_x(problem: &BeamProblem) -> f64 {
    use Support::*;
    match (problem.left.support, problem.right.support) {
        (Clamped, Free) => problem.length,
        (Free, Clamped) => 0.0,
        _ => 0.5 * problem.length,
    }
}

/// Maximum deflection of a beam over a list of grid sizes.
pub fn beam_convergence(problem: &BeamProblem, ns: &[usize]) -> Result<Vec<ConvergencePoint>> {
    problem.validate()?;
    let x = peak_x(problem);
    let exact = solve_constants(problem).ok().map(|o| o.evaluate(x).map(|v| v.w)).transpose()?;
    let values = std::thread::scope(|scope| {
        let handles: Vec<_> = ns
            .iter()
            .map(|&n| {
                scope.spawn(move || {
                    let p = BeamProblem { n, ..problem.clone() };
                    solve_beam(&p).map(|s| s.deflection_at(x))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solve panicked")).collect()
    });
    series(ns, exact, values)
}

/// Largest nodal deflection of a plate over a list of grid sizes, measured
/// against the finest grid.
pub fn plate_convergence(problem: &PlateProblem, ns: &[usize]) -> Result<Vec<ConvergencePoint>> {
    problem.validate()?;
    let values = std::thread::scope(|scope| {
        let handles: Vec<_> = ns
            .iter()
            .map(|&n| {
                scope.spawn(move || {
                    let p = PlateProblem { n, ..problem.clone() };
                    solve_plate(&p).map(|s| nondimensionalize_plate(&s, &p).w_p_peak)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solve panicked")).collect()
    });
    series(ns, None, values)
}

pub fn write_convergence_csv<W: Write>(mut out: W, points: &[ConvergencePoint]) -> std::io::Result<()> {
    writeln!(out, "n,value,error")?;
    for p in points {
        writeln!(out, "{},{},{}", p.n, sig6(p.value), sig6(p.error))?;
    }
    Ok(())
}
