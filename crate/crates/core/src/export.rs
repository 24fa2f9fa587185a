//! CSV and JSON output for solutions.

use std::io::Write;

use serde::Serialize;

use crate::beam::{BeamProblem, BeamReport, BeamSolution};
use crate::plate::{PlateProblem, PlateReport, PlateSolution};

/// Formats with six significant digits, switching to exponent form for
/// very large or small magnitudes.
pub fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{v:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn write_beam_csv<W: Write>(mut out: W, sol: &BeamSolution) -> std::io::Result<()> {
    writeln!(out, "x,w,slope,curvature")?;
    for i in 0..sol.x.len() {
        writeln!(
            out,
            "{},{},{},{}",
            sig6(sol.x[i]),
            sig6(sol.w[i]),
            sig6(sol.slope[i]),
            sig6(sol.curvature[i])
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct BeamJson<'a> {
    problem: &'a BeamProblem,
    report: &'a BeamReport,
    solution: &'a BeamSolution,
}

pub fn beam_json(problem: &BeamProblem, report: &BeamReport, sol: &BeamSolution) -> serde_json::Result<String> {
    serde_json::to_string_pretty(&BeamJson {
        problem,
        report,
        solution: sol,
    })
}

pub fn write_plate_csv<W: Write>(mut out: W, sol: &PlateSolution) -> std::io::Result<()> {
    writeln!(out, "x,y,w")?;
    let n = sol.n();
    for s in 0..n {
        for p in 0..n {
            writeln!(out, "{},{},{}", sig6(sol.x[p]), sig6(sol.y[s]), sig6(sol.deflection(p, s)))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct PlateJson<'a> {
    problem: &'a PlateProblem,
    report: &'a PlateReport,
    x: &'a [f64],
    y: &'a [f64],
    w: &'a [f64],
    corner_forces: [f64; 4],
}

pub fn plate_json(problem: &PlateProblem, report: &PlateReport, sol: &PlateSolution) -> serde_json::Result<String> {
    serde_json::to_string_pretty(&PlateJson {
        problem,
        report,
        x: &sol.x,
        y: &sol.y,
        w: &sol.w,
        corner_forces: sol.corner_forces,
    })
}
