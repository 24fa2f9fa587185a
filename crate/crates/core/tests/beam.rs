use std::f64::consts::PI;

use sgdqe::beam::{nondimensionalize, solve_beam, BeamEnd, BeamLoad, BeamProblem, NonClassical, Support};
use sgdqe::bench::beam_convergence;
use sgdqe::oracle::solve_constants;
use sgdqe::Error;

/// Sine series for a simply supported beam under unit udl, L = EI = 1.
/// Each mode satisfies w = w'' = w'''' = 0 at both ends.
fn ss_series(g: f64, x: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for k in (1..40_000).step_by(2) {
        let a = k as f64 * PI;
        let amp = 4.0 / (k as f64 * PI) / (a.powi(4) + g * g * a.powi(6));
        out[0] += amp * (a * x).sin();
        out[1] += amp * a * (a * x).cos();
        out[2] -= amp * a * a * (a * x).sin();
    }
    out
}

/// Closed form for a clamped beam (w = w' = w'' = 0 at both ends) under unit
/// udl, L = EI = 1, written about the midspan with a decaying cosh layer.
fn clamped_closed(g: f64) -> impl Fn(f64) -> [f64; 3] {
    let h = 0.5;
    let e = (-2.0 * h / g).exp();
    // Unknowns a, b, c in w = xi^4/24 + a + b xi^2 + c ch(xi).
    let (ch0, ch1, ch2) = (g * g * (1.0 + e), g * (1.0 - e), 1.0 + e);
    let m = [[1.0, h * h, ch0], [0.0, 2.0 * h, ch1], [0.0, 2.0, ch2]];
    let r = [-h.powi(4) / 24.0, -h.powi(3) / 6.0, -h * h / 2.0];
    // Eliminate rows 2 and 3 for b, c, then back-substitute a.
    let det = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    let b = (r[1] * m[2][2] - m[1][2] * r[2]) / det;
    let c = (m[1][1] * r[2] - r[1] * m[2][1]) / det;
    let a = r[0] - m[0][1] * b - m[0][2] * c;
    move |x: f64| {
        let xi = x - h;
        let p = ((xi - h) / g).exp();
        let q = ((-xi - h) / g).exp();
        [
            xi.powi(4) / 24.0 + a + b * xi * xi + c * g * g * (p + q),
            xi.powi(3) / 6.0 + 2.0 * b * xi + c * g * (p - q),
            xi * xi / 2.0 + 2.0 * b + c * (p + q),
        ]
    }
}

fn field_deviation(problem: &BeamProblem, exact: impl Fn(f64) -> [f64; 3]) -> [f64; 3] {
    let sol = solve_beam(problem).unwrap();
    let fields = [&sol.w, &sol.slope, &sol.curvature];
    let mut out = [0.0; 3];
    for k in 0..3 {
        let ex: Vec<f64> = sol.x.iter().map(|&x| exact(x)[k]).collect();
        let sup = ex.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let dev = fields[k].iter().zip(&ex).fold(0.0f64, |a, (c, e)| a.max((c - e).abs()));
        out[k] = dev / sup;
    }
    out
}

#[test]
fn simply_supported_fields_match_series() {
    for g in [0.05, 0.1, 0.5] {
        let p = BeamProblem::udl(Support::SimplySupported, Support::SimplySupported, g, 15);
        let d = field_deviation(&p, |x| ss_series(g, x));
        let tol = if g == 0.05 { 3e-3 } else { 2e-3 };
        assert!(d.iter().all(|&v| v <= tol), "g={g}: {d:?}");
    }
}

#[test]
fn clamped_fields_match_closed_form() {
    for g in [0.05, 0.1, 0.5] {
        let p = BeamProblem::udl(Support::Clamped, Support::Clamped, g, 15);
        let d = field_deviation(&p, clamped_closed(g));
        let tol = if g == 0.05 { 3e-3 } else { 2e-3 };
        assert!(d.iter().all(|&v| v <= tol), "g={g}: {d:?}");
    }
}

#[test]
fn library_oracle_agrees_with_independent_forms() {
    for g in [0.05, 0.1, 0.5] {
        let ss = solve_constants(&BeamProblem::udl(Support::SimplySupported, Support::SimplySupported, g, 11)).unwrap();
        let cl = solve_constants(&BeamProblem::udl(Support::Clamped, Support::Clamped, g, 11)).unwrap();
        let cf = clamped_closed(g);
        for x in [0.0, 0.13, 0.37, 0.5, 0.81, 1.0] {
            let s = ss.evaluate(x).unwrap();
            let e = ss_series(g, x);
            assert!((s.w - e[0]).abs() < 1e-10, "ss w g={g} x={x}");
            assert!((s.slope - e[1]).abs() < 1e-9, "ss slope g={g} x={x}");
            let c = cl.evaluate(x).unwrap();
            let e = cf(x);
            assert!((c.w - e[0]).abs() < 1e-12, "clamped w g={g} x={x}");
            assert!((c.slope - e[1]).abs() < 1e-11, "clamped slope g={g} x={x}");
            assert!((c.curvature - e[2]).abs() < 1e-10, "clamped curvature g={g} x={x}");
        }
    }
}

#[test]
fn classical_limits() {
    let mid = |l, r| {
        let p = BeamProblem::udl(l, r, 1e-5, 11);
        nondimensionalize(&solve_beam(&p).unwrap(), &p).w_b_mid
    };
    assert!((mid(Support::SimplySupported, Support::SimplySupported) - 500.0 / 384.0).abs() < 5e-5);
    assert!((mid(Support::Clamped, Support::Clamped) - 100.0 / 384.0).abs() < 5e-5);
    let tip = BeamProblem {
        load: BeamLoad::Point { p: 1.0, x: 1.0 },
        ..BeamProblem::udl(Support::Clamped, Support::Free, 1e-5, 15)
    };
    let r = nondimensionalize(&solve_beam(&tip).unwrap(), &tip);
    assert!((r.w_b.last().unwrap() - 100.0 / 3.0).abs() < 5e-4);
}

#[test]
fn mirrored_cantilever_matches() {
    for g in [0.05, 0.5] {
        let right = BeamProblem {
            load: BeamLoad::Point { p: 1.0, x: 1.0 },
            ..BeamProblem::udl(Support::Clamped, Support::Free, g, 13)
        };
        let left = BeamProblem {
            load: BeamLoad::Point { p: 1.0, x: 0.0 },
            ..BeamProblem::udl(Support::Free, Support::Clamped, g, 13)
        };
        let a = solve_beam(&right).unwrap();
        let b = solve_beam(&left).unwrap();
        let n = a.w.len();
        for i in 0..n {
            assert!((a.w[i] - b.w[n - 1 - i]).abs() < 1e-7 * a.w[n - 1].abs());
        }
    }
}

#[test]
fn cantilever_matches_oracle() {
    for g in [0.05, 0.1, 0.5] {
        let p = BeamProblem {
            load: BeamLoad::Point { p: 1.0, x: 1.0 },
            ..BeamProblem::udl(Support::Clamped, Support::Free, g, 15)
        };
        let o = solve_constants(&p).unwrap();
        let s = solve_beam(&p).unwrap();
        let exact = o.evaluate(1.0).unwrap().w;
        assert!((s.w.last().unwrap() - exact).abs() < 2e-3 * exact, "g={g}");
    }
}

#[test]
fn end_shears_carry_the_load() {
    let p = BeamProblem::udl(Support::SimplySupported, Support::SimplySupported, 0.1, 15);
    let s = solve_beam(&p).unwrap();
    let (v0, vl) = (s.reactions[0].shear, s.reactions[1].shear);
    assert!((v0.abs() - 0.5).abs() < 1e-3, "{v0}");
    assert!((vl.abs() - 0.5).abs() < 1e-3, "{vl}");
}

#[test]
fn scaling_with_load_and_rigidity() {
    let base = BeamProblem::udl(Support::Clamped, Support::SimplySupported, 0.1, 11);
    let scaled = BeamProblem {
        ei: 4.0,
        load: BeamLoad::Udl { q: 3.0 },
        ..base.clone()
    };
    let a = solve_beam(&base).unwrap();
    let b = solve_beam(&scaled).unwrap();
    for (wa, wb) in a.w.iter().zip(&b.w) {
        assert!((wb - 0.75 * wa).abs() < 1e-12);
    }
    let ra = nondimensionalize(&a, &base);
    let rb = nondimensionalize(&b, &scaled);
    assert!((ra.w_b_mid - rb.w_b_mid).abs() < 1e-10);
}

#[test]
fn higher_moment_end_condition_is_honoured() {
    let p = BeamProblem {
        left: BeamEnd::with(Support::Clamped, NonClassical::HigherMomentZero),
        right: BeamEnd::with(Support::Clamped, NonClassical::HigherMomentZero),
        ..BeamProblem::udl(Support::Clamped, Support::Clamped, 0.1, 15)
    };
    let s = solve_beam(&p).unwrap();
    assert!(s.reactions[0].higher_moment.abs() < 1e-8);
    assert!(s.reactions[1].higher_moment.abs() < 1e-8);
    let o = solve_constants(&p).unwrap();
    let mid = o.evaluate(0.5).unwrap().w;
    assert!((s.deflection_at(0.5) - mid).abs() < 2e-3 * mid);
}

#[test]
fn convergence_is_monotone() {
    let p = BeamProblem::udl(Support::Clamped, Support::Clamped, 0.1, 11);
    let s = beam_convergence(&p, &[7, 9, 11, 13, 15]).unwrap();
    assert!(s.windows(2).all(|w| w[1].error <= w[0].error.max(1e-12)), "{s:?}");
}

#[test]
fn invalid_problems_are_rejected() {
    let free = BeamProblem::udl(Support::Free, Support::Free, 0.1, 11);
    match solve_beam(&free) {
        Err(Error::InvalidArgument(m)) => assert!(m.contains("unconstrained rigid motion")),
        other => panic!("{other:?}"),
    }
    let short = BeamProblem::udl(Support::Clamped, Support::Clamped, 0.1, 4);
    assert!(solve_beam(&short).is_err());
    let neg = BeamProblem {
        ei: -1.0,
        ..BeamProblem::udl(Support::Clamped, Support::Clamped, 0.1, 11)
    };
    assert!(solve_beam(&neg).is_err());
    let outside = BeamProblem {
        load: BeamLoad::Point { p: 1.0, x: 1.5 },
        ..BeamProblem::udl(Support::Clamped, Support::Free, 0.1, 11)
    };
    assert!(matches!(solve_beam(&outside), Err(Error::OutOfRange(_))));
}
