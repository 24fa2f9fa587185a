use std::f64::consts::PI;

use sgdqe::beam::{nondimensionalize, solve_beam, BeamProblem, Support};
use sgdqe::grid::Grid1D;
use sgdqe::plate::{
    assemble_plate, nondimensionalize_plate, parse_edges, solve_plate, PlateLoad, PlateOperators, PlateProblem,
    Variant,
};
use sgdqe::Error;

/// Navier double sine series for a simply supported square gradient plate
/// under unit udl, returned as `100 D w / q lx^4` at the centre.
fn navier_center(g: f64) -> f64 {
    let mut w = 0.0;
    for m in (1..400).step_by(2) {
        for n in (1..400).step_by(2) {
            let lam = PI * PI * ((m * m + n * n) as f64);
            let qmn = 16.0 / (PI * PI * (m * n) as f64);
            let sign = if ((m + n) / 2 - 1) % 2 == 0 { 1.0 } else { -1.0 };
            w += sign * qmn / (lam * lam + g * g * lam.powi(3));
        }
    }
    100.0 * w
}

fn square(edges: &str, g: f64, n: usize, v: Variant) -> PlateProblem {
    PlateProblem::square_udl(parse_edges(edges).unwrap(), g, n, v)
}

fn boundary_count(p: &PlateProblem) -> usize {
    let gx = Grid1D::gauss_lobatto_chebyshev(p.n, p.lx).unwrap();
    let gy = Grid1D::gauss_lobatto_chebyshev(p.n, p.ly).unwrap();
    let ops = PlateOperators::new(p, &gx, &gy).unwrap();
    assemble_plate(p, &ops, &gx, &gy).unwrap().boundary_dofs.len()
}

#[test]
fn simply_supported_matches_navier() {
    for v in [Variant::LL, Variant::LH] {
        for g in [1e-5, 0.05, 0.1, 0.5] {
            let p = square("SSSS", g, 15, v);
            let r = nondimensionalize_plate(&solve_plate(&p).unwrap(), &p);
            let exact = navier_center(g);
            assert!((r.w_p_center - exact).abs() < 5e-4, "{v:?} g={g}: {} vs {exact}", r.w_p_center);
        }
    }
}

#[test]
fn boundary_dof_counts() {
    for n in [11, 13, 15, 17] {
        for v in [Variant::LL, Variant::LH] {
            assert_eq!(boundary_count(&square("SSSS", 0.1, n, v)), 4 * n - 8);
            assert_eq!(boundary_count(&square("CCCC", 0.1, n, v)), 0);
            assert_eq!(boundary_count(&square("CFFF", 0.1, n, v)), 9 * n - 8);
        }
    }
}

#[test]
fn symmetric_plates_have_symmetric_fields() {
    for e in ["SSSS", "CCCC"] {
        let p = square(e, 0.1, 11, Variant::LL);
        let s = solve_plate(&p).unwrap();
        let n = s.n();
        let peak = s.w.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        for i in 0..n {
            for j in 0..n {
                let w = s.deflection(i, j);
                assert!((w - s.deflection(n - 1 - i, j)).abs() < 1e-8 * peak);
                assert!((w - s.deflection(i, n - 1 - j)).abs() < 1e-8 * peak);
                assert!((w - s.deflection(j, i)).abs() < 1e-8 * peak);
            }
        }
    }
}

#[test]
fn cylindrical_bending_equals_clamped_beam() {
    for g in [1e-5, 0.05, 0.1, 0.5] {
        let p = square("CGCG", g, 15, Variant::LL);
        let plate = nondimensionalize_plate(&solve_plate(&p).unwrap(), &p).w_p_center;
        let b = BeamProblem::udl(Support::Clamped, Support::Clamped, g, 15);
        let beam = nondimensionalize(&solve_beam(&b).unwrap(), &b).w_b_mid;
        assert!((plate - beam).abs() < 1e-6, "g={g}: {plate} vs {beam}");
    }
}

#[test]
fn classical_clamped_plate() {
    let p = square("CCCC", 1e-5, 15, Variant::LL);
    let r = nondimensionalize_plate(&solve_plate(&p).unwrap(), &p);
    assert!((r.w_p_center - 0.1265).abs() < 5e-5);
}

#[test]
fn variants_agree_on_simply_supported_resultants() {
    for g in [0.1, 0.5] {
        let a = square("SSSS", g, 15, Variant::LL);
        let b = square("SSSS", g, 15, Variant::LH);
        let ra = nondimensionalize_plate(&solve_plate(&a).unwrap(), &a);
        let rb = nondimensionalize_plate(&solve_plate(&b).unwrap(), &b);
        assert!((ra.higher_moment_p - rb.higher_moment_p).abs() < 1e-3 * ra.higher_moment_p.abs());
        assert!((ra.w_p_edge_mid - rb.w_p_edge_mid).abs() < 1e-8);
    }
}

#[test]
fn stiffening_with_gradient_length() {
    let mut last = f64::INFINITY;
    for g in [1e-5, 0.05, 0.1, 0.2, 0.5] {
        let p = square("CCCC", g, 11, Variant::LL);
        let w = nondimensionalize_plate(&solve_plate(&p).unwrap(), &p).w_p_center;
        assert!(w < last, "g={g}");
        last = w;
    }
}

#[test]
fn central_point_load_is_symmetric() {
    let mut p = square("SFSF", 0.1, 13, Variant::LL);
    p.load = PlateLoad::Point { p: 1.0, x: 0.5, y: 0.5 };
    let s = solve_plate(&p).unwrap();
    let n = s.n();
    for i in 0..n {
        for j in 0..n {
            let w = s.deflection(i, j);
            assert!((w - s.deflection(n - 1 - i, n - 1 - j)).abs() < 1e-8 * s.deflection(n / 2, n / 2));
        }
    }
    assert!(s.deflection(n / 2, n / 2) > 0.0);
}

#[test]
fn rejects_unsupported_plates() {
    match solve_plate(&square("FFFF", 0.1, 11, Variant::LL)) {
        Err(Error::InvalidArgument(m)) => assert!(m.contains("unconstrained rigid motion")),
        other => panic!("{other:?}"),
    }
    assert!(parse_edges("SSQS").is_err());
    let mut p = square("SSSS", 0.1, 11, Variant::LL);
    p.load = PlateLoad::Point { p: 1.0, x: 0.0, y: 0.5 };
    assert!(matches!(solve_plate(&p), Err(Error::OutOfRange(_))));
    let mut p = square("SSSS", 0.1, 11, Variant::LL);
    p.nu = 0.6;
    assert!(solve_plate(&p).is_err());
}
