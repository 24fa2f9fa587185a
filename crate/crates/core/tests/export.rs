use sgdqe::beam::{nondimensionalize, solve_beam, BeamProblem, Support};
use sgdqe::export::{beam_json, plate_json, write_beam_csv, write_plate_csv};
use sgdqe::grid::Grid1D;
use sgdqe::plate::{nondimensionalize_plate, parse_edges, solve_plate, PlateProblem, Variant};
use sgdqe::weights::ModifiedWeightSet;

fn significant_digits(cell: &str) -> usize {
    let mantissa = cell.split('e').next().unwrap().trim_start_matches('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len()
}

#[test]
fn beam_csv_layout() {
    let p = BeamProblem::udl(Support::SimplySupported, Support::SimplySupported, 0.1, 11);
    let sol = solve_beam(&p).unwrap();
    let mut buf = Vec::new();
    write_beam_csv(&mut buf, &sol).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,w,slope,curvature");
    assert_eq!(lines.len(), 12);
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 4);
        for c in cells {
            c.parse::<f64>().unwrap();
            assert!(c == "0" || significant_digits(c) <= 6, "{c}");
        }
    }
    let mid: f64 = lines[6].split(',').nth(1).unwrap().parse().unwrap();
    assert!((mid - sol.w[5]).abs() <= 1e-5 * sol.w[5].abs());
}

#[test]
fn beam_json_is_lossless() {
    let p = BeamProblem::udl(Support::Clamped, Support::Free, 0.2, 9);
    let sol = solve_beam(&p).unwrap();
    let report = nondimensionalize(&sol, &p);
    let text = beam_json(&p, &report, &sol).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let back: BeamProblem = serde_json::from_value(v["problem"].clone()).unwrap();
    assert_eq!(back, p);
    let w: Vec<f64> = serde_json::from_value(v["solution"]["w"].clone()).unwrap();
    assert_eq!(w, sol.w);
}

#[test]
fn plate_exports() {
    let p = PlateProblem::square_udl(parse_edges("CSCS").unwrap(), 0.1, 7, Variant::LL);
    let sol = solve_plate(&p).unwrap();
    let mut buf = Vec::new();
    write_plate_csv(&mut buf, &sol).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next(), Some("x,y,w"));
    assert_eq!(text.lines().count(), 1 + 49);
    let report = nondimensionalize_plate(&sol, &p);
    let v: serde_json::Value = serde_json::from_str(&plate_json(&p, &report, &sol).unwrap()).unwrap();
    let back: PlateProblem = serde_json::from_value(v["problem"].clone()).unwrap();
    assert_eq!(back, p);
    assert_eq!(v["report"]["w_p_center"].as_f64().unwrap(), report.w_p_center);
}

#[test]
fn matrix_dump_round_trips() {
    let w = ModifiedWeightSet::new(&Grid1D::gauss_lobatto_chebyshev(7, 1.0).unwrap()).unwrap();
    let mut buf = Vec::new();
    w.d_bar.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 7);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.len(), 11);
        for (j, v) in r.iter().enumerate() {
            assert_eq!(*v, w.d_bar[(i, j)]);
        }
    }
}
