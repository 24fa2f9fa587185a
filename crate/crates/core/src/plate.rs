//! Gradient Kirchhoff plate elements on a single rectangular element.
//!
//! Governing equation `D lap^2 w - g^2 D lap^3 w = q`. Two variants share the
//! dof layout and boundary machinery:
//!
//! * `LL`: modified Lagrange matrices in both directions.
//! * `LH`: modified Lagrange in x, C2 Hermite basis in y.
//!
//! Dofs: the `N x N` grid values (index `s * N + p`, `p` along x), then x-edge
//! slopes, y-edge slopes, x-edge curvatures and y-edge curvatures, `2N` each.
//! There are no mixed corner dofs, so terms coupling an x-edge extra with a
//! y-edge extra vanish.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::hermite::HermiteBasisSet;
use crate::linalg::{dot, DenseMatrix};
use crate::system::AssembledSystem;
use crate::weights::{lagrange_interpolate, quadrature_weights, ModifiedWeightSet};

/// Index of the shear third-derivative operator in an operator table.
const SHEAR3: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeBc {
    /// Simply supported.
    S,
    /// Clamped.
    C,
    /// Free.
    F,
    /// Guided: zero normal slope, shear and higher-order moment free.
    /// Models the unloaded edges of a plate in cylindrical bending.
    G,
}

impl EdgeBc {
    fn holds_w(self) -> bool {
        matches!(self, EdgeBc::S | EdgeBc::C)
    }
}

/// Parses four edge letters in the order x=0, y=0, x=lx, y=ly.
pub fn parse_edges(s: &str) -> Result<[EdgeBc; 4]> {
    let letters: Vec<char> = s.trim().chars().collect();
    if letters.len() != 4 {
        return Err(Error::InvalidArgument(format!("expected four edge letters, got {s:?}")));
    }
    let mut out = [EdgeBc::S; 4];
    for (o, c) in out.iter_mut().zip(letters) {
        *o = match c.to_ascii_uppercase() {
            'S' => EdgeBc::S,
            'C' => EdgeBc::C,
            'F' => EdgeBc::F,
            'G' => EdgeBc::G,
            _ => return Err(Error::InvalidArgument(format!("unknown edge condition {c:?}"))),
        };
    }
    Ok(out)
}

pub fn edges_to_string(edges: &[EdgeBc; 4]) -> String {
    edges.iter().map(|e| format!("{e:?}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    LL,
    LH,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PlateLoad {
    Udl { q: f64 },
    Point { p: f64, x: f64, y: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateProblem {
    pub lx: f64,
    pub ly: f64,
    pub h: f64,
    pub e: f64,
    pub nu: f64,
    pub g: f64,
    pub load: PlateLoad,
    pub edges: [EdgeBc; 4],
    pub n: usize,
    pub variant: Variant,
}

impl PlateProblem {
    /// Square unit plate, `h = 0.01`, `E = 3e6`, `nu = 0.3`, unit udl.
    pub fn square_udl(edges: [EdgeBc; 4], g: f64, n: usize, variant: Variant) -> Self {
        PlateProblem {
            lx: 1.0,
            ly: 1.0,
            h: 0.01,
            e: 3e6,
            nu: 0.3,
            g,
            load: PlateLoad::Udl { q: 1.0 },
            edges,
            n,
            variant,
        }
    }

    pub fn rigidity(&self) -> f64 {
        self.e * self.h.powi(3) / (12.0 * (1.0 - self.nu * self.nu))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        for (name, v) in [("lx", self.lx), ("ly", self.ly), ("h", self.h), ("E", self.e)] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.nu > 0.0 && self.nu < 0.5) {
            return bad(format!("Poisson ratio must lie in (0, 0.5), got {}", self.nu));
        }
        if !(self.g >= 0.0 && self.g.is_finite()) {
            return bad(format!("gradient length must be non-negative, got {}", self.g));
        }
        if self.n < crate::grid::MIN_POINTS {
            return bad(format!("grid size must be at least 5, got {}", self.n));
        }
        if !self.edges.iter().any(|e| e.holds_w()) {
            return bad("unconstrained rigid motion: no edge restrains the deflection".into());
        }
        match self.load {
            PlateLoad::Udl { q } if !q.is_finite() => bad("load must be finite".into()),
            PlateLoad::Point { p, x, y } => {
                if !(p.is_finite() && x.is_finite() && y.is_finite()) {
                    return bad("point load must be finite".into());
                }
                if x <= 0.0 || x >= self.lx || y <= 0.0 || y >= self.ly {
                    return Err(Error::OutOfRange(format!("point load at ({x}, {y}) is not interior")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Which of the four extras along an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraKind {
    SlopeFirst,
    SlopeLast,
    CurvFirst,
    CurvLast,
}

impl ExtraKind {
    fn from_offset(k: usize) -> ExtraKind {
        match k {
            0 => ExtraKind::SlopeFirst,
            1 => ExtraKind::SlopeLast,
            2 => ExtraKind::CurvFirst,
            _ => ExtraKind::CurvLast,
        }
    }
}

/// Index arithmetic for the plate dof vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlateDofLayout {
    pub n: usize,
}

impl PlateDofLayout {
    pub fn total(&self) -> usize {
        self.n * self.n + 8 * self.n
    }

    pub fn grid(&self, p: usize, s: usize) -> usize {
        s * self.n + p
    }

    /// Extra of an x-edge (x = 0 for `First`, x = lx for `Last`) at `y_s`.
    pub fn x_extra(&self, kind: ExtraKind, s: usize) -> usize {
        let n = self.n;
        let block = match kind {
            ExtraKind::SlopeFirst => 0,
            ExtraKind::SlopeLast => 1,
            ExtraKind::CurvFirst => 4,
            ExtraKind::CurvLast => 5,
        };
        n * n + block * n + s
    }

    /// Extra of a y-edge (y = 0 for `First`, y = ly for `Last`) at `x_p`.
    pub fn y_extra(&self, kind: ExtraKind, p: usize) -> usize {
        let n = self.n;
        let block = match kind {
            ExtraKind::SlopeFirst => 2,
            ExtraKind::SlopeLast => 3,
            ExtraKind::CurvFirst => 6,
            ExtraKind::CurvLast => 7,
        };
        n * n + block * n + p
    }

    /// Dof addressed by extended column `q` of an x operator and `r` of a y operator.
    pub fn extended(&self, q: usize, r: usize) -> Option<usize> {
        let n = self.n;
        match (q < n, r < n) {
            (true, true) => Some(self.grid(q, r)),
            (false, true) => Some(self.x_extra(ExtraKind::from_offset(q - n), r)),
            (true, false) => Some(self.y_extra(ExtraKind::from_offset(r - n), q)),
            (false, false) => None,
        }
    }

    pub fn is_interior(&self, dof: usize) -> bool {
        let n = self.n;
        dof < n * n && (1..n - 1).contains(&(dof % n)) && (1..n - 1).contains(&(dof / n))
    }

    /// Human-readable name of a dof, for diagnostics.
    pub fn describe(&self, dof: usize) -> String {
        let n = self.n;
        if dof < n * n {
            return format!("w(p={}, s={})", dof % n, dof / n);
        }
        let k = dof - n * n;
        let names = [
            "w_x(x=0)", "w_x(x=lx)", "w_y(y=0)", "w_y(y=ly)", "w_xx(x=0)", "w_xx(x=lx)", "w_yy(y=0)", "w_yy(y=ly)",
        ];
        match names.get(k / n) {
            Some(name) => format!("{name}[{}]", k % n),
            None => format!("dof {dof} out of range"),
        }
    }

    /// The five dofs living at a corner: w, w_x, w_y, w_xx, w_yy.
    pub fn corner_dofs(&self, px_last: bool, sy_last: bool) -> [usize; 5] {
        let n = self.n;
        let p = if px_last { n - 1 } else { 0 };
        let s = if sy_last { n - 1 } else { 0 };
        let (xs, xc) = if px_last {
            (ExtraKind::SlopeLast, ExtraKind::CurvLast)
        } else {
            (ExtraKind::SlopeFirst, ExtraKind::CurvFirst)
        };
        let (ys, yc) = if sy_last {
            (ExtraKind::SlopeLast, ExtraKind::CurvLast)
        } else {
            (ExtraKind::SlopeFirst, ExtraKind::CurvFirst)
        };
        [
            self.grid(p, s),
            self.x_extra(xs, s),
            self.y_extra(ys, p),
            self.x_extra(xc, s),
            self.y_extra(yc, p),
        ]
    }
}

/// One term `coef * sum_q sum_r X[p,q] Y[s,r] w(q,r)`; order 0 is the identity.
#[derive(Debug, Clone, Copy)]
struct Term(usize, usize, f64);

/// Plate force resultants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Resultant {
    Vx,
    Vy,
    Mx,
    My,
    Hx,
    Hy,
    R,
}

/// Derivative operators of both directions and the term tables built on them.
pub struct PlateOperators {
    layout: PlateDofLayout,
    variant: Variant,
    x_ops: Vec<DenseMatrix>,
    y_ops: Vec<DenseMatrix>,
    /// Lagrange y operators, applied to x-edge extras in the LH variant.
    y_lagrange: Vec<DenseMatrix>,
    d: f64,
    nu: f64,
    g2: f64,
}

fn op_table(w: &ModifiedWeightSet) -> Vec<DenseMatrix> {
    let mut v = vec![DenseMatrix::zeros(0, 0)];
    for k in 1..=6 {
        v.push(w.order(k).clone());
    }
    v.push(w.c_shear.clone());
    v
}

impl PlateOperators {
    pub fn new(problem: &PlateProblem, gx: &Grid1D, gy: &Grid1D) -> Result<Self> {
        let wx = ModifiedWeightSet::new(gx)?;
        let wy = ModifiedWeightSet::new(gy)?;
        let x_ops = op_table(&wx);
        let y_lagrange = op_table(&wy);
        let y_ops = match problem.variant {
            Variant::LL => y_lagrange.clone(),
            Variant::LH => {
                let h = HermiteBasisSet::new(gy, 6)?;
                let mut v = h.gamma.clone();
                v[0] = DenseMatrix::zeros(0, 0);
                v.push(h.gamma[3].clone());
                v
            }
        };
        Ok(PlateOperators {
            layout: PlateDofLayout { n: gx.n() },
            variant: problem.variant,
            x_ops,
            y_ops,
            y_lagrange,
            d: problem.rigidity(),
            nu: problem.nu,
            g2: problem.g * problem.g,
        })
    }

    pub fn layout(&self) -> PlateDofLayout {
        self.layout
    }

    fn add_term(&self, row: &mut [f64], p: usize, s: usize, t: Term) {
        let n = self.layout.n;
        let Term(xo, yo, c) = t;
        let unit = |i: usize| {
            let mut v = vec![0.0; n + 4];
            v[i] = 1.0;
            v
        };
        let xr: Vec<f64> = if xo == 0 { unit(p) } else { self.x_ops[xo].row(p).to_vec() };
        let yr: Vec<f64> = if yo == 0 { unit(s) } else { self.y_ops[yo].row(s).to_vec() };
        for (q, &xv) in xr.iter().enumerate() {
            if xv == 0.0 {
                continue;
            }
            let yrow: &[f64] = if q >= n && yo != 0 && self.variant == Variant::LH {
                self.y_lagrange[yo].row(s)
            } else {
                &yr
            };
            for (r, &yv) in yrow.iter().enumerate() {
                if yv == 0.0 {
                    continue;
                }
                if let Some(j) = self.layout.extended(q, r) {
                    row[j] += c * xv * yv;
                }
            }
        }
    }

    fn row(&self, p: usize, s: usize, terms: &[Term]) -> Vec<f64> {
        let mut row = vec![0.0; self.layout.total()];
        for &t in terms {
            self.add_term(&mut row, p, s, t);
        }
        row
    }

    fn governing_terms(&self) -> Vec<Term> {
        let (d, g2) = (self.d, self.g2);
        vec![
            Term(4, 0, d),
            Term(2, 2, 2.0 * d),
            Term(0, 4, d),
            Term(6, 0, -g2 * d),
            Term(4, 2, -3.0 * g2 * d),
            Term(2, 4, -3.0 * g2 * d),
            Term(0, 6, -g2 * d),
        ]
    }

    fn resultant_terms(&self, which: Resultant) -> Vec<Term> {
        let (d, nu, g2) = (self.d, self.nu, self.g2);
        let swap = |v: Vec<Term>| v.into_iter().map(|Term(a, b, c)| Term(b, a, c)).collect();
        match which {
            Resultant::Vx => vec![
                Term(SHEAR3, 0, -d),
                Term(1, 2, -(2.0 - nu) * d),
                Term(5, 0, g2 * d),
                Term(1, 4, (3.0 - nu) * g2 * d),
                Term(SHEAR3, 2, 3.0 * g2 * d),
            ],
            Resultant::Vy => swap(self.resultant_terms(Resultant::Vx)),
            Resultant::Mx => vec![
                Term(2, 0, -d),
                Term(0, 2, -nu * d),
                Term(4, 0, g2 * d),
                Term(0, 4, nu * g2 * d),
                Term(2, 2, (3.0 - nu) * g2 * d),
            ],
            Resultant::My => swap(self.resultant_terms(Resultant::Mx)),
            Resultant::Hx => vec![Term(3, 0, -g2 * d), Term(1, 2, -nu * g2 * d)],
            Resultant::Hy => swap(self.resultant_terms(Resultant::Hx)),
            Resultant::R => vec![
                Term(1, 1, 2.0 * d * (1.0 - nu)),
                Term(SHEAR3, 1, -2.0 * g2 * d * (1.0 - nu)),
                Term(1, SHEAR3, -2.0 * g2 * d * (1.0 - nu)),
            ],
        }
    }

    /// Collocated governing equation at grid point `(p, s)`.
    pub fn governing_row(&self, p: usize, s: usize) -> Vec<f64> {
        self.row(p, s, &self.governing_terms())
    }

    /// Row evaluating a resultant at grid point `(p, s)`.
    pub fn resultant_row(&self, which: Resultant, p: usize, s: usize) -> Vec<f64> {
        self.row(p, s, &self.resultant_terms(which))
    }

    /// Governing operator applied to `dofs` at every grid point, evaluated as
    /// `X W Y^T` products instead of row by row.
    pub fn governing_field(&self, dofs: &[f64]) -> DenseMatrix {
        let n = self.layout.n;
        let m = n + 4;
        // extended dof matrix, rows q (x index), columns r (y index)
        let mut wt = DenseMatrix::zeros(m, m);
        for q in 0..m {
            for r in 0..m {
                if let Some(j) = self.layout.extended(q, r) {
                    wt[(q, r)] = dofs[j];
                }
            }
        }
        let mut ident = DenseMatrix::zeros(n, m);
        for i in 0..n {
            ident[(i, i)] = 1.0;
        }
        let mut out = DenseMatrix::zeros(n, n);
        for Term(xo, yo, c) in self.governing_terms() {
            let x = if xo == 0 { &ident } else { &self.x_ops[xo] };
            let y = if yo == 0 { &ident } else { &self.y_ops[yo] };
            let yl = if yo == 0 { &ident } else if self.variant == Variant::LH { &self.y_lagrange[yo] } else { y };
            for p in 0..n {
                for s in 0..n {
                    let mut acc = 0.0;
                    for q in 0..m {
                        let yrow = if q >= n { yl.row(s) } else { y.row(s) };
                        acc += x[(p, q)] * dot(wt.row(q), yrow);
                    }
                    out[(p, s)] += c * acc;
                }
            }
        }
        out
    }
}

/// Dof bookkeeping for one edge point.
struct EdgePoint {
    w: usize,
    slope: usize,
    curv: usize,
    /// Tangential slope and curvature owned by the crossing edge (corners only).
    tangential: Option<[usize; 2]>,
    p: usize,
    s: usize,
}

fn edge_points(layout: PlateDofLayout, edge: usize) -> Vec<EdgePoint> {
    let n = layout.n;
    let last = edge >= 2;
    let (sk, ck) = if last {
        (ExtraKind::SlopeLast, ExtraKind::CurvLast)
    } else {
        (ExtraKind::SlopeFirst, ExtraKind::CurvFirst)
    };
    let fixed = if last { n - 1 } else { 0 };
    (0..n)
        .map(|t| {
            let corner = t == 0 || t == n - 1;
            let (tsk, tck) = if t == 0 {
                (ExtraKind::SlopeFirst, ExtraKind::CurvFirst)
            } else {
                (ExtraKind::SlopeLast, ExtraKind::CurvLast)
            };
            if edge.is_multiple_of(2) {
                // x = const edge, runs along y
                EdgePoint {
                    w: layout.grid(fixed, t),
                    slope: layout.x_extra(sk, t),
                    curv: layout.x_extra(ck, t),
                    tangential: corner.then(|| [layout.y_extra(tsk, fixed), layout.y_extra(tck, fixed)]),
                    p: fixed,
                    s: t,
                }
            } else {
                EdgePoint {
                    w: layout.grid(t, fixed),
                    slope: layout.y_extra(sk, t),
                    curv: layout.y_extra(ck, t),
                    tangential: corner.then(|| [layout.x_extra(tsk, fixed), layout.x_extra(tck, fixed)]),
                    p: t,
                    s: fixed,
                }
            }
        })
        .collect()
}

fn normal_resultants(edge: usize) -> [Resultant; 3] {
    if edge.is_multiple_of(2) {
        [Resultant::Vx, Resultant::Mx, Resultant::Hx]
    } else {
        [Resultant::Vy, Resultant::My, Resultant::Hy]
    }
}

/// Dofs fixed to zero by the edge conditions.
pub fn eliminated_dofs(layout: PlateDofLayout, edges: &[EdgeBc; 4]) -> Vec<usize> {
    let mut out = vec![false; layout.total()];
    for (e, &bc) in edges.iter().enumerate() {
        for pt in edge_points(layout, e) {
            if bc.holds_w() {
                out[pt.w] = true;
                out[pt.curv] = true;
                if let Some(t) = pt.tangential {
                    out[t[0]] = true;
                    out[t[1]] = true;
                }
            }
            if matches!(bc, EdgeBc::C | EdgeBc::G) {
                out[pt.slope] = true;
            }
        }
    }
    (0..layout.total()).filter(|&i| out[i]).collect()
}

/// Point load realized as `P / (wx wy)` at the grid point under the load.
fn point_load_entry(problem: &PlateProblem, gx: &Grid1D, gy: &Grid1D) -> Result<Option<(usize, usize, f64)>> {
    match problem.load {
        PlateLoad::Udl { .. } => Ok(None),
        PlateLoad::Point { p, x, y } => {
            let (i, j) = match (gx.index_of(x, 1e-9), gy.index_of(y, 1e-9)) {
                (Some(i), Some(j)) => (i, j),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "point load at ({x}, {y}) is not a grid point; use an odd grid for a central load"
                    )))
                }
            };
            let wx = quadrature_weights(gx.points())?;
            let wy = quadrature_weights(gy.points())?;
            Ok(Some((i, j, p / (wx[i] * wy[j]))))
        }
    }
}

/// Assembles the plate system for either variant.
pub fn assemble_plate(problem: &PlateProblem, ops: &PlateOperators, gx: &Grid1D, gy: &Grid1D) -> Result<AssembledSystem> {
    problem.validate()?;
    let layout = ops.layout();
    let n = layout.n;
    let total = layout.total();
    let mut k = DenseMatrix::zeros(total, total);
    let mut f = vec![0.0; total];
    let q = match problem.load {
        PlateLoad::Udl { q } => q,
        PlateLoad::Point { .. } => 0.0,
    };
    for s in 1..n - 1 {
        for p in 1..n - 1 {
            let i = layout.grid(p, s);
            k.row_mut(i).copy_from_slice(&ops.governing_row(p, s));
            f[i] = q;
        }
    }
    if let Some((i, j, v)) = point_load_entry(problem, gx, gy)? {
        if i == 0 || j == 0 || i == n - 1 || j == n - 1 {
            return Err(Error::UnsupportedLoad("point loads must act at interior grid points".into()));
        }
        f[layout.grid(i, j)] = v;
    }

    let eliminated = eliminated_dofs(layout, &problem.edges);
    let mut fixed = vec![false; total];
    eliminated.iter().for_each(|&i| fixed[i] = true);
    let mut owner: Vec<Option<String>> = vec![None; total];
    let mut conflicts = Vec::new();
    let mut put = |k: &mut DenseMatrix, dof: usize, row: Vec<f64>, why: String| {
        if fixed[dof] {
            return;
        }
        if let Some(prev) = &owner[dof] {
            conflicts.push(format!("{} claimed by {prev} and {why}", layout.describe(dof)));
            return;
        }
        k.row_mut(dof).copy_from_slice(&row);
        owner[dof] = Some(why);
    };

    for (e, &bc) in problem.edges.iter().enumerate() {
        let [v, m, h] = normal_resultants(e);
        for pt in edge_points(layout, e) {
            let corner = pt.tangential.is_some();
            if matches!(bc, EdgeBc::F | EdgeBc::G) && !corner {
                put(&mut k, pt.w, ops.resultant_row(v, pt.p, pt.s), format!("edge {e} {v:?}"));
            }
            put(&mut k, pt.slope, ops.resultant_row(m, pt.p, pt.s), format!("edge {e} {m:?}"));
            put(&mut k, pt.curv, ops.resultant_row(h, pt.p, pt.s), format!("edge {e} {h:?}"));
        }
    }
    for (px_last, sy_last) in [(false, false), (true, false), (false, true), (true, true)] {
        let w = layout.corner_dofs(px_last, sy_last)[0];
        let (p, s) = (w % n, w / n);
        put(&mut k, w, ops.resultant_row(Resultant::R, p, s), "corner R".into());
    }
    if !conflicts.is_empty() {
        return Err(Error::InconsistentBc(conflicts.join("; ")));
    }

    let mut boundary = Vec::new();
    let mut domain = Vec::new();
    let mut unmatched = Vec::new();
    for dof in 0..total {
        if fixed[dof] {
            continue;
        }
        if layout.is_interior(dof) {
            domain.push(dof);
        } else if owner[dof].is_some() {
            boundary.push(dof);
        } else {
            unmatched.push(layout.describe(dof));
        }
    }
    if !unmatched.is_empty() {
        return Err(Error::InconsistentBc(format!("dofs without an equation: {}", unmatched.join(", "))));
    }
    let sys = AssembledSystem {
        k,
        f,
        boundary_dofs: boundary,
        domain_dofs: domain,
        eliminated_dofs: eliminated,
    };
    sys.check_partition()?;
    Ok(sys)
}

/// Normal resultants along one edge, indexed by the running grid index.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeForces {
    pub shear: Vec<f64>,
    pub moment: Vec<f64>,
    pub higher_moment: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlateSolution {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Deflection at grid point `(p, s)` stored at `s * N + p`.
    pub w: Vec<f64>,
    pub dofs: Vec<f64>,
    /// Edges in the order x=0, y=0, x=lx, y=ly.
    pub edges: Vec<EdgeForces>,
    /// Corner forces at (0,0), (lx,0), (0,ly), (lx,ly).
    pub corner_forces: [f64; 4],
    pub boundary_dof_count: usize,
    pub boundary_condition: f64,
    pub domain_condition: f64,
}

impl PlateSolution {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn deflection(&self, p: usize, s: usize) -> f64 {
        self.w[s * self.n() + p]
    }

    /// Tensor-product interpolation of the grid deflection.
    pub fn deflection_at(&self, x: f64, y: f64) -> f64 {
        let n = self.n();
        let cols: Vec<f64> = (0..n)
            .map(|s| lagrange_interpolate(&self.x, &self.w[s * n..(s + 1) * n], x))
            .collect();
        lagrange_interpolate(&self.y, &cols, y)
    }
}

/// Evaluates the edge and corner resultants of a solved dof vector.
pub fn postprocess_plate_forces(ops: &PlateOperators, dofs: &[f64]) -> (Vec<EdgeForces>, [f64; 4]) {
    let layout = ops.layout();
    let n = layout.n;
    let edges = (0..4)
        .map(|e| {
            let [v, m, h] = normal_resultants(e);
            let pts = edge_points(layout, e);
            let eval = |r: Resultant| pts.iter().map(|pt| dot(&ops.resultant_row(r, pt.p, pt.s), dofs)).collect();
            EdgeForces {
                shear: eval(v),
                moment: eval(m),
                higher_moment: eval(h),
            }
        })
        .collect();
    let corners = [(0, 0), (n - 1, 0), (0, n - 1), (n - 1, n - 1)]
        .map(|(p, s)| dot(&ops.resultant_row(Resultant::R, p, s), dofs));
    (edges, corners)
}

pub fn condense_and_solve_plate(
    ops: &PlateOperators,
    gx: &Grid1D,
    gy: &Grid1D,
    system: &AssembledSystem,
) -> Result<PlateSolution> {
    let sol = system.condense_and_solve()?;
    let n = gx.n();
    let (edges, corner_forces) = postprocess_plate_forces(ops, &sol.dofs);
    Ok(PlateSolution {
        x: gx.points().to_vec(),
        y: gy.points().to_vec(),
        w: sol.dofs[..n * n].to_vec(),
        edges,
        corner_forces,
        boundary_dof_count: system.boundary_dofs.len(),
        boundary_condition: sol.boundary_condition,
        domain_condition: sol.domain_condition,
        dofs: sol.dofs,
    })
}

/// Builds grids and operators, assembles and solves.
pub fn solve_plate(problem: &PlateProblem) -> Result<PlateSolution> {
    problem.validate()?;
    let gx = Grid1D::gauss_lobatto_chebyshev(problem.n, problem.lx)?;
    let gy = Grid1D::gauss_lobatto_chebyshev(problem.n, problem.ly)?;
    let ops = PlateOperators::new(problem, &gx, &gy)?;
    let sys = assemble_plate(problem, &ops, &gx, &gy)?;
    condense_and_solve_plate(&ops, &gx, &gy, &sys)
}

/// Nondimensional values at the probe points used for benchmarking.
///
/// udl: `w_p = 100 D w / q lx^4`, `B_m = Mx / q lx^2`, `H_m = Mbar_x / q lx^3`.
/// point: `w_p = 100 D w / P lx^2`, `B_m = Mx / P`, `H_m = Mbar_x / P lx`.
#[derive(Debug, Clone, Serialize)]
pub struct PlateReport {
    pub w_p_center: f64,
    /// Deflection at the middle of the edge x = lx.
    pub w_p_edge_mid: f64,
    /// Largest-magnitude nodal deflection, signed.
    pub w_p_peak: f64,
    /// Bending moment at (0, ly/2).
    pub moment_p: f64,
    /// Higher-order moment at (0, ly/2).
    pub higher_moment_p: f64,
    pub boundary_dof_count: usize,
}

pub fn nondimensionalize_plate(sol: &PlateSolution, problem: &PlateProblem) -> PlateReport {
    let d = problem.rigidity();
    let lx = problem.lx;
    let (wd, md, hd) = match problem.load {
        PlateLoad::Udl { q } => (q * lx.powi(4), q * lx * lx, q * lx.powi(3)),
        PlateLoad::Point { p, .. } => (p * lx * lx, p, p * lx),
    };
    let scale = |w: f64| 100.0 * d * w / wd;
    let peak = sol.w.iter().fold(0.0f64, |a, &v| if v.abs() > a.abs() { v } else { a });
    let mid_y = 0.5 * problem.ly;
    let along = |v: &[f64]| lagrange_interpolate(&sol.y, v, mid_y);
    PlateReport {
        w_p_center: scale(sol.deflection_at(0.5 * lx, mid_y)),
        w_p_edge_mid: scale(sol.deflection_at(lx, mid_y)),
        w_p_peak: scale(peak),
        moment_p: along(&sol.edges[0].moment) / md,
        higher_moment_p: along(&sol.edges[0].higher_moment) / hd,
        boundary_dof_count: sol.boundary_dof_count,
    }
}
