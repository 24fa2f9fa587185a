//! Square DQ systems with a boundary/domain partition, solved by static condensation.

use crate::error::{Error, Result};
use crate::linalg::{matmul, DenseMatrix, Lu};

/// Full system over every dof, with the dofs fixed to zero listed separately.
///
/// Row `i` of `k` is the equation owned by dof `i`. Rows of eliminated dofs
/// are ignored.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub k: DenseMatrix,
    pub f: Vec<f64>,
    /// Retained dofs that carry boundary equations.
    pub boundary_dofs: Vec<usize>,
    /// Dofs whose equations are interior collocation rows.
    pub domain_dofs: Vec<usize>,
    /// Dofs fixed to zero.
    pub eliminated_dofs: Vec<usize>,
}

/// Solution plus diagnostics from the condensed solve.
#[derive(Debug, Clone)]
pub struct CondensedSolution {
    /// Full dof vector, zeros at eliminated dofs.
    pub dofs: Vec<f64>,
    /// 1-norm condition estimate of the boundary block (1 when empty).
    pub boundary_condition: f64,
    /// 1-norm condition estimate of the condensed domain matrix.
    pub domain_condition: f64,
}

impl AssembledSystem {
    pub fn total_dofs(&self) -> usize {
        self.f.len()
    }

    /// Checks that the partition covers every dof exactly once.
    pub fn check_partition(&self) -> Result<()> {
        let n = self.total_dofs();
        if self.k.rows() != n || self.k.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "stiffness is {}x{}, load has {n} entries",
                self.k.rows(),
                self.k.cols()
            )));
        }
        let mut seen = vec![0u8; n];
        for &d in self
            .boundary_dofs
            .iter()
            .chain(&self.domain_dofs)
            .chain(&self.eliminated_dofs)
        {
            if d >= n {
                return Err(Error::InconsistentBc(format!("dof {d} out of range")));
            }
            seen[d] += 1;
        }
        let missing: Vec<usize> = (0..n).filter(|&i| seen[i] == 0).collect();
        let doubled: Vec<usize> = (0..n).filter(|&i| seen[i] > 1).collect();
        if !missing.is_empty() || !doubled.is_empty() {
            return Err(Error::InconsistentBc(format!(
                "dofs without an equation {missing:?}, dofs claimed twice {doubled:?}"
            )));
        }
        Ok(())
    }

    /// Row scales that bring every retained equation to unit max-norm.
    ///
    /// Force rows carry factors like `g^2` that make raw row norms differ by
    /// many orders; scaling a row and its load entry leaves the solution
    /// unchanged and keeps the relative pivot test meaningful.
    fn row_scales(&self) -> Vec<f64> {
        let mut keep: Vec<usize> = self.boundary_dofs.iter().chain(&self.domain_dofs).copied().collect();
        keep.sort_unstable();
        let mut scale = vec![1.0; self.total_dofs()];
        for &i in &keep {
            let row = self.k.row(i);
            let m = keep.iter().fold(0.0f64, |a, &j| a.max(row[j].abs()));
            if m > 0.0 {
                scale[i] = 1.0 / m;
            }
        }
        scale
    }

    fn scaled(&self) -> (DenseMatrix, Vec<f64>) {
        let s = self.row_scales();
        let mut k = self.k.clone();
        for (i, si) in s.iter().enumerate() {
            k.row_mut(i).iter_mut().for_each(|v| *v *= si);
        }
        let f = self.f.iter().zip(&s).map(|(a, b)| a * b).collect();
        (k, f)
    }

    /// Eliminates the boundary block and solves for all retained dofs.
    pub fn condense_and_solve(&self) -> Result<CondensedSolution> {
        self.check_partition()?;
        let (k, f) = self.scaled();
        let b = &self.boundary_dofs;
        let d = &self.domain_dofs;
        let fb: Vec<f64> = b.iter().map(|&i| f[i]).collect();
        let fd: Vec<f64> = d.iter().map(|&i| f[i]).collect();
        let kdd = k.select(d, d);

        let (kc, fc, back, boundary_condition) = if b.is_empty() {
            (kdd, fd, None, 1.0)
        } else {
            let kbb = k.select(b, b);
            let kbd = k.select(b, d);
            let kdb = k.select(d, b);
            let lu = Lu::factor(&kbb).map_err(|e| e.in_context("boundary block k_bb"))?;
            let x = lu.solve_mat(&kbd)?;
            let y = lu.solve_vec(&fb)?;
            let corr = matmul(&kdb, &x)?;
            let mut kc = kdd;
            for i in 0..kc.rows() {
                for j in 0..kc.cols() {
                    kc[(i, j)] -= corr[(i, j)];
                }
            }
            let shift = kdb.mul_vec(&y)?;
            let fc: Vec<f64> = fd.iter().zip(&shift).map(|(a, s)| a - s).collect();
            let cond = lu.condition_estimate();
            (kc, fc, Some((x, y)), cond)
        };

        let lu = Lu::factor(&kc).map_err(|e| e.in_context("condensed domain matrix"))?;
        let ud = lu.solve_vec(&fc)?;
        let mut dofs = vec![0.0; self.total_dofs()];
        for (&i, v) in d.iter().zip(&ud) {
            dofs[i] = *v;
        }
        if let Some((x, y)) = back {
            let xu = x.mul_vec(&ud)?;
            for ((&i, yi), xi) in b.iter().zip(&y).zip(&xu) {
                dofs[i] = yi - xi;
            }
        }
        Ok(CondensedSolution {
            dofs,
            boundary_condition,
            domain_condition: lu.condition_estimate(),
        })
    }

    /// Reference path: solves all retained equations in one block.
    pub fn solve_direct(&self) -> Result<Vec<f64>> {
        self.check_partition()?;
        let (k, f) = self.scaled();
        let mut keep: Vec<usize> = self.boundary_dofs.iter().chain(&self.domain_dofs).copied().collect();
        keep.sort_unstable();
        let k = k.select(&keep, &keep);
        let f: Vec<f64> = keep.iter().map(|&i| f[i]).collect();
        let u = Lu::factor(&k).map_err(|e| e.in_context("retained system"))?.solve_vec(&f)?;
        let mut dofs = vec![0.0; self.total_dofs()];
        for (&i, v) in keep.iter().zip(u) {
            dofs[i] = v;
        }
        Ok(dofs)
    }
}
