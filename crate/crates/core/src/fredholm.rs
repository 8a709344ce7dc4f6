//! Brute-force construction of the kernels from the integral equation
//!
//! ```text
//! u(y) ± ½ ∫_{[y−1, y+1] ∩ I} u(s) ds = e^{−2πi w y},   y ∈ I = [−Δ/2, Δ/2],
//! ```
//!
//! solved by the Nyström method with the trapezoidal rule, and the
//! discretised convolution operator whose extreme eigenvalues give the sharp
//! embedding constants. Nothing here uses the closed forms, so the two can be
//! checked against each other.

use crate::error::{Error, Result};
use crate::kernels::KernelSection;
use crate::numerics::{
    symmetric_extreme_eigen, DenseMatrix, LuDecomposition, SymmetricMatrix,
};
use crate::symmetry::{KernelSpace, SymmetryGroup};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Smallest accepted resolution.
pub const MIN_RESOLUTION: usize = 64;
/// Resolution used by quick checks.
pub const SMOKE_RESOLUTION: usize = 512;
/// Resolution used by the acceptance runs.
pub const ACCEPTANCE_RESOLUTION: usize = 2048;

const NODE_TOL: f64 = 1e-9;

/// Sign in front of the window integral: `+` gives SO(even), `−` gives Sp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowSign {
    Plus,
    Minus,
}

impl WindowSign {
    pub fn value(self) -> f64 {
        match self {
            WindowSign::Plus => 1.0,
            WindowSign::Minus => -1.0,
        }
    }
}

/// Piecewise-uniform grid on `I = [−Δ/2, Δ/2]` whose breakpoints are the
/// points `±(Δ/2 − k)` inside `I`. The set of breakpoints is closed under
/// shifts by ±1 within `I`, so every window endpoint `y ± 1` is a node.
#[derive(Debug, Clone, PartialEq)]
pub struct NystromGrid {
    delta: f64,
    segments: Vec<(f64, f64, usize)>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl NystromGrid {
    /// About `n` cells in total, split over the segments by length.
    pub fn new(delta: f64, n: usize) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
        }
        if n < 2 {
            return Err(Error::InvalidArgument(format!("grid needs at least 2 cells, got {n}")));
        }
        let half = 0.5 * delta;
        let mut cuts = vec![-half, half];
        let mut k = 1.0;
        while half - k > -half {
            cuts.push(half - k);
            cuts.push(-half + k);
            k += 1.0;
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let segments = cuts
            .windows(2)
            .map(|c| {
                // lengths are rounded so that equal segments always get equal counts
                let cells = (n as f64 * (c[1] - c[0]) / delta * 1e6).round() / 1e6;
                (c[0], c[1], (cells.round() as usize).max(2))
            })
            .collect();
        Ok(Self::from_segments(delta, segments))
    }

    fn from_segments(delta: f64, segments: Vec<(f64, f64, usize)>) -> Self {
        let mut nodes = vec![segments[0].0];
        let mut weights = vec![0.0];
        for &(lo, hi, m) in &segments {
            let h = (hi - lo) / m as f64;
            *weights.last_mut().expect("nonempty") += 0.5 * h;
            for j in 1..=m {
                nodes.push(if j == m { hi } else { lo + h * j as f64 });
                weights.push(if j == m { 0.5 * h } else { h });
            }
        }
        Self { delta, segments, nodes, weights }
    }

    /// Every cell bisected.
    pub fn refined(&self) -> Self {
        let segs = self.segments.iter().map(|&(a, b, m)| (a, b, 2 * m)).collect();
        Self::from_segments(self.delta, segs)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Trapezoidal weights over all of `I`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Interior breakpoints, `Δ/2 − 1` and `1 − Δ/2` among them when `Δ > 1`.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.segments.iter().skip(1).map(|s| s.0).collect()
    }

    fn index_of(&self, x: f64) -> usize {
        let i = self.nodes.partition_point(|&y| y < x - NODE_TOL);
        debug_assert!(i < self.nodes.len() && (self.nodes[i] - x).abs() < NODE_TOL, "{x} is not a node");
        i.min(self.nodes.len() - 1)
    }

    /// Node index range `[lo, hi]` covering `[y_i − 1, y_i + 1] ∩ I`.
    fn window(&self, i: usize) -> (usize, usize) {
        let half = 0.5 * self.delta;
        let y = self.nodes[i];
        let lo = if y - 1.0 <= -half + NODE_TOL { 0 } else { self.index_of(y - 1.0) };
        let hi = if y + 1.0 >= half - NODE_TOL { self.len() - 1 } else { self.index_of(y + 1.0) };
        (lo, hi)
    }

    /// Trapezoid weight of node `j` inside the node range `[lo, hi]`.
    fn window_weight(&self, j: usize, lo: usize, hi: usize) -> f64 {
        let mut w = 0.0;
        if j > lo {
            w += 0.5 * (self.nodes[j] - self.nodes[j - 1]);
        }
        if j < hi {
            w += 0.5 * (self.nodes[j + 1] - self.nodes[j]);
        }
        w
    }

    /// The real matrix of `u ↦ u ± ½ ∫_window u`.
    pub fn system_matrix(&self, sign: WindowSign) -> DenseMatrix<f64> {
        let n = self.len();
        let s = 0.5 * sign.value();
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            let (lo, hi) = self.window(i);
            for j in lo..=hi {
                m.set(i, j, s * self.window_weight(j, lo, hi));
            }
            m.set(i, i, m.get(i, i) + 1.0);
        }
        m
    }
}

/// Factored Nyström system for one `(Δ, sign, grid)`; reusable across `w`.
#[derive(Debug, Clone)]
pub struct NystromOperator {
    grid: NystromGrid,
    sign: WindowSign,
    matrix: DenseMatrix<f64>,
    lu: LuDecomposition<f64>,
}

impl NystromOperator {
    pub fn new(grid: NystromGrid, sign: WindowSign) -> Result<Self> {
        let matrix = grid.system_matrix(sign);
        let lu = LuDecomposition::new(matrix.clone())?;
        Ok(Self { grid, sign, matrix, lu })
    }

    pub fn grid(&self) -> &NystromGrid {
        &self.grid
    }

    pub fn solve(&self, w: Complex64) -> Result<NystromSolution> {
        if !w.is_finite() {
            return Err(Error::NonFinite(format!("w = {w}")));
        }
        let rhs: Vec<Complex64> = self
            .grid
            .nodes
            .iter()
            .map(|&y| (Complex64::new(0.0, -2.0 * PI * y) * w).exp())
            .collect();
        let values = self.lu.solve_complex(&rhs)?;
        let residual = (0..self.grid.len())
            .into_par_iter()
            .map(|i| {
                let ax: Complex64 = self.matrix.row(i).iter().zip(&values).map(|(&a, &u)| u * a).sum();
                (ax - rhs[i]).norm()
            })
            .reduce(|| 0.0, f64::max);
        Ok(NystromSolution {
            delta: self.grid.delta,
            w,
            sign: self.sign,
            nodes: self.grid.nodes.clone(),
            weights: self.grid.weights.clone(),
            values,
            residual,
        })
    }
}

/// Discrete solution `u_w^±` at the grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NystromSolution {
    pub delta: f64,
    pub w: Complex64,
    pub sign: WindowSign,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<Complex64>,
    /// `max_i |(A u − b)_i|` of the discrete system.
    pub residual: f64,
}

impl NystromSolution {
    /// `k(z) = ∫_I u(y) e^{2πiyz} dy` by the trapezoidal rule.
    pub fn transform(&self, z: Complex64) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .zip(&self.values)
            .map(|((&y, &q), &u)| u * q * (Complex64::new(0.0, 2.0 * PI * y) * z).exp())
            .sum()
    }

    /// `conj(k(z̄))`, the kernel value `K(w, z)` at this resolution.
    pub fn kernel_value(&self, z: Complex64) -> Complex64 {
        self.transform(z.conj()).conj()
    }
}

/// Solves the integral equation at roughly `n` cells.
pub fn solve_u(delta: f64, w: Complex64, sign: WindowSign, n: usize) -> Result<NystromSolution> {
    check_resolution(n)?;
    NystromOperator::new(NystromGrid::new(delta, n)?, sign)?.solve(w)
}

fn check_resolution(n: usize) -> Result<()> {
    if n < MIN_RESOLUTION {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least {MIN_RESOLUTION}, got {n}"
        )));
    }
    Ok(())
}

/// A coarse grid and its bisection, for Richardson extrapolation.
#[derive(Debug, Clone)]
struct OperatorPair {
    coarse: NystromOperator,
    fine: NystromOperator,
}

impl OperatorPair {
    fn new(delta: f64, n: usize, sign: WindowSign) -> Result<Self> {
        let coarse_grid = NystromGrid::new(delta, n / 2)?;
        let fine_grid = coarse_grid.refined();
        let (coarse, fine) = rayon::join(
            || NystromOperator::new(coarse_grid, sign),
            || NystromOperator::new(fine_grid, sign),
        );
        Ok(Self { coarse: coarse?, fine: fine? })
    }

    fn section(&self, w: Complex64) -> Result<StepOracleSection> {
        Ok(StepOracleSection { coarse: self.coarse.solve(w)?, fine: self.fine.solve(w)? })
    }
}

/// Oracle solutions for one `w` on a coarse grid and its bisection.
#[derive(Debug, Clone)]
pub struct StepOracleSection {
    coarse: NystromSolution,
    fine: NystromSolution,
}

impl StepOracleSection {
    /// Richardson combination of the two trapezoidal values.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        (4.0 * self.fine.kernel_value(z) - self.coarse.kernel_value(z)) / 3.0
    }

    /// Largest discrete residual of the two underlying solves.
    pub fn residual(&self) -> f64 {
        self.coarse.residual.max(self.fine.residual)
    }
}

/// Kernel oracle for one `Δ` at resolution `n`. The factorisations for each
/// sign are built on first use and shared by every later evaluation.
#[derive(Debug)]
pub struct KernelOracle {
    delta: f64,
    n: usize,
    plus: OnceLock<std::result::Result<OperatorPair, Error>>,
    minus: OnceLock<std::result::Result<OperatorPair, Error>>,
}

/// `z ↦ K(w, z)` built from oracle solutions.
#[derive(Debug, Clone)]
pub enum OracleSection {
    Closed(KernelSection),
    Step(Box<StepOracleSection>),
    Odd { sp: Box<StepOracleSection>, at_origin: Box<StepOracleSection>, factor: Complex64 },
}

impl OracleSection {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            OracleSection::Closed(s) => s.eval(z),
            OracleSection::Step(s) => s.eval(z),
            OracleSection::Odd { sp, at_origin, factor } => sp.eval(z) - factor * at_origin.eval(z),
        }
    }
}

impl KernelOracle {
    pub fn new(delta: f64, n: usize) -> Result<Self> {
        check_resolution(n)?;
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
        }
        Ok(Self { delta, n, plus: OnceLock::new(), minus: OnceLock::new() })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    fn pair(&self, sign: WindowSign) -> Result<&OperatorPair> {
        let cell = match sign {
            WindowSign::Plus => &self.plus,
            WindowSign::Minus => &self.minus,
        };
        cell.get_or_init(|| OperatorPair::new(self.delta, self.n, sign))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn step_section(&self, sign: WindowSign, w: Complex64) -> Result<StepOracleSection> {
        Ok(self.pair(sign)?.section(w)?)
    }

    pub fn section(&self, group: SymmetryGroup, w: Complex64) -> Result<OracleSection> {
        match group {
            SymmetryGroup::U | SymmetryGroup::O => {
                let space = KernelSpace::new(group, self.delta)?;
                Ok(OracleSection::Closed(KernelSection::new(space, w)?))
            }
            SymmetryGroup::SoEven => Ok(OracleSection::Step(Box::new(self.step_section(WindowSign::Plus, w)?))),
            SymmetryGroup::Sp => Ok(OracleSection::Step(Box::new(self.step_section(WindowSign::Minus, w)?))),
            SymmetryGroup::SoOdd => {
                let zero = Complex64::new(0.0, 0.0);
                let sp = self.step_section(WindowSign::Minus, w)?;
                let at_origin = self.step_section(WindowSign::Minus, zero)?;
                let factor = sp.eval(zero) / (1.0 + at_origin.eval(zero));
                Ok(OracleSection::Odd { sp: Box::new(sp), at_origin: Box::new(at_origin), factor })
            }
        }
    }

    pub fn kernel(&self, group: SymmetryGroup, w: Complex64, z: Complex64) -> Result<Complex64> {
        Ok(self.section(group, w)?.eval(z))
    }
}

/// `K_{G,πΔ}(w, z)` from the integral equation, Richardson-extrapolated from
/// grids of about `n/2` and `n` cells.
pub fn kernel_via_oracle(group: SymmetryGroup, delta: f64, w: Complex64, z: Complex64, n: usize) -> Result<Complex64> {
    KernelOracle::new(delta, n)?.kernel(group, w, z)
}

/// Discretised `T_G u(y) = ∫_I Φ̂_G(y − s) u(s) ds`, symmetrised with the
/// square roots of the trapezoid weights.
#[derive(Debug, Clone)]
pub struct OperatorDiscretization {
    pub group: SymmetryGroup,
    pub delta: f64,
    pub n: usize,
    pub matrix: SymmetricMatrix,
}

impl OperatorDiscretization {
    pub fn extreme_eigenvalues(&self) -> (f64, f64) {
        symmetric_extreme_eigen(&self.matrix)
    }
}

/// `Φ̂_G(t)`, with the midpoint value on the jump at `|t| = 1`.
fn convolution_symbol(group: SymmetryGroup, t: f64) -> f64 {
    let window = if (t.abs() - 1.0).abs() < NODE_TOL {
        0.5
    } else if t.abs() < 1.0 {
        1.0
    } else {
        0.0
    };
    match group {
        SymmetryGroup::SoEven => 0.5 * window,
        SymmetryGroup::Sp => -0.5 * window,
        SymmetryGroup::SoOdd => 1.0 - 0.5 * window,
        SymmetryGroup::O => 0.5,
        SymmetryGroup::U => 0.0,
    }
}

#[allow(non_snake_case)]
pub fn discretize_T(group: SymmetryGroup, delta: f64, n: usize) -> Result<OperatorDiscretization> {
    let grid = NystromGrid::new(delta, n)?;
    let roots: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let y = &grid.nodes;
    let matrix = SymmetricMatrix::from_lower(grid.len(), |i, j| {
        let k = convolution_symbol(group, y[i] - y[j]);
        roots[i] * k * roots[j]
    })?;
    Ok(OperatorDiscretization { group, delta, n, matrix })
}

/// Smallest singular value of the Nyström matrix `I ± ½W`.
pub fn smallest_singular_value(delta: f64, sign: WindowSign, n: usize) -> Result<f64> {
    let grid = NystromGrid::new(delta, n)?;
    let a = grid.system_matrix(sign);
    let m = a.rows();
    let gram = SymmetricMatrix::from_lower(m, |i, j| (0..m).map(|k| a.get(k, i) * a.get(k, j)).sum())?;
    let (lo, _) = symmetric_extreme_eigen(&gram);
    Ok(lo.max(0.0).sqrt())
}
