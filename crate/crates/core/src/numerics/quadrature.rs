use crate::error::{Error, Result};
use std::f64::consts::PI;
use std::ops::{Add, Mul};

/// One Gauss–Legendre panel on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub lo: f64,
    pub hi: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Panel {
    pub fn integrate<T, F>(&self, mut f: F) -> T
    where
        T: Copy + Add<Output = T> + Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::default(), |acc, (&x, &w)| acc + f(x) * w)
    }
}

/// Quadrature settings shared by every improper integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub order: usize,
    pub panels_per_segment: usize,
    /// Upper bound on panel width; long segments get more panels so that
    /// oscillatory integrands stay resolved.
    pub max_panel_width: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            order: 16,
            panels_per_segment: 8,
            max_panel_width: 0.25,
        }
    }
}

impl QuadratureConfig {
    pub fn panels(&self, lo: f64, hi: f64, breakpoints: &[f64]) -> Result<Vec<Panel>> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::NonFinite(format!("quadrature bounds [{lo}, {hi}]")));
        }
        if lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "quadrature interval [{lo}, {hi}] is empty"
            )));
        }
        let segments = split_segments(lo, hi, breakpoints);
        let rule = gauss_legendre_rule(self.order)?;
        let mut out = Vec::new();
        for (a, b) in segments {
            let by_width = ((b - a) / self.max_panel_width).ceil() as usize;
            let count = self.panels_per_segment.max(by_width).max(1);
            push_panels(&mut out, a, b, count, &rule);
        }
        Ok(out)
    }

    pub fn integrate<T, F>(&self, lo: f64, hi: f64, breakpoints: &[f64], mut f: F) -> Result<T>
    where
        T: Copy + Add<Output = T> + Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        let panels = self.panels(lo, hi, breakpoints)?;
        Ok(panels
            .iter()
            .fold(T::default(), |acc, p| acc + p.integrate(&mut f)))
    }
}

/// Composite Gauss–Legendre panels on `[lo, hi]`, split at every breakpoint.
///
/// Breakpoints outside the open interval, or repeated, are ignored.
pub fn gauss_legendre_panels(
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    order: usize,
    panels_per_segment: usize,
) -> Result<Vec<Panel>> {
    if !(lo.is_finite() && hi.is_finite()) || breakpoints.iter().any(|b| !b.is_finite()) {
        return Err(Error::NonFinite(format!("quadrature bounds [{lo}, {hi}]")));
    }
    if lo >= hi {
        return Err(Error::InvalidArgument(format!(
            "quadrature interval [{lo}, {hi}] is empty"
        )));
    }
    if panels_per_segment == 0 {
        return Err(Error::InvalidArgument("panels_per_segment must be positive".into()));
    }
    let rule = gauss_legendre_rule(order)?;
    let mut out = Vec::new();
    for (a, b) in split_segments(lo, hi, breakpoints) {
        push_panels(&mut out, a, b, panels_per_segment, &rule);
    }
    Ok(out)
}

/// Sum of `f` over a panel list.
pub fn integrate_panels<T, F>(panels: &[Panel], mut f: F) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T> + Default,
    F: FnMut(f64) -> T,
{
    panels
        .iter()
        .fold(T::default(), |acc, p| acc + p.integrate(&mut f))
}

fn split_segments(lo: f64, hi: f64, breakpoints: &[f64]) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&b| b > lo && b < hi)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(lo);
    edges.extend(cuts);
    edges.push(hi);
    edges.windows(2).map(|e| (e[0], e[1])).collect()
}

fn push_panels(out: &mut Vec<Panel>, a: f64, b: f64, count: usize, rule: &(Vec<f64>, Vec<f64>)) {
    let (x, w) = rule;
    let width = (b - a) / count as f64;
    for k in 0..count {
        let plo = a + width * k as f64;
        let phi = if k + 1 == count { b } else { a + width * (k + 1) as f64 };
        let half = 0.5 * (phi - plo);
        let mid = 0.5 * (phi + plo);
        out.push(Panel {
            lo: plo,
            hi: phi,
            nodes: x.iter().map(|&t| mid + half * t).collect(),
            weights: w.iter().map(|&wt| half * wt).collect(),
        });
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre_rule(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if order == 0 {
        return Err(Error::InvalidArgument("quadrature order must be positive".into()));
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let wt = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = wt;
        weights[n - 1 - i] = wt;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
