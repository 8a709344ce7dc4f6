//! Sharp constants `C⁻ ‖F‖ ≤ ‖F‖_{W_G} ≤ C⁺ ‖F‖` on the Paley–Wiener space
//! of type `πΔ`.
//!
//! Writing `C± = √(1 + η±)`, the `η±` are the extreme eigenvalues of the
//! convolution operator `T_G` on `[−Δ/2, Δ/2]`. For `1 < Δ ≤ 2` they are the
//! extreme real solutions of a transcendental equation, found here in the
//! variable `x = (Δ − 1)/(2η)`.

use crate::error::{Error, Result};
use crate::fredholm::discretize_T;
use crate::numerics::{Bracket, QuadratureConfig};
use crate::symmetry::{KernelSpace, SymmetryGroup};
use num_complex::Complex64;

/// Resolution used when comparing against the eigen-oracle.
pub const ORACLE_RESOLUTION: usize = 1000;
/// Smallest `|η|` the root scan is guaranteed to reach when `Δ = 2`.
pub const ETA_FLOOR: f64 = 0.01;

const SCAN_RATIO: f64 = 1.0 + 1e-3;
const ROOT_TOL: f64 = 1e-14;
const TOUCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaEquation {
    /// `(1/2 + (2−Δ)/(4η)) cos((Δ−1)/(2η)) + sin((Δ−1)/(2η)) = 1`
    SoEvenSp,
    /// `(3/2 − (2−Δ)/(4η)) cos((Δ−1)/(2η)) − sin((Δ−1)/(2η)) = 1`
    SoOdd,
}

impl EtaEquation {
    /// Left side minus one, in terms of `x = (Δ − 1)/(2η)`.
    pub fn residual(self, delta: f64, x: f64) -> f64 {
        let k = (2.0 - delta) / (2.0 * (delta - 1.0));
        match self {
            EtaEquation::SoEvenSp => (0.5 + k * x) * x.cos() + x.sin() - 1.0,
            EtaEquation::SoOdd => (1.5 - k * x) * x.cos() - x.sin() - 1.0,
        }
    }

    /// Derivative of [`EtaEquation::residual`] in `x`.
    pub fn residual_derivative(self, delta: f64, x: f64) -> f64 {
        let k = (2.0 - delta) / (2.0 * (delta - 1.0));
        match self {
            EtaEquation::SoEvenSp => (k + 1.0) * x.cos() - (0.5 + k * x) * x.sin(),
            EtaEquation::SoOdd => -(k + 1.0) * x.cos() - (1.5 - k * x) * x.sin(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingConstants {
    pub group: SymmetryGroup,
    pub delta: f64,
    pub eta_minus: f64,
    pub eta_plus: f64,
    pub c_minus: f64,
    pub c_plus: f64,
}

impl EmbeddingConstants {
    fn from_eta(group: SymmetryGroup, delta: f64, eta_minus: f64, eta_plus: f64) -> Self {
        Self {
            group,
            delta,
            eta_minus,
            eta_plus,
            c_minus: (1.0 + eta_minus).sqrt(),
            c_plus: (1.0 + eta_plus).sqrt(),
        }
    }
}

/// First root of `g(sign·u)` for `u` increasing from near zero, on a
/// geometric grid. Where `|g|` has a small local minimum between nodes the
/// derivative is bisected instead, which locates touching zeros.
fn first_root_outward(
    g: impl Fn(f64) -> f64,
    dg: impl Fn(f64) -> f64,
    sign: f64,
    u_lo: f64,
    u_hi: f64,
) -> Option<f64> {
    let h = |u: f64| g(sign * u);
    let dh = |u: f64| sign * dg(sign * u);
    let mut u0 = u_lo;
    let mut f0 = h(u0);
    let mut prev: Option<(f64, f64)> = None;
    while u0 < u_hi {
        let u1 = (u0 * SCAN_RATIO).min(u_hi);
        let f1 = h(u1);
        if f1 == 0.0 {
            return Some(sign * u1);
        }
        if (f0 < 0.0) != (f1 < 0.0) {
            let root = Bracket { a: u0, b: u1, fa: f0, fb: f1 }.bisect(ROOT_TOL * u1, &h);
            return Some(sign * root);
        }
        if let Some((um, fm)) = prev {
            if f0.abs() < fm.abs() && f0.abs() < f1.abs() && f0.abs() < 1e-3 {
                if let Ok(b) = Bracket::new(um, u1, dh) {
                    let u = b.bisect(ROOT_TOL * u1, dh);
                    if h(u).abs() < TOUCH_TOL {
                        return Some(sign * u);
                    }
                }
            }
        }
        prev = Some((u0, f0));
        u0 = u1;
        f0 = f1;
    }
    None
}

/// Extreme real solutions `(η⁻, η⁺)` of the transcendental equation.
///
/// Solutions accumulate at `η = 0`; the extreme ones correspond to the roots
/// in `x` closest to zero on either side.
pub fn solve_eta_extremes(equation: EtaEquation, delta: f64) -> Result<(f64, f64)> {
    if !(delta > 1.0 && delta <= 2.0) {
        return Err(Error::InvalidArgument(format!("the eta equations need 1 < delta <= 2, got {delta}")));
    }
    let h = delta - 1.0;
    let g = |x: f64| equation.residual(delta, x);
    let dg = |x: f64| equation.residual_derivative(delta, x);
    let u_lo = 1e-4 * h;
    let u_hi = (h / (2.0 * ETA_FLOOR)).max(50.0);
    let x_plus = first_root_outward(g, dg, 1.0, u_lo, u_hi);
    let x_minus = first_root_outward(g, dg, -1.0, u_lo, u_hi);
    let (Some(xp), Some(xm)) = (x_plus, x_minus) else {
        return Err(Error::NoRoot(format!("{equation:?} at delta = {delta}: missing solution on one side of zero")));
    };
    let eta_plus = h / (2.0 * xp);
    let eta_minus = h / (2.0 * xm);
    if !(-1.0 < eta_minus && eta_minus < 0.0 && eta_plus > 0.0) {
        return Err(Error::NoRoot(format!("{equation:?} at delta = {delta}: eta = ({eta_minus}, {eta_plus}) out of range")));
    }
    Ok((eta_minus, eta_plus))
}

pub fn sharp_constants(group: SymmetryGroup, delta: f64) -> Result<EmbeddingConstants> {
    KernelSpace::new(group, delta)?;
    use SymmetryGroup::*;
    let (lo, hi) = match group {
        U => (0.0, 0.0),
        O => (0.0, 0.5 * delta),
        _ if delta > 2.0 => return Err(Error::UnsupportedRange { group, delta }),
        SoEven | SoOdd if delta <= 1.0 => (0.0, 0.5 * delta),
        Sp if delta <= 1.0 => (-0.5 * delta, 0.0),
        SoEven => solve_eta_extremes(EtaEquation::SoEvenSp, delta)?,
        Sp => {
            let (m, p) = solve_eta_extremes(EtaEquation::SoEvenSp, delta)?;
            (-p, -m)
        }
        SoOdd => solve_eta_extremes(EtaEquation::SoOdd, delta)?,
    };
    Ok(EmbeddingConstants::from_eta(group, delta, lo, hi))
}

/// `(λ_min, λ_max)` of the discretised `T_G`.
pub fn eigen_oracle(group: SymmetryGroup, delta: f64, n: usize) -> Result<(f64, f64)> {
    Ok(discretize_T(group, delta, n)?.extreme_eigenvalues())
}

/// Number of discretised `T_G` eigenvalues within `tol` of `eta`.
pub fn eigen_multiplicity(group: SymmetryGroup, delta: f64, n: usize, eta: f64, tol: f64) -> Result<usize> {
    let op = discretize_T(group, delta, n)?;
    Ok(op.matrix.tridiagonalize().count_in(eta - tol, eta + tol))
}

/// `(1/Δ) Σ_{|k| ≤ k_max} |F(k/Δ)|²`, which equals `‖F‖²` for `F` of
/// exponential type `πΔ` up to the sample tail.
pub fn sampling_norm_check<F: Fn(f64) -> Complex64>(f: F, delta: f64, k_max: usize) -> f64 {
    let k_max = k_max as i64;
    let mut sum = 0.0;
    for k in -k_max..=k_max {
        sum += f(k as f64 / delta).norm_sqr();
    }
    sum / delta
}

/// `‖F‖²_{W_G} / ‖F‖²`. The flat norm comes from the sample sum and the
/// correction `∫|F|²(W_G − 1)` from quadrature over `[−X, X]`, whose
/// integrand decays faster than `|F|²`.
pub fn rayleigh_quotient<F: Fn(f64) -> Complex64>(
    group: SymmetryGroup,
    delta: f64,
    f: F,
    truncation: f64,
    k_max: usize,
) -> Result<f64> {
    let flat = sampling_norm_check(&f, delta, k_max);
    if !(flat > 0.0) {
        return Err(Error::ZeroDenominator(format!("‖F‖² = {flat}")));
    }
    let config = QuadratureConfig::default();
    let correction: f64 = config.integrate(-truncation, truncation, &[0.0], |x| {
        f(x).norm_sqr() * (group.density_ac(x) - 1.0)
    })?;
    let atom = group.atom_mass() * f(0.0).norm_sqr();
    Ok(1.0 + (correction + atom) / flat)
}
