//! The de Branges structure `E = A − iB` generated by the kernel at `i`, the
//! first-zero bound `ξ₀` and the extremal ratio `‖xF‖ / ‖F‖`.

use crate::error::{Error, Result};
use crate::kernels::KernelSection;
use crate::numerics::{first_root_scan_bisect, QuadratureConfig};
use crate::symmetry::{weighted_inner, KernelSpace, SymmetryGroup};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Upper end of the `ξ₀` scan.
pub const XI0_SCAN_MAX: f64 = 2.0;
pub const XI0_SCAN_STEP: f64 = 1e-3;
pub const XI0_TOL: f64 = 1e-10;
/// Truncation used for the extremal ratio integrals.
pub const RATIO_TRUNCATION: f64 = 400.0;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `E(z) = L(i, z) / √L(i, i)` with `L(w, z) = 2πi(w̄ − z)K(w, z)`.
#[derive(Debug, Clone)]
pub struct DeBrangesData {
    /// Already mapped through `G ↦ G♯`.
    pub space: KernelSpace,
    pub l_ii: f64,
    section: KernelSection,
    scale: f64,
}

impl DeBrangesData {
    pub fn e(&self, z: Complex64) -> Complex64 {
        2.0 * PI * (1.0 - I * z) * self.section.eval(z) * self.scale
    }

    /// `E*(z) = conj(E(z̄))`.
    pub fn e_star(&self, z: Complex64) -> Complex64 {
        self.e(z.conj()).conj()
    }

    pub fn a(&self, z: Complex64) -> Complex64 {
        0.5 * (self.e(z) + self.e_star(z))
    }

    pub fn b(&self, z: Complex64) -> Complex64 {
        0.5 * I * (self.e(z) - self.e_star(z))
    }

    /// `A(x)` on the real axis, where it equals `Re E(x)`.
    pub fn a_real(&self, x: f64) -> f64 {
        self.e(Complex64::new(x, 0.0)).re
    }

    /// `B(x) = −Im E(x)` on the real axis.
    pub fn b_real(&self, x: f64) -> f64 {
        -self.e(Complex64::new(x, 0.0)).im
    }

    /// `2π / √L(i,i)`, the factor relating `A(x)` to `Re((1 − ix)K(i, x))`.
    pub fn proportionality(&self) -> f64 {
        2.0 * PI * self.scale
    }

    /// `Re((1 − ix)K(i, x))`.
    pub fn first_zero_function(&self, x: f64) -> f64 {
        first_zero_function(&self.section, x)
    }
}

fn first_zero_function(section: &KernelSection, x: f64) -> f64 {
    let z = Complex64::new(x, 0.0);
    ((1.0 - I * z) * section.eval(z)).re
}

pub fn build_debranges(group: SymmetryGroup, delta: f64) -> Result<DeBrangesData> {
    let space = KernelSpace::new(group.sharp(), delta)?;
    let section = KernelSection::new(space, I)?;
    let k_ii = section.try_eval(I)?.re;
    let l_ii = 4.0 * PI * k_ii;
    if !(l_ii > 0.0) || !l_ii.is_finite() {
        return Err(Error::NonFinite(format!("L(i,i) = {l_ii} for {group} at delta = {delta}")));
    }
    Ok(DeBrangesData { space, l_ii, section, scale: 1.0 / l_ii.sqrt() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstZeroResult {
    pub group: SymmetryGroup,
    pub delta: f64,
    pub xi0: f64,
}

/// Smallest positive sign change of `x ↦ Re((1 − ix)K(i, x))` for the
/// kernel of `G♯`.
pub fn xi0(group: SymmetryGroup, delta: f64) -> Result<FirstZeroResult> {
    let space = KernelSpace::new(group.sharp(), delta)?;
    let section = KernelSection::new(space, I)?;
    let root = first_root_scan_bisect(
        |x| first_zero_function(&section, x),
        0.0,
        XI0_SCAN_MAX,
        XI0_SCAN_STEP,
        XI0_TOL,
    );
    match root {
        Some(x) if x > 0.0 => Ok(FirstZeroResult { group, delta, xi0: x }),
        _ => Err(Error::NoRoot(format!(
            "no sign change of Re((1-ix)K(i,x)) in (0, {XI0_SCAN_MAX}] for {group} at delta = {delta}"
        ))),
    }
}

/// `‖xF‖ / ‖F‖` in the `W_{G♯}` norm, truncated to `[−X, X]`.
pub fn extremal_ratio<F>(group: SymmetryGroup, delta: f64, f: F, truncation: f64) -> Result<f64>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    KernelSpace::new(group, delta)?;
    let g = group.sharp();
    let config = QuadratureConfig::default();
    let den = weighted_inner(&f, &f, g, truncation, &config)?.re;
    if !(den > 0.0) {
        return Err(Error::ZeroDenominator(format!("‖F‖² = {den}")));
    }
    let xf = |x: f64| x * f(x);
    let num = weighted_inner(xf, xf, g, truncation, &config)?.re;
    Ok((num.max(0.0) / den).sqrt())
}

/// The extremizer `K(ξ₀, z) + K(ξ₀, −z)` for the kernel of `G♯`.
pub fn canonical_extremizer(group: SymmetryGroup, delta: f64) -> Result<(f64, impl Fn(f64) -> Complex64 + Sync)> {
    let xi = xi0(group, delta)?.xi0;
    let section = KernelSection::new(KernelSpace::new(group.sharp(), delta)?, Complex64::new(xi, 0.0))?;
    Ok((xi, move |x: f64| section.eval_real(x) + section.eval_real(-x)))
}
