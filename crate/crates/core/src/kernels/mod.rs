//! Closed-form reproducing kernels `K_{G,πΔ}(w, z)`.
//!
//! `KernelSection` fixes the first argument once and then evaluates
//! `z ↦ K(w, z)` cheaply; [`kernel`] is the one-shot convenience wrapper.

mod two_step;

pub use two_step::{
    aux_so_even, aux_sp, near_singular_point, AuxFunctions, AuxSOEven, AuxSp, CoefficientPath,
    StepConstants, StepFamily, StepSection, SINGULAR_POINTS, SINGULAR_RADIUS,
};

use crate::error::{Error, Result};
use crate::numerics::sinc_pi;
use crate::symmetry::{KernelSpace, SymmetryGroup};
use num_complex::Complex64;

/// Interpolation offsets around a singular point, in units of [`SINGULAR_RADIUS`].
const INTERPOLATION_OFFSETS: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];

/// `z ↦ K_{G,πΔ}(w, z)` for a fixed `w`.
#[derive(Debug, Clone)]
pub struct KernelSection {
    space: KernelSpace,
    w: Complex64,
    repr: Repr,
}

#[derive(Debug, Clone)]
enum Repr {
    /// `Δ sinc(Δ(z − w̄))`
    Sinc { w_bar: Complex64 },
    /// `Δ sinc(Δ(z − w̄)) + factor · Δ sinc(Δz)`
    RankOne { w_bar: Complex64, factor: Complex64 },
    TwoStep(StepSection),
    /// Polynomial interpolation in `w̄` from real nodes near `±1/(4π)`,
    /// where `w ↦ K(w̄, z)` is entire but the formula has cancelling poles.
    Interpolated { weights: [Complex64; 4], sections: Box<[StepSection; 4]> },
    /// `K_Sp(w, z) − factor · K_Sp(0, z)`
    OddComposite { sp: Box<KernelSection>, at_origin: Box<KernelSection>, factor: Complex64 },
}

fn check_finite(label: &str, v: Complex64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{label} = {v}")))
    }
}

impl KernelSection {
    pub fn new(space: KernelSpace, w: Complex64) -> Result<Self> {
        Self::with_path(space, w, CoefficientPath::default())
    }

    /// As [`KernelSection::new`], choosing how the step coefficients are computed.
    pub fn with_path(space: KernelSpace, w: Complex64, path: CoefficientPath) -> Result<Self> {
        check_finite("w", w)?;
        if !space.closed_form_available() {
            return Err(Error::ClosedFormUnavailable { group: space.group, delta: space.delta });
        }
        let d = space.delta;
        let w_bar = w.conj();
        let rank_one = |sign: f64| {
            let factor = sign * d * sinc_pi(d * w_bar) / (2.0 - sign * d);
            Repr::RankOne { w_bar, factor }
        };
        let repr = match space.group {
            SymmetryGroup::U => Repr::Sinc { w_bar },
            SymmetryGroup::O => rank_one(-1.0),
            SymmetryGroup::SoEven if d <= 1.0 => rank_one(-1.0),
            SymmetryGroup::Sp if d <= 1.0 => rank_one(1.0),
            SymmetryGroup::SoOdd if d <= 1.0 => rank_one(-1.0),
            SymmetryGroup::SoEven => Self::step_repr(d, StepFamily::SoEven, w, path)?,
            SymmetryGroup::Sp => Self::step_repr(d, StepFamily::Sp, w, path)?,
            SymmetryGroup::SoOdd => {
                let sp_space = KernelSpace { group: SymmetryGroup::Sp, delta: d };
                let sp = Self::with_path(sp_space, w, path)?;
                let at_origin = Self::with_path(sp_space, Complex64::new(0.0, 0.0), path)?;
                let origin_value = at_origin.eval(Complex64::new(0.0, 0.0));
                let factor = sp.eval(Complex64::new(0.0, 0.0)) / (1.0 + origin_value);
                Repr::OddComposite { sp: Box::new(sp), at_origin: Box::new(at_origin), factor }
            }
        };
        Ok(Self { space, w, repr })
    }

    fn step_repr(delta: f64, family: StepFamily, w: Complex64, path: CoefficientPath) -> Result<Repr> {
        let constants = StepConstants::new(delta, family)?;
        match near_singular_point(w) {
            None => Ok(Repr::TwoStep(constants.section(w, path)?)),
            Some(center) => {
                let nodes = INTERPOLATION_OFFSETS.map(|k| center + k * SINGULAR_RADIUS);
                let target = w.conj();
                let mut weights = [Complex64::new(0.0, 0.0); 4];
                for (k, weight) in weights.iter_mut().enumerate() {
                    let mut l = Complex64::new(1.0, 0.0);
                    for (j, &node) in nodes.iter().enumerate() {
                        if j != k {
                            l *= (target - node) / (nodes[k] - node);
                        }
                    }
                    *weight = l;
                }
                let mut sections = Vec::with_capacity(4);
                for &node in &nodes {
                    sections.push(constants.section(Complex64::new(node, 0.0), path)?);
                }
                let sections: [StepSection; 4] = sections.try_into().expect("four nodes");
                Ok(Repr::Interpolated { weights, sections: Box::new(sections) })
            }
        }
    }

    pub fn space(&self) -> KernelSpace {
        self.space
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let d = self.space.delta;
        match &self.repr {
            Repr::Sinc { w_bar } => d * sinc_pi(d * (z - w_bar)),
            Repr::RankOne { w_bar, factor } => d * sinc_pi(d * (z - w_bar)) + factor * d * sinc_pi(d * z),
            Repr::TwoStep(s) => s.eval(z),
            Repr::Interpolated { weights, sections } => {
                weights.iter().zip(sections.iter()).map(|(wt, s)| wt * s.eval(z)).sum()
            }
            Repr::OddComposite { sp, at_origin, factor } => sp.eval(z) - factor * at_origin.eval(z),
        }
    }

    /// Checked evaluation rejecting non-finite arguments or results.
    pub fn try_eval(&self, z: Complex64) -> Result<Complex64> {
        check_finite("z", z)?;
        let v = self.eval(z);
        check_finite("kernel value", v)?;
        Ok(v)
    }

    pub fn eval_real(&self, x: f64) -> Complex64 {
        self.eval(Complex64::new(x, 0.0))
    }
}

/// `K_{G,πΔ}(w, z)`.
pub fn kernel(space: KernelSpace, w: Complex64, z: Complex64) -> Result<Complex64> {
    KernelSection::new(space, w)?.try_eval(z)
}

/// `K_{G,πΔ}(0, 0)` from the explicit origin formulas, independent of
/// [`kernel`].
pub fn kernel_origin(space: KernelSpace) -> Result<f64> {
    if !space.closed_form_available() {
        return Err(Error::ClosedFormUnavailable { group: space.group, delta: space.delta });
    }
    let d = space.delta;
    let h = 0.5 * (d - 1.0);
    let (s, c) = (h.sin(), h.cos());
    let value = match space.group {
        SymmetryGroup::U => d,
        SymmetryGroup::O => 2.0 * d / (2.0 + d),
        SymmetryGroup::SoEven | SymmetryGroup::SoOdd if d <= 1.0 => 2.0 * d / (2.0 + d),
        SymmetryGroup::Sp if d <= 1.0 => 2.0 * d / (2.0 - d),
        SymmetryGroup::SoEven => 2.0 - 4.0 * c / (4.0 + 4.0 * s - d * c),
        SymmetryGroup::Sp => 4.0 * c / (4.0 - 4.0 * s - (4.0 - d) * c) - 2.0,
        SymmetryGroup::SoOdd => 2.0 + 4.0 * c / (4.0 - 4.0 * s - (8.0 - d) * c),
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn space(g: SymmetryGroup, d: f64) -> KernelSpace {
        KernelSpace::new(g, d).unwrap()
    }

    #[test]
    fn unitary_examples() {
        let s = space(SymmetryGroup::U, 2.0);
        assert!((kernel(s, c(0.0, 0.0), c(0.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
        let v = kernel(s, c(0.125, 0.0), c(-0.125, 0.0)).unwrap();
        assert!((v - c(4.0 / PI, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn origin_examples() {
        let k0 = |g, d| kernel(space(g, d), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((k0(SymmetryGroup::O, 2.0).re - 1.0).abs() < 1e-15);
        assert!((k0(SymmetryGroup::SoOdd, 1.0).re - 2.0 / 3.0).abs() < 1e-15);
        let sp2 = k0(SymmetryGroup::Sp, 2.0).re;
        let expected = 4.0 * 0.5f64.cos() / (4.0 - 4.0 * 0.5f64.sin() - 2.0 * 0.5f64.cos()) - 2.0;
        assert!((sp2 - expected).abs() < 1e-10);
        assert!((1.0 - 1.0 / (2.0 * sp2) - 0.9427).abs() < 1e-4);
        assert!((kernel_origin(space(SymmetryGroup::Sp, 1.0)).unwrap() - 2.0).abs() < 1e-15);
        let soe2 = kernel_origin(space(SymmetryGroup::SoEven, 2.0)).unwrap();
        assert!((soe2 - 1.15669).abs() < 1e-5);
    }

    #[test]
    fn origin_branches_meet_at_one() {
        for g in [SymmetryGroup::SoEven, SymmetryGroup::Sp, SymmetryGroup::SoOdd] {
            let below = kernel_origin(space(g, 1.0)).unwrap();
            let above = kernel_origin(space(g, 1.0 + 1e-12)).unwrap();
            assert!((below - above).abs() < 1e-11, "{g}");
        }
    }

    #[test]
    fn unavailable_closed_form() {
        let s = space(SymmetryGroup::Sp, 3.0);
        assert!(matches!(kernel(s, c(0.0, 0.0), c(0.0, 0.0)), Err(Error::ClosedFormUnavailable { .. })));
        assert!(kernel_origin(s).is_err());
        assert!(kernel(space(SymmetryGroup::O, 3.0), c(0.0, 0.0), c(0.0, 0.0)).is_ok());
        assert!(kernel(space(SymmetryGroup::U, 1.0), c(f64::NAN, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn coefficient_paths_agree() {
        for g in [SymmetryGroup::SoEven, SymmetryGroup::Sp, SymmetryGroup::SoOdd] {
            for &d in &[1.2, 1.6, 2.0] {
                let w = c(0.37, -0.21);
                let a = KernelSection::with_path(space(g, d), w, CoefficientPath::LinearSolve).unwrap();
                let b = KernelSection::with_path(space(g, d), w, CoefficientPath::ClosedForm).unwrap();
                for &z in &[c(0.0, 0.0), c(-0.8, 0.3), c(1.1, -0.6)] {
                    let (x, y) = (a.eval(z), b.eval(z));
                    assert!((x - y).norm() <= 1e-12 * (1.0 + x.norm()));
                }
            }
        }
    }

    #[test]
    fn odd_composition_matches_small_bandwidth_form() {
        for &d in &[0.3, 0.7, 1.0] {
            let sp = space(SymmetryGroup::Sp, d);
            let odd = space(SymmetryGroup::SoOdd, d);
            for &(w, z) in &[(c(0.2, 0.1), c(-0.5, 0.4)), (c(-1.3, 0.0), c(0.9, 0.0)), (c(0.0, 0.0), c(0.0, 0.0))] {
                let k_sp = |a, b| kernel(sp, a, b).unwrap();
                let composed = k_sp(w, z) - k_sp(w, c(0.0, 0.0)) * k_sp(c(0.0, 0.0), z) / (1.0 + k_sp(c(0.0, 0.0), c(0.0, 0.0)));
                let direct = kernel(odd, w, z).unwrap();
                assert!((composed - direct).norm() <= 1e-10, "d={d}");
            }
        }
    }

    #[test]
    fn continuous_across_delta_one() {
        for g in [SymmetryGroup::SoEven, SymmetryGroup::Sp, SymmetryGroup::SoOdd] {
            for &w in &[c(0.0, 0.0), c(0.4, 0.0), c(-0.9, 0.3)] {
                for &z in &[c(0.0, 0.0), c(0.7, 0.0), c(0.2, -0.5)] {
                    let a = kernel(space(g, 1.0), w, z).unwrap();
                    let b = kernel(space(g, 1.0 + 1e-8), w, z).unwrap();
                    assert!((a - b).norm() <= 1e-5, "{g} w={w} z={z}");
                }
            }
        }
    }

    #[test]
    fn removable_singularity_is_smooth() {
        let center = 0.25 / PI;
        for g in [SymmetryGroup::SoEven, SymmetryGroup::Sp, SymmetryGroup::SoOdd] {
            for &d in &[1.3, 2.0] {
                let s = space(g, d);
                for &z in &[c(0.0, 0.0), c(0.6, 0.0), c(-0.3, 0.2)] {
                    for &sgn in &[1.0, -1.0] {
                        let c0 = sgn * center;
                        let at = kernel(s, c(c0, 0.0), z).unwrap();
                        let lo = kernel(s, c(c0 - 1e-6, 0.0), z).unwrap();
                        let hi = kernel(s, c(c0 + 1e-6, 0.0), z).unwrap();
                        // the kernel is smooth, so the centred average tracks the centre
                        assert!(((lo + hi) * 0.5 - at).norm() <= 1e-6);
                        let wide_lo = kernel(s, c(c0 - 1e-3, 0.0), z).unwrap();
                        let wide_hi = kernel(s, c(c0 + 1e-3, 0.0), z).unwrap();
                        let slope = (hi - lo) / 2e-6;
                        let wide_slope = (wide_hi - wide_lo) / 2e-3;
                        assert!((slope - wide_slope).norm() <= 1e-3 * (1.0 + wide_slope.norm()));
                        // the interpolated branch joins the direct formula at the threshold
                        let inside = kernel(s, c(c0 + SINGULAR_RADIUS * (1.0 - 1e-9), 0.0), z).unwrap();
                        let outside = kernel(s, c(c0 + SINGULAR_RADIUS * (1.0 + 1e-9), 0.0), z).unwrap();
                        assert!((inside - outside).norm() <= 1e-9, "{g} {d} {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn section_matches_one_shot() {
        let s = space(SymmetryGroup::SoEven, 1.7);
        let w = c(0.3, 0.2);
        let sec = KernelSection::new(s, w).unwrap();
        let z = c(-0.2, 0.9);
        assert_eq!(sec.eval(z), kernel(s, w, z).unwrap());
        assert_eq!(sec.w(), w);
        assert_eq!(sec.space(), s);
    }
}
