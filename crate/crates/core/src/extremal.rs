//! One- and two-delta extremal problems and the non-vanishing proportions
//! they imply.

use crate::error::{Error, Result};
use crate::kernels::KernelSection;
use crate::numerics::golden_section_max;
use crate::symmetry::KernelSpace;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Refinement tolerance in `t` for [`curve_max`].
pub const CURVE_MAX_TOL: f64 = 1e-6;
/// Default sampling step for proportion curves.
pub const DEFAULT_CURVE_STEP: f64 = 1e-3;

fn re(z: Complex64) -> f64 {
    z.re
}

fn section(space: KernelSpace, t: f64) -> Result<KernelSection> {
    if !t.is_finite() {
        return Err(Error::NonFinite(format!("t = {t}")));
    }
    KernelSection::new(space, Complex64::new(t, 0.0))
}

/// Which constraint set the solution satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaProblem {
    /// `F(t) ≥ 1`
    OneDelta,
    /// `F(t) ≥ 1` and `F(−t) ≥ 1`
    TwoDelta,
}

/// Optimal value and extremal function of a delta problem.
#[derive(Debug, Clone)]
pub struct DeltaProblemSolution {
    pub space: KernelSpace,
    pub t: f64,
    pub problem: DeltaProblem,
    pub value: f64,
    at_t: KernelSection,
    at_minus_t: KernelSection,
    /// `K(t, t) + |K(t, −t)|` or `K(t, t)`.
    norm: f64,
    cross_sign: f64,
}

impl DeltaProblemSolution {
    pub fn new(space: KernelSpace, t: f64, problem: DeltaProblem) -> Result<Self> {
        let at_t = section(space, t)?;
        let at_minus_t = section(space, -t)?;
        let k_tt = re(at_t.eval_real(t));
        if !(k_tt > 0.0) {
            return Err(Error::ZeroDenominator(format!("K(t, t) = {k_tt} at t = {t}")));
        }
        let k_cross = re(at_t.eval_real(-t));
        let problem = if t == 0.0 { DeltaProblem::OneDelta } else { problem };
        let (norm, cross_sign) = match problem {
            DeltaProblem::OneDelta => (k_tt, 0.0),
            DeltaProblem::TwoDelta => (k_tt + k_cross.abs(), sign_or_zero(k_cross)),
        };
        let value = match problem {
            DeltaProblem::OneDelta => 1.0 / k_tt,
            DeltaProblem::TwoDelta => 2.0 / norm,
        };
        Ok(Self { space, t, problem, value, at_t, at_minus_t, norm, cross_sign })
    }

    /// The extremal function at real `x`; nonnegative, equal to 1 at the
    /// constrained points.
    pub fn extremizer(&self, x: f64) -> f64 {
        let kt = re(self.at_t.eval_real(x));
        match self.problem {
            DeltaProblem::OneDelta => (kt / self.norm).powi(2),
            DeltaProblem::TwoDelta => {
                let km = re(self.at_minus_t.eval_real(x));
                (kt * kt + km * km + 2.0 * self.cross_sign * kt * km) / (self.norm * self.norm)
            }
        }
    }
}

/// `sgn` with `sgn(0) = 0`; at a zero cross term the two-delta extremizer is
/// not unique and the representative without the cross term is returned.
fn sign_or_zero(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `1 / K(t, t)`.
pub fn one_delta_value(space: KernelSpace, t: f64) -> Result<f64> {
    Ok(DeltaProblemSolution::new(space, t, DeltaProblem::OneDelta)?.value)
}

/// `|K(t, x)|² / K(t, t)²`.
pub fn one_delta_extremizer(space: KernelSpace, t: f64, x: f64) -> Result<f64> {
    Ok(DeltaProblemSolution::new(space, t, DeltaProblem::OneDelta)?.extremizer(x))
}

/// `2 / (K(t, t) + |K(t, −t)|)`.
pub fn two_delta_value(space: KernelSpace, t: f64) -> Result<f64> {
    Ok(DeltaProblemSolution::new(space, t, DeltaProblem::TwoDelta)?.value)
}

pub fn two_delta_extremizer(space: KernelSpace, t: f64, x: f64) -> Result<f64> {
    Ok(DeltaProblemSolution::new(space, t, DeltaProblem::TwoDelta)?.extremizer(x))
}

/// Upper bound for the average order of vanishing at height `t ≥ 0`:
/// `1/(K(t,t) + |K(t,−t)|)` for `t > 0` and `1/K(0,0)` at `t = 0`.
pub fn vanishing_bound(space: KernelSpace, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::InvalidArgument(format!("height t must be nonnegative, got {t}")));
    }
    let s = section(space, t)?;
    let k_tt = re(s.eval_real(t));
    if t == 0.0 {
        return Ok(1.0 / k_tt);
    }
    Ok(1.0 / (k_tt + re(s.eval_real(-t)).abs()))
}

/// `𝒫(t) = 1 − vanishing_bound(t)`, clamped to `[0, 1]`.
pub fn nonvanishing_proportion(space: KernelSpace, t: f64) -> Result<f64> {
    Ok((1.0 - vanishing_bound(space, t)?).clamp(0.0, 1.0))
}

/// Non-vanishing proportion for the Dirichlet-character family,
/// `1 − ½ (1 + |sin(4πt)/(4πt)|)^{−1}`.
pub fn dirichlet_bound(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    let s = (4.0 * PI * t).sin() / (4.0 * PI * t);
    Ok(1.0 - 0.5 / (1.0 + s.abs()))
}

/// Samples of `𝒫` on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ProportionCurve {
    pub space: KernelSpace,
    pub samples: Vec<(f64, f64)>,
}

/// `𝒫(t)` at `t_min, t_min + step, …` up to `t_max`.
pub fn proportion_curve(space: KernelSpace, t_min: f64, t_max: f64, step: f64) -> Result<ProportionCurve> {
    if !(t_min > 0.0 && t_min < t_max) || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "curve range needs 0 < t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let count = ((t_max - t_min) / step * (1.0 + 1e-12)).floor() as usize + 1;
    let samples = (0..count)
        .into_par_iter()
        .map(|k| {
            let t = t_min + step * k as f64;
            nonvanishing_proportion(space, t).map(|p| (t, p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProportionCurve { space, samples })
}

/// Maximum of the curve: grid argmax refined by golden-section search on the
/// neighbouring cells.
pub fn curve_max(curve: &ProportionCurve) -> Result<(f64, f64)> {
    let samples = &curve.samples;
    let (k, _) = samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .ok_or_else(|| Error::InvalidArgument("empty curve".into()))?;
    if samples.len() < 3 {
        return Ok(samples[k]);
    }
    let lo = samples[k.saturating_sub(1)].0;
    let hi = samples[(k + 1).min(samples.len() - 1)].0;
    let space = curve.space;
    let (t, p) = golden_section_max(
        |t| nonvanishing_proportion(space, t).unwrap_or(f64::NEG_INFINITY),
        lo,
        hi,
        0.1 * CURVE_MAX_TOL,
    );
    if p >= samples[k].1 {
        Ok((t, p))
    } else {
        Ok(samples[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::QuadratureConfig;
    use crate::symmetry::{weighted_inner, SymmetryGroup};
    use proptest::prelude::*;

    fn space(g: SymmetryGroup, d: f64) -> KernelSpace {
        KernelSpace::new(g, d).unwrap()
    }

    #[test]
    fn one_delta_examples() {
        assert!((one_delta_value(space(SymmetryGroup::U, 2.0), 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((one_delta_value(space(SymmetryGroup::O, 2.0), 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((one_delta_value(space(SymmetryGroup::Sp, 1.0), 0.0).unwrap() - 0.5).abs() < 1e-15);
        let u = space(SymmetryGroup::U, 2.0);
        assert!((one_delta_extremizer(u, 0.3, 0.3).unwrap() - 1.0).abs() < 1e-14);
        assert!(one_delta_extremizer(u, 0.0, 0.5).unwrap().abs() < 1e-30);
    }

    #[test]
    fn two_delta_examples() {
        let u = space(SymmetryGroup::U, 2.0);
        let v = two_delta_value(u, 0.125).unwrap();
        assert!((v - 2.0 / (2.0 + 4.0 / PI)).abs() < 1e-14);
        assert_eq!(two_delta_value(u, 0.0).unwrap(), one_delta_value(u, 0.0).unwrap());
        // K(t, -t) -> 0, so the value tends to 2/Δ and the vanishing bound to 1/Δ
        assert!((two_delta_value(u, 50.0).unwrap() - 1.0).abs() < 0.01);
        assert!((vanishing_bound(u, 50.0).unwrap() - 0.5).abs() < 0.01);
        assert!((two_delta_extremizer(u, 0.25, 0.25).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dirichlet_family_values() {
        let p = dirichlet_bound(0.125).unwrap();
        assert!((p - (4.0 + PI) / (4.0 + 2.0 * PI)).abs() < 1e-12);
        assert!((p - 0.694493).abs() < 1e-6);
        assert!((dirichlet_bound(1e-9).unwrap() - 0.75).abs() < 1e-9);
        assert!((dirichlet_bound(100.0).unwrap() - 0.5).abs() < 5e-3);
        assert!(dirichlet_bound(0.0).is_err());
        let u = space(SymmetryGroup::U, 2.0);
        assert!((nonvanishing_proportion(u, 0.125).unwrap() - p).abs() < 1e-14);
    }

    #[test]
    fn zero_height_uses_single_point_bound() {
        let sp = space(SymmetryGroup::Sp, 2.0);
        let k00 = crate::kernels::kernel_origin(sp).unwrap();
        assert!((vanishing_bound(sp, 0.0).unwrap() - 1.0 / k00).abs() < 1e-10);
        assert!((nonvanishing_proportion(sp, 1e-6).unwrap() - 0.9427).abs() < 1e-3);
        assert!(vanishing_bound(sp, -0.1).is_err());
    }

    #[test]
    fn extremizer_integrals_match_values() {
        let config = QuadratureConfig::default();
        for (g, d, t) in [(SymmetryGroup::U, 2.0, 0.3), (SymmetryGroup::SoEven, 1.5, 0.4), (SymmetryGroup::SoOdd, 2.0, 0.35)] {
            let s = space(g, d);
            for problem in [DeltaProblem::OneDelta, DeltaProblem::TwoDelta] {
                let sol = DeltaProblemSolution::new(s, t, problem).unwrap();
                let f = |x: f64| Complex64::new(sol.extremizer(x), 0.0);
                let one = |_: f64| Complex64::new(1.0, 0.0);
                let integral = weighted_inner(f, one, g, 200.0, &config).unwrap().re;
                assert!((integral - sol.value).abs() < 2e-3, "{g} {problem:?}: {integral} vs {}", sol.value);
            }
        }
    }

    #[test]
    fn curve_maximum_refines_grid() {
        let s = space(SymmetryGroup::SoOdd, 2.0);
        let curve = proportion_curve(s, 0.2, 0.5, 1e-2).unwrap();
        assert_eq!(curve.samples.len(), 31);
        let (t, p) = curve_max(&curve).unwrap();
        assert!((t - 0.3505).abs() < 1e-3 && (p - 0.7175).abs() < 1e-3);
        assert!(curve.samples.iter().all(|&(_, q)| q <= p));
        assert!(proportion_curve(s, 0.0, 1.0, 0.1).is_err());
        assert!(proportion_curve(s, 0.1, 1.0, 0.0).is_err());
    }

    #[test]
    fn extremizer_decays_like_inverse_square() {
        let sol = DeltaProblemSolution::new(space(SymmetryGroup::Sp, 1.7), 0.4, DeltaProblem::TwoDelta).unwrap();
        let envelope = |a: f64, b: f64| {
            (0..400).map(|k| a + (b - a) * k as f64 / 400.0).map(|x| x * x * sol.extremizer(x)).fold(0.0, f64::max)
        };
        let near = envelope(10.0, 20.0);
        let far = envelope(50.0, 100.0);
        assert!(far <= 1.5 * near, "{near} {far}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn two_delta_between_one_and_twice_one(t in 0.01f64..3.0, d in 0.3f64..2.0, gi in 0usize..5) {
            let s = space(SymmetryGroup::ALL[gi], d);
            let one = one_delta_value(s, t).unwrap();
            let two = two_delta_value(s, t).unwrap();
            prop_assert!(two <= 2.0 * one * (1.0 + 1e-12));
            prop_assert!(two >= one * (1.0 - 1e-12));
        }

        #[test]
        fn extremizer_feasible_and_even(t in 0.05f64..2.0, x in -50.0f64..50.0, d in 0.3f64..2.0, gi in 0usize..5) {
            let s = space(SymmetryGroup::ALL[gi], d);
            let sol = DeltaProblemSolution::new(s, t, DeltaProblem::TwoDelta).unwrap();
            prop_assert!(sol.extremizer(x) >= -1e-14);
            prop_assert!((sol.extremizer(x) - sol.extremizer(-x)).abs() <= 1e-12);
            prop_assert!((sol.extremizer(t) - 1.0).abs() <= 1e-12);
            prop_assert!((sol.extremizer(-t) - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn dirichlet_matches_unitary_proportion(t in 1e-4f64..20.0) {
            let p = nonvanishing_proportion(space(SymmetryGroup::U, 2.0), t).unwrap();
            prop_assert!((dirichlet_bound(t).unwrap() - p).abs() <= 1e-14);
        }

        #[test]
        fn proportion_in_unit_interval(t in 0.0f64..10.0, d in 0.2f64..2.0, gi in 0usize..5) {
            let p = nonvanishing_proportion(space(SymmetryGroup::ALL[gi], d), t).unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }
}
