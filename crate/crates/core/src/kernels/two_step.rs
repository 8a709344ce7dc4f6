//! Kernels of SO(even) and Sp for `1 < Δ ≤ 2`, where the Fourier side of the
//! density has a jump inside the band and the kernel picks up the extra
//! exponential terms carried by `A`, `B`, `C` and `D`.

use crate::error::{Error, Result};
use crate::numerics::{exp_diff_quotient, sinc_pi, DenseMatrix, LuDecomposition};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Distance from `±1/(4π)` inside which the auxiliary functions are not
/// evaluated directly.
pub const SINGULAR_RADIUS: f64 = 1e-4;

/// The two points where `1 − 16π²w²` vanishes.
pub const SINGULAR_POINTS: [f64; 2] = [-0.25 / PI, 0.25 / PI];

/// Which of the two families shares the construction; they differ by the sign
/// of the jump in the Fourier transform of the density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepFamily {
    SoEven,
    Sp,
}

impl StepFamily {
    fn sign(self) -> f64 {
        match self {
            StepFamily::SoEven => 1.0,
            StepFamily::Sp => -1.0,
        }
    }
}

/// How the coefficients `A(w)`, `B(w)`, `D(w)` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientPath {
    /// Solve the 3×3 linear system numerically.
    #[default]
    LinearSolve,
    /// Use the explicit solved expressions.
    ClosedForm,
}

/// The `w`-independent constants for one `(Δ, family)` pair.
#[derive(Debug, Clone)]
pub struct StepConstants {
    pub delta: f64,
    pub family: StepFamily,
    pub tau: Complex64,
    pub a1: Complex64,
    pub b1: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    system: LuDecomposition<Complex64>,
}

/// Near the nodes of `1 − 16π²w²` this returns the nearest singular point.
pub fn near_singular_point(w: Complex64) -> Option<f64> {
    SINGULAR_POINTS
        .into_iter()
        .find(|&c| (w - Complex64::new(c, 0.0)).norm() < SINGULAR_RADIUS)
}

impl StepConstants {
    pub fn new(delta: f64, family: StepFamily) -> Result<Self> {
        if !(delta > 1.0 && delta <= 2.0) {
            return Err(Error::InvalidArgument(format!(
                "the step construction needs 1 < delta <= 2, got {delta}"
            )));
        }
        let sg = family.sign();
        let e_d = (I * (delta / 4.0)).exp();
        let e_c = (I * ((2.0 - delta) / 4.0)).exp();
        let tau = e_c + sg * I * e_d;
        let a1 = e_d + sg * I * e_c - sg * I * e_d;
        let b1 = e_d + sg * I * e_c - e_c;
        let shift = sg * (2.0 - delta) / 4.0;
        let a = a1 + shift * tau;
        let b = b1 + shift * tau;
        let corner = Complex64::new(sg * (2.0 - delta) / 2.0, 0.0);
        let matrix = DenseMatrix::from_rows(
            3,
            3,
            vec![a1, a1.conj(), corner, b1, b1.conj(), corner, tau, tau.conj(), Complex64::new(-2.0, 0.0)],
        )?;
        let system = LuDecomposition::new(matrix)?;
        let det = a.conj() * b - a * b.conj();
        if det.norm() < 1e-12 {
            return Err(Error::ZeroDenominator(format!("conj(a) b - a conj(b) at delta = {delta}")));
        }
        Ok(Self { delta, family, tau, a1, b1, a, b, system })
    }

    fn den(w: Complex64) -> Complex64 {
        1.0 - 16.0 * PI * PI * w * w
    }

    pub fn c_fun(&self, w: Complex64) -> Complex64 {
        let sg = self.family.sign();
        (-16.0 * PI * PI * w * w - sg * 4.0 * PI * I * w * (2.0 * PI * I * w).exp()) / Self::den(w)
    }

    pub fn f_fun(&self, w: Complex64) -> Complex64 {
        let sg = self.family.sign();
        let d = self.delta;
        (2.0 * (PI * (2.0 - d) * w).cos() - sg * 8.0 * PI * w * (PI * d * w).sin()) / Self::den(w)
    }

    /// Right-hand side of the first two equations of the system.
    pub fn e_fun(&self, w: Complex64) -> Complex64 {
        let sg = self.family.sign();
        let d = self.delta;
        let num = 2.0 * (PI * d * w).cos() + sg * 4.0 * PI * I * w * (-PI * d * I * w).exp()
            - (PI * (2.0 - d) * I * w).exp();
        (num - sg * ((2.0 - d) / 2.0) * sinc_pi((2.0 - d) * w)) / Self::den(w)
    }

    pub fn g_fun(&self, w: Complex64) -> Complex64 {
        let sg = self.family.sign();
        self.e_fun(w) + sg * (2.0 - self.delta) / 4.0 * self.f_fun(w)
    }

    /// `(A, B, D)` from the linear system.
    pub fn solve_system(&self, w: Complex64) -> Result<[Complex64; 3]> {
        let rhs = [self.e_fun(w), self.e_fun(w.conj()).conj(), self.f_fun(w)];
        let x = self.system.solve(&rhs)?;
        Ok([x[0], x[1], x[2]])
    }

    /// `(A, B, D)` from the explicit solved expressions.
    pub fn closed_coefficients(&self, w: Complex64) -> [Complex64; 3] {
        let (a, b) = (self.a, self.b);
        let g = self.g_fun(w);
        let g_bar = self.g_fun(w.conj()).conj();
        let det = a.conj() * b - a * b.conj();
        let big_a = (a.conj() * g_bar - b.conj() * g) / det;
        let big_b = (b * g - a * g_bar) / det;
        let big_d = 0.5 * (self.tau * big_a + self.tau.conj() * big_b - self.f_fun(w));
        [big_a, big_b, big_d]
    }

    /// Residual `max |M x − r|` of the system at the explicit coefficients.
    pub fn system_residual(&self, w: Complex64, x: [Complex64; 3]) -> f64 {
        let sg = self.family.sign();
        let corner = sg * (2.0 - self.delta) / 2.0;
        let rows = [
            self.a1 * x[0] + self.a1.conj() * x[1] + corner * x[2] - self.e_fun(w),
            self.b1 * x[0] + self.b1.conj() * x[1] + corner * x[2] - self.e_fun(w.conj()).conj(),
            self.tau * x[0] + self.tau.conj() * x[1] - 2.0 * x[2] - self.f_fun(w),
        ];
        rows.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }

    /// Kernel section `z ↦ K(w, z)` for `w` away from the singular points.
    pub fn section(&self, w: Complex64, path: CoefficientPath) -> Result<StepSection> {
        if let Some(_c) = near_singular_point(w) {
            return Err(Error::SingularAuxPoint { w });
        }
        let [big_a, big_b, big_d] = match path {
            CoefficientPath::LinearSolve => self.solve_system(w)?,
            CoefficientPath::ClosedForm => self.closed_coefficients(w),
        };
        let section = StepSection {
            delta: self.delta,
            sign: self.family.sign(),
            w_bar: w.conj(),
            conj_a: big_a.conj(),
            conj_b: big_b.conj(),
            conj_d: big_d.conj(),
            c_at_w_bar: self.c_fun(w.conj()),
            conj_c_at_w: self.c_fun(w).conj(),
        };
        if !section.is_finite() {
            return Err(Error::NonFinite(format!("step coefficients at w = {w}")));
        }
        Ok(section)
    }
}

/// Everything about `K(w, ·)` that depends only on `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepSection {
    delta: f64,
    sign: f64,
    w_bar: Complex64,
    conj_a: Complex64,
    conj_b: Complex64,
    conj_d: Complex64,
    c_at_w_bar: Complex64,
    conj_c_at_w: Complex64,
}

impl StepSection {
    fn is_finite(&self) -> bool {
        [self.conj_a, self.conj_b, self.conj_d, self.c_at_w_bar, self.conj_c_at_w]
            .iter()
            .all(|v| v.is_finite())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let d = self.delta;
        let c = 2.0 - d;
        let sg = self.sign;
        let lead = (2.0 * PI * I * z).exp();
        let s1 = PI * I * z + 0.25 * I;
        let s2 = PI * I * z - 0.25 * I;
        let p = Complex64::new(-d, 0.0);
        let q = Complex64::new(-c, 0.0);
        let t1 = self.conj_a * (sg * I * lead - 1.0) * exp_diff_quotient(p, q, s1) * 0.5;
        let t2 = self.conj_b * (-sg * I * lead - 1.0) * exp_diff_quotient(p, q, s2) * 0.5;
        let v = z - self.w_bar;
        let t3 = (self.c_at_w_bar * exp_diff_quotient(PI * d * I, PI * c * I, v)
            - self.conj_c_at_w * exp_diff_quotient(-PI * d * I, -PI * c * I, v))
            / (2.0 * PI * I);
        let t4 = self.conj_d * c * sinc_pi(c * z);
        let t5 = c * sinc_pi(c * v);
        t1 + t2 + t3 + t4 + t5
    }
}

/// Auxiliary constants and functions at one point `w`, as they appear in the
/// explicit kernel formula.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxFunctions {
    pub delta: f64,
    pub family: StepFamily,
    pub w: Complex64,
    pub tau: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub f: Complex64,
    pub g: Complex64,
    pub big_a: Complex64,
    pub big_b: Complex64,
    pub big_d: Complex64,
}

pub type AuxSOEven = AuxFunctions;
pub type AuxSp = AuxFunctions;

fn aux(delta: f64, w: Complex64, family: StepFamily) -> Result<AuxFunctions> {
    let k = StepConstants::new(delta, family)?;
    if near_singular_point(w).is_some() {
        return Err(Error::SingularAuxPoint { w });
    }
    let [big_a, big_b, big_d] = k.closed_coefficients(w);
    Ok(AuxFunctions {
        delta,
        family,
        w,
        tau: k.tau,
        a: k.a,
        b: k.b,
        c: k.c_fun(w),
        f: k.f_fun(w),
        g: k.g_fun(w),
        big_a,
        big_b,
        big_d,
    })
}

/// Auxiliary values for SO(even); `C`, `F` and `G` have poles at `±1/(4π)`,
/// where an error is returned.
pub fn aux_so_even(delta: f64, w: Complex64) -> Result<AuxSOEven> {
    aux(delta, w, StepFamily::SoEven)
}

/// Auxiliary values for Sp, with the same domain as [`aux_so_even`].
pub fn aux_sp(delta: f64, w: Complex64) -> Result<AuxSp> {
    aux(delta, w, StepFamily::Sp)
}
