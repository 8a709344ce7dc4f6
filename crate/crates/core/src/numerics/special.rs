use num_complex::Complex64;
use std::f64::consts::PI;

/// Below this magnitude `sinc_pi` switches to its Taylor series.
pub const SINC_SERIES_THRESHOLD: f64 = 1e-3;

/// Normalised sinc, `sin(πx)/(πx)`, with the removable singularity at 0 filled in.
pub fn sinc_pi(x: Complex64) -> Complex64 {
    if x.norm() < SINC_SERIES_THRESHOLD {
        let p = (x * PI).powi(2);
        // 1 - p/6 + p^2/120 - p^3/5040
        Complex64::new(1.0, 0.0) - p / 6.0 + p * p / 120.0 - p * p * p / 5040.0
    } else {
        let px = x * PI;
        px.sin() / px
    }
}

/// Real-argument [`sinc_pi`].
pub fn sinc_pi_real(x: f64) -> f64 {
    if x.abs() < SINC_SERIES_THRESHOLD {
        let p = (PI * x).powi(2);
        1.0 - p / 6.0 + p * p / 120.0 - p * p * p / 5040.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// `(e^{p s} - e^{q s}) / s`, continuous through `s = 0` where it equals `p - q`.
///
/// Every `1/(z - c)` factor in the two-step kernels multiplies a difference of
/// exponentials that vanishes at `z = c`; writing those terms through this
/// helper removes the singularity without a separate limit formula.
pub fn exp_diff_quotient(p: Complex64, q: Complex64, s: Complex64) -> Complex64 {
    let scale = p.norm().max(q.norm()) * s.norm();
    if scale < 0.5 {
        // sum_{k>=1} (p^k - q^k) s^{k-1} / k!
        let mut total = Complex64::new(0.0, 0.0);
        let mut pk = Complex64::new(1.0, 0.0);
        let mut qk = Complex64::new(1.0, 0.0);
        let mut sk = Complex64::new(1.0, 0.0);
        let mut fact = 1.0;
        for k in 1..=30 {
            pk *= p;
            qk *= q;
            fact *= k as f64;
            let term = (pk - qk) * sk / fact;
            total += term;
            if term.norm() <= 1e-18 * total.norm() {
                break;
            }
            sk *= s;
        }
        total
    } else {
        ((p * s).exp() - (q * s).exp()) / s
    }
}
