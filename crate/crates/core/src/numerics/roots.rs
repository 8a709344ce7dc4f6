use crate::error::{Error, Result};

/// A sign-changing bracket `[a, b]` with `fa * fb < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub a: f64,
    pub b: f64,
    pub fa: f64,
    pub fb: f64,
}

impl Bracket {
    pub fn new<F: FnMut(f64) -> f64>(a: f64, b: f64, mut f: F) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidArgument(format!("bracket [{a}, {b}] is empty")));
        }
        let (fa, fb) = (f(a), f(b));
        if !(fa * fb < 0.0) {
            return Err(Error::NoRoot(format!(
                "f({a}) = {fa} and f({b}) = {fb} do not change sign"
            )));
        }
        Ok(Self { a, b, fa, fb })
    }

    /// Bisect until the bracket is no wider than `tol`; returns the midpoint.
    pub fn bisect<F: FnMut(f64) -> f64>(mut self, tol: f64, mut f: F) -> f64 {
        while self.b - self.a > tol {
            let m = 0.5 * (self.a + self.b);
            if m <= self.a || m >= self.b {
                break;
            }
            let fm = f(m);
            if fm == 0.0 {
                return m;
            }
            if (fm < 0.0) == (self.fa < 0.0) {
                self.a = m;
                self.fa = fm;
            } else {
                self.b = m;
                self.fb = fm;
            }
        }
        0.5 * (self.a + self.b)
    }
}

/// All sign changes of `f` on a uniform scan of `[lo, hi]`, each refined by
/// bisection to width `tol`. Roots are returned in ascending order.
///
/// Grid nodes where `f` is exactly zero are reported as roots. Zeros where
/// `f` touches the axis without changing sign between grid nodes are not
/// detected.
pub fn find_roots_scan_bisect<F>(mut f: F, lo: f64, hi: f64, scan_step: f64, tol: f64) -> Vec<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) || !(scan_step > 0.0) {
        return Vec::new();
    }
    let steps = ((hi - lo) / scan_step).ceil().max(1.0) as usize;
    let node = |i: usize| {
        if i == steps {
            hi
        } else {
            lo + scan_step * i as f64
        }
    };
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        roots.push(x0);
    }
    for i in 1..=steps {
        let x1 = node(i);
        let f1 = f(x1);
        if f1 == 0.0 {
            roots.push(x1);
        } else if f0 != 0.0 && f0.is_finite() && f1.is_finite() && (f0 < 0.0) != (f1 < 0.0) {
            let bracket = Bracket { a: x0, b: x1, fa: f0, fb: f1 };
            roots.push(bracket.bisect(tol, &mut f));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

/// First sign change of `f` on the scan, or `None`.
pub fn first_root_scan_bisect<F>(mut f: F, lo: f64, hi: f64, scan_step: f64, tol: f64) -> Option<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) || !(scan_step > 0.0) {
        return None;
    }
    let steps = ((hi - lo) / scan_step).ceil().max(1.0) as usize;
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        return Some(x0);
    }
    for i in 1..=steps {
        let x1 = if i == steps { hi } else { lo + scan_step * i as f64 };
        let f1 = f(x1);
        if f1 == 0.0 {
            return Some(x1);
        }
        if f0.is_finite() && f1.is_finite() && (f0 < 0.0) != (f1 < 0.0) {
            return Some(Bracket { a: x0, b: x1, fa: f0, fb: f1 }.bisect(tol, &mut f));
        }
        x0 = x1;
        f0 = f1;
    }
    None
}

/// Golden-section search for a local maximum of `f` inside `[a, b]`.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cosine_zeros() {
        let r = find_roots_scan_bisect(|x| (2.0 * PI * x).cos(), 0.0, 1.0, 0.01, 1e-12);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 0.25).abs() < 1e-10);
        assert!((r[1] - 0.75).abs() < 1e-10);
    }

    #[test]
    fn sqrt_two() {
        let r = find_roots_scan_bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-3, 1e-14);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn exact_zero_on_grid_is_found_once() {
        // zero at 0.375 lands exactly on the scan grid
        let r = find_roots_scan_bisect(|x| 0.375 - x, 0.0, 1.0, 0.125, 1e-12);
        assert_eq!(r, vec![0.375]);
    }

    #[test]
    fn touching_zero_is_not_detected() {
        let r = find_roots_scan_bisect(|x| (x - 0.5).powi(2), 0.0, 1.0, 0.013, 1e-12);
        assert!(r.is_empty());
    }

    #[test]
    fn no_sign_change_gives_empty() {
        assert!(find_roots_scan_bisect(|x| x * x + 1.0, -1.0, 1.0, 0.1, 1e-12).is_empty());
        assert!(first_root_scan_bisect(|x| x * x + 1.0, -1.0, 1.0, 0.1, 1e-12).is_none());
    }

    #[test]
    fn rerun_on_refined_bracket_reproduces_roots() {
        let f = |x: f64| (3.0 * x).sin() - 0.2;
        let tol = 1e-12;
        let roots = find_roots_scan_bisect(f, 0.0, 4.0, 0.05, tol);
        for r in roots {
            let again = find_roots_scan_bisect(f, r - 0.01, r + 0.013, 1e-4, tol);
            assert_eq!(again.len(), 1);
            assert!((again[0] - r).abs() <= 2.0 * tol);
        }
    }

    #[test]
    fn bracket_requires_sign_change() {
        assert!(Bracket::new(0.0, 1.0, |x| x + 1.0).is_err());
        let b = Bracket::new(0.0, 1.0, |x| x - 0.3).unwrap();
        assert!((b.bisect(1e-14, |x| x - 0.3) - 0.3).abs() < 1e-13);
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, v) = golden_section_max(|x| -(x - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-15);
    }
}
