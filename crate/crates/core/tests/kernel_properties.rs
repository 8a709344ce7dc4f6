use lowlying::{kernel, KernelSection, KernelSpace, SymmetryGroup};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn group() -> impl Strategy<Value = SymmetryGroup> {
    prop::sample::select(SymmetryGroup::ALL.to_vec())
}

fn point() -> impl Strategy<Value = Complex64> {
    (-2.5f64..2.5, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * a.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn parity(g in group(), d in 0.05f64..=2.0, w in point(), z in point()) {
        let s = KernelSpace::new(g, d).unwrap();
        prop_assert!(close(kernel(s, w, z).unwrap(), kernel(s, -w, -z).unwrap()));
    }

    #[test]
    fn hermitian(g in group(), d in 0.05f64..=2.0, w in point(), z in point()) {
        let s = KernelSpace::new(g, d).unwrap();
        prop_assert!(close(kernel(s, w, z).unwrap(), kernel(s, z, w).unwrap().conj()));
    }

    #[test]
    fn real_entire_sections(g in group(), d in 0.05f64..=2.0, w in point(), z in point()) {
        let s = KernelSpace::new(g, d).unwrap();
        let k = kernel(s, w, z).unwrap();
        prop_assert!(close(k, kernel(s, w.conj(), z.conj()).unwrap().conj()));
        let real = kernel(s, c(w.re, 0.0), c(z.re, 0.0)).unwrap();
        prop_assert!(real.im.abs() <= 1e-12 * real.norm().max(1.0));
    }

    #[test]
    fn diagonal_is_positive(g in group(), d in 0.05f64..=2.0, t in -20.0f64..20.0) {
        let s = KernelSpace::new(g, d).unwrap();
        prop_assert!(kernel(s, c(t, 0.0), c(t, 0.0)).unwrap().re > 0.0);
    }

    #[test]
    fn cauchy_schwarz(g in group(), d in 0.05f64..=2.0, s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let sp = KernelSpace::new(g, d).unwrap();
        let kst = kernel(sp, c(s, 0.0), c(t, 0.0)).unwrap().norm();
        let kss = kernel(sp, c(s, 0.0), c(s, 0.0)).unwrap().re;
        let ktt = kernel(sp, c(t, 0.0), c(t, 0.0)).unwrap().re;
        prop_assert!(kst * kst <= kss * ktt * (1.0 + 1e-10));
    }
}

#[test]
fn positivity_grid() {
    for g in SymmetryGroup::ALL {
        for d in [0.5, 1.0, 1.3, 1.7, 2.0] {
            let s = KernelSpace::new(g, d).unwrap();
            for k in 0..=400 {
                let t = -10.0 + 0.05 * k as f64;
                assert!(kernel(s, c(t, 0.0), c(t, 0.0)).unwrap().re > 0.0, "{g} {d} {t}");
            }
        }
    }
}

#[test]
fn branches_continuous_at_one() {
    for g in [SymmetryGroup::Sp, SymmetryGroup::SoEven, SymmetryGroup::SoOdd] {
        let below = KernelSpace::new(g, 1.0).unwrap();
        let above = KernelSpace::new(g, 1.0 + 1e-8).unwrap();
        for w in [-0.9, -0.2, 0.0, 0.45, 1.3] {
            for z in [-1.1, 0.0, 0.3, 0.8] {
                let a = kernel(below, c(w, 0.0), c(z, 0.0)).unwrap();
                let b = kernel(above, c(w, 0.0), c(z, 0.0)).unwrap();
                assert!((a - b).norm() <= 1e-5, "{g} w={w} z={z}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn reference_values() {
    let u = KernelSpace::new(SymmetryGroup::U, 2.0).unwrap();
    assert!((kernel(u, c(0.0, 0.0), c(0.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
    let v = kernel(u, c(0.125, 0.0), c(-0.125, 0.0)).unwrap();
    assert!((v.re - 4.0 / std::f64::consts::PI).abs() < 1e-14);
    let o = KernelSpace::new(SymmetryGroup::O, 2.0).unwrap();
    assert!((kernel(o, c(0.0, 0.0), c(0.0, 0.0)).unwrap().re - 1.0).abs() < 1e-15);
    let sp = KernelSpace::new(SymmetryGroup::Sp, 2.0).unwrap();
    assert!((kernel(sp, c(0.0, 0.0), c(0.0, 0.0)).unwrap().re - 8.7306).abs() < 1e-3);
}

#[test]
fn sections_near_singular_points_are_smooth() {
    let c0 = 0.25 / std::f64::consts::PI;
    for g in [SymmetryGroup::SoEven, SymmetryGroup::Sp, SymmetryGroup::SoOdd] {
        let s = KernelSpace::new(g, 1.6).unwrap();
        for center in [c0, -c0] {
            let mid = KernelSection::new(s, c(center, 0.0)).unwrap();
            for z in [c(0.0, 0.0), c(0.7, -0.2)] {
                let lo = kernel(s, c(center - 1e-6, 0.0), z).unwrap();
                let hi = kernel(s, c(center + 1e-6, 0.0), z).unwrap();
                assert!((0.5 * (lo + hi) - mid.eval(z)).norm() < 1e-6, "{g} {center} {z}");
                assert!(mid.eval(z).is_finite());
            }
        }
    }
}
