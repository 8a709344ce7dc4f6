use crate::error::{Error, Result};
use rayon::prelude::*;

const PARALLEL_ROWS: usize = 128;

/// Dense real symmetric matrix, stored in full row-major form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Rejects entries that are not exactly symmetric as stored.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "{} entries do not fill a {n}x{n} matrix",
                data.len()
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::InvalidArgument(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("matrix entry".into()));
        }
        Ok(Self { n, data })
    }

    /// Builds the matrix from its lower triangle, mirroring exactly.
    pub fn from_lower(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self::new(n, data)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Householder reduction to a similar tridiagonal matrix.
    pub fn tridiagonalize(&self) -> Tridiagonal {
        let n = self.n;
        let mut a = self.data.clone();
        for k in 0..n.saturating_sub(2) {
            let m = n - k - 1;
            let mut v: Vec<f64> = (0..m).map(|i| a[(k + 1 + i) * n + k]).collect();
            let norm_x = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm_x == 0.0 {
                continue;
            }
            let alpha = if v[0] > 0.0 { -norm_x } else { norm_x };
            v[0] -= alpha;
            let norm_v = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm_v == 0.0 {
                continue;
            }
            v.iter_mut().for_each(|x| *x /= norm_v);

            // trailing block B; B <- H B H with H = I - 2 v v^T
            let off = k + 1;
            let row_dot = |i: usize, a: &[f64]| -> f64 {
                let row = &a[(off + i) * n + off..(off + i) * n + n];
                row.iter().zip(&v).map(|(x, y)| x * y).sum()
            };
            let p: Vec<f64> = if m > PARALLEL_ROWS {
                (0..m).into_par_iter().map(|i| row_dot(i, &a)).collect()
            } else {
                (0..m).map(|i| row_dot(i, &a)).collect()
            };
            let vp: f64 = v.iter().zip(&p).map(|(x, y)| x * y).sum();
            let w: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - vp * vi).collect();
            let update = |(i, row): (usize, &mut [f64])| {
                let (vi, wi) = (v[i], w[i]);
                for (j, r) in row[off..].iter_mut().enumerate() {
                    *r -= 2.0 * (vi * w[j] + wi * v[j]);
                }
            };
            let block = &mut a[off * n..];
            if m > PARALLEL_ROWS {
                block.par_chunks_mut(n).enumerate().for_each(update);
            } else {
                block.chunks_mut(n).enumerate().for_each(update);
            }
            a[(k + 1) * n + k] = alpha;
            a[k * n + k + 1] = alpha;
            for i in k + 2..n {
                a[i * n + k] = 0.0;
                a[k * n + i] = 0.0;
            }
        }
        // symmetrise accumulated rounding in the stored band
        let diag = (0..n).map(|i| a[i * n + i]).collect();
        let off = (0..n.saturating_sub(1))
            .map(|i| 0.5 * (a[(i + 1) * n + i] + a[i * n + i + 1]))
            .collect();
        Tridiagonal { diag, off }
    }
}

/// Symmetric tridiagonal matrix with diagonal `diag` and sub-diagonal `off`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: f64) -> usize {
        let n = self.diag.len();
        let scale = self.gershgorin_radius().max(f64::MIN_POSITIVE);
        let tiny = f64::EPSILON * scale * 1e-3;
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..n {
            if i > 0 {
                q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            }
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval `[lo, hi]` containing the spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn gershgorin_radius(&self) -> f64 {
        let (lo, hi) = self.gershgorin_bounds();
        lo.abs().max(hi.abs())
    }

    /// The `k`-th smallest eigenvalue (0-based), by bisection on the Sturm count.
    pub fn kth_eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin_bounds();
        let scale = self.gershgorin_radius();
        lo -= 1e-12 * scale + f64::MIN_POSITIVE;
        hi += 1e-12 * scale + f64::MIN_POSITIVE;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.diag.len()).map(|k| self.kth_eigenvalue(k)).collect()
    }

    /// Number of eigenvalues in the half-open interval `[lo, hi)`.
    pub fn count_in(&self, lo: f64, hi: f64) -> usize {
        self.count_below(hi).saturating_sub(self.count_below(lo))
    }
}

/// Smallest and largest eigenvalue.
///
/// Householder tridiagonalisation followed by Sturm bisection; the O(n³)
/// reduction is the same order as a full Jacobi sweep but several times
/// cheaper at n ≈ 1000.
pub fn symmetric_extreme_eigen(m: &SymmetricMatrix) -> (f64, f64) {
    let t = m.tridiagonalize();
    (t.kth_eigenvalue(0), t.kth_eigenvalue(m.n - 1))
}

/// Full spectrum by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(m: &SymmetricMatrix) -> Vec<f64> {
    let n = m.n;
    let mut a = m.data.clone();
    let total = m.frobenius_norm();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}
