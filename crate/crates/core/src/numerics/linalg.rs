use crate::error::{Error, Result};
use num_complex::{Complex64, ComplexFloat};
use rayon::prelude::*;

/// Pivots smaller than this fraction of the largest matrix entry are treated
/// as zero.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-13;

/// Row counts above which elimination updates run on the rayon pool.
const PARALLEL_ROWS: usize = 128;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy + Default> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::default(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

impl<T> DenseMatrix<T>
where
    T: ComplexFloat<Real = f64> + Default + Send + Sync,
{
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(T::default(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// LU factorisation with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct LuDecomposition<T> {
    n: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
}

impl<T> LuDecomposition<T>
where
    T: ComplexFloat<Real = f64> + Default + Send + Sync,
{
    pub fn new(matrix: DenseMatrix<T>) -> Result<Self> {
        if matrix.rows != matrix.cols {
            return Err(Error::InvalidArgument(format!(
                "LU needs a square matrix, got {}x{}",
                matrix.rows, matrix.cols
            )));
        }
        if matrix.data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("matrix entry".into()));
        }
        let n = matrix.rows;
        let threshold = SINGULAR_PIVOT_RATIO * matrix.max_abs();
        let mut lu = matrix.data;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot_abs) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot_abs > threshold) || pivot_abs == 0.0 {
                return Err(Error::SingularMatrix { pivot: pivot_abs, threshold });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let (head, tail) = lu.split_at_mut((k + 1) * n);
            let pivot_row = &head[k * n..];
            let pivot = pivot_row[k];
            let eliminate = |row: &mut [T]| {
                let factor = row[k] / pivot;
                row[k] = factor;
                if factor != T::zero() {
                    for (r, &u) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                        *r = *r - factor * u;
                    }
                }
            };
            if n - k > PARALLEL_ROWS {
                tail.par_chunks_mut(n).for_each(eliminate);
            } else {
                tail.chunks_mut(n).for_each(eliminate);
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        if b.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.n
            )));
        }
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        self.substitute(&mut x);
        Ok(x)
    }

    fn substitute<S>(&self, x: &mut [S])
    where
        S: Copy + std::ops::Sub<Output = S> + std::ops::Mul<T, Output = S> + std::ops::Div<T, Output = S>,
    {
        let n = self.n;
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let mut acc = x[i];
            for (j, &l) in row.iter().enumerate() {
                acc = acc - x[j] * l;
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let mut acc = x[i];
            for j in i + 1..n {
                acc = acc - x[j] * row[j];
            }
            x[i] = acc / row[i];
        }
    }
}

impl LuDecomposition<f64> {
    /// Solves a real system with a complex right-hand side.
    pub fn solve_complex(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        if b.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.n
            )));
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        self.substitute(&mut x);
        Ok(x)
    }
}

/// Solves `A x = b` by pivoted elimination.
pub fn solve_dense(a: &DenseMatrix<Complex64>, b: &[Complex64]) -> Result<Vec<Complex64>> {
    LuDecomposition::new(a.clone())?.solve(b)
}

/// `‖A x − b‖₂ / ‖b‖₂`, or the absolute residual when `b = 0`.
pub fn relative_residual<T>(a: &DenseMatrix<T>, x: &[T], b: &[T]) -> f64
where
    T: ComplexFloat<Real = f64> + Default + Send + Sync,
{
    let ax = a.mul_vec(x);
    let r: f64 = ax.iter().zip(b).map(|(&p, &q)| (p - q).abs().powi(2)).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|v| v.abs().powi(2)).sum::<f64>().sqrt();
    if nb > 0.0 {
        r / nb
    } else {
        r
    }
}
