//! Small dense complex systems: LU with partial pivoting.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is singular (zero pivot in column {column})")]
    Singular { column: usize },
}

pub type Matrix<const N: usize> = [[Complex64; N]; N];
pub type Vector<const N: usize> = [Complex64; N];

/// Row-pivoted LU factors of an N×N matrix, stored in place.
#[derive(Debug, Clone)]
pub struct Lu<const N: usize> {
    factors: Matrix<N>,
    perm: [usize; N],
    norm_1: f64,
}

impl<const N: usize> Lu<N> {
    pub fn factor(matrix: &Matrix<N>) -> Result<Self, LinalgError> {
        let mut f = *matrix;
        let mut perm = [0usize; N];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        for k in 0..N {
            let pivot = (k..N)
                .max_by(|&i, &j| f[i][k].norm().total_cmp(&f[j][k].norm()))
                .unwrap_or(k);
            if f[pivot][k].norm() == 0.0 {
                return Err(LinalgError::Singular { column: k });
            }
            f.swap(k, pivot);
            perm.swap(k, pivot);
            let diag = f[k][k];
            for i in k + 1..N {
                let factor = f[i][k] / diag;
                f[i][k] = factor;
                let pivot_row = f[k];
                for (dst, upper) in f[i][k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *dst -= factor * upper;
                }
            }
        }
        Ok(Self {
            factors: f,
            perm,
            norm_1: norm_1(matrix),
        })
    }

    pub fn solve(&self, rhs: &Vector<N>) -> Vector<N> {
        let f = &self.factors;
        let mut x = [Complex64::new(0.0, 0.0); N];
        for i in 0..N {
            let mut s = rhs[self.perm[i]];
            for j in 0..i {
                s -= f[i][j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..N).rev() {
            let mut s = x[i];
            for j in i + 1..N {
                s -= f[i][j] * x[j];
            }
            x[i] = s / f[i][i];
        }
        x
    }

    /// κ₁ = ‖A‖₁ ‖A⁻¹‖₁, with the inverse formed column by column.
    pub fn condition_1(&self) -> f64 {
        let mut inv_norm: f64 = 0.0;
        for j in 0..N {
            let mut e = [Complex64::new(0.0, 0.0); N];
            e[j] = Complex64::new(1.0, 0.0);
            let col: f64 = self.solve(&e).iter().map(|v| v.norm()).sum();
            inv_norm = inv_norm.max(col);
        }
        self.norm_1 * inv_norm
    }
}

pub fn norm_1<const N: usize>(matrix: &Matrix<N>) -> f64 {
    (0..N)
        .map(|j| (0..N).map(|i| matrix[i][j].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn norm_inf<const N: usize>(matrix: &Matrix<N>) -> f64 {
    matrix
        .iter()
        .map(|row| row.iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn mat_vec<const N: usize>(matrix: &Matrix<N>, x: &Vector<N>) -> Vector<N> {
    let mut out = [Complex64::new(0.0, 0.0); N];
    for (o, row) in out.iter_mut().zip(matrix) {
        *o = row.iter().zip(x).map(|(a, b)| a * b).sum();
    }
    out
}
