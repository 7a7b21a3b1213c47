//! Dense square matrices over [`Scalar`] and windowed residual summaries.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{Mode, Scalar};

/// A dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diagonal(values: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Builds from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.n + j] = v;
    }

    pub fn diag(&self) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Widest arithmetic mode among the entries.
    pub fn mode(&self) -> Mode {
        self.data.iter().map(Scalar::mode).max().unwrap_or(Mode::Exact)
    }

    pub fn is_diagonal(&self) -> bool {
        self.nonzero_entries().all(|(i, j)| i == j)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// Adds `s` times the identity.
    /// Entrywise absolute values.
    pub fn abs(&self) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(Scalar::abs).collect() }
    }

    pub fn shift(&self, s: &Scalar) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = m.get(i, i) + s;
            m.set(i, i, v);
        }
        m
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> Matrix {
        let k = k.min(self.n);
        let mut m = Matrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, _)| (k / self.n, k % self.n))
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_dim(rhs)?;
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_dim(rhs)?;
        Ok(self.zip(rhs, |a, b| a + b))
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_dim(rhs)?;
        Ok(self.zip(rhs, |a, b| a - b))
    }

    fn zip(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect() }
    }

    fn same_dim(&self, rhs: &Matrix) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        Ok(())
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_f64().unwrap_or(f64::NAN)).collect()).collect()
    }
}

macro_rules! matrix_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Matrix> for &Matrix {
            type Output = Matrix;
            /// Panics on dimension mismatch; use the `checked_*` form otherwise.
            fn $method(self, rhs: &Matrix) -> Matrix {
                self.$checked(rhs).expect("matrix dimensions differ")
            }
        }
    };
}

matrix_op!(Add, add, checked_add);
matrix_op!(Sub, sub, checked_sub);
matrix_op!(Mul, mul, checked_mul);

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of checking that a matrix vanishes on its leading `window x window`
/// block.
///
/// In exact mode the status is binary: either every entry is exactly zero, or
/// the first offending entry (row-major) is recorded. In float mode the
/// largest entry is compared against a caller's tolerance, either as is or,
/// when a scale is known, relative to the magnitude of the terms that cancel
/// in each entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub name: String,
    pub window: usize,
    pub mode: Mode,
    pub max_abs: f64,
    /// `max |r_ij| / max(1, s_ij)` for a scale matrix `s`; equals `max_abs`
    /// when no scale was given.
    pub max_scaled: f64,
    pub first_nonzero: Option<(usize, usize, Scalar)>,
}

impl Residual {
    pub fn of(name: impl Into<String>, m: &Matrix, window: usize) -> Self {
        Self::build(name.into(), m, None, window)
    }

    /// Like [`Residual::of`], measuring each entry against `scale` (typically
    /// the sum of the absolute values of the terms that produced it).
    pub fn scaled(name: impl Into<String>, m: &Matrix, scale: &Matrix, window: usize) -> Self {
        Self::build(name.into(), m, Some(scale), window)
    }

    fn build(name: String, m: &Matrix, scale: Option<&Matrix>, window: usize) -> Self {
        let window = window.min(m.dim());
        let mut max_abs = 0.0_f64;
        let mut max_scaled = 0.0_f64;
        let mut first_nonzero = None;
        for i in 0..window {
            for j in 0..window {
                let v = m.get(i, j);
                if !v.is_zero() {
                    let a = v.abs_f64();
                    max_abs = max_abs.max(a);
                    max_scaled = max_scaled.max(a / scale.map_or(1.0, |s| s.get(i, j).abs_f64().max(1.0)));
                    if first_nonzero.is_none() {
                        first_nonzero = Some((i, j, v.clone()));
                    }
                }
            }
        }
        Residual { name, window, mode: m.mode(), max_abs, max_scaled, first_nonzero }
    }

    /// Exact residuals pass only when identically zero; float residuals when
    /// `max_scaled <= tol`.
    pub fn passes(&self, tol: f64) -> bool {
        match self.mode {
            Mode::Exact => self.first_nonzero.is_none(),
            _ => self.max_scaled <= tol,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.mode == Mode::Exact && self.first_nonzero.is_none()
    }
}

/// A named collection of [`Residual`]s.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub residuals: Vec<Residual>,
}

impl ResidualReport {
    pub fn all_pass(&self, tol: f64) -> bool {
        self.residuals.iter().all(|r| r.passes(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.residuals.iter().map(|r| r.max_abs).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn multiplication() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, m(&[&[2, 1], &[4, 3]]));
        assert_eq!(&a * &Matrix::identity(2), a);
    }

    #[test]
    fn dimension_mismatch() {
        let err = Matrix::zeros(2).checked_mul(&Matrix::zeros(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn residual_window() {
        let mut r = Matrix::zeros(4);
        r.set(3, 3, Scalar::int(5));
        assert!(Residual::of("r", &r, 3).is_exact_zero());
        let full = Residual::of("r", &r, 4);
        assert_eq!(full.first_nonzero, Some((3, 3, Scalar::int(5))));
        assert!(!full.passes(1e-9));
    }

    #[test]
    fn float_residual_uses_tolerance() {
        let mut r = Matrix::zeros(2);
        r.set(0, 1, Scalar::float(1e-12));
        let res = Residual::of("r", &r, 2);
        assert!(res.passes(1e-9));
        assert!(!res.passes(1e-13));
        let mut scale = Matrix::zeros(2);
        scale.set(0, 1, Scalar::float(1e4));
        let res = Residual::scaled("r", &r, &scale, 2);
        assert_eq!(res.max_abs, 1e-12);
        assert!(res.passes(1e-13));
    }
}
