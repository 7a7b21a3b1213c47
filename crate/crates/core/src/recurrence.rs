//! Three-term recurrences carried by a tridiagonal `Y`.
//!
//! Writing an eigenvector as `|p> = Σ p_n |n>`, row `n` of `Y p = λ p` reads
//!
//! ```text
//! p_{n+1} + diag[n] p_n + sub[n] p_{n-1} = λ p_n,      p_{-1} = 0,
//! ```
//!
//! because every realization has unit superdiagonal. With `p_0 = 1` this
//! determines `p_n` as a monic polynomial of degree `n` in `λ`. On a finite
//! representation of dimension `N` the last row additionally demands
//! `p_N = 0`, so the admissible `λ` are exactly the eigenvalues of `Y`.

use nalgebra::{Complex, DMatrix};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::realizations::{OperatorPair, RealizationKind};
use crate::reps::RepSpec;
use crate::scalars::{Complex64, Mode, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recurrence {
    /// `diag[n] = Y[n][n]`.
    pub diag: Vec<Scalar>,
    /// `sub[n] = Y[n][n-1]`; `sub[0] = 0`.
    pub sub: Vec<Scalar>,
    pub size: usize,
    pub kind: RealizationKind,
    pub rep: RepSpec,
    /// Rows of the recurrence that agree with the untruncated operator.
    pub exact_window: usize,
}

impl Recurrence {
    pub fn is_finite(&self) -> bool {
        self.rep.is_finite()
    }

    /// Reassembles the tridiagonal matrix with unit superdiagonal.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::diagonal(&self.diag);
        for n in 1..self.size {
            m.set(n - 1, n, Scalar::one());
            m.set(n, n - 1, self.sub[n].clone());
        }
        m
    }

    pub fn mode(&self) -> Mode {
        self.diag.iter().chain(&self.sub).map(Scalar::mode).max().unwrap_or(Mode::Exact)
    }
}

/// Reads the recurrence off `pair.y`.
pub fn extract(pair: &OperatorPair) -> Result<Recurrence> {
    let y = &pair.y;
    let n = y.dim();
    for (i, j) in y.nonzero_entries() {
        if i.abs_diff(j) > 1 {
            return Err(Error::NotTridiagonal { row: i, col: j });
        }
    }
    for i in 1..n {
        if !y.get(i - 1, i).is_one() {
            return Err(Error::NonUnitSuperdiagonal { row: i - 1 });
        }
    }
    let diag = y.diag();
    let sub = (0..n).map(|i| if i == 0 { Scalar::zero() } else { y.get(i, i - 1).clone() }).collect();
    Ok(Recurrence {
        diag,
        sub,
        size: n,
        kind: pair.kind.clone(),
        rep: pair.rep.clone(),
        exact_window: pair.rep.window(1),
    })
}

/// `p_0 = 1`, `p_{n+1} = (λ - diag[n]) p_n - sub[n] p_{n-1}`, returned for
/// `n = 0..=n_max`. `n_max` may equal `size`, giving the boundary value `p_N`.
pub fn run(rec: &Recurrence, lambda: &Scalar, n_max: usize) -> Result<Vec<Scalar>> {
    if n_max > rec.size {
        return Err(Error::IndexOutOfRange { index: n_max, limit: rec.size });
    }
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(Scalar::one());
    for n in 0..n_max {
        let mut next = &(lambda - &rec.diag[n]) * &p[n];
        if n > 0 {
            next = &next - &(&rec.sub[n] * &p[n - 1]);
        }
        p.push(next);
    }
    Ok(p)
}

/// Eigenvalues of `Y`, sorted by real then imaginary part.
///
/// `Y` is generally not symmetric, so the eigenvalues come from a (real or
/// complex) Schur decomposition without symmetrization, after a diagonal
/// power-of-two balancing that leaves the eigenvalues untouched.
pub fn spectrum_float(pair: &OperatorPair) -> Result<Vec<Complex64>> {
    spectrum_of(&pair.y)
}

pub fn spectrum_of(y: &Matrix) -> Result<Vec<Complex64>> {
    let n = y.dim();
    let balanced = balancing(&DMatrix::from_fn(n, n, |i, j| y.get(i, j).abs_f64()));
    // QR iteration without exceptional shifts can stall when the spectrum is
    // symmetric about zero, as for a zero diagonal. Shifting by a fraction of
    // the matrix scale breaks the symmetry; the shift is added back after.
    let scale =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| y.get(i, j).abs_f64()).fold(0.0, f64::max);
    let mut vals = schur_eigenvalues(y, &balanced, 0.0).or_else(|_| schur_eigenvalues(y, &balanced, 0.375 * scale))?;
    vals.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(vals)
}

/// Eigenvalues of `D^{-1} Y D` for `D = diag(d)`, computed for the shifted
/// matrix `D^{-1} Y D - shift` and shifted back.
fn schur_eigenvalues(y: &Matrix, d: &[f64], shift: f64) -> Result<Vec<Complex64>> {
    let n = y.dim();
    let eps = f64::EPSILON;
    let max_iter = 10_000;
    if y.mode() == Mode::Complex {
        let m = DMatrix::from_fn(n, n, |i, j| {
            let z = y.get(i, j).to_complex() * (d[j] / d[i]) - if i == j { shift } else { 0.0 };
            Complex::new(z.re, z.im)
        });
        let schur = nalgebra::linalg::Schur::try_new(m, eps, max_iter).ok_or(Error::ConvergenceFailure)?;
        let vals = schur.eigenvalues().ok_or(Error::ConvergenceFailure)?;
        Ok(vals.iter().map(|z| Complex64::new(z.re + shift, z.im)).collect())
    } else {
        let m = DMatrix::from_fn(n, n, |i, j| {
            y.get(i, j).to_f64().unwrap_or(f64::NAN) * (d[j] / d[i]) - if i == j { shift } else { 0.0 }
        });
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::ConvergenceFailure);
        }
        let schur = nalgebra::linalg::Schur::try_new(m, eps, max_iter).ok_or(Error::ConvergenceFailure)?;
        Ok(schur.complex_eigenvalues().iter().map(|z| Complex64::new(z.re + shift, z.im)).collect())
    }
}

/// Diagonal scaling `d` (powers of two) such that `D^{-1} A D` has row and
/// column norms of comparable size; `a` holds entry magnitudes.
fn balancing(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut a = a.clone();
    let mut d = vec![1.0; n];
    if a.iter().any(|v| !v.is_finite()) {
        return d;
    }
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let col: f64 = (0..n).filter(|&k| k != i).map(|k| a[(k, i)]).sum();
            let row: f64 = (0..n).filter(|&k| k != i).map(|k| a[(i, k)]).sum();
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let (mut c, mut f) = (col, 1.0);
            while c < row / 2.0 {
                f *= 2.0;
                c *= 4.0;
            }
            while c > row * 2.0 {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + row) / f < 0.95 * total {
                converged = false;
                d[i] *= f;
                for k in 0..n {
                    a[(k, i)] *= f;
                    a[(i, k)] /= f;
                }
            }
        }
    }
    d
}

/// Per-row residuals `p_{n+1} + diag[n] p_n + sub[n] p_{n-1} - λ p_n`.
///
/// For a finite representation every row `0..N` is checked with `p_N := 0`
/// (entries of `p` beyond `N-1` are ignored). For a truncated one, only rows
/// inside the recurrence window whose `p_{n+1}` is supplied are checked.
pub fn eigen_residuals(rec: &Recurrence, lambda: &Scalar, p: &[Scalar]) -> Result<Vec<Scalar>> {
    if p.is_empty() || p.len() > rec.size + 1 {
        return Err(Error::DimensionMismatch { left: rec.size, right: p.len() });
    }
    let rows = if rec.is_finite() {
        if p.len() < rec.size {
            return Err(Error::DimensionMismatch { left: rec.size, right: p.len() });
        }
        rec.size
    } else {
        (p.len() - 1).min(rec.exact_window)
    };
    let zero = Scalar::zero();
    (0..rows)
        .map(|n| {
            let next = if n + 1 < rec.size || !rec.is_finite() { &p[n + 1] } else { &zero };
            let mut v = next + &(&(&rec.diag[n] - lambda) * &p[n]);
            if n > 0 {
                v = &v + &(&rec.sub[n] * &p[n - 1]);
            }
            Ok(v)
        })
        .collect()
}

/// Largest absolute row residual (see [`eigen_residuals`]); exact when every
/// input is exact.
pub fn eigen_residual(rec: &Recurrence, lambda: &Scalar, p: &[Scalar]) -> Result<Scalar> {
    let rows = eigen_residuals(rec, lambda, p)?;
    Ok(max_abs(&rows))
}

/// Max-abs of a list of scalars: an exact rational when all entries are exact,
/// a float otherwise.
pub fn max_abs(values: &[Scalar]) -> Scalar {
    if values.iter().all(Scalar::is_exact) {
        values
            .iter()
            .map(Scalar::abs)
            .max_by(|a, b| a.partial_cmp_real(b).expect("exact values are ordered"))
            .unwrap_or_else(Scalar::zero)
    } else {
        Scalar::Float(values.iter().map(Scalar::abs_f64).fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::{build, build_lie_type, build_oscillator, build_racah};

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn spin_half_lie() -> Recurrence {
        extract(&build_lie_type(&RepSpec::su2(r(1, 2)).unwrap(), &Scalar::zero()).unwrap()).unwrap()
    }

    #[test]
    fn lie_type_spin_half() {
        let rec = spin_half_lie();
        assert_eq!(rec.diag, vec![Scalar::zero(), Scalar::zero()]);
        assert_eq!(rec.sub[1], Scalar::one());
        assert_eq!(run(&rec, &Scalar::one(), 1).unwrap(), vec![Scalar::one(), Scalar::one()]);
        // p_2 = λ^2 - 1 vanishes at the eigenvalues ±1
        assert_eq!(run(&rec, &Scalar::int(-1), 2).unwrap()[2], Scalar::zero());
        let spec = spectrum_float(&build_lie_type(&RepSpec::su2(r(1, 2)).unwrap(), &Scalar::zero()).unwrap()).unwrap();
        assert!((spec[0].re + 1.0).abs() < 1e-14 && (spec[1].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn oscillator_diagonal_is_b_n() {
        let b = r(1, 2);
        let rec = extract(&build_oscillator(&RepSpec::osc(5).unwrap(), &b).unwrap()).unwrap();
        assert_eq!(rec.diag, (0..5).map(|n| &b * &Scalar::int(n)).collect::<Vec<_>>());
    }

    #[test]
    fn first_step_vanishes_at_first_diagonal() {
        let pair = build_racah(&RepSpec::su2(Scalar::int(2)).unwrap(), &Scalar::int(7), &r(1, 3), &r(1, 5)).unwrap();
        let rec = extract(&pair).unwrap();
        assert_eq!(run(&rec, &rec.diag[0].clone(), 1).unwrap()[1], Scalar::zero());
    }

    #[test]
    fn reassembly_reproduces_y() {
        let pair = build_racah(&RepSpec::su11(r(3, 4), 9).unwrap(), &Scalar::int(7), &r(1, 3), &r(1, 5)).unwrap();
        assert_eq!(extract(&pair).unwrap().to_matrix(), pair.y);
    }

    #[test]
    fn extract_rejects_bad_shapes() {
        let mut pair = build_lie_type(&RepSpec::su2(Scalar::one()).unwrap(), &Scalar::one()).unwrap();
        pair.y.set(0, 2, Scalar::one());
        assert_eq!(extract(&pair).unwrap_err(), Error::NotTridiagonal { row: 0, col: 2 });
        pair.y.set(0, 2, Scalar::zero());
        pair.y.set(1, 2, Scalar::int(3));
        assert_eq!(extract(&pair).unwrap_err(), Error::NonUnitSuperdiagonal { row: 1 });
    }

    #[test]
    fn run_range_checked() {
        let rec = spin_half_lie();
        assert_eq!(run(&rec, &Scalar::one(), 3).unwrap_err(), Error::IndexOutOfRange { index: 3, limit: 2 });
    }

    #[test]
    fn diagonal_only_spectrum() {
        let mut pair = build_lie_type(&RepSpec::su2(Scalar::int(1)).unwrap(), &r(1, 3)).unwrap();
        for i in 1..3 {
            pair.y.set(i, i - 1, Scalar::zero());
        }
        let spec = spectrum_float(&pair).unwrap();
        let mut d: Vec<f64> = pair.y.diag().iter().map(|v| v.to_f64().unwrap()).collect();
        d.sort_by(f64::total_cmp);
        for (a, b) in spec.iter().zip(d) {
            assert!((a.re - b).abs() < 1e-14 && a.im == 0.0);
        }
    }

    #[test]
    fn eigen_residual_boundary() {
        let pair =
            build(&crate::RealizationKind::LieType { b: r(1, 3) }, &RepSpec::su2(Scalar::int(1)).unwrap()).unwrap();
        let rec = extract(&pair).unwrap();
        // at a non-eigenvalue only the last row fails
        let lam = r(2, 7);
        let p = run(&rec, &lam, 3).unwrap();
        let rows = eigen_residuals(&rec, &lam, &p).unwrap();
        assert!(rows[..2].iter().all(Scalar::is_zero));
        assert_eq!(rows[2], -p[3].clone());
        assert!(!eigen_residual(&rec, &r(5, 3), &[r(1, 2), r(7, 3), r(-1, 9)]).unwrap().is_zero());
    }

    #[test]
    fn boundary_zeros_match_float_spectrum() {
        let pair = build_racah(&RepSpec::su2(r(3, 2)).unwrap(), &Scalar::int(7), &r(1, 3), &r(1, 5)).unwrap();
        let rec = extract(&pair).unwrap();
        for z in spectrum_float(&pair).unwrap() {
            assert!(z.im.abs() < 1e-9);
            let p = run(&rec, &Scalar::float(z.re), 4).unwrap();
            let scale = p.iter().map(Scalar::abs_f64).fold(1.0, f64::max);
            assert!(p[4].abs_f64() / scale < 1e-8);
        }
    }

    #[test]
    fn zero_diagonal_spectrum_converges() {
        // Spectrum {-2, 0, 2}: symmetric about zero, where unshifted QR stalls.
        let pair = build_lie_type(&RepSpec::su2(Scalar::int(1)).unwrap(), &Scalar::zero()).unwrap();
        let spec = spectrum_float(&pair).unwrap();
        for (z, want) in spec.iter().zip([-2.0, 0.0, 2.0]) {
            assert!((z.re - want).abs() < 1e-13 && z.im.abs() < 1e-13, "{z}");
        }
    }

    #[test]
    fn badly_scaled_racah_spectrum() {
        // Entries range from 5e-2 to 8e3 with mixed-sign subdiagonal; the
        // eigenvalues are τ(x) - j(1 - b + c) with τ(x) = x(x - 2j + c - b).
        let (a, b, c) = (r(-1, 3), r(9, 7), r(-7, 3));
        let pair = build_racah(&RepSpec::su2(r(5, 2)).unwrap(), &a, &b, &c).unwrap();
        let spec = spectrum_float(&pair).unwrap();
        let mut want: Vec<f64> = (0..6)
            .map(|x| {
                let x = x as f64;
                x * (x - 5.0 + (-7.0 / 3.0) - 9.0 / 7.0) - 2.5 * (1.0 - 9.0 / 7.0 - 7.0 / 3.0)
            })
            .collect();
        want.sort_by(f64::total_cmp);
        for (z, w) in spec.iter().zip(want) {
            assert!((z.re - w).abs() < 1e-10 && z.im.abs() < 1e-10, "{z} vs {w}");
        }
    }
}
