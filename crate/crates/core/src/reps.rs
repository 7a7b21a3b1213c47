//! Matrix representations of su(2), su(1,1), the oscillator algebra and their
//! quantum deformations, in the basis `|0>, ..., |N-1>`.
//!
//! Conventions shared by every algebra:
//! * the lowering generator `e` (or `E`, or `a`) acts as `e|n> = |n-1>`, so its
//!   matrix is strictly upper with ones on the superdiagonal;
//! * the raising generator acts as `f|n> = u_n |n+1>`, strictly lower;
//! * the Cartan part is diagonal. For the quantum algebras the stored diagonal
//!   is `K^2` rather than `K`: every realization only uses even powers of `K`,
//!   and `K = q^{j-n}` is irrational at half-integer `j` for rational `q`.
//!
//! Infinite representations are truncated to `N` states. A product of two
//! truncated band matrices agrees with the infinite operator on indices
//! `<= N-2`, which is the window used for the defining relations here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Residual, ResidualReport};
use crate::scalars::special::check_base;
use crate::scalars::{q_bracket, q_num, Mode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algebra {
    Su2,
    Su11,
    Osc,
    UqSu2,
    UqSu11,
}

impl Algebra {
    pub const ALL: [Algebra; 5] = [Algebra::Su2, Algebra::Su11, Algebra::Osc, Algebra::UqSu2, Algebra::UqSu11];

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Su2 => "su2",
            Algebra::Su11 => "su11",
            Algebra::Osc => "osc",
            Algebra::UqSu2 => "uq_su2",
            Algebra::UqSu11 => "uq_su11",
        }
    }

    pub fn is_quantum(self) -> bool {
        matches!(self, Algebra::UqSu2 | Algebra::UqSu11)
    }

    /// Compact forms have finite-dimensional representations.
    pub fn is_compact(self) -> bool {
        matches!(self, Algebra::Su2 | Algebra::UqSu2)
    }

    /// The `±` of the defining relations: `+1` for the compact forms (and the
    /// oscillator, which has no sign choice), `-1` for the non-compact ones.
    pub fn sigma(self) -> i64 {
        match self {
            Algebra::Su11 | Algebra::UqSu11 => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algebra::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| Error::UnknownCase(format!("algebra {s:?}")))
    }
}

/// Which representation to build.
///
/// `label` is `j` for the compact forms and `ℓ` for the non-compact ones (unused
/// for the oscillator); `trunc` is the dimension, forced to `2j+1` for the
/// compact forms by [`RepSpec::validated`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepSpec {
    pub algebra: Algebra,
    pub label: Scalar,
    pub q: Option<Scalar>,
    pub trunc: usize,
}

impl RepSpec {
    pub fn su2(j: Scalar) -> Result<Self> {
        RepSpec { algebra: Algebra::Su2, label: j, q: None, trunc: 0 }.validated()
    }

    pub fn su11(l: Scalar, trunc: usize) -> Result<Self> {
        RepSpec { algebra: Algebra::Su11, label: l, q: None, trunc }.validated()
    }

    pub fn osc(trunc: usize) -> Result<Self> {
        RepSpec { algebra: Algebra::Osc, label: Scalar::zero(), q: None, trunc }.validated()
    }

    pub fn uq_su2(j: Scalar, q: Scalar) -> Result<Self> {
        RepSpec { algebra: Algebra::UqSu2, label: j, q: Some(q), trunc: 0 }.validated()
    }

    pub fn uq_su11(l: Scalar, q: Scalar, trunc: usize) -> Result<Self> {
        RepSpec { algebra: Algebra::UqSu11, label: l, q: Some(q), trunc }.validated()
    }

    /// Checks the invariants and fixes `trunc = 2j+1` for the compact forms.
    ///
    /// Exact mode can only reject `q ∈ {0, ±1}`: a rational `q` with `|q| = 1`
    /// is `±1`, so no other root of unity is rational. Float `q` close to a
    /// root of unity is accepted; the caller owns that conditioning risk.
    pub fn validated(mut self) -> Result<Self> {
        if self.label.mode() == Mode::Complex {
            return Err(Error::InvalidLabel(format!("label {} must be real", self.label)));
        }
        match self.algebra {
            Algebra::Su2 | Algebra::UqSu2 => {
                let two_j = (&self.label + &self.label).as_integer().filter(|&t| t >= 0).ok_or_else(|| {
                    Error::InvalidLabel(format!("2j must be a nonnegative integer, got j = {}", self.label))
                })?;
                self.trunc = two_j as usize + 1;
            }
            Algebra::Su11 | Algebra::UqSu11 => {
                if !self.label.gt(&Scalar::zero()) {
                    return Err(Error::InvalidLabel(format!("l must be positive, got {}", self.label)));
                }
            }
            Algebra::Osc => {}
        }
        if self.trunc == 0 {
            return Err(Error::InvalidLabel("truncation size must be positive".into()));
        }
        if self.algebra.is_quantum() {
            let q = self.q.as_ref().ok_or(Error::DegenerateBase)?;
            if q.mode() == Mode::Complex {
                return Err(Error::NotReal(q.to_string()));
            }
            check_base(q)?;
            if self.algebra == Algebra::UqSu11 && q.is_exact() && (&self.label + &self.label).as_integer().is_none() {
                return Err(Error::InvalidLabel(format!(
                    "exact U_q(su(1,1)) needs 2l to be an integer, got l = {}",
                    self.label
                )));
            }
        } else {
            self.q = None;
        }
        Ok(self)
    }

    pub fn is_finite(&self) -> bool {
        self.algebra.is_compact()
    }

    pub fn dim(&self) -> usize {
        self.trunc
    }

    pub fn q(&self) -> Result<&Scalar> {
        self.q.as_ref().ok_or(Error::DegenerateBase)
    }

    /// Size of the leading block kept after dropping the last `loss` indices
    /// of a truncated representation; finite representations keep everything.
    ///
    /// Degree-2 generator products lose one index. Relation checks on the
    /// degree-3 monomials `X^2 Y`, `XYX`, ... use a loss of 3, i.e. indices
    /// `<= N-4`, which is safe for every product that appears there.
    pub fn window(&self, loss: usize) -> usize {
        if self.is_finite() {
            self.trunc
        } else {
            self.trunc.saturating_sub(loss)
        }
    }
}

/// Generator matrices of one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrices {
    /// Lowering generator (`e`, `E` or `a`).
    pub e: Matrix,
    /// Raising generator (`f`, `F` or `a†`).
    pub f: Matrix,
    /// `h` (classical), `K^2` (quantum) or the number operator (oscillator).
    pub cartan: Matrix,
    /// Diagonal of `cartan`.
    pub weights: Vec<Scalar>,
    /// `u_n` with `f|n> = u_n |n+1>`.
    pub f_coeffs: Vec<Scalar>,
    /// Value of the Casimir element; the oscillator has none.
    pub casimir: Option<Scalar>,
    /// Leading block on which the degree-2 defining relations hold.
    pub exact_window: usize,
}

impl RepMatrices {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn casimir(&self) -> Result<&Scalar> {
        self.casimir.as_ref().ok_or_else(|| Error::UnknownCase("the oscillator algebra has no Casimir value".into()))
    }
}

pub fn build_rep(spec: &RepSpec) -> Result<RepMatrices> {
    let spec = spec.clone().validated()?;
    let n = spec.trunc;
    let lab = &spec.label;
    let two_l = lab + lab;
    let idx = |k: usize| Scalar::int(k as i64);

    let (weights, f_coeffs, casimir): (Vec<Scalar>, Vec<Scalar>, Option<Scalar>) = match spec.algebra {
        Algebra::Su2 => (
            (0..n).map(|k| lab - &idx(k)).collect(),
            (0..n).map(|k| &(&two_l - &idx(k)) * &idx(k + 1)).collect(),
            Some(lab * &(lab + &Scalar::one())),
        ),
        Algebra::Su11 => (
            (0..n).map(|k| -(lab + &idx(k))).collect(),
            (0..n).map(|k| &(&two_l + &idx(k)) * &idx(k + 1)).collect(),
            Some(lab * &(lab - &Scalar::one())),
        ),
        Algebra::Osc => ((0..n).map(idx).collect(), (0..n).map(|k| idx(k + 1)).collect(), None),
        Algebra::UqSu2 => {
            let q = spec.q()?;
            let two_j = two_l.as_integer().expect("validated");
            let w = (0..n).map(|k| q.powi(two_j - 2 * k as i64)).collect::<Result<_>>()?;
            let u =
                (0..n).map(|k| Ok(&q_num(two_j - k as i64, q)? * &q_num(k as i64 + 1, q)?)).collect::<Result<_>>()?;
            let c = &q.powi(two_j + 1)? + &q.powi(-two_j - 1)?;
            (w, u, Some(c))
        }
        Algebra::UqSu11 => {
            let q = spec.q()?;
            let w = (0..n).map(|k| q.pow(&-(&two_l + &idx(2 * k)))).collect::<Result<_>>()?;
            let u = (0..n)
                .map(|k| Ok(&q_bracket(&(&two_l + &idx(k)), q)? * &q_num(k as i64 + 1, q)?))
                .collect::<Result<_>>()?;
            let e = &two_l - &Scalar::one();
            let c = &q.pow(&e)? + &q.pow(&-e)?;
            (w, u, Some(c))
        }
    };

    let mut e = Matrix::zeros(n);
    let mut f = Matrix::zeros(n);
    for k in 1..n {
        e.set(k - 1, k, Scalar::one());
        f.set(k, k - 1, f_coeffs[k - 1].clone());
    }
    Ok(RepMatrices {
        e,
        f,
        cartan: Matrix::diagonal(&weights),
        weights,
        f_coeffs,
        casimir,
        exact_window: spec.window(1),
    })
}

/// Residuals of the defining relations and of the Casimir identity, each on
/// the representation's `exact_window`.
///
/// * classical: `[h,e] = e`, `[h,f] = -f`, `[e,f] = ±2h`, `±ef + h(h-1) = c`;
/// * oscillator: `[a,a†] = 1`, `[n,a] = -a`, `[n,a†] = a†`;
/// * quantum (with `K^2` stored): `K^2 E = q^2 E K^2`, `K^2 F = q^{-2} F K^2`,
///   `[E,F] = ±(K^2 - K^{-2})/(q - q^{-1})`,
///   `±(q-q^{-1})^2 EF + q^{-1} K^2 + q K^{-2} = C`.
pub fn check_algebra_relations(m: &RepMatrices, spec: &RepSpec) -> Result<ResidualReport> {
    let w = m.exact_window;
    let (e, f, h) = (&m.e, &m.f, &m.cartan);
    let sigma = Scalar::int(spec.algebra.sigma());
    let ef = e * f;
    let fe = f * e;
    let mut out = Vec::new();
    let mut push = |name: &str, mat: Matrix| out.push(Residual::of(name, &mat, w));

    match spec.algebra {
        Algebra::Su2 | Algebra::Su11 => {
            let c = m.casimir()?;
            push("[h,e]-e", &(&(h * e) - &(e * h)) - e);
            push("[h,f]+f", &(&(h * f) - &(f * h)) + f);
            push("[e,f]-(±2h)", &(&ef - &fe) - &h.scale(&(&sigma * &Scalar::int(2))));
            let hh1 = h * &h.shift(&Scalar::int(-1));
            push("casimir", (&ef.scale(&sigma) + &hh1).shift(&-c));
        }
        Algebra::Osc => {
            push("[a,a+]-1", (&ef - &fe).shift(&Scalar::int(-1)));
            push("[n,a]+a", &(&(h * e) - &(e * h)) + e);
            push("[n,a+]-a+", &(&(h * f) - &(f * h)) - f);
        }
        Algebra::UqSu2 | Algebra::UqSu11 => {
            let q = spec.q()?;
            let c = m.casimir()?;
            let q2 = q * q;
            let qi = q.recip()?;
            let kinv = Matrix::diagonal(&m.weights.iter().map(Scalar::recip).collect::<Result<Vec<_>>>()?);
            push("K2E-q2EK2", &(h * e) - &(e * h).scale(&q2));
            push("K2F-q-2FK2", &(h * f) - &(f * h).scale(&q2.recip()?));
            let bracket = (h - &kinv).scale(&(&sigma * &(q - &qi).recip()?));
            push("[E,F]-(±[2H]_q)", &(&ef - &fe) - &bracket);
            let qq = q - &qi;
            let cas = &(&ef.scale(&(&sigma * &(&qq * &qq))) + &h.scale(&qi)) + &kinv.scale(q);
            push("casimir", cas.shift(&-c));
        }
    }
    Ok(ResidualReport { residuals: out })
}
