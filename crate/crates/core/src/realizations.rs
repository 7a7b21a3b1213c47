//! Operator pairs `(X, Y)` realizing the Racah and Askey–Wilson algebras.
//!
//! Every realization has the shape `X = f1(cartan)` and
//! `Y = E + f2(cartan, C) + f3(cartan, C) F`, with the Casimir `C` replaced by
//! its scalar value on the representation. `X` is therefore diagonal and `Y`
//! tridiagonal with unit superdiagonal. The `±` in `f3` is `+` for the compact
//! algebras and `-` for the non-compact ones (see [`Algebra::sigma`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::reps::{build_rep, Algebra, RepMatrices, RepSpec};
use crate::scalars::Scalar;

/// Which realization, with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealizationKind {
    Racah { a: Scalar, b: Scalar, c: Scalar },
    Hahn { alpha: Scalar, beta: Scalar },
    DualHahn { mu: Scalar, nu: Scalar },
    Jacobi { alpha: Scalar },
    LieType { b: Scalar },
    Oscillator { b: Scalar },
    Aw { a: Scalar, b: Scalar, c: Scalar },
    AwC0 { a: Scalar, b: Scalar },
    AwBc0 { a: Scalar },
    DualQHahn { mu: Scalar, nu: Scalar },
    QLie { a: Scalar },
}

impl RealizationKind {
    pub const NAMES: [&'static str; 11] = [
        "racah",
        "hahn",
        "dual_hahn",
        "jacobi",
        "lie_type",
        "oscillator",
        "aw",
        "aw_c0",
        "aw_bc0",
        "dual_q_hahn",
        "q_lie",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RealizationKind::Racah { .. } => "racah",
            RealizationKind::Hahn { .. } => "hahn",
            RealizationKind::DualHahn { .. } => "dual_hahn",
            RealizationKind::Jacobi { .. } => "jacobi",
            RealizationKind::LieType { .. } => "lie_type",
            RealizationKind::Oscillator { .. } => "oscillator",
            RealizationKind::Aw { .. } => "aw",
            RealizationKind::AwC0 { .. } => "aw_c0",
            RealizationKind::AwBc0 { .. } => "aw_bc0",
            RealizationKind::DualQHahn { .. } => "dual_q_hahn",
            RealizationKind::QLie { .. } => "q_lie",
        }
    }

    /// Parameter names in the order [`RealizationKind::from_params`] expects.
    pub fn param_names(name: &str) -> Result<&'static [&'static str]> {
        Ok(match name {
            "racah" | "aw" => &["a", "b", "c"],
            "hahn" => &["alpha", "beta"],
            "dual_hahn" | "dual_q_hahn" => &["mu", "nu"],
            "jacobi" => &["alpha"],
            "lie_type" | "oscillator" => &["b"],
            "aw_c0" => &["a", "b"],
            "aw_bc0" | "q_lie" => &["a"],
            other => return Err(Error::UnknownCase(format!("realization {other:?}"))),
        })
    }

    /// Builds a kind from its name and positional parameters.
    pub fn from_params(name: &str, params: &[Scalar]) -> Result<Self> {
        let expected = Self::param_names(name)?;
        if params.len() != expected.len() {
            return Err(Error::DimensionMismatch { left: expected.len(), right: params.len() });
        }
        let p = |i: usize| params[i].clone();
        Ok(match name {
            "racah" => RealizationKind::Racah { a: p(0), b: p(1), c: p(2) },
            "hahn" => RealizationKind::Hahn { alpha: p(0), beta: p(1) },
            "dual_hahn" => RealizationKind::DualHahn { mu: p(0), nu: p(1) },
            "jacobi" => RealizationKind::Jacobi { alpha: p(0) },
            "lie_type" => RealizationKind::LieType { b: p(0) },
            "oscillator" => RealizationKind::Oscillator { b: p(0) },
            "aw" => RealizationKind::Aw { a: p(0), b: p(1), c: p(2) },
            "aw_c0" => RealizationKind::AwC0 { a: p(0), b: p(1) },
            "aw_bc0" => RealizationKind::AwBc0 { a: p(0) },
            "dual_q_hahn" => RealizationKind::DualQHahn { mu: p(0), nu: p(1) },
            "q_lie" => RealizationKind::QLie { a: p(0) },
            _ => unreachable!("checked by param_names"),
        })
    }

    pub fn params(&self) -> Vec<(&'static str, Scalar)> {
        let names = Self::param_names(self.name()).expect("known name");
        let values: Vec<&Scalar> = match self {
            RealizationKind::Racah { a, b, c } | RealizationKind::Aw { a, b, c } => vec![a, b, c],
            RealizationKind::Hahn { alpha, beta } => vec![alpha, beta],
            RealizationKind::DualHahn { mu, nu } | RealizationKind::DualQHahn { mu, nu } => vec![mu, nu],
            RealizationKind::Jacobi { alpha } => vec![alpha],
            RealizationKind::LieType { b } | RealizationKind::Oscillator { b } => vec![b],
            RealizationKind::AwC0 { a, b } => vec![a, b],
            RealizationKind::AwBc0 { a } | RealizationKind::QLie { a } => vec![a],
        };
        names.iter().copied().zip(values.into_iter().cloned()).collect()
    }

    /// The algebras this realization is defined over.
    pub fn algebras(&self) -> &'static [Algebra] {
        match self {
            RealizationKind::Racah { .. }
            | RealizationKind::Hahn { .. }
            | RealizationKind::DualHahn { .. }
            | RealizationKind::Jacobi { .. }
            | RealizationKind::LieType { .. } => &[Algebra::Su2, Algebra::Su11],
            RealizationKind::Oscillator { .. } => &[Algebra::Osc],
            _ => &[Algebra::UqSu2, Algebra::UqSu11],
        }
    }

    pub fn is_quantum(&self) -> bool {
        self.algebras()[0].is_quantum()
    }

    fn require(&self, algebra: Algebra) -> Result<()> {
        if self.algebras().contains(&algebra) {
            Ok(())
        } else {
            Err(Error::WrongAlgebra { realization: self.name(), algebra })
        }
    }
}

impl fmt::Display for RealizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.name(), ps.join(", "))
    }
}

/// The matrices of one realization plus what they were built from.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPair {
    pub x: Matrix,
    pub y: Matrix,
    pub kind: RealizationKind,
    pub rep: RepSpec,
    /// The constant `d` of the Racah realization.
    pub d_const: Option<Scalar>,
    /// Leading block on which the cubic relations are checked.
    pub exact_window: usize,
}

impl OperatorPair {
    pub fn dim(&self) -> usize {
        self.x.dim()
    }
}

/// `d = (a+1)(b+c+1)/2 - (b+1)(c+1)`.
pub fn delta_const(a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
    let one = Scalar::one();
    let half = Scalar::ratio(1, 2);
    &(&(&half * &(a + &one)) * &(&(b + c) + &one)) - &(&(b + &one) * &(c + &one))
}

/// Builds the pair for `kind` over `rep`.
pub fn build(kind: &RealizationKind, rep: &RepSpec) -> Result<OperatorPair> {
    match kind {
        RealizationKind::Racah { a, b, c } => build_racah(rep, a, b, c),
        RealizationKind::Hahn { alpha, beta } => build_hahn(rep, alpha, beta),
        RealizationKind::DualHahn { mu, nu } => build_dual_hahn(rep, mu, nu),
        RealizationKind::Jacobi { alpha } => build_jacobi(rep, alpha),
        RealizationKind::LieType { b } => build_lie_type(rep, b),
        RealizationKind::Oscillator { b } => build_oscillator(rep, b),
        RealizationKind::Aw { a, b, c } => build_aw(rep, a, b, c),
        RealizationKind::AwC0 { a, b } => build_aw_c0(rep, a, b),
        RealizationKind::AwBc0 { a } => build_aw_bc0(rep, a),
        RealizationKind::DualQHahn { mu, nu } => build_dual_q_hahn(rep, mu, nu),
        RealizationKind::QLie { a } => build_q_lie(rep, a),
    }
}

/// Evaluates `f1`, `f2`, `f3` per basis index and assembles
/// `X = diag(f1)`, `Y = E + diag(f2) + diag(f3) F`.
fn assemble(
    kind: RealizationKind,
    spec: &RepSpec,
    m: &RepMatrices,
    d_const: Option<Scalar>,
    mut f: impl FnMut(usize, &Scalar) -> Result<(Scalar, Scalar, Scalar)>,
) -> Result<OperatorPair> {
    let n = m.dim();
    let mut x = Vec::with_capacity(n);
    let mut f2 = Vec::with_capacity(n);
    let mut f3 = Vec::with_capacity(n);
    for (i, w) in m.weights.iter().enumerate() {
        let (a, b, c) = f(i, w)?;
        x.push(a);
        f2.push(b);
        f3.push(c);
    }
    let y = &(&m.e + &Matrix::diagonal(&f2)) + &(&Matrix::diagonal(&f3) * &m.f);
    Ok(OperatorPair { x: Matrix::diagonal(&x), y, kind, rep: spec.clone(), d_const, exact_window: spec.window(3) })
}

/// Returns `value` unless it is zero, in which case the named factor is
/// reported as vanishing at `index`.
fn nonzero(index: usize, factor: &str, value: Scalar) -> Result<Scalar> {
    if value.is_zero() {
        Err(Error::DenominatorVanishes { index, factor: factor.to_string() })
    } else {
        Ok(value)
    }
}

fn prepare(kind: &RealizationKind, rep: &RepSpec) -> Result<(RepSpec, RepMatrices)> {
    kind.require(rep.algebra)?;
    let spec = rep.clone().validated()?;
    let m = build_rep(&spec)?;
    Ok((spec, m))
}

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

/// The four shifted denominators `2h - a + k`, `k ∈ {-1, 0, 1, 2}`, shared by
/// the Racah, Hahn and Jacobi realizations.
struct RacahDenominators {
    minus1: Scalar,
    zero: Scalar,
    plus1: Scalar,
    plus2: Scalar,
}

impl RacahDenominators {
    fn at(index: usize, h: &Scalar, a: &Scalar, name: &str) -> Result<Self> {
        let base = &(h + h) - a;
        let mk = |k: i64, label: &str| nonzero(index, &format!("2h-{name}{label}"), &base + &int(k));
        Ok(RacahDenominators { minus1: mk(-1, "-1")?, zero: mk(0, "")?, plus1: mk(1, "+1")?, plus2: mk(2, "+2")? })
    }

    /// `(2h-a+1)(2h-a-1)`
    fn f2(&self) -> Scalar {
        &self.plus1 * &self.minus1
    }

    /// `(2h-a)(2h-a+1)^2(2h-a+2)`
    fn f3(&self) -> Scalar {
        &(&(&self.zero * &self.plus1) * &self.plus1) * &self.plus2
    }
}

/// `h^2 + (1-2a)h - C + (a-1)a`, the common first factor of the Racah-type `f3`.
fn racah_head(h: &Scalar, a: &Scalar, c: &Scalar) -> Scalar {
    let one = Scalar::one();
    &(&(&(h * h) + &(&(&one - &(a + a)) * h)) - c) + &(&(a - &one) * a)
}

pub fn build_racah(rep: &RepSpec, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<OperatorPair> {
    let kind = RealizationKind::Racah { a: a.clone(), b: b.clone(), c: c.clone() };
    let (spec, m) = prepare(&kind, rep)?;
    let cas = m.casimir()?.clone();
    let d = delta_const(a, b, c);
    let sigma = int(spec.algebra.sigma());
    let one = Scalar::one();
    assemble(kind, &spec, &m, Some(d.clone()), |i, h| {
        let den = RacahDenominators::at(i, h, a, "a")?;
        let ha = &(h * h) - &(a * h);
        let x = h * &(h - a);
        let f2 = -(&(&int(2) * &(&ha + &cas)) * &(&ha + &d)).checked_div(&den.f2())?;
        let num = &(&(&(&racah_head(h, a, &cas) * &(h - b)) * &(&(h - a) + &(b + &one))) * &(h - c))
            * &(&(h - a) + &(c + &one));
        let f3 = -(&sigma * &num.checked_div(&den.f3())?);
        Ok((x, f2, f3))
    })
}

pub fn build_hahn(rep: &RepSpec, alpha: &Scalar, beta: &Scalar) -> Result<OperatorPair> {
    let kind = RealizationKind::Hahn { alpha: alpha.clone(), beta: beta.clone() };
    let (spec, m) = prepare(&kind, rep)?;
    let cas = m.casimir()?.clone();
    let sigma = int(spec.algebra.sigma());
    let one = Scalar::one();
    let w = &(alpha - &(beta + beta)) - &one;
    assemble(kind, &spec, &m, None, |i, h| {
        let den = RacahDenominators::at(i, h, alpha, "alpha")?;
        let x = h * &(h - alpha);
        let ha = &(&(h * h) - &(alpha * h)) + &cas;
        let f2 = -(&w * &ha).checked_div(&den.f2())?;
        let num = &(&racah_head(h, alpha, &cas) * &(h - beta)) * &(&(h - alpha) + &(beta + &one));
        let f3 = &sigma * &num.checked_div(&den.f3())?;
        Ok((x, f2, f3))
    })
}

pub fn build_jacobi(rep: &RepSpec, alpha: &Scalar) -> Result<OperatorPair> {
    let kind = RealizationKind::Jacobi { alpha: alpha.clone() };
    let (spec, m) = prepare(&kind, rep)?;
    let cas = m.casimir()?.clone();
    let sigma = int(spec.algebra.sigma());
    let top = &(&Scalar::one() - &(alpha * alpha)) + &(&int(4) * &cas);
    assemble(kind, &spec, &m, None, |i, h| {
        let den = RacahDenominators::at(i, h, alpha, "alpha")?;
        let x = h * &(h - alpha);
        let f2 = -top.checked_div(&(&int(2) * &den.f2()))?;
        let f3 = -(&sigma * &racah_head(h, alpha, &cas).checked_div(&den.f3())?);
        Ok((x, f2, f3))
    })
}

pub fn build_dual_hahn(rep: &RepSpec, mu: &Scalar, nu: &Scalar) -> Result<OperatorPair> {
    let kind = RealizationKind::DualHahn { mu: mu.clone(), nu: nu.clone() };
    let (spec, m) = prepare(&kind, rep)?;
    let sigma = int(spec.algebra.sigma());
    let s = &(&Scalar::one() + mu) + nu;
    assemble(kind, &spec, &m, None, |_, h| {
        let f2 = &(&int(-2) * &(h * h)) + &(&s * h);
        let f3 = -(&sigma * &(&(h - mu) * &(h - nu)));
        Ok((h.clone(), f2, f3))
    })
}

pub fn build_lie_type(rep: &RepSpec, b: &Scalar) -> Result<OperatorPair> {
    let kind = RealizationKind::LieType { b: b.clone() };
    let (spec, m) = prepare(&kind, rep)?;
    assemble(kind, &spec, &m, None, |_, h| Ok((h.clone(), -(b * h), Scalar::one())))
}

pub fn build_oscillator(rep: &RepSpec, b: &Scalar) -> Result<OperatorPair> {
    let kind = RealizationKind::Oscillator { b: b.clone() };
    let (spec, m) = prepare(&kind, rep)?;
    assemble(kind, &spec, &m, None, |_, n| Ok((n.clone(), b * n, Scalar::one())))
}

/// Askey–Wilson realization `X = K^2 - a K^{-2}` with `Y` per its rational
/// functions of `k = K^2`. Requires `a ≠ 0` and `q^m k^2 + a ≠ 0` for
/// `m ∈ {-2, 0, 2, 4}` at every basis index.
pub fn build_aw(rep: &RepSpec, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<OperatorPair> {
    build_aw_kind(RealizationKind::Aw { a: a.clone(), b: b.clone(), c: c.clone() }, rep, a, b, c)
}

/// [`build_aw`] with `c = 0`.
pub fn build_aw_c0(rep: &RepSpec, a: &Scalar, b: &Scalar) -> Result<OperatorPair> {
    build_aw_kind(RealizationKind::AwC0 { a: a.clone(), b: b.clone() }, rep, a, b, &Scalar::zero())
}

/// [`build_aw`] with `b = c = 0`.
pub fn build_aw_bc0(rep: &RepSpec, a: &Scalar) -> Result<OperatorPair> {
    build_aw_kind(RealizationKind::AwBc0 { a: a.clone() }, rep, a, &Scalar::zero(), &Scalar::zero())
}

fn build_aw_kind(kind: RealizationKind, rep: &RepSpec, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<OperatorPair> {
    let (spec, m) = prepare(&kind, rep)?;
    if a.is_zero() {
        return Err(Error::ZeroParameterA);
    }
    let q = spec.q()?.clone();
    let cas = m.casimir()?.clone();
    let sigma = int(spec.algebra.sigma());
    let one = Scalar::one();
    let q2 = &q * &q;
    let q4 = &q2 * &q2;
    let qi = q.recip()?;
    let qm = &q - &qi;
    let qp = &q + &qi;
    let bc = b * c;
    let bpc = b + c;
    // ((1-a)(a-bc)/a + (b+c)C) and ((b+c)(a-1) + (a-bc)C)
    let k1 = &(&(&one - a) * &(a - &bc)).checked_div(a)? + &(&bpc * &cas);
    let k2 = &(&bpc * &(a - &one)) + &(&(a - &bc) * &cas);
    assemble(kind, &spec, &m, None, |i, k| {
        let kk = k * k;
        let d_m2 = nonzero(i, "q^-2 K^4 + a", &kk.checked_div(&q2)? + a)?;
        let d_0 = nonzero(i, "K^4 + a", &kk + a)?;
        let d_2 = nonzero(i, "q^2 K^4 + a", &(&q2 * &kk) + a)?;
        let d_4 = nonzero(i, "q^4 K^4 + a", &(&q4 * &kk) + a)?;
        let x = k - &a.checked_div(k)?;
        let f2_num = k * &(&(&k1 * &(&kk - a)) + &(&(&k2 * &qp) * k));
        let f2 = f2_num.checked_div(&(&(&qm * &d_m2) * &d_2))?;
        let qk = &q * k;
        let f3_num = &(&(&(&(&(&(&q * k) * &(&(&(a * a) + &(&(&(a * &q) * &cas) * k)) + &(&q2 * &kk)))
            * &(&(b * &qk) + a))
            * &(&qk - b))
            * &(&qk - c))
            * &(&(c * &qk) + a));
        let f3_den = &(&(&(a * &d_0) * &d_2) * &d_2) * &d_4;
        let f3 = &sigma * &f3_num.checked_div(&f3_den)?;
        Ok((x, f2, f3))
    })
}

/// `X = K^{-2}`, `Y = E + K^2((q+q^{-1})K^2 - C + μ + ν)/(q-q^{-1}) ∓ qK^2(qK^2+μ)(qK^2+ν) F`.
pub fn build_dual_q_hahn(rep: &RepSpec, mu: &Scalar, nu: &Scalar) -> Result<OperatorPair> {
    let kind = RealizationKind::DualQHahn { mu: mu.clone(), nu: nu.clone() };
    let (spec, m) = prepare(&kind, rep)?;
    let q = spec.q()?.clone();
    let cas = m.casimir()?.clone();
    let sigma = int(spec.algebra.sigma());
    let qi = q.recip()?;
    let qm = &q - &qi;
    let qp = &q + &qi;
    let shift = &(mu + nu) - &cas;
    assemble(kind, &spec, &m, None, |_, k| {
        let f2 = (k * &(&(&qp * k) + &shift)).checked_div(&qm)?;
        let qk = &q * k;
        let f3 = -(&sigma * &(&(&qk * &(&qk + mu)) * &(&qk + nu)));
        Ok((k.recip()?, f2, f3))
    })
}

/// `X = K^{-2}`, `Y = E - a K^2/(q-q^{-1}) + q K^2 F` (the same `+` for both
/// algebras).
pub fn build_q_lie(rep: &RepSpec, a: &Scalar) -> Result<OperatorPair> {
    let kind = RealizationKind::QLie { a: a.clone() };
    let (spec, m) = prepare(&kind, rep)?;
    let q = spec.q()?.clone();
    let qm = &q - &q.recip()?;
    let coef = -a.checked_div(&qm)?;
    assemble(kind, &spec, &m, None, |_, k| Ok((k.recip()?, &coef * k, &q * k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn assert_shape(p: &OperatorPair) {
        assert!(p.x.is_diagonal());
        let n = p.dim();
        for (i, j) in p.y.nonzero_entries() {
            assert!(i.abs_diff(j) <= 1, "Y not tridiagonal at ({i},{j})");
        }
        for i in 1..n {
            assert!(p.y.get(i - 1, i).is_one());
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_const(&Scalar::zero(), &Scalar::zero(), &Scalar::zero()), r(-1, 2));
        assert_eq!(delta_const(&Scalar::one(), &Scalar::zero(), &Scalar::zero()), Scalar::zero());
        let (a, b, c) = (r(7, 3), r(-2, 5), r(9, 4));
        assert_eq!(delta_const(&a, &b, &c), delta_const(&a, &c, &b));
    }

    #[test]
    fn racah_spin_half_x() {
        let p = build_racah(&RepSpec::su2(r(1, 2)).unwrap(), &int(7), &r(1, 3), &r(1, 5)).unwrap();
        assert_eq!(p.x.diag(), vec![&r(1, 4) - &r(7, 2), &r(1, 4) + &r(7, 2)]);
        assert_shape(&p);
    }

    #[test]
    fn racah_pole_is_named() {
        for j2 in 0..6 {
            let rep = RepSpec::su2(r(j2, 2)).unwrap();
            let err = build_racah(&rep, &int(j2 + 1), &r(1, 3), &r(1, 5)).unwrap_err();
            assert_eq!(err, Error::DenominatorVanishes { index: 0, factor: "2h-a+1".into() });
        }
    }

    #[test]
    fn racah_symmetric_in_b_and_c() {
        let rep = RepSpec::su11(r(3, 4), 9).unwrap();
        let p = build_racah(&rep, &r(13, 3), &r(1, 3), &r(-2, 7)).unwrap();
        let s = build_racah(&rep, &r(13, 3), &r(-2, 7), &r(1, 3)).unwrap();
        assert_eq!((p.x, p.y), (s.x, s.y));
    }

    #[test]
    fn wrong_algebra() {
        let err = build_oscillator(&RepSpec::su2(int(1)).unwrap(), &int(1)).unwrap_err();
        assert_eq!(err, Error::WrongAlgebra { realization: "oscillator", algebra: Algebra::Su2 });
        let err = build_aw(&RepSpec::su2(int(1)).unwrap(), &int(1), &int(1), &int(1)).unwrap_err();
        assert!(matches!(err, Error::WrongAlgebra { .. }));
    }

    #[test]
    fn lie_type_spin_half() {
        let p = build_lie_type(&RepSpec::su2(r(1, 2)).unwrap(), &Scalar::zero()).unwrap();
        let expect = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        assert_eq!(p.y, expect);
    }

    #[test]
    fn dual_hahn_x_is_h() {
        let rep = RepSpec::su2(int(2)).unwrap();
        let p = build_dual_hahn(&rep, &r(7, 3), &r(1, 5)).unwrap();
        assert_eq!(p.x, build_rep(&rep).unwrap().cartan);
        assert_shape(&p);
    }

    #[test]
    fn oscillator_small() {
        let p = build_oscillator(&RepSpec::osc(3).unwrap(), &Scalar::zero()).unwrap();
        assert!(p.y.diag().iter().all(Scalar::is_zero));
        assert_eq!((p.y.get(0, 1), p.y.get(1, 2)), (&int(1), &int(1)));
        assert_eq!((p.y.get(1, 0), p.y.get(2, 1)), (&int(1), &int(2)));
    }

    #[test]
    fn aw_denominators_enumerated() {
        // uq_su2, j = 1, q = 2: k_n = 4^{1-n}, so q^m k_n^2 ranges over 2^{m + 4(1-n)}
        let rep = RepSpec::uq_su2(int(1), int(2)).unwrap();
        assert!(build_aw(&rep, &int(-5), &r(1, 3), &r(2, 7)).is_ok());
        // q^4 k_0^2 = 256
        let err = build_aw(&rep, &int(-256), &r(1, 3), &r(2, 7)).unwrap_err();
        assert_eq!(err, Error::DenominatorVanishes { index: 0, factor: "q^4 K^4 + a".into() });
        let err = build_aw(&rep, &int(-16), &r(1, 3), &r(2, 7)).unwrap_err();
        assert_eq!(err, Error::DenominatorVanishes { index: 0, factor: "K^4 + a".into() });
        assert_eq!(build_aw(&rep, &int(0), &int(1), &int(1)).unwrap_err(), Error::ZeroParameterA);
    }

    #[test]
    fn aw_specializations_match() {
        let rep = RepSpec::uq_su2(r(3, 2), r(3, 2)).unwrap();
        let (a, b) = (r(-3, 1), r(1, 7));
        let full = build_aw(&rep, &a, &b, &Scalar::zero()).unwrap();
        let c0 = build_aw_c0(&rep, &a, &b).unwrap();
        assert_eq!((&full.x, &full.y), (&c0.x, &c0.y));
        let full = build_aw(&rep, &a, &Scalar::zero(), &Scalar::zero()).unwrap();
        let bc0 = build_aw_bc0(&rep, &a).unwrap();
        assert_eq!((&full.x, &full.y), (&bc0.x, &bc0.y));
        assert_shape(&full);
    }

    #[test]
    fn dual_q_hahn_and_q_lie_shapes() {
        let rep = RepSpec::uq_su2(int(2), r(5, 3)).unwrap();
        let m = build_rep(&rep).unwrap();
        let p = build_dual_q_hahn(&rep, &r(-3, 1), &r(2, 5)).unwrap();
        let inv: Vec<Scalar> = m.weights.iter().map(|k| k.recip().unwrap()).collect();
        assert_eq!(p.x.diag(), inv);
        assert_shape(&p);
        let a = r(2, 9);
        let ql = build_q_lie(&rep, &a).unwrap();
        let q = r(5, 3);
        let qm = &q - &q.recip().unwrap();
        let expect: Vec<Scalar> = m.weights.iter().map(|k| -(&a * k).checked_div(&qm).unwrap()).collect();
        assert_eq!(ql.y.diag(), expect);
        let zero = build_q_lie(&rep, &Scalar::zero()).unwrap();
        assert!(zero.y.diag().iter().all(Scalar::is_zero));
    }

    #[test]
    fn exchange_identities() {
        // e g(h) = g(h-1) e for g(h) = 1/(2h-a)
        let rep = RepSpec::su2(int(2)).unwrap();
        let m = build_rep(&rep).unwrap();
        let a = r(1, 3);
        let g = |shift: i64| {
            Matrix::diagonal(
                &m.weights.iter().map(|h| (&(&(h + h) - &a) + &int(2 * shift)).recip().unwrap()).collect::<Vec<_>>(),
            )
        };
        assert_eq!(&m.e * &g(0), &g(-1) * &m.e);
        assert_eq!(&m.f * &g(0), &g(1) * &m.f);
        // E g(K^2) = g(q^{-2} K^2) E for g(k) = k/(k + 3)
        let rep = RepSpec::uq_su2(int(2), r(3, 2)).unwrap();
        let m = build_rep(&rep).unwrap();
        let q2 = r(9, 4);
        let g = |s: &Scalar| {
            Matrix::diagonal(
                &m.weights
                    .iter()
                    .map(|k| {
                        let k = k * s;
                        k.checked_div(&(&k + &int(3))).unwrap()
                    })
                    .collect::<Vec<_>>(),
            )
        };
        assert_eq!(&m.e * &g(&Scalar::one()), &g(&q2.recip().unwrap()) * &m.e);
        assert_eq!(&m.f * &g(&Scalar::one()), &g(&q2) * &m.f);
    }

    #[test]
    fn truncation_consistency() {
        let small = build_racah(&RepSpec::su11(r(3, 4), 16).unwrap(), &int(7), &r(1, 3), &r(1, 5)).unwrap();
        let big = build_racah(&RepSpec::su11(r(3, 4), 24).unwrap(), &int(7), &r(1, 3), &r(1, 5)).unwrap();
        assert_eq!(big.x.leading_block(16), small.x);
        assert_eq!(big.y.leading_block(16), small.y);
    }

    #[test]
    fn kind_round_trip() {
        for name in RealizationKind::NAMES {
            let n = RealizationKind::param_names(name).unwrap().len();
            let params: Vec<Scalar> = (1..=n as i64).map(int).collect();
            let k = RealizationKind::from_params(name, &params).unwrap();
            assert_eq!(k.name(), name);
            assert_eq!(k.params().into_iter().map(|(_, v)| v).collect::<Vec<_>>(), params);
        }
        assert!(RealizationKind::from_params("racah", &[int(1)]).is_err());
    }
}
