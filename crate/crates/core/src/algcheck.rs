//! Commutators, structure-constant tables and residuals of the cubic
//! relations.
//!
//! Classical form (`β = 2` for every Racah-type row):
//!
//! ```text
//! X²Y − βXYX + YX² = γ(XY+YX) + γ*X² + ωX + ρY + η
//! Y²X − βYXY + XY² = γ*(XY+YX) + γY² + ωY + ρ*X + η*
//! ```
//!
//! q-form, with `[A,B]_q = qAB − q⁻¹BA`:
//!
//! ```text
//! s₁ [X,[X,Y]_q]_{q⁻¹} = x₁X + y₁Y + c₁
//! s₂ [Y,[Y,X]_q]_{q⁻¹} = x₂X + y₂Y + c₂
//! ```
//!
//! The q-form tables keep the left-hand normalizations `s₁, s₂` exactly as the
//! relations are usually displayed for each realization, so residuals check the
//! displayed identities literally. [`StructureConstants::normalized`] divides
//! them out to recover the generic `(ω, ρ, η, ρ*, η*)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Residual, ResidualReport};
use crate::realizations::{delta_const, OperatorPair, RealizationKind};
use crate::reps::{build_rep, RepSpec};
use crate::scalars::{Mode, Scalar};

pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

/// `[A,B]_q = qAB − q⁻¹BA`.
pub fn q_commutator(a: &Matrix, b: &Matrix, q: &Scalar) -> Result<Matrix> {
    let ab = a.checked_mul(b)?.scale(q);
    let ba = b.checked_mul(a)?.scale(&q.recip()?);
    ab.checked_sub(&ba)
}

/// Coefficients of `(X, Y, 1)` on the right-hand side of a q-form relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearRhs {
    pub x: Scalar,
    pub y: Scalar,
    pub one: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum StructureConstants {
    Classical {
        beta: Scalar,
        gamma: Scalar,
        gamma_star: Scalar,
        omega: Scalar,
        rho: Scalar,
        eta: Scalar,
        rho_star: Scalar,
        eta_star: Scalar,
    },
    QForm {
        q: Scalar,
        lhs_scale: [Scalar; 2],
        rhs: [LinearRhs; 2],
    },
}

/// Generic q-form constants `[X,[X,Y]_q]_{q⁻¹} = ωX + ρY + η`,
/// `[Y,[Y,X]_q]_{q⁻¹} = ωY + ρ*X + η*`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenericQForm {
    pub q: Scalar,
    pub beta: Scalar,
    pub omega: Scalar,
    pub rho: Scalar,
    pub eta: Scalar,
    pub rho_star: Scalar,
    pub eta_star: Scalar,
    /// Whether both relations imply the same `ω`; a table of the generic shape
    /// requires it.
    pub omega_consistent: bool,
}

impl StructureConstants {
    #[allow(clippy::too_many_arguments)]
    pub fn classical(
        beta: Scalar,
        gamma: Scalar,
        gamma_star: Scalar,
        omega: Scalar,
        rho: Scalar,
        eta: Scalar,
        rho_star: Scalar,
        eta_star: Scalar,
    ) -> Self {
        StructureConstants::Classical { beta, gamma, gamma_star, omega, rho, eta, rho_star, eta_star }
    }

    /// Names of the individual constants, in table order.
    pub fn slot_names(&self) -> &'static [&'static str] {
        match self {
            StructureConstants::Classical { .. } => {
                &["beta", "gamma", "gamma_star", "omega", "rho", "eta", "rho_star", "eta_star"]
            }
            StructureConstants::QForm { .. } => &["rel1.x", "rel1.y", "rel1.one", "rel2.x", "rel2.y", "rel2.one"],
        }
    }

    pub fn slots(&self) -> Vec<(&'static str, Scalar)> {
        let values: Vec<&Scalar> = match self {
            StructureConstants::Classical { beta, gamma, gamma_star, omega, rho, eta, rho_star, eta_star } => {
                vec![beta, gamma, gamma_star, omega, rho, eta, rho_star, eta_star]
            }
            StructureConstants::QForm { rhs, .. } => {
                vec![&rhs[0].x, &rhs[0].y, &rhs[0].one, &rhs[1].x, &rhs[1].y, &rhs[1].one]
            }
        };
        self.slot_names().iter().copied().zip(values.into_iter().cloned()).collect()
    }

    fn slot_mut(&mut self, name: &str) -> Option<&mut Scalar> {
        Some(match self {
            StructureConstants::Classical { beta, gamma, gamma_star, omega, rho, eta, rho_star, eta_star } => {
                match name {
                    "beta" => beta,
                    "gamma" => gamma,
                    "gamma_star" => gamma_star,
                    "omega" => omega,
                    "rho" => rho,
                    "eta" => eta,
                    "rho_star" => rho_star,
                    "eta_star" => eta_star,
                    _ => return None,
                }
            }
            StructureConstants::QForm { rhs, .. } => match name {
                "rel1.x" => &mut rhs[0].x,
                "rel1.y" => &mut rhs[0].y,
                "rel1.one" => &mut rhs[0].one,
                "rel2.x" => &mut rhs[1].x,
                "rel2.y" => &mut rhs[1].y,
                "rel2.one" => &mut rhs[1].one,
                _ => return None,
            },
        })
    }

    /// A copy with the named constant shifted by `delta`.
    pub fn perturbed(&self, slot: &str, delta: &Scalar) -> Result<Self> {
        let mut out = self.clone();
        let v = out.slot_mut(slot).ok_or_else(|| Error::UnknownCase(format!("structure constant {slot:?}")))?;
        *v = &*v + delta;
        Ok(out)
    }

    /// Divides out the left-hand normalizations of a q-form table.
    pub fn normalized(&self) -> Result<GenericQForm> {
        match self {
            StructureConstants::Classical { .. } => {
                Err(Error::UnknownCase("classical constants have no q-form normalization".into()))
            }
            StructureConstants::QForm { q, lhs_scale, rhs } => {
                let [s1, s2] = lhs_scale;
                let omega = rhs[0].x.checked_div(s1)?;
                let omega2 = rhs[1].y.checked_div(s2)?;
                let q2 = q * q;
                Ok(GenericQForm {
                    q: q.clone(),
                    beta: &q2 + &q2.recip()?,
                    omega_consistent: omega == omega2 || (!omega.is_exact() && omega.approx_eq(&omega2, 1e-12)),
                    omega,
                    rho: rhs[0].y.checked_div(s1)?,
                    eta: rhs[0].one.checked_div(s1)?,
                    rho_star: rhs[1].x.checked_div(s2)?,
                    eta_star: rhs[1].one.checked_div(s2)?,
                })
            }
        }
    }
}

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

/// The structure constants of `kind` on `rep`, with the Casimir replaced by its
/// value on the representation.
pub fn expected_constants(kind: &RealizationKind, rep: &RepSpec) -> Result<StructureConstants> {
    if !kind.algebras().contains(&rep.algebra) {
        return Err(Error::UnknownCase(format!("{} over {}", kind.name(), rep.algebra)));
    }
    let m = build_rep(rep)?;
    let sigma = s(rep.algebra.sigma());
    let one = Scalar::one();
    let two = s(2);
    let cas = || m.casimir().cloned();
    use RealizationKind as K;
    Ok(match kind {
        K::Racah { a, b, c } => {
            let cas = cas()?;
            let d = delta_const(a, b, c);
            let cb = c - b;
            StructureConstants::classical(
                two.clone(),
                two.clone(),
                two.clone(),
                &two * &(&d + &cas),
                &(a * a) - &one,
                &(&two * &d) * &cas,
                &(&(&s(4) * &cas) - &one) + &(&cb * &cb),
                &(&(&(b + c) + &one) * &(&(&(a + a) - b) - &(c + &one))) * &cas,
            )
        }
        K::Hahn { alpha, beta } => {
            let cas = cas()?;
            let w = &(alpha - &(beta + beta)) - &one;
            StructureConstants::classical(
                two.clone(),
                two.clone(),
                Scalar::zero(),
                w.clone(),
                &(alpha * alpha) - &one,
                &w * &cas,
                one.clone(),
                -cas,
            )
        }
        K::Jacobi { alpha } => {
            let cas = cas()?;
            let half = Scalar::ratio(1, 2);
            StructureConstants::classical(
                two.clone(),
                two.clone(),
                Scalar::zero(),
                Scalar::zero(),
                &(alpha * alpha) - &one,
                &(&half * &(&one - &(alpha * alpha))) + &(&two * &cas),
                Scalar::zero(),
                -half,
            )
        }
        K::DualHahn { mu, nu } => {
            let cas = cas()?;
            let dm = mu - nu;
            let sp = &(&one + mu) + nu;
            StructureConstants::classical(
                two.clone(),
                Scalar::zero(),
                two.clone(),
                -sp.clone(),
                one.clone(),
                Scalar::zero(),
                &(&(&dm * &dm) - &one) + &(&s(4) * &cas),
                &(&s(-2) * &sp) * &cas,
            )
        }
        K::LieType { b } => StructureConstants::classical(
            two,
            Scalar::zero(),
            Scalar::zero(),
            b.clone(),
            one,
            Scalar::zero(),
            &(b * b) + &(&s(4) * &sigma),
            Scalar::zero(),
        ),
        K::Oscillator { b } => StructureConstants::classical(
            two,
            Scalar::zero(),
            Scalar::zero(),
            -b.clone(),
            one,
            Scalar::zero(),
            b * b,
            s(-2),
        ),
        K::Aw { a, b, c } => aw_constants(rep, &cas()?, a, b, c)?,
        K::AwC0 { a, b } => aw_constants(rep, &cas()?, a, b, &Scalar::zero())?,
        K::AwBc0 { a } => aw_constants(rep, &cas()?, a, &Scalar::zero(), &Scalar::zero())?,
        K::DualQHahn { mu, nu } => {
            let cas = cas()?;
            let q = rep.q()?;
            let (qm, qp) = (q - &q.recip()?, q + &q.recip()?);
            let q2 = q * q;
            let w = &qm * &(&(&cas - mu) - nu);
            let mn = mu * nu;
            StructureConstants::QForm {
                q: q.clone(),
                lhs_scale: [one.clone(), one.clone()],
                rhs: [
                    LinearRhs { x: w.clone(), y: Scalar::zero(), one: &q2.recip()? - &q2 },
                    LinearRhs { x: -(&(&mn * &qp) * &qp), y: w, one: &qp * &(&(&(&mn * &cas) - mu) - nu) },
                ],
            }
        }
        K::QLie { a } => {
            let cas = cas()?;
            let q = rep.q()?;
            let (qm, qp) = (q - &q.recip()?, q + &q.recip()?);
            let w = &qm * a;
            StructureConstants::QForm {
                q: q.clone(),
                lhs_scale: [one.clone(), one],
                rhs: [
                    LinearRhs { x: w.clone(), y: Scalar::zero(), one: Scalar::zero() },
                    LinearRhs { x: &(&sigma * &qp) * &qp, y: w, one: -(&(&sigma * &qp) * &cas) },
                ],
            }
        }
    })
}

fn aw_constants(rep: &RepSpec, cas: &Scalar, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<StructureConstants> {
    if a.is_zero() {
        return Err(Error::ZeroParameterA);
    }
    let one = Scalar::one();
    let q = rep.q()?;
    let qi = q.recip()?;
    let (qm, qp) = (q - &qi, q + &qi);
    let q2m = &qm * &qp;
    let bc = b * c;
    let bpc = b + c;
    // K' = (a-1)(a-bc)/a - (b+c)C
    let kp = &(&(a - &one) * &(a - &bc)).checked_div(a)? - &(&bpc * cas);
    Ok(StructureConstants::QForm {
        q: q.clone(),
        lhs_scale: [q2m.recip()?, qp.recip()?],
        rhs: [
            LinearRhs { x: kp.checked_div(&qp)?, y: a * &q2m, one: &(&(&one - a) * &bpc) - &(&(a - &bc) * cas) },
            LinearRhs {
                x: &bc.checked_div(a)? * &qp,
                y: &qm.checked_div(&qp)? * &kp,
                one: &(&(a - &bc) * &bpc).checked_div(a)? + &(&(&(a - &one) * &bc).checked_div(a)? * cas),
            },
        ],
    })
}

/// Sum of `terms` and, outside exact mode, the entrywise sum of their
/// absolute values (the magnitude that cancels in each entry).
fn sum_terms(terms: Vec<Matrix>) -> Result<(Matrix, Option<Matrix>)> {
    let mut iter = terms.into_iter();
    let first = iter.next().expect("a relation has terms");
    let (mut total, mut size) = (first.clone(), first.abs());
    for t in iter {
        total = total.checked_add(&t)?;
        size = size.checked_add(&t.abs())?;
    }
    let scale = (total.mode() != Mode::Exact).then_some(size);
    Ok((total, scale))
}

/// LHS − RHS of both relations, restricted to the pair's `exact_window`.
///
/// Both forms share the left-hand shape `A²B − βABA + BA²`: in the q-form,
/// `[X,[X,Y]_q]_{q⁻¹} = X²Y − (q² + q⁻²)XYX + YX²`. Float residuals are
/// scaled entrywise by the magnitude of the terms that cancel there and pass
/// against [`RESIDUAL_REL_TOL`].
pub fn relation_residuals(pair: &OperatorPair, sc: &StructureConstants) -> Result<ResidualReport> {
    let (x, y) = (&pair.x, &pair.y);
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    let n = x.dim();
    let w = pair.exact_window;
    let id = Matrix::identity(n);
    let xx = x.checked_mul(x)?;
    let yy = y.checked_mul(y)?;
    let xy = x.checked_mul(y)?;
    let yx = y.checked_mul(x)?;
    let (xxy, xyx, yxx) = (xx.checked_mul(y)?, xy.checked_mul(x)?, y.checked_mul(&xx)?);
    let (yyx, yxy, xyy) = (yy.checked_mul(x)?, yx.checked_mul(y)?, x.checked_mul(&yy)?);
    let neg = |c: &Scalar| -c.clone();
    let (t1, t2) = match sc {
        StructureConstants::Classical { beta, gamma, gamma_star, omega, rho, eta, rho_star, eta_star } => (
            vec![
                xxy,
                xyx.scale(&neg(beta)),
                yxx,
                xy.scale(&neg(gamma)),
                yx.scale(&neg(gamma)),
                xx.scale(&neg(gamma_star)),
                x.scale(&neg(omega)),
                y.scale(&neg(rho)),
                id.scale(&neg(eta)),
            ],
            vec![
                yyx,
                yxy.scale(&neg(beta)),
                xyy,
                xy.scale(&neg(gamma_star)),
                yx.scale(&neg(gamma_star)),
                yy.scale(&neg(gamma)),
                y.scale(&neg(omega)),
                x.scale(&neg(rho_star)),
                id.scale(&neg(eta_star)),
            ],
        ),
        StructureConstants::QForm { q, lhs_scale: [s1, s2], rhs } => {
            let q2 = q * q;
            let beta = &q2 + &q2.recip()?;
            let lin = |r: &LinearRhs| [x.scale(&neg(&r.x)), y.scale(&neg(&r.y)), id.scale(&neg(&r.one))];
            let mut t1 = vec![xxy.scale(s1), xyx.scale(&neg(&(s1 * &beta))), yxx.scale(s1)];
            let mut t2 = vec![yyx.scale(s2), yxy.scale(&neg(&(s2 * &beta))), xyy.scale(s2)];
            t1.extend(lin(&rhs[0]));
            t2.extend(lin(&rhs[1]));
            (t1, t2)
        }
    };
    let residual = |name: &str, terms: Vec<Matrix>| -> Result<Residual> {
        Ok(match sum_terms(terms)? {
            (r, Some(scale)) => Residual::scaled(name, &r, &scale, w),
            (r, None) => Residual::of(name, &r, w),
        })
    };
    Ok(ResidualReport { residuals: vec![residual("relation1", t1)?, residual("relation2", t2)?] })
}

/// Relative tolerance for floating-point relation residuals, applied to the
/// entrywise scaled residual.
pub const RESIDUAL_REL_TOL: f64 = 1e-9;

/// Builds the pair for `kind` on `rep` and checks it against its own table.
pub fn verify_realization(kind: &RealizationKind, rep: &RepSpec) -> Result<ResidualReport> {
    let pair = crate::realizations::build(kind, rep)?;
    relation_residuals(&pair, &expected_constants(kind, rep)?)
}
