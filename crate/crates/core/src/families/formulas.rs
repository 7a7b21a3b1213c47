//! Parameter maps, eigenvalues and normalized series for each family.
//!
//! Every `p_n` here is normalized so that `p_0 = 1` and `p_n` is monic in the
//! eigenvalue `λ(x)`, which is what the recurrence produces. The series bodies
//! are the standard ones; the prefactors convert their normalization.

use super::{Family, FamilyMap};
use crate::error::{Error, Result};
use crate::realizations::RealizationKind;
use crate::scalars::{hyp_series, pochhammer, q_pochhammer, q_pochhammer_multi, Mode, Scalar, SeriesParams};

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

fn i_unit() -> Scalar {
    Scalar::complex(0.0, 1.0)
}

fn expi(t: f64) -> Scalar {
    Scalar::complex(t.cos(), t.sin())
}

fn poch(a: Scalar, n: usize) -> Scalar {
    pochhammer(&a, n)
}

fn div(a: Scalar, b: Scalar) -> Result<Scalar> {
    a.checked_div(&b)
}

fn real(v: &Scalar, what: &str) -> Result<f64> {
    v.to_f64().ok_or_else(|| Error::NotReal(what.to_string()))
}

fn require(ok: bool, condition: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::SideConditionViolated(condition.to_string()))
    }
}

/// `2j` (or `2ℓ`) as an integer.
fn twice_label(map: &FamilyMap) -> Result<i64> {
    (&map.rep.label * &s(2)).as_integer().ok_or_else(|| Error::InvalidLabel(map.rep.label.to_string()))
}

fn grid_point(x: &Scalar) -> Result<i64> {
    match (x.mode() != Mode::Complex, x.as_integer()) {
        (true, Some(k)) if k >= 0 => Ok(k),
        _ => Err(Error::UnknownCase(format!("x = {x} is not a grid point"))),
    }
}

fn q_of(map: &FamilyMap) -> Result<Scalar> {
    map.rep.q().cloned()
}

/// `q - q^{-1}`.
fn q_gap(q: &Scalar) -> Result<Scalar> {
    Ok(q - &q.recip()?)
}

/// `q^{2ℓ}`, exactly when `2ℓ` is an integer.
fn q_two_label(map: &FamilyMap, q: &Scalar) -> Result<Scalar> {
    match twice_label(map) {
        Ok(l2) => q.powi(l2),
        Err(_) => q.pow(&(&map.rep.label * &s(2))),
    }
}

pub(super) fn check_side_conditions(map: &FamilyMap) -> Result<()> {
    use Family::*;
    let fam = map.family;
    if fam.param_names().contains(&"eps") {
        let e = map.param("eps");
        require(e.is_one() || (-e.clone()).is_one(), "eps in {1, -1}")?;
    }
    let zero = Scalar::zero();
    let one = Scalar::one();
    match fam {
        Krawtchouk => {
            let p = map.param("p");
            require(p.gt(&zero) && p.lt(&one), "0 < p < 1")
        }
        Meixner => {
            let c = map.param("c");
            require(c.gt(&zero) && c.lt(&one), "0 < c < 1")
        }
        MeixnerPollaczek | QMeixnerPollaczek => {
            let phi = real(map.param("phi"), "phi")?;
            require(phi > 0.0 && phi < std::f64::consts::PI, "0 < phi < pi")
        }
        Jacobi => require(map.param("alpha").gt(&s(-1)), "alpha > -1"),
        Charlier => require(map.param("a").gt(&zero), "a > 0"),
        QRacah => require(!map.param("b").is_zero(), "b != 0"),
        DualQHahnPoly => require(!map.param("mu").is_zero(), "mu != 0"),
        DualQKrawtchouk => require(!map.param("c").is_zero(), "c != 0"),
        AlSalamChihara => require(map.param("c").gt(&one), "c > 1"),
        QuantumQKrawtchouk => {
            let q = q_of(map)?;
            let bound = -q.powi(1 - twice_label(map)?)?;
            require(map.param("mu").lt(&bound), "mu < -q^(-2j+1)")
        }
        AffineQKrawtchouk => {
            let q = q_of(map)?;
            let bound = -q.powi(twice_label(map)? - 1)?;
            require(map.param("mu").lt(&bound), "mu < -q^(2j-1)")
        }
        _ => Ok(()),
    }
}

/// `√(p(1-p))` for Krawtchouk.
fn kraw_scale(map: &FamilyMap) -> Scalar {
    let p = map.param("p");
    (p * &(&Scalar::one() - p)).sqrt()
}

pub(super) fn realization_for(map: &FamilyMap) -> Result<RealizationKind> {
    use Family::*;
    let p = |n: &str| map.param(n).clone();
    Ok(match map.family {
        Racah | Wilson => RealizationKind::Racah { a: p("a"), b: p("b"), c: p("c") },
        Hahn | ContinuousHahn => RealizationKind::Hahn { alpha: p("alpha"), beta: p("beta") },
        DualHahn | ContinuousDualHahn => RealizationKind::DualHahn { mu: p("mu"), nu: p("nu") },
        Jacobi => RealizationKind::Jacobi { alpha: p("alpha") },
        Krawtchouk => {
            let b = p("eps") * (s(1) - p("p") * s(2));
            RealizationKind::LieType { b: div(b, kraw_scale(map))? }
        }
        Meixner => RealizationKind::LieType { b: p("eps") * (p("c").recip()? + p("c")) },
        MeixnerPollaczek => {
            let phi = real(map.param("phi"), "phi")?;
            RealizationKind::LieType { b: p("eps") * Scalar::float(-2.0 * phi.cos()) }
        }
        Laguerre => RealizationKind::LieType { b: p("eps") * s(2) },
        Charlier => RealizationKind::Oscillator { b: div(p("eps"), p("a").sqrt())? },
        Hermite => RealizationKind::Oscillator { b: Scalar::zero() },
        QRacah => RealizationKind::Aw { a: p("a"), b: p("b"), c: p("c") },
        QKrawtchouk => RealizationKind::AwBc0 { a: p("a") },
        QuantumQKrawtchouk | AffineQKrawtchouk => RealizationKind::DualQHahn { mu: p("mu"), nu: Scalar::zero() },
        DualQHahnPoly => RealizationKind::DualQHahn { mu: p("mu"), nu: p("nu") },
        DualQKrawtchouk => RealizationKind::QLie { a: p("c") - p("c").recip()? },
        AlSalamChihara => {
            let t = q_two_label(map, &q_of(map)?)? * p("c");
            RealizationKind::QLie { a: -(p("eps") * (t.recip()? + t)) }
        }
        QMeixnerPollaczek => {
            let phi = real(map.param("phi"), "phi")?;
            RealizationKind::QLie { a: p("eps") * Scalar::float(-2.0 * phi.cos()) }
        }
    })
}

/// The eigenvalue of `Y` attached to the spectral point `x`.
pub fn family_lambda(map: &FamilyMap, x: &Scalar) -> Result<Scalar> {
    use Family::*;
    let p = |n: &str| map.param(n).clone();
    let l = map.rep.label.clone();
    let x = x.clone();
    let quantum_grid = |map: &FamilyMap| -> Result<(Scalar, i64, i64, Scalar)> {
        let q = q_of(map)?;
        let gap = q_gap(&q)?;
        Ok((q, twice_label(map)?, grid_point(&x)?, gap))
    };
    Ok(match map.family {
        Racah => {
            let tau = x.clone() * (x - l.clone() * s(2) + p("c") - p("b"));
            tau - l * (s(1) - p("b") + p("c"))
        }
        Wilson => {
            let bc = p("b") - p("c");
            -(bc.clone() * bc * Scalar::ratio(1, 4)) - l.clone() * (l - s(1)) - x.clone() * x
        }
        Hahn => l - x,
        ContinuousHahn => -(i_unit() * x) + p("d") - l,
        DualHahn => x.clone() * (x - l.clone() * s(2) + p("mu") - p("nu")) + l * (p("nu") - p("mu") - s(1)),
        ContinuousDualHahn => {
            let mn = p("mu") - p("nu");
            -(x.clone() * x) + l.clone() * (s(1) - l) - mn.clone() * mn * Scalar::ratio(1, 4)
        }
        Jacobi => x * half(),
        Krawtchouk => div(p("eps") * (x - l), kraw_scale(map))?,
        Meixner => p("eps") * (p("c").recip()? - p("c")) * (x + l),
        MeixnerPollaczek => {
            let phi = real(map.param("phi"), "phi")?;
            p("eps") * Scalar::float(2.0 * phi.sin()) * x
        }
        Laguerre => p("eps") * x,
        Charlier => div(p("eps") * (x - p("a")), p("a").sqrt())?,
        Hermite => Scalar::float(std::f64::consts::SQRT_2) * x,
        QRacah => {
            let (q, j2, k, gap) = quantum_grid(map)?;
            let ratio = div(p("b") * p("c"), p("a"))?;
            let mu = q.powi(-2 * k)? - ratio * q.powi(2 * k - 2 * j2)?;
            div(q.powi(j2)? * mu, gap)?
        }
        QKrawtchouk => {
            let (q, j2, k, gap) = quantum_grid(map)?;
            div(q.powi(j2 - 2 * k)?, gap)?
        }
        QuantumQKrawtchouk => {
            let (q, j2, k, gap) = quantum_grid(map)?;
            div(p("mu") * q.powi(j2 - 2 * k)?, gap)?
        }
        AffineQKrawtchouk => {
            let (q, j2, k, gap) = quantum_grid(map)?;
            div(p("mu") * q.powi(2 * k - j2)?, gap)?
        }
        DualQHahnPoly => {
            let (q, j2, k, gap) = quantum_grid(map)?;
            div(p("mu") * q.powi(2 * k - j2)? + p("nu") * q.powi(j2 - 2 * k)?, gap)?
        }
        DualQKrawtchouk => {
            let (q, j2, k, gap) = quantum_grid(map)?;
            div(div(q.powi(2 * k - j2)?, p("c"))? - p("c") * q.powi(j2 - 2 * k)?, gap)?
        }
        AlSalamChihara | QMeixnerPollaczek => {
            let gap = q_gap(&q_of(map)?)?;
            div(p("eps") * s(2) * x, gap)?
        }
    })
}

/// The normalized component `p_n(x)` predicted by the family, with `p_0 = 1`.
///
/// For real-valued families with float inputs the series is summed over the
/// exact binary rationals those floats stand for and rounded once, so the
/// reference value does not inherit the cancellation inside the series.
pub fn family_pn(map: &FamilyMap, n: usize, x: &Scalar) -> Result<Scalar> {
    pn_with_oracle(map, oracle_map(map).as_ref(), n, x)
}

/// The exactly lifted map used for float inputs, if the family has real
/// parameters (continuous Hahn is complex only through `i`).
pub(super) fn oracle_map(map: &FamilyMap) -> Option<FamilyMap> {
    let real_valued = map.family.required_mode() == Mode::Exact || map.family == Family::ContinuousHahn;
    let has_float = map.params().iter().map(|(_, v)| v).chain(map.rep.q.as_ref()).any(|v| v.mode() == Mode::Float);
    (real_valued && has_float).then(|| map.lifted().ok()).flatten()
}

pub(super) fn pn_with_oracle(map: &FamilyMap, oracle: Option<&FamilyMap>, n: usize, x: &Scalar) -> Result<Scalar> {
    if let (Some(lifted), Ok(xe)) = (oracle, x.lift_exact()) {
        return pn_direct(lifted, n, &xe)?.to_mode(map.mode());
    }
    pn_direct(map, n, x)
}

fn pn_direct(map: &FamilyMap, n: usize, x: &Scalar) -> Result<Scalar> {
    use Family::*;
    let p = |name: &str| map.param(name).clone();
    let l = map.rep.label.clone();
    let two_l = l.clone() * s(2);
    let ni = n as i64;
    let nn = s(ni);
    let x = x.clone();
    let classical = |num: Vec<Scalar>, den: Vec<Scalar>, z: Scalar| SeriesParams::classical(num, den, z);
    let sum = |sp: SeriesParams| hyp_series(&sp, Some(n));

    match map.family {
        Racah => {
            let (a, b, c) = (p("a"), p("b"), p("c"));
            let d1 = c.clone() - l.clone() + s(1);
            let d2 = a.clone() - b.clone() - l;
            let pre = div(
                poch(d1.clone(), n) * poch(d2.clone(), n) * poch(-two_l.clone(), n),
                poch(nn.clone() - two_l.clone() + a.clone(), n),
            )?;
            let num = vec![-nn.clone(), nn + a - two_l.clone(), -x.clone(), x + c - b - two_l.clone()];
            Ok(pre * sum(classical(num, vec![d1, d2, -two_l], s(1)))?)
        }
        Wilson => {
            let (a, b, c) = (p("a"), p("b"), p("c"));
            let aa = a.clone() - (b.clone() + c.clone()) * half();
            let bb = l.clone() - (b.clone() - c.clone()) * half();
            let cc = l + (b.clone() - c.clone()) * half();
            let dd = s(1) + (b + c) * half();
            let dens = vec![aa.clone() + bb.clone(), aa.clone() + cc.clone(), aa.clone() + dd.clone()];
            let pre = div(dens.iter().map(|d| poch(d.clone(), n)).product(), poch(nn.clone() + a + two_l, n))?;
            let top = nn.clone() + aa.clone() + bb + cc + dd - s(1);
            Ok(pre * sum(classical(vec![-nn, top], dens, s(1)).with_pair(aa, x))?)
        }
        Hahn => {
            let (alpha, beta) = (p("alpha"), p("beta"));
            let d1 = beta - l + s(1);
            let sign = if n.is_multiple_of(2) { s(1) } else { s(-1) };
            let pre = div(
                sign * poch(d1.clone(), n) * poch(-two_l.clone(), n),
                poch(nn.clone() + alpha.clone() - two_l.clone(), n),
            )?;
            let num = vec![-nn.clone(), nn + alpha - two_l.clone(), -x];
            Ok(pre * sum(classical(num, vec![d1, -two_l], s(1)))?)
        }
        ContinuousHahn => {
            let (alpha, beta, d) = (p("alpha"), p("beta"), p("d"));
            let aa = beta.clone() + l.clone() - d.clone() + s(1);
            let bb = two_l.clone() - d.clone();
            let cc = d.clone() - beta - l + alpha.clone();
            let dd = d;
            let dens = vec![aa.clone() + cc.clone(), aa.clone() + dd.clone()];
            let pre = div(poch(dens[0].clone(), n) * poch(dens[1].clone(), n), poch(nn.clone() + two_l + alpha, n))?;
            let top = nn.clone() + aa.clone() + bb + cc + dd - s(1);
            if [&aa, &top, &dens[0], &dens[1], &pre, &x].iter().all(|v| v.is_exact()) {
                let (re, im) = gaussian_series(n, &aa, &x, |k| {
                    let k = s(k as i64);
                    div(
                        (k.clone() - nn.clone()) * (top.clone() + k.clone()),
                        (dens[0].clone() + k.clone()) * (dens[1].clone() + k.clone()) * (k + s(1)),
                    )
                })?;
                let (re, im) = (pre.clone() * re, pre * im);
                return Ok(Scalar::complex(real(&re, "real part")?, real(&im, "imaginary part")?));
            }
            let num = vec![-nn, top, aa + i_unit() * x];
            Ok(pre * sum(classical(num, dens, s(1)))?)
        }
        DualHahn => {
            let (mu, nu) = (p("mu"), p("nu"));
            let d1 = mu.clone() - l + s(1);
            let pre = poch(d1.clone(), n) * poch(-two_l.clone(), n);
            let num = vec![-nn, -x.clone(), x + mu - nu - two_l.clone()];
            Ok(pre * sum(classical(num, vec![d1, -two_l], s(1)))?)
        }
        ContinuousDualHahn => {
            let (mu, nu) = (p("mu"), p("nu"));
            let aa = l.clone() + (mu.clone() - nu.clone()) * half();
            let bb = l - (mu.clone() - nu.clone()) * half();
            let cc = s(1) + (mu + nu) * half();
            let dens = vec![aa.clone() + bb, aa.clone() + cc];
            let pre = poch(dens[0].clone(), n) * poch(dens[1].clone(), n);
            Ok(pre * sum(classical(vec![-nn], dens, s(1)).with_pair(aa, x))?)
        }
        Jacobi => {
            let alpha = p("alpha");
            let beta = two_l - s(1);
            let top = alpha + beta.clone() + s(1);
            let pre = div(poch(beta.clone() + s(1), n), poch(nn.clone() + top.clone(), n))?;
            let z = (s(1) - x) * half();
            Ok(pre * sum(classical(vec![-nn.clone(), nn + top], vec![beta + s(1)], z))?)
        }
        Krawtchouk => {
            let (pp, eps) = (p("p"), p("eps"));
            let ratio = div(eps, kraw_scale(map))?;
            let pre = (ratio * pp.clone()).powi(ni)? * poch(-two_l.clone(), n);
            Ok(pre * sum(classical(vec![-nn, -x], vec![-two_l], pp.recip()?))?)
        }
        Meixner => {
            let (c, eps) = (p("c"), p("eps"));
            let pre = poch(two_l.clone(), n) * (-(eps * c.clone())).powi(ni)?;
            let z = s(1) - (c.clone() * c).recip()?;
            Ok(pre * sum(classical(vec![-nn, -x], vec![two_l], z))?)
        }
        MeixnerPollaczek => {
            let (phi, eps) = (real(map.param("phi"), "phi")?, p("eps"));
            if l.is_exact() && x.is_exact() {
                return Ok(eps.powi(ni)? * Scalar::float(meixner_pollaczek_sum(n, &l, &x, phi)?));
            }
            let pre = eps.powi(ni)? * poch(two_l.clone(), n) * expi(n as f64 * phi);
            let z = s(1) - expi(-2.0 * phi);
            Ok(pre * sum(classical(vec![-nn, l + i_unit() * x], vec![two_l], z))?)
        }
        Laguerre => {
            let eps = p("eps");
            let pre = (-eps).powi(ni)? * poch(two_l.clone(), n);
            Ok(pre * sum(classical(vec![-nn], vec![two_l], x))?)
        }
        Charlier => {
            let (a, eps) = (p("a"), p("eps"));
            let pre = (-(eps * a.sqrt())).powi(ni)?;
            Ok(pre * sum(classical(vec![-nn, -x], vec![], -a.recip()?))?)
        }
        Hermite => {
            // 2^{-n/2} H_n(x) with H_n(x) = (2x)^n 2F0(-n/2, (1-n)/2; ; -1/x^2)
            let xf = real(&x, "x")?;
            if xf == 0.0 {
                let h0 = match n % 4 {
                    0 => 1.0,
                    2 => -1.0,
                    _ => 0.0,
                };
                let ratio: f64 = (1..=n / 2).map(|k| (n / 2 + k) as f64).product();
                return Ok(Scalar::float(h0 * ratio * 2f64.powf(-(n as f64) / 2.0)));
            }
            // summed exactly in x, only the final 2^{-n/2} is a float
            let xe = x.lift_exact()?;
            let pre = (xe.clone() * s(2)).powi(ni)?;
            let num = vec![Scalar::ratio(-ni, 2), Scalar::ratio(1 - ni, 2)];
            let z = -(xe.clone() * xe).recip()?;
            Ok(pre * sum(classical(num, vec![], z))? * Scalar::float(2f64.powf(-(n as f64) / 2.0)))
        }
        _ => q_family_pn(map, n, &x),
    }
}

fn q_family_pn(map: &FamilyMap, n: usize, x: &Scalar) -> Result<Scalar> {
    use Family::*;
    let p = |name: &str| map.param(name).clone();
    let q = q_of(map)?;
    let big_q = q.clone() * q.clone();
    let small_p = big_q.recip()?;
    let gap_n = q_gap(&q)?.powi(n as i64)?;
    let ni = n as i64;
    let basic = |num: Vec<Scalar>, den: Vec<Scalar>, base: &Scalar, z: Scalar| {
        hyp_series(&SeriesParams::basic(num, den, base.clone(), z), Some(n))
    };
    let sign = if n.is_multiple_of(2) { s(1) } else { s(-1) };

    match map.family {
        AlSalamChihara => {
            let (c, eps) = (p("c"), p("eps"));
            let aa = c.clone();
            let bb = (c * q_two_label(map, &q)?.powi(2)?).recip()?;
            let ab = aa.clone() * bb;
            let pre = div(eps.powi(ni)? * q_pochhammer(&ab, n, &small_p), gap_n * aa.powi(ni)?)?;
            let sp = SeriesParams::basic(vec![small_p.powi(-ni)?], vec![ab, s(0)], small_p.clone(), small_p.clone())
                .with_pair(aa, x.clone());
            Ok(pre * hyp_series(&sp, Some(n))?)
        }
        QMeixnerPollaczek => {
            let (phi, eps) = (real(map.param("phi"), "phi")?, p("eps"));
            let aa = q_two_label(map, &q)?.recip()?;
            let a2 = aa.clone() * aa.clone();
            let pre = div(eps.powi(ni)? * q_pochhammer(&a2, n, &small_p), gap_n * aa.powi(ni)?)?;
            if aa.is_exact() && x.is_exact() && small_p.is_exact() {
                let coeffs = qmp_series_in_omega(n, &aa, x, &small_p)?;
                let value: Scalar =
                    coeffs.iter().enumerate().map(|(m, c)| c * &expi((m as f64 - n as f64) * phi)).sum();
                return Ok(pre * value);
            }
            let theta = real(x, "x")?.acos() - phi;
            let num = vec![small_p.powi(-ni)?, aa.clone() * expi(theta + 2.0 * phi), aa * expi(-theta)];
            Ok(pre * expi(-(n as f64) * phi) * basic(num, vec![a2, s(0)], &small_p, small_p.clone())?)
        }
        _ => {
            let j2 = twice_label(map)?;
            let k = grid_point(x)?;
            match map.family {
                QRacah => {
                    let (a, b, c) = (p("a"), p("b"), p("c"));
                    let shift = q.powi(-j2 - 1)?;
                    let alpha = b.clone() * shift.clone();
                    let beta = -(div(a.clone(), b.clone())? * shift);
                    let gamma = q.powi(-2 - 2 * j2)?;
                    let delta = -div(b * c, a)?;
                    let ab_top = alpha.clone() * beta.clone() * big_q.powi(ni + 1)?;
                    let dens = vec![
                        alpha * big_q.clone(),
                        beta * delta.clone() * big_q.clone(),
                        gamma.clone() * big_q.clone(),
                    ];
                    let pre = div(
                        q.powi(j2 * ni)? * q_pochhammer_multi(&dens, n, &big_q),
                        gap_n * q_pochhammer(&ab_top, n, &big_q),
                    )?;
                    let num = vec![big_q.powi(-ni)?, ab_top, big_q.powi(-k)?, gamma * delta * big_q.powi(k + 1)?];
                    Ok(pre * basic(num, dens, &big_q, big_q.clone())?)
                }
                QKrawtchouk => {
                    let a = p("a");
                    let lead = q.powi(-2 * j2)?;
                    let pre = div(
                        q.powi(j2 * ni)? * q_pochhammer(&lead, n, &big_q),
                        gap_n * q_pochhammer(&(-(a.clone() * q.powi(2 * ni - 2 * j2)?)), n, &big_q),
                    )?;
                    let num = vec![big_q.powi(-ni)?, big_q.powi(-k)?, -(a * lead) * big_q.powi(ni)?];
                    Ok(pre * basic(num, vec![big_q.powi(-j2)?, s(0)], &big_q, big_q.clone())?)
                }
                QuantumQKrawtchouk => {
                    let mu = p("mu");
                    let pp = -(mu * q.powi(-j2 - 1)?);
                    let pre = div(
                        sign * q.powi(2 * j2 * ni + ni - 2 * ni * ni)? * q_pochhammer(&q.powi(-2 * j2)?, n, &big_q),
                        gap_n,
                    )?;
                    let num = vec![big_q.powi(-ni)?, big_q.powi(-k)?];
                    Ok(pre * basic(num, vec![big_q.powi(-j2)?], &big_q, pp * big_q.powi(ni + 1)?)?)
                }
                AffineQKrawtchouk => {
                    let mu = p("mu");
                    let pp = -div(q.powi(j2 + 1)?, mu.clone())?;
                    let first = -div(q.powi(j2 - 1)?, mu.clone())?;
                    let pre = div(
                        mu.powi(ni)? * q.powi(-j2 * ni)? * q_pochhammer_multi(&[first, q.powi(2 * j2)?], n, &small_p),
                        gap_n,
                    )?;
                    let num = vec![small_p.powi(-ni)?, s(0), small_p.powi(-k)?];
                    Ok(pre * basic(num, vec![pp * small_p.clone(), small_p.powi(-j2)?], &small_p, small_p.clone())?)
                }
                DualQHahnPoly => {
                    let (mu, nu) = (p("mu"), p("nu"));
                    let gamma = -div(q.powi(j2 + 1)?, mu.clone())?;
                    let delta = -(nu * q.powi(j2 + 1)?);
                    let first = -div(q.powi(j2 - 1)?, mu.clone())?;
                    let pre = div(
                        mu.powi(ni)? * q_pochhammer_multi(&[first, q.powi(2 * j2)?], n, &small_p),
                        q.powi(j2 * ni)? * gap_n,
                    )?;
                    let num = vec![small_p.powi(-ni)?, small_p.powi(-k)?, gamma.clone() * delta * small_p.powi(k + 1)?];
                    let den = vec![gamma * small_p.clone(), small_p.powi(-j2)?];
                    Ok(pre * basic(num, den, &small_p, small_p.clone())?)
                }
                DualQKrawtchouk => {
                    let c = p("c");
                    let pre = div(q_pochhammer(&q.powi(2 * j2)?, n, &small_p), gap_n * q.powi(j2 * ni)? * c.powi(ni)?)?;
                    let num = vec![small_p.powi(-ni)?, small_p.powi(-k)?, -(c.clone() * c) * small_p.powi(k - j2)?];
                    Ok(pre * basic(num, vec![small_p.powi(-j2)?, s(0)], &small_p, small_p.clone())?)
                }
                other => unreachable!("{other} is not a q-family"),
            }
        }
    }
}

type Gaussian = (Scalar, Scalar);

fn gaussian_mul(a: &Gaussian, b: &Gaussian) -> Gaussian {
    (&(&a.0 * &b.0) - &(&a.1 * &b.1), &(&a.0 * &b.1) + &(&a.1 * &b.0))
}

/// `(re + i im)_k` for `k = 0..=n`.
fn gaussian_pochhammers(n: usize, re: &Scalar, im: &Scalar) -> Vec<Gaussian> {
    let mut out = vec![(Scalar::one(), Scalar::zero())];
    for t in 0..n {
        let next = gaussian_mul(&out[t], &(re + &s(t as i64), im.clone()));
        out.push(next);
    }
    out
}

/// `sum_k C(n, k) (l - ix)_k (l + ix)_{n-k} e^{i(2k-n)φ}` for rational `l`, `x`.
///
/// This is the expansion of the Meixner–Pollaczek generating function; terms
/// `k` and `n-k` are complex conjugates, so the sum is real. The coefficients
/// are exact and only the unit-modulus phases are rounded, which avoids the
/// cancellation of the `2F1` at argument `1 - e^{-2iφ}`.
fn meixner_pollaczek_sum(n: usize, l: &Scalar, x: &Scalar, phi: f64) -> Result<f64> {
    let up = gaussian_pochhammers(n, l, &-x.clone());
    let down = gaussian_pochhammers(n, l, x);
    let mut binom = Scalar::one();
    let mut total = 0.0;
    for k in 0..=n {
        let (re, im) = gaussian_mul(&up[k], &down[n - k]);
        let angle = (2 * k as i64 - n as i64) as f64 * phi;
        total +=
            real(&(&re * &binom), "coefficient")? * angle.cos() - real(&(&im * &binom), "coefficient")? * angle.sin();
        binom = div(binom * s((n - k) as i64), s(k as i64 + 1))?;
    }
    Ok(total)
}

/// Exact real and imaginary parts of `sum_k t_k` for a terminating series with
/// `t_0 = 1` and `t_{k+1} = r(k) ((shift + k) + i y) t_k`, all inputs rational.
///
/// Only one numerator parameter is complex, so the sum lives in `Q(i)` and is
/// carried as a pair of rationals, avoiding the cancellation a floating
/// complex summation suffers.
fn gaussian_series(
    n: usize,
    shift: &Scalar,
    y: &Scalar,
    ratio: impl Fn(usize) -> Result<Scalar>,
) -> Result<(Scalar, Scalar)> {
    let (mut re, mut im) = (Scalar::one(), Scalar::zero());
    let (mut sum_re, mut sum_im) = (Scalar::zero(), Scalar::zero());
    for k in 0..=n {
        sum_re = &sum_re + &re;
        sum_im = &sum_im + &im;
        if k == n {
            break;
        }
        let r = ratio(k).map_err(|e| match e {
            Error::DivisionByZero => Error::PoleInDenominator { term: k + 1 },
            other => other,
        })?;
        let (next_re, next_im) = gaussian_mul(&(re, im), &(shift + &s(k as i64), y.clone()));
        re = &r * &next_re;
        im = &r * &next_im;
    }
    Ok((sum_re, sum_im))
}

/// The `3φ2(P^{-n}, A e^{i(θ+2φ)}, A e^{-iθ}; A^2, 0; P, P)` of q-Meixner–Pollaczek
/// as coefficients of a polynomial in `ω = e^{iφ}`.
///
/// With `x = cos(θ+φ)` the numerator pair contributes
/// `1 - 2 A x ω P^k + A^2 ω^2 P^{2k}` per step, so for rational `A`, `x`, `P`
/// every coefficient is exact and the heavy cancellation between terms of the
/// series happens in exact arithmetic.
fn qmp_series_in_omega(n: usize, a: &Scalar, x: &Scalar, base: &Scalar) -> Result<Vec<Scalar>> {
    let one = Scalar::one();
    let a2 = a * a;
    let mut term = vec![one.clone()];
    let mut total = vec![Scalar::zero(); 2 * n + 1];
    for k in 0..=n {
        for (t, c) in total.iter_mut().zip(&term) {
            *t = &*t + c;
        }
        if k == n {
            break;
        }
        let pk = base.powi(k as i64)?;
        let den = &(&one - &(&a2 * &pk)) * &(&one - &(&pk * base));
        if den.is_zero() {
            return Err(Error::PoleInDenominator { term: k + 1 });
        }
        let scale = (&(&one - &base.powi(k as i64 - n as i64)?) * base).checked_div(&den)?;
        let lin = -(&(&(a * x) * &pk) * &s(2));
        let quad = &a2 * &(&pk * &pk);
        let mut next = vec![Scalar::zero(); term.len() + 2];
        for (m, c) in term.iter().enumerate() {
            let c = c * &scale;
            next[m] = &next[m] + &c;
            next[m + 1] = &next[m + 1] + &(&c * &lin);
            next[m + 2] = &next[m + 2] + &(&c * &quad);
        }
        term = next;
    }
    Ok(total)
}
