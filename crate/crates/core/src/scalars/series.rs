use super::Scalar;
use crate::error::{Error, Result};

/// A pair of parameters `a ± i x` (classical) or `a e^{±iθ}` with `x = cos θ`
/// (basic) that always appear together.
///
/// Their joint Pochhammer factor is real: `(a+ix)_k (a-ix)_k` grows by
/// `(a+k)^2 + x^2` per step, and `(a e^{iθ}, a e^{-iθ}; Q)_k` by
/// `1 - 2 a x Q^k + a^2 Q^{2k}`. Carrying the pair keeps such sums exact at
/// rational `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatePair {
    pub a: Scalar,
    pub x: Scalar,
}

/// Parameters of a terminating `rFs` (classical, `base == None`) or `rφs`
/// (basic, `base == Some(Q)`) series.
///
/// The base is passed explicitly: callers working with `q`-brackets pass
/// `Q = q^2` themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesParams {
    pub numerator: Vec<Scalar>,
    pub denominator: Vec<Scalar>,
    pub argument: Scalar,
    pub base: Option<Scalar>,
    pub conjugate_pairs: Vec<ConjugatePair>,
}

impl SeriesParams {
    pub fn classical(numerator: Vec<Scalar>, denominator: Vec<Scalar>, argument: Scalar) -> Self {
        SeriesParams { numerator, denominator, argument, base: None, conjugate_pairs: Vec::new() }
    }

    pub fn basic(numerator: Vec<Scalar>, denominator: Vec<Scalar>, base: Scalar, argument: Scalar) -> Self {
        SeriesParams { numerator, denominator, argument, base: Some(base), conjugate_pairs: Vec::new() }
    }

    pub fn with_pair(mut self, a: Scalar, x: Scalar) -> Self {
        self.conjugate_pairs.push(ConjugatePair { a, x });
        self
    }

    /// Smallest `N` such that a numerator parameter is `-N` (classical) or
    /// `Q^{-N}` (basic).
    pub fn termination_index(&self) -> Option<usize> {
        self.numerator.iter().filter_map(|a| self.terminates_at(a)).min()
    }

    fn terminates_at(&self, a: &Scalar) -> Option<usize> {
        match &self.base {
            None => {
                let n = a.as_integer()?;
                (n <= 0).then_some((-n) as usize)
            }
            Some(base) => {
                if a.is_zero() {
                    return None;
                }
                let la = a.abs_f64().ln();
                let lq = base.abs_f64().ln();
                if !la.is_finite() || !lq.is_finite() || lq == 0.0 {
                    return None;
                }
                let guess = (-la / lq).round();
                if !(0.0..=1.0e6).contains(&guess) {
                    return None;
                }
                let guess = guess as i64;
                (guess.saturating_sub(1).max(0)..=guess + 1).find_map(|n| {
                    let v = a * &base.powi(n).ok()?;
                    let hit = if v.is_exact() { v.is_one() } else { v.approx_eq(&Scalar::one(), 1e-12) };
                    hit.then_some(n as usize)
                })
            }
        }
    }
}

/// Sums a terminating hypergeometric series term by term.
///
/// Classical: `sum_k prod (a_i)_k / prod (b_j)_k  z^k / k!`.
/// Basic: `sum_k prod (a_i;Q)_k / prod (b_j;Q)_k ((-1)^k Q^{k(k-1)/2})^{1+s-r} z^k / (Q;Q)_k`,
/// with `r` counting conjugate pairs twice.
///
/// Summation stops at the first vanishing numerator factor (so denominator
/// parameters that vanish only after termination are harmless), at the
/// detected termination index, or after `n_terms`, whichever comes first.
pub fn hyp_series(p: &SeriesParams, n_terms: Option<usize>) -> Result<Scalar> {
    let limit = match (p.termination_index(), n_terms) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return Err(Error::NonTerminating),
    };
    let r = p.numerator.len() + 2 * p.conjugate_pairs.len();
    let balance = 1 + p.denominator.len() as i64 - r as i64;

    let mut sum = Scalar::zero();
    let mut term = Scalar::one();
    // Q^k for the basic case
    let mut qk = Scalar::one();
    for k in 0..=limit {
        sum = &sum + &term;
        if k == limit {
            break;
        }
        let kk = Scalar::int(k as i64);
        let (num, den) = match &p.base {
            None => {
                let num: Scalar = p
                    .numerator
                    .iter()
                    .map(|a| a + &kk)
                    .chain(p.conjugate_pairs.iter().map(|c| {
                        let s = &c.a + &kk;
                        &(&s * &s) + &(&c.x * &c.x)
                    }))
                    .product();
                let den: Scalar = p.denominator.iter().map(|b| b + &kk).product();
                (num, &den * &Scalar::int(k as i64 + 1))
            }
            Some(base) => {
                let one = Scalar::one();
                let num: Scalar = p
                    .numerator
                    .iter()
                    .map(|a| &one - &(a * &qk))
                    .chain(p.conjugate_pairs.iter().map(|c| {
                        let aq = &c.a * &qk;
                        &(&one - &(&(&aq + &aq) * &c.x)) + &(&aq * &aq)
                    }))
                    .product();
                let mut den: Scalar = p.denominator.iter().map(|b| &one - &(b * &qk)).product();
                if den.is_zero() && !num.is_zero() {
                    return Err(Error::PoleInDenominator { term: k + 1 });
                }
                qk = &qk * base;
                let qpoch_step = &one - &qk;
                if qpoch_step.is_zero() {
                    return Err(Error::DegenerateBase);
                }
                den = &den * &qpoch_step;
                let num = if balance != 0 {
                    // (-Q^k)^{balance}, with qk already advanced to Q^{k+1}
                    let prev = -(&qk.checked_div(base)?);
                    &num * &prev.powi(balance)?
                } else {
                    num
                };
                (num, den)
            }
        };
        if num.is_zero() {
            break;
        }
        if den.is_zero() {
            return Err(Error::PoleInDenominator { term: k + 1 });
        }
        term = (&(&term * &num) * &p.argument).checked_div(&den)?;
    }
    Ok(sum)
}
