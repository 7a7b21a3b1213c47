use super::Scalar;
use crate::error::{Error, Result};

/// Rejects `q = 0` and `q^2 = 1`, the bases for which q-brackets degenerate.
pub(crate) fn check_base(q: &Scalar) -> Result<()> {
    if q.is_zero() || (q * q).is_one() {
        return Err(Error::DegenerateBase);
    }
    Ok(())
}

/// The q-number `[x]_q = (q^x - q^{-x}) / (q - q^{-1})` for integer `x`.
///
/// Exact for rational `q`. For a positive float `q` the value is computed as
/// `sinh(x ln q) / sinh(ln q)`, which stays accurate close to `q = 1`.
pub fn q_num(x: i64, q: &Scalar) -> Result<Scalar> {
    check_base(q)?;
    if let Scalar::Float(qf) = q {
        if *qf > 0.0 {
            let t = qf.ln();
            return Ok(Scalar::Float((x as f64 * t).sinh() / t.sinh()));
        }
    }
    let num = &q.powi(x)? - &q.powi(-x)?;
    let den = q - &q.recip()?;
    num.checked_div(&den)
}

/// The q-bracket `[x]_q` for an arbitrary scalar `x`. Integer `x` defers to
/// [`q_num`]; otherwise `q^x` is evaluated through [`Scalar::pow`], so an exact
/// `q` with non-integer `x` is an [`Error::IrrationalPower`].
pub fn q_bracket(x: &Scalar, q: &Scalar) -> Result<Scalar> {
    if let (Some(n), true) = (x.as_integer(), x.is_exact()) {
        return q_num(n, q);
    }
    check_base(q)?;
    if let (Some(xf), Scalar::Float(qf)) = (x.to_f64(), q) {
        if *qf > 0.0 {
            let t = qf.ln();
            return Ok(Scalar::Float((xf * t).sinh() / t.sinh()));
        }
    }
    let num = &q.pow(x)? - &q.pow(&-x)?;
    num.checked_div(&(q - &q.recip()?))
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`; `(a)_0 = 1`.
pub fn pochhammer(a: &Scalar, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc = &acc * &term;
        term = &term + &Scalar::one();
    }
    acc
}

/// `n!` as an exact scalar.
pub fn factorial(n: usize) -> Scalar {
    pochhammer(&Scalar::one(), n)
}

/// `(a; Q)_n = prod_{k=0}^{n-1} (1 - a Q^k)`; `(a; Q)_0 = 1`.
pub fn q_pochhammer(a: &Scalar, n: usize, base: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc = &acc * &(&Scalar::one() - &t);
        t = &t * base;
    }
    acc
}

/// `(a_1, ..., a_r; Q)_n`, the product of the single-argument symbols.
pub fn q_pochhammer_multi(args: &[Scalar], n: usize, base: &Scalar) -> Scalar {
    args.iter().map(|a| q_pochhammer(a, n, base)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn q_num_small_values() {
        let q = r(3, 7);
        assert_eq!(q_num(0, &q).unwrap(), Scalar::zero());
        assert_eq!(q_num(1, &q).unwrap(), Scalar::one());
        assert_eq!(q_num(2, &q).unwrap(), &q + &q.recip().unwrap());
        assert_eq!(q_num(2, &Scalar::int(2)).unwrap(), r(5, 2));
    }

    #[test]
    fn q_num_degenerate_base() {
        for q in [Scalar::one(), Scalar::int(-1), Scalar::zero(), Scalar::float(1.0)] {
            assert_eq!(q_num(3, &q), Err(Error::DegenerateBase));
        }
    }

    #[test]
    fn q_num_float_near_one_tends_to_integer() {
        let q = Scalar::float(1.0 + 1e-8);
        for n in 0..10 {
            let v = q_num(n, &q).unwrap().to_f64().unwrap();
            assert!((v - n as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn q_bracket_matches_q_num_and_refuses_irrational() {
        let q = r(5, 3);
        assert_eq!(q_bracket(&Scalar::int(4), &q).unwrap(), q_num(4, &q).unwrap());
        assert!(q_bracket(&r(1, 2), &q).is_err());
        let qf = Scalar::float(5.0 / 3.0);
        let v = q_bracket(&Scalar::float(4.0), &qf).unwrap();
        assert!(v.approx_eq(&q_num(4, &q).unwrap(), 1e-13));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&r(2, 9), 0), Scalar::one());
        assert_eq!(pochhammer(&Scalar::one(), 4), Scalar::int(24));
        assert_eq!(pochhammer(&Scalar::int(3), 2), Scalar::int(12));
        assert_eq!(pochhammer(&Scalar::int(-2), 3), Scalar::zero());
        assert_eq!(factorial(5), Scalar::int(120));
    }

    #[test]
    fn q_pochhammer_examples() {
        let b = r(1, 2);
        assert_eq!(q_pochhammer(&r(7, 3), 0, &b), Scalar::one());
        assert_eq!(q_pochhammer(&b, 2, &b), r(3, 8));
        let qq = r(2, 5);
        let expect = (&Scalar::one() - &qq) * (&Scalar::one() - &(&qq * &qq));
        assert_eq!(q_pochhammer(&qq, 2, &qq), expect);
        assert_eq!(
            q_pochhammer_multi(&[b.clone(), qq.clone()], 2, &b),
            &q_pochhammer(&b, 2, &b) * &q_pochhammer(&qq, 2, &b)
        );
    }
}
