//! Thin helpers over `num_rational::BigRational`.
//!
//! `BigRational` already maintains the invariants we need (always reduced,
//! positive denominator), so the crate uses it directly as its rational
//! number type and only adds exact power and root extraction.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p" or "p/q" into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(p))
        }
    }
}

fn exact_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if n == 0 {
        return None;
    }
    if v.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root = v.nth_root(n);
    if num_traits::pow(root.clone(), n as usize) == *v {
        Some(root)
    } else {
        None
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(v: &Rational) -> Option<Rational> {
    if v.is_negative() {
        return None;
    }
    let num = exact_nth_root(v.numer(), 2)?;
    let den = exact_nth_root(v.denom(), 2)?;
    Some(Rational::new(num, den))
}

/// Exact rational power `base^exp`; errors unless the result is rational.
///
/// Integer exponents always succeed for nonzero base; fractional exponents
/// require the base to be an exact perfect power.
pub fn rational_pow(base: &Rational, exp: &Rational) -> Result<Rational, ScalarError> {
    let not_exact = || ScalarError::NotExactPower {
        base: base.to_string(),
        exp: exp.to_string(),
    };
    if base.is_zero() {
        return if exp.is_positive() {
            Ok(Rational::zero())
        } else {
            Err(not_exact())
        };
    }
    // base^(p/q) = (base^(1/q))^p
    let q = exp
        .denom()
        .to_u32()
        .filter(|q| *q <= u32::from(u16::MAX))
        .ok_or_else(not_exact)?;
    let root = if q == 1 {
        base.clone()
    } else {
        let num = exact_nth_root(base.numer(), q).ok_or_else(not_exact)?;
        let den = exact_nth_root(base.denom(), q).ok_or_else(not_exact)?;
        Rational::new(num, den)
    };
    let p = exp.numer();
    let p_abs = p.magnitude().to_usize().ok_or_else(not_exact)?;
    let powed = num_traits::pow(root, p_abs);
    Ok(if p.sign() == Sign::Minus {
        powed.recip()
    } else {
        powed
    })
}

/// Residue of `e` modulo 2 inside `[0, 2)`, together with `(e - residue)/2`.
pub fn mod2_split(e: &Rational) -> (Rational, BigInt) {
    let half = e / rat(2);
    let j = half.floor().to_integer();
    let residue = e - Rational::from_integer(j.clone() * BigInt::from(2));
    (residue, j)
}

/// `e` as an `i64` if it is an integer in range.
pub fn as_i64(e: &Rational) -> Option<i64> {
    if e.denom().is_one() {
        e.numer().to_i64()
    } else {
        None
    }
}

/// Factorial as a rational.
pub fn factorial(k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Generalized binomial coefficient `binom(a, k)` for rational `a`.
pub fn binom(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= a - rat(i as i64);
    }
    acc / factorial(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_and_pow() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_pow(&rat(4), &ratio(1, 2)).unwrap(), rat(2));
        assert_eq!(rational_pow(&rat(2), &rat(-3)).unwrap(), ratio(1, 8));
        assert_eq!(
            rational_pow(&ratio(8, 27), &ratio(-2, 3)).unwrap(),
            ratio(9, 4)
        );
        assert!(rational_pow(&rat(2), &ratio(1, 2)).is_err());
    }

    #[test]
    fn mod2_residues() {
        let (c, j) = mod2_split(&rat(-1));
        assert_eq!(c, rat(1));
        assert_eq!(j, BigInt::from(-1));
        let (c, j) = mod2_split(&ratio(5, 2));
        assert_eq!(c, ratio(1, 2));
        assert_eq!(j, BigInt::from(1));
        let (c, j) = mod2_split(&rat(4));
        assert_eq!(c, rat(0));
        assert_eq!(j, BigInt::from(2));
    }

    #[test]
    fn binom_half() {
        // binom(1/2, 2) = (1/2)(-1/2)/2 = -1/8
        assert_eq!(binom(&ratio(1, 2), 2), ratio(-1, 8));
        assert_eq!(binom(&rat(3), 2), rat(3));
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_rational("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_rational("-7"), Some(rat(-7)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
