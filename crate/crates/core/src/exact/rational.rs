//! Exact scalars: rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type GaussianRational = Complex<Rational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn gauss_real(re: Rational) -> GaussianRational {
    Complex::new(re, Rational::zero())
}

pub fn gauss_i() -> GaussianRational {
    Complex::new(Rational::zero(), Rational::one())
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binom_q(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

pub fn sign_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn pow2(e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(2));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Decimal form `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Exact square root of a non-negative rational if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Serde adapters for rationals stored as decimal strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(v) => s.collect_seq(v.iter().map(format_rational)),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        let raw: Option<Vec<String>> = Option::deserialize(d)?;
        match raw {
            None => Ok(None),
            Some(items) => items
                .iter()
                .map(|x| parse_rational(x).map_err(serde::de::Error::custom))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Some),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(30, 15), BigInt::from(155117520u64));
    }

    #[test]
    fn format_and_parse() {
        assert_eq!(format_rational(&rat(-4, 3)), "-4/3");
        assert_eq!(format_rational(&int(1)), "1");
        assert_eq!(parse_rational("-8/6").unwrap(), rat(-4, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn squares() {
        assert_eq!(rational_sqrt(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(rational_sqrt(&rat(1, 5)), None);
    }
}
