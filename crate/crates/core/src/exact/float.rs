//! Binary floating point at a configurable mantissa width, backed by `astro-float`.
//!
//! Values carry their own precision; binary operations round to the wider of
//! the two operands.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat as Inner, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Smallest supported mantissa width.
pub const MIN_PRECISION: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn clamp_prec(p: usize) -> usize {
    p.max(MIN_PRECISION)
}

#[derive(Clone)]
pub struct BigFloat(Inner);

impl BigFloat {
    pub fn zero(prec: usize) -> Self {
        BigFloat(Inner::new(clamp_prec(prec)))
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        BigFloat(Inner::from_i64(v, clamp_prec(prec)))
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        BigFloat(Inner::from_f64(v, clamp_prec(prec)))
    }

    /// Exact conversion; the result precision is large enough to hold every bit.
    pub fn from_bigint_exact(v: &BigInt) -> Self {
        if v.is_zero() {
            return Self::zero(MIN_PRECISION);
        }
        let (sign, mag) = v.clone().into_parts();
        let words: Vec<Word> = mag.to_u64_digits();
        let sign = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let bits = (words.len() * 64) as i32;
        BigFloat(Inner::from_words(&words, sign, bits))
    }

    pub fn from_bigint(v: &BigInt, prec: usize) -> Self {
        Self::from_bigint_exact(v).with_precision(prec)
    }

    /// Correctly rounded quotient of the exact numerator and denominator.
    pub fn from_rational(v: &Rational, prec: usize) -> Self {
        let n = Self::from_bigint_exact(v.numer());
        let d = Self::from_bigint_exact(v.denom());
        BigFloat(n.0.div(&d.0, clamp_prec(prec), RM))
    }

    pub fn pi(prec: usize) -> Self {
        let p = clamp_prec(prec);
        BigFloat(with_consts(|cc| cc.pi(p, RM)))
    }

    pub fn precision(&self) -> usize {
        self.0.precision().unwrap_or(MIN_PRECISION)
    }

    pub fn with_precision(mut self, prec: usize) -> Self {
        let _ = self.0.set_precision(clamp_prec(prec), RM);
        self
    }

    fn wider(&self, other: &Self) -> usize {
        self.precision().max(other.precision())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    pub fn is_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        let p = self.precision();
        BigFloat(Inner::from_i64(1, p).div(&self.0, p, RM))
    }

    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat(self.0.sqrt(self.precision(), RM))
    }

    pub fn sin(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.precision();
        BigFloat(with_consts(|cc| self.0.sin(p, RM, cc)))
    }

    // astro-float yields NaN for trigonometric functions at an exact zero
    pub fn cos(&self) -> Self {
        if self.is_zero() {
            return Self::one(self.precision());
        }
        let p = self.precision();
        BigFloat(with_consts(|cc| self.0.cos(p, RM, cc)))
    }

    pub fn atan(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.precision();
        BigFloat(with_consts(|cc| self.0.atan(p, RM, cc)))
    }

    /// Angle of the point (x, y) in (−π, π].
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let p = y.wider(x);
        if x.is_zero() {
            if y.is_zero() {
                return Self::zero(p);
            }
            let half = Self::pi(p) * Self::from_f64(0.5, p);
            return if y.is_negative() { -half } else { half };
        }
        let base = (y / x).atan();
        if x.is_negative() {
            if y.is_negative() {
                base - Self::pi(p)
            } else {
                base + Self::pi(p)
            }
        } else {
            base
        }
    }

    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.precision());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplication by 2^k (exact).
    pub fn ldexp(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = self.0.clone();
        let e = out.exponent().unwrap_or(0);
        out.set_exponent(e + k);
        BigFloat(out)
    }

    /// Integer mantissa and binary exponent, `self = mant * 2^exp`, with the
    /// mantissa odd (or zero).
    pub fn to_mant_exp(&self) -> (BigInt, i64) {
        let Some((words, _, sign, e, _)) = self.0.as_raw_parts() else {
            return (BigInt::zero(), 0);
        };
        if self.0.is_zero() {
            return (BigInt::zero(), 0);
        }
        let mag = BigUint::new(
            words
                .iter()
                .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
                .collect(),
        );
        let tz = mag.trailing_zeros().unwrap_or(0);
        let mag = mag >> tz;
        let exp = e as i64 - 64 * words.len() as i64 + tz as i64;
        let sign = if sign == Sign::Neg { BigSign::Minus } else { BigSign::Plus };
        (BigInt::from_biguint(sign, mag), exp)
    }

    /// The exact rational value of this float.
    pub fn to_rational(&self) -> Rational {
        let (m, e) = self.to_mant_exp();
        if e >= 0 {
            Rational::from_integer(m << (e as usize))
        } else {
            Rational::new(m, BigInt::one() << ((-e) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        let Some((words, _, sign, e, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        if self.0.is_zero() {
            return 0.0;
        }
        let top = *words.last().unwrap_or(&0) as f64;
        let v = top * 2f64.powi(e - 64);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// log2 of |self|, or −∞ at zero.
    pub fn log2_abs(&self) -> f64 {
        let Some((words, _, _, e, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let top = *words.last().unwrap_or(&1) as f64;
        top.log2() + (e as f64) - 64.0
    }

    /// Hex-float text such as `-0x1bp-3`; zero is `0x0p+0`.
    pub fn to_hex(&self) -> String {
        let (m, e) = self.to_mant_exp();
        if m.is_zero() {
            return "0x0p+0".to_string();
        }
        let sign = if m.is_negative() { "-" } else { "" };
        let esign = if e >= 0 { "+" } else { "-" };
        format!("{sign}0x{}p{esign}{}", m.magnitude().to_str_radix(16), e.abs())
    }

    pub fn from_hex(s: &str, prec: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("bad hex float {s:?}"));
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let body = body.strip_prefix("0x").ok_or_else(bad)?;
        let (mant, exp) = body.split_once('p').ok_or_else(bad)?;
        let mag = BigUint::parse_bytes(mant.as_bytes(), 16).ok_or_else(bad)?;
        let exp: i64 = exp.parse().map_err(|_| bad())?;
        if mag.is_zero() {
            return Ok(Self::zero(prec));
        }
        let sign = if neg { BigSign::Minus } else { BigSign::Plus };
        let m = Self::from_bigint_exact(&BigInt::from_biguint(sign, mag));
        let exp = i32::try_from(exp).map_err(|_| bad())?;
        Ok(m.ldexp(exp).with_precision(prec))
    }

    pub fn to_decimal(&self) -> String {
        with_consts(|cc| self.0.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }

    pub fn max(a: Self, b: Self) -> Self {
        if a < b {
            b
        } else {
            a
        }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(Inner::neg(&self.0))
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(Inner::neg(&self.0))
    }
}

macro_rules! float_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                BigFloat(self.0.$inner(&rhs.0, self.wider(rhs), RM))
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                self.$method(&rhs)
            }
        }
    };
}

float_binop!(Add, add, add);
float_binop!(Sub, sub, sub);
float_binop!(Mul, mul, mul);
float_binop!(Div, div, div);

/// Complex number as a pair of [`BigFloat`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        BigComplex::new(BigFloat::zero(prec), BigFloat::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        BigComplex::new(BigFloat::one(prec), BigFloat::zero(prec))
    }

    pub fn from_real(re: BigFloat) -> Self {
        let p = re.precision();
        BigComplex::new(re, BigFloat::zero(p))
    }

    /// e^{iθ}
    pub fn cis(theta: &BigFloat) -> Self {
        BigComplex::new(theta.cos(), theta.sin())
    }

    pub fn from_gaussian(v: &super::rational::GaussianRational, prec: usize) -> Self {
        BigComplex::new(
            BigFloat::from_rational(&v.re, prec),
            BigFloat::from_rational(&v.im, prec),
        )
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(self, prec: usize) -> Self {
        BigComplex::new(self.re.with_precision(prec), self.im.with_precision(prec))
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    /// Principal argument in (−π, π].
    pub fn arg(&self) -> BigFloat {
        BigFloat::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        BigComplex::new(&self.re * s, &self.im * s)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        BigComplex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.precision());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// log2 of the modulus, −∞ at zero.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let hi = a.max(b);
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        let lo = a.min(b);
        hi + 0.5 * (1.0 + 2f64.powf(2.0 * (lo - hi))).log2()
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-&self.re, -&self.im)
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let d = rhs.norm_sqr();
        let re = &self.re * &rhs.re + &self.im * &rhs.im;
        let im = &self.im * &rhs.re - &self.re * &rhs.im;
        BigComplex::new(re / &d, im / &d)
    }
}

macro_rules! complex_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &BigComplex) -> BigComplex {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                self.$method(&rhs)
            }
        }
    };
}

complex_owned!(Add, add);
complex_owned!(Sub, sub);
complex_owned!(Mul, mul);
complex_owned!(Div, div);
