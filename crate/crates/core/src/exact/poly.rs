//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Num, Zero};

use super::float::{BigComplex, BigFloat};
use super::rational::{GaussianRational, Rational};

/// Exact coefficient field.
pub trait Field:
    Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn to_big_complex(&self, prec: usize) -> BigComplex;
    fn is_real(&self) -> bool;
    fn format(&self) -> String;
}

impl Field for Rational {
    fn to_big_complex(&self, prec: usize) -> BigComplex {
        BigComplex::from_real(BigFloat::from_rational(self, prec))
    }
    fn is_real(&self) -> bool {
        true
    }
    fn format(&self) -> String {
        self.to_string()
    }
}

impl Field for GaussianRational {
    fn to_big_complex(&self, prec: usize) -> BigComplex {
        BigComplex::from_gaussian(self, prec)
    }
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    fn format(&self) -> String {
        if self.im.is_zero() {
            self.re.to_string()
        } else if self.re.is_zero() {
            format!("{}i", self.im)
        } else {
            format!("({} + {}i)", self.re, self.im)
        }
    }
}

/// Polynomial with coefficients indexed by degree; no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct DensePoly<T: Field> {
    coeffs: Vec<T>,
}

impl<T: Field> DensePoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// c·x^k
    pub fn monomial(k: usize, c: T) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(1, T::one())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::one();
        for c in self.coeffs.iter().skip(1) {
            out.push(c.clone() * k.clone());
            k = k + T::one();
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_big(&self, x: &BigComplex) -> BigComplex {
        let prec = x.precision();
        let mut acc = BigComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &c.to_big_complex(prec);
        }
        acc
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = T::one() / d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = rem[idx].clone() - c.clone() * dc.clone();
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// p(x^q)
    pub fn substitute_power(&self, q: usize) -> Self {
        let mut v = vec![T::zero(); self.coeffs.len().saturating_sub(1) * q + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * q] = c.clone();
        }
        Self::new(v)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> DensePoly<U> {
        DensePoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let cs = c.format();
            let term = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl<T: Field> fmt::Display for DensePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl<T: Field> Add<&DensePoly<T>> for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn add(self, rhs: &DensePoly<T>) -> DensePoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Field> Sub<&DensePoly<T>> for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn sub(self, rhs: &DensePoly<T>) -> DensePoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Field> Mul<&DensePoly<T>> for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn mul(self, rhs: &DensePoly<T>) -> DensePoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        DensePoly::new(v)
    }
}

impl<T: Field> Neg for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn neg(self) -> DensePoly<T> {
        DensePoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! poly_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Field> $tr<DensePoly<T>> for DensePoly<T> {
            type Output = DensePoly<T>;
            fn $method(self, rhs: DensePoly<T>) -> DensePoly<T> {
                (&self).$method(&rhs)
            }
        }
        impl<T: Field> $tr<&DensePoly<T>> for DensePoly<T> {
            type Output = DensePoly<T>;
            fn $method(self, rhs: &DensePoly<T>) -> DensePoly<T> {
                (&self).$method(rhs)
            }
        }
    };
}

poly_owned!(Add, add);
poly_owned!(Sub, sub);
poly_owned!(Mul, mul);

pub type RatPoly = DensePoly<Rational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[-1, 0, 0, 1]);
        let g = p(&[-1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let h = &p(&[1, 1]) * &p(&[2, 1]);
        let k = &p(&[1, 1]) * &p(&[3, 1]);
        assert_eq!(h.gcd(&k), p(&[1, 1]));
        assert_eq!(p(&[2, 4]).monic(), RatPoly::new(vec![int(1) / int(2), int(1)]));
        assert_eq!(p(&[0, 1]).eval(&rat(1, 2)), rat(1, 2));
    }

    #[test]
    fn substitution() {
        assert_eq!(p(&[1, 2]).substitute_power(3), p(&[1, 0, 0, 2]));
        assert_eq!(p(&[1, 1]).to_string_in("w"), "w + 1");
    }
}
