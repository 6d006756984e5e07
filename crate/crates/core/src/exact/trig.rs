//! Trigonometric polynomials Σ c_ℓ u^ℓ in u = e^{iφ} with Gaussian rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::float::{BigComplex, BigFloat};
use super::poly::DensePoly;
use super::rational::{gauss, gauss_real, int, rat, GaussianRational, Rational};

#[derive(Clone, PartialEq, Default)]
pub struct TrigPoly {
    coeffs: BTreeMap<i64, GaussianRational>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn real_constant(c: Rational) -> Self {
        Self::constant(gauss_real(c))
    }

    /// c·u^ℓ
    pub fn monomial(l: i64, c: GaussianRational) -> Self {
        let mut t = TrigPoly::zero();
        t.add_term(l, c);
        t
    }

    /// sin(kφ) = (u^k − u^{−k})/(2i)
    pub fn sin_k(k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let half_i = gauss(Rational::zero(), rat(1, 2));
        // 1/(2i) = −i/2
        let mut t = TrigPoly::zero();
        t.add_term(k, -half_i.clone());
        t.add_term(-k, half_i);
        t
    }

    /// cos(kφ) = (u^k + u^{−k})/2
    pub fn cos_k(k: i64) -> Self {
        let half = gauss_real(rat(1, 2));
        let mut t = TrigPoly::zero();
        t.add_term(k, half.clone());
        t.add_term(-k, half);
        t
    }

    pub fn sin() -> Self {
        Self::sin_k(1)
    }

    pub fn cos() -> Self {
        Self::cos_k(1)
    }

    pub fn add_term(&mut self, l: i64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(l).or_insert_with(GaussianRational::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.coeffs.remove(&l);
        }
    }

    pub fn coeff(&self, l: i64) -> GaussianRational {
        self.coeffs.get(&l).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Largest |ℓ| with a nonzero coefficient.
    pub fn max_frequency(&self) -> Option<i64> {
        self.coeffs.keys().map(|k| k.abs()).max()
    }

    /// Real-valued on the real line iff c_{−ℓ} = conj(c_ℓ).
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|(l, c)| self.coeff(-l) == c.conj())
    }

    pub fn conj(&self) -> Self {
        let mut t = TrigPoly::zero();
        for (l, c) in &self.coeffs {
            t.add_term(-l, c.conj());
        }
        t
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut t = TrigPoly::zero();
        for (l, c) in &self.coeffs {
            t.add_term(*l, c * s);
        }
        t
    }

    pub fn scale_real(&self, s: &Rational) -> Self {
        self.scale(&gauss_real(s.clone()))
    }

    /// d/dφ: c_ℓ ↦ iℓ c_ℓ
    pub fn derivative(&self) -> Self {
        let mut t = TrigPoly::zero();
        for (l, c) in &self.coeffs {
            t.add_term(*l, c * gauss(Rational::zero(), int(*l)));
        }
        t
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut t = self.clone();
        for _ in 0..n {
            t = t.derivative();
        }
        t
    }

    /// f(qφ): ℓ ↦ qℓ
    pub fn substitute(&self, q: i64) -> Self {
        let mut t = TrigPoly::zero();
        for (l, c) in &self.coeffs {
            t.add_term(l * q, c.clone());
        }
        t
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TrigPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// u^s · self
    pub fn shift(&self, s: i64) -> Self {
        TrigPoly {
            coeffs: self.coeffs.iter().map(|(l, c)| (l + s, c.clone())).collect(),
        }
    }

    fn to_dense(&self) -> (i64, DensePoly<GaussianRational>) {
        let lo = self.min_exponent().unwrap_or(0);
        let hi = self.max_exponent().unwrap_or(0);
        let mut v = vec![GaussianRational::zero(); (hi - lo + 1) as usize];
        for (l, c) in &self.coeffs {
            v[(l - lo) as usize] = c.clone();
        }
        (lo, DensePoly::new(v))
    }

    /// Exact quotient in the Laurent ring, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &TrigPoly) -> Option<TrigPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(TrigPoly::zero());
        }
        let (la, a) = self.to_dense();
        let (lb, b) = d.to_dense();
        let (q, r) = a.div_rem(&b);
        if !r.is_zero() {
            return None;
        }
        let mut t = TrigPoly::zero();
        for (i, c) in q.coeffs().iter().enumerate() {
            t.add_term(i as i64 + la - lb, c.clone());
        }
        Some(t)
    }

    pub fn eval(&self, phi: &BigFloat) -> BigComplex {
        let prec = phi.precision();
        let mut acc = BigComplex::zero(prec);
        for (l, c) in &self.coeffs {
            let ang = phi * &BigFloat::from_i64(*l, prec);
            let term = &BigComplex::from_gaussian(c, prec) * &BigComplex::cis(&ang);
            acc = &acc + &term;
        }
        acc
    }

    pub fn eval_f64(&self, phi: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (l, c) in &self.coeffs {
            let a = phi * (*l as f64);
            let (cr, ci) = (rat_f64(&c.re), rat_f64(&c.im));
            re += cr * a.cos() - ci * a.sin();
            im += cr * a.sin() + ci * a.cos();
        }
        (re, im)
    }
}

fn rat_f64(r: &Rational) -> f64 {
    BigFloat::from_rational(r, 64).to_f64()
}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(l, c)| {
                let cs = if c.im.is_zero() {
                    c.re.to_string()
                } else {
                    format!("({} + {}i)", c.re, c.im)
                };
                format!("{cs}*u^{l}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add<&TrigPoly> for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut t = self.clone();
        for (l, c) in &rhs.coeffs {
            t.add_term(*l, c.clone());
        }
        t
    }
}

impl Sub<&TrigPoly> for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        let mut t = self.clone();
        for (l, c) in &rhs.coeffs {
            t.add_term(*l, -c.clone());
        }
        t
    }
}

impl Mul<&TrigPoly> for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let mut acc: BTreeMap<i64, GaussianRational> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                let e = acc.entry(a + b).or_insert_with(GaussianRational::zero);
                *e = &*e + ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TrigPoly { coeffs: acc }
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        TrigPoly {
            coeffs: self.coeffs.iter().map(|(l, c)| (*l, -c.clone())).collect(),
        }
    }
}

impl Neg for TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        -&self
    }
}

macro_rules! trig_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<TrigPoly> for TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: TrigPoly) -> TrigPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&TrigPoly> for TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: &TrigPoly) -> TrigPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<TrigPoly> for &TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: TrigPoly) -> TrigPoly {
                self.$method(&rhs)
            }
        }
    };
}

trig_owned!(Add, add);
trig_owned!(Sub, sub);
trig_owned!(Mul, mul);
