//! Graded dimensions, the rational form over (1−t²)², and the Gorenstein test.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dimension::{qi_dimension_exact, qi_dimension_numeric};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{BigFloat, RatPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub m: u32,
    pub n: u32,
    pub coefficients: Vec<i64>,
    /// N(t) with P(t) = N(t)/(1−t²)², lowest degree first.
    pub numerator: Vec<i64>,
}

impl HilbertSeries {
    pub fn gorenstein(&self) -> (bool, Option<i64>) {
        is_gorenstein(self)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,b\n");
        for (d, b) in self.coefficients.iter().enumerate() {
            s.push_str(&format!("{d},{b}\n"));
        }
        s
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let (g, m) = self.gorenstein();
        serde_json::json!({
            "m": self.m,
            "n": self.n,
            "coefficients": self.coefficients,
            "numerator": self.numerator,
            "gorenstein": g,
            "M": m,
        })
    }
}

/// Smallest admissible cutoff for a type-(m,1^n) series.
pub fn min_cutoff(m: u32, n: u32) -> usize {
    (2 * m + 2 * n + 2) as usize
}

fn check_cutoff(c: &Configuration, d_max: usize) -> Result<(u32, u32)> {
    if !c.is_type_m1n() {
        return Err(Error::InvalidInput("configuration is not of type (m,1^n)".into()));
    }
    let m = c.lines[0].mult;
    let n = (c.lines.len() - 1) as u32;
    if d_max < min_cutoff(m, n) {
        return Err(Error::InvalidInput(format!(
            "cutoff {d_max} below 2m+2n+2 = {}",
            min_cutoff(m, n)
        )));
    }
    Ok((m, n))
}

/// [b_0..b_D]: exact remainder-map ranks when R(α) is stored, otherwise the
/// numeric chart at the configuration's precision.
pub fn hilbert_coefficients(c: &Configuration, d_max: usize) -> Result<Vec<i64>> {
    check_cutoff(c, d_max)?;
    (0..=d_max)
        .into_par_iter()
        .map(|d| {
            let b = if c.r_poly.is_some() {
                qi_dimension_exact(c, d)?
            } else {
                qi_dimension_numeric(c, d, c.precision, None)?
            };
            Ok(b as i64)
        })
        .collect()
}

/// Always the numeric chart, at the given precision.
pub fn hilbert_coefficients_numeric(c: &Configuration, d_max: usize, precision: usize) -> Result<Vec<i64>> {
    check_cutoff(c, d_max)?;
    (0..=d_max)
        .into_par_iter()
        .map(|d| qi_dimension_numeric(c, d, precision, None).map(|b| b as i64))
        .collect()
}

/// Expansion of N(t)/(1−t²)² through degree d_max.
pub fn expand_numerator(num: &[i64], d_max: usize) -> Vec<i64> {
    (0..=d_max)
        .map(|i| {
            (0..=i / 2)
                .map(|k| num.get(i - 2 * k).copied().unwrap_or(0) * (k as i64 + 1))
                .sum()
        })
        .collect()
}

/// N(t) = 1 − t² + t^{n+1} + t^{n+2} + t^{2m+n} + t^{2m+n+1} − t^{2m+2n} + t^{2m+2n+2},
/// coinciding exponents summed.
pub fn closed_form_numerator(m: u32, n: u32) -> Vec<i64> {
    let (m, n) = (m as usize, n as usize);
    let mut v = vec![0i64; 2 * m + 2 * n + 3];
    for (e, c) in [
        (0, 1),
        (2, -1),
        (n + 1, 1),
        (n + 2, 1),
        (2 * m + n, 1),
        (2 * m + n + 1, 1),
        (2 * m + 2 * n, -1),
        (2 * m + 2 * n + 2, 1),
    ] {
        v[e] += c;
    }
    trim(v)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Splice stored coefficients with the tail b_i = i+1−m−n into N(t).
pub fn hilbert_rational_form(coeffs: &[i64], m: u32, n: u32) -> Result<HilbertSeries> {
    let cut = min_cutoff(m, n);
    if coeffs.len() <= cut {
        return Err(Error::InvalidInput(format!(
            "need coefficients through degree {cut}, have {}",
            coeffs.len().saturating_sub(1)
        )));
    }
    let tail_start = (2 * m + 2 * n - 1) as usize;
    for (i, &b) in coeffs.iter().enumerate().skip(tail_start) {
        let expected = i as i64 + 1 - (m + n) as i64;
        if b != expected {
            return Err(Error::TailMismatch {
                degree: i,
                expected,
                found: b,
            });
        }
    }
    // N = (1 − 2t² + t⁴) Σ b_i t^i; the tail makes N_j vanish for j > 2m+2n+2
    let b = |i: isize| if i < 0 { 0 } else { coeffs[i as usize] };
    let numerator = (0..=cut as isize).map(|j| b(j) - 2 * b(j - 2) + b(j - 4)).collect();
    Ok(HilbertSeries {
        m,
        n,
        coefficients: coeffs.to_vec(),
        numerator: trim(numerator),
    })
}

/// Palindromic numerator ⇔ P(1/t) = t^M P(t), with M = 4 − deg N.
pub fn is_gorenstein(h: &HilbertSeries) -> (bool, Option<i64>) {
    let mut rev = h.numerator.clone();
    rev.reverse();
    if !h.numerator.is_empty() && h.numerator[0] != 0 && rev == h.numerator {
        (true, Some(4 - (h.numerator.len() as i64 - 1)))
    } else {
        (false, None)
    }
}

/// Number of distinct α_i² over the simple lines.
pub fn r_parameter(c: &Configuration) -> Result<usize> {
    if let Some(r) = &c.r_poly {
        return Ok(r_parameter_exact(r));
    }
    let alphas = c.simple_alphas()?;
    let tol = -(c.precision as f64) / 2.0;
    let sq: Vec<BigFloat> = alphas.iter().map(|a| a * a).collect();
    let mut distinct: Vec<&BigFloat> = Vec::new();
    for s in &sq {
        if !distinct.iter().any(|t| {
            let scale = BigFloat::max(s.abs(), t.abs()).log2_abs().max(0.0);
            (&(*s) - *t).log2_abs() - scale < tol
        }) {
            distinct.push(s);
        }
    }
    Ok(distinct.len())
}

/// T(x) with T(α²) = ±R(α)R(−α); the distinct roots of T count the
/// distinct α².
pub fn r_parameter_exact(r: &RatPoly) -> usize {
    let Some(deg) = r.degree() else {
        return 0;
    };
    let neg = RatPoly::new(
        (0..=deg)
            .map(|i| if i % 2 == 0 { r.coeff(i) } else { -r.coeff(i) })
            .collect(),
    );
    let prod = r * &neg;
    let t = RatPoly::new((0..=deg).map(|i| prod.coeff(2 * i)).collect());
    let g = t.gcd(&t.derivative());
    t.degree().unwrap_or(0) - g.degree().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{build_am1n, random_type_m1n};
    use crate::exact::Rational;

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_numerator(1, 1), vec![1, 0, 0, 2, 0, 0, 1]);
        assert_eq!(expand_numerator(&closed_form_numerator(1, 1), 8), vec![1, 0, 2, 2, 3, 4, 5, 6, 7]);
        assert_eq!(
            expand_numerator(&closed_form_numerator(2, 2), 10),
            vec![1, 0, 1, 1, 2, 2, 4, 4, 5, 6, 7]
        );
    }

    #[test]
    fn am1n_series() {
        let c = build_am1n(1, 1, 128).unwrap();
        assert_eq!(hilbert_coefficients(&c, 8).unwrap(), vec![1, 0, 2, 2, 3, 4, 5, 6, 7]);
        let c = build_am1n(2, 2, 128).unwrap();
        let b = hilbert_coefficients(&c, 10).unwrap();
        let h = hilbert_rational_form(&b, 2, 2).unwrap();
        assert_eq!(h.numerator, closed_form_numerator(2, 2));
        assert_eq!(is_gorenstein(&h), (true, Some(-6)));
        let bad = hilbert_rational_form(&[1, 0, 1, 1, 2, 2, 4, 4, 5, 6, 8], 2, 2);
        assert!(matches!(bad, Err(Error::TailMismatch { degree: 10, .. })));
    }

    #[test]
    fn random_series() {
        // two distinct α², so b_3 = 0; b_6 = m+n−1 off the A_(m,1^n) locus
        let c = crate::config::from_alphas(2, &[Rational::new(1.into(), 2.into()), Rational::new((-1).into(), 3.into())], 128).unwrap();
        let b = hilbert_coefficients(&c, 10).unwrap();
        assert_eq!(b, vec![1, 0, 1, 0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(b[6], hilbert_coefficients(&random_type_m1n(2, 2, 1, 128).unwrap(), 10).unwrap()[6]);
        let h = hilbert_rational_form(&b, 2, 2).unwrap();
        assert_eq!(is_gorenstein(&h), (false, None));
    }

    #[test]
    fn r_values() {
        assert_eq!(r_parameter(&build_am1n(2, 2, 128).unwrap()).unwrap(), 1);
        assert_eq!(r_parameter(&build_am1n(1, 4, 128).unwrap()).unwrap(), 2);
        let c = crate::config::from_alphas(2, &[Rational::new(1.into(), 2.into()), Rational::new((-1).into(), 3.into())], 128).unwrap();
        assert_eq!(r_parameter(&c).unwrap(), 2);
        let mut numeric = c.clone();
        numeric.r_poly = None;
        assert_eq!(r_parameter(&numeric).unwrap(), 2);
    }
}
