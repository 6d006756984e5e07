//! Simultaneous root isolation for squarefree exact polynomials.
//!
//! A double-precision Aberth-Ehrlich pass produces starting points which are
//! then polished by Aberth steps at the working precision.

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::float::{BigComplex, BigFloat};
use super::poly::{DensePoly, Field};
use crate::error::{Error, Result};

const GUARD_BITS: usize = 64;

/// All roots of a squarefree polynomial, ordered by argument in [0, 2π) and
/// then by modulus.
pub fn poly_roots<T: Field>(p: &DensePoly<T>, precision: usize) -> Result<Vec<BigComplex>> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return Err(Error::NonSquarefree(g.degree().unwrap_or(0)));
    }
    let wp = precision + GUARD_BITS;
    let monic = p.monic();
    let coeffs: Vec<BigComplex> = monic.coeffs().iter().map(|c| c.to_big_complex(wp)).collect();
    let start = aberth_f64(&coeffs);
    let mut roots: Vec<BigComplex> = start
        .iter()
        .map(|z| BigComplex::new(BigFloat::from_f64(z.re, wp), BigFloat::from_f64(z.im, wp)))
        .collect();
    polish(&coeffs, &mut roots, wp)?;

    let scale = monic
        .coeffs()
        .iter()
        .map(|c| c.to_big_complex(64).log2_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    let tol = scale - (precision as f64 - 16.0);
    for z in &roots {
        let r = horner(&coeffs, z).log2_abs();
        let zs = z.log2_abs().max(0.0) * deg as f64;
        if r > tol + zs {
            return Err(Error::NoConvergence(format!(
                "root residual 2^{r:.1} above tolerance 2^{:.1}",
                tol + zs
            )));
        }
    }
    if monic.is_real() {
        let snap = -((precision as f64) - 16.0);
        for z in roots.iter_mut() {
            if z.im.log2_abs() < snap + z.log2_abs().max(0.0) {
                z.im = BigFloat::zero(wp);
            }
        }
    }
    let mut roots: Vec<BigComplex> = roots.into_iter().map(|z| z.with_precision(precision)).collect();
    sort_by_arg(&mut roots);
    Ok(roots)
}

/// Argument mapped into [0, 2π).
pub fn arg_0_2pi(z: &BigComplex) -> BigFloat {
    let a = z.arg();
    if a.is_negative() {
        a + BigFloat::pi(z.precision()).ldexp(1)
    } else {
        a
    }
}

pub fn sort_by_arg(roots: &mut [BigComplex]) {
    roots.sort_by(|a, b| {
        arg_0_2pi(a)
            .partial_cmp(&arg_0_2pi(b))
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.norm_sqr().partial_cmp(&b.norm_sqr()).unwrap_or(Ordering::Equal))
    });
}

fn horner(c: &[BigComplex], z: &BigComplex) -> BigComplex {
    let mut acc = BigComplex::zero(z.precision());
    for a in c.iter().rev() {
        acc = &(&acc * z) + a;
    }
    acc
}

fn horner_with_derivative(c: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.precision();
    let mut p = BigComplex::zero(prec);
    let mut dp = BigComplex::zero(prec);
    for a in c.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + a;
    }
    (p, dp)
}

/// Fujiwara bound on the root moduli of a monic polynomial.
fn fujiwara(c: &[Complex64]) -> f64 {
    let n = c.len() - 1;
    let mut best: f64 = 0.0;
    for k in 1..=n {
        let mut a = c[n - k].norm();
        if k == n {
            a /= 2.0;
        }
        best = best.max(a.powf(1.0 / k as f64));
    }
    2.0 * best.max(f64::MIN_POSITIVE)
}

fn aberth_f64(coeffs: &[BigComplex]) -> Vec<Complex64> {
    let c: Vec<Complex64> = coeffs.iter().map(|z| Complex64::new(z.re.to_f64(), z.im.to_f64())).collect();
    let n = c.len() - 1;
    let radius = fujiwara(&c);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let jitter: f64 = rng.random_range(-0.1..0.1);
            let theta = std::f64::consts::TAU * (k as f64 + 0.25 + jitter) / n as f64 + 0.4;
            Complex64::from_polar(radius * (1.0 + jitter * 0.1), theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for a in c.iter().rev() {
                dp = dp * z[k] + p;
                p = p * z[k] + a;
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += 1.0 / (z[k] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

fn polish(c: &[BigComplex], z: &mut [BigComplex], wp: usize) -> Result<()> {
    let n = z.len();
    let target = -(wp as f64) + 8.0;
    let mut settled = 0;
    for _ in 0..200 {
        let mut moved = f64::NEG_INFINITY;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(c, &z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = &p / &dp;
            let mut s = BigComplex::zero(wp);
            for j in 0..n {
                if j != k {
                    s = &s + &(&z[k] - &z[j]).recip();
                }
            }
            let denom = &BigComplex::one(wp) - &(&ratio * &s);
            let w = &ratio / &denom;
            if w.re.is_nan() || w.im.is_nan() {
                return Err(Error::NoConvergence("Aberth step produced NaN".into()));
            }
            z[k] = &z[k] - &w;
            moved = moved.max(w.log2_abs() - z[k].log2_abs().max(0.0));
        }
        if moved < target {
            settled += 1;
            if settled >= 2 {
                return Ok(());
            }
        }
    }
    Err(Error::NoConvergence("Aberth polishing did not settle".into()))
}
