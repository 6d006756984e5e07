//! Critical point of F(ψ) = Σ_{i<j} m_i m_j log sin(ψ_j − ψ_i) with ψ_0 = 0 and
//! 0 < ψ_1 < … < ψ_n < π. F is strictly concave on that region, so damped
//! Newton in double precision followed by Newton at full precision converges
//! to the unique maximiser.

use super::{Configuration, Kind, Line};
use crate::error::{Error, Result};
use crate::exact::BigFloat;

#[derive(Clone, Debug)]
pub struct LocusDiagnostics {
    pub f64_iterations: usize,
    pub refine_iterations: usize,
    pub gradient_log2: f64,
}

fn objective(m: &[f64], psi: &[f64]) -> Option<f64> {
    let mut f = 0.0;
    for i in 0..psi.len() {
        for j in i + 1..psi.len() {
            let d = psi[j] - psi[i];
            if d <= 0.0 || d >= std::f64::consts::PI {
                return None;
            }
            f += m[i] * m[j] * d.sin().ln();
        }
    }
    Some(f)
}

fn grad_hess_f64(m: &[f64], psi: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = psi.len() - 1;
    let mut g = vec![0.0; n];
    let mut h = vec![vec![0.0; n]; n];
    for k in 1..=n {
        for i in 0..psi.len() {
            if i == k {
                continue;
            }
            let d = psi[k] - psi[i];
            let w = m[i] * m[k];
            g[k - 1] += w * d.cos() / d.sin();
            let csc2 = 1.0 / (d.sin() * d.sin());
            h[k - 1][k - 1] -= w * csc2;
            if i >= 1 {
                h[k - 1][i - 1] += w * csc2;
            }
        }
    }
    (g, h)
}

fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

fn solve_big(mut a: Vec<Vec<BigFloat>>, mut b: Vec<BigFloat>) -> Option<Vec<BigFloat>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| {
            a[x][col]
                .abs()
                .partial_cmp(&a[y][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
            let t = &f * &b[col];
            b[r] = &b[r] - &t;
        }
    }
    let prec = b.first().map(|x| x.precision()).unwrap_or(64);
    let mut x = vec![BigFloat::zero(prec); n];
    for r in (0..n).rev() {
        let mut s = b[r].clone();
        for c in r + 1..n {
            s = &s - &(&a[r][c] * &x[c]);
        }
        x[r] = &s / &a[r][r];
    }
    Some(x)
}

fn newton_f64(m: &[f64]) -> Result<(Vec<f64>, usize)> {
    let len = m.len();
    let mut psi: Vec<f64> = (0..len).map(|k| std::f64::consts::PI * k as f64 / len as f64).collect();
    let mut f = objective(m, &psi).ok_or_else(|| Error::NoConvergence("infeasible start".into()))?;
    // gradient entries carry rounding noise proportional to Σ m_i m_j
    let weight: f64 = m.iter().sum::<f64>().powi(2);
    let tol = 1e-12 * weight;
    for it in 0..500 {
        let (g, h) = grad_hess_f64(m, &psi);
        let gnorm = g.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        if gnorm < tol {
            return Ok((psi, it));
        }
        let neg: Vec<f64> = g.iter().map(|x| -x).collect();
        let mut d = solve_f64(h, neg).unwrap_or_else(|| g.clone());
        let slope: f64 = d.iter().zip(&g).map(|(a, b)| a * b).sum();
        if !(slope > 0.0) {
            // not an ascent direction: fall back to the gradient
            d = g.clone();
        }
        let slope: f64 = d.iter().zip(&g).map(|(a, b)| a * b).sum();
        let mut t = 1.0;
        loop {
            let mut trial = psi.clone();
            for k in 1..len {
                trial[k] += t * d[k - 1];
            }
            if let Some(ft) = objective(m, &trial) {
                if ft >= f + 1e-4 * t * slope {
                    psi = trial;
                    f = ft;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-20 && gnorm < 1e-6 * weight {
                // stalled at the noise floor; full-precision Newton takes over
                return Ok((psi, it));
            }
            if t < 1e-20 {
                return Err(Error::NoConvergence(format!(
                    "line search stalled at iteration {it} with gradient {gnorm:e}"
                )));
            }
        }
    }
    Err(Error::NoConvergence("damped Newton exhausted its iteration budget".into()))
}

/// Angles ψ_0 = 0 < ψ_1 < … < ψ_n < π of the critical point, for arbitrary
/// positive multiplicities.
pub fn locus_angles(mults: &[f64], precision: usize) -> Result<(Vec<BigFloat>, LocusDiagnostics)> {
    if mults.len() < 2 {
        return Err(Error::InvalidInput("at least two multiplicities are required".into()));
    }
    if let Some(bad) = mults.iter().find(|x| !(**x > 0.0) || !x.is_finite()) {
        return Err(Error::InvalidInput(format!("multiplicity {bad} is not positive")));
    }
    let (start, f64_iterations) = newton_f64(mults)?;
    let wp = precision + 32;
    let mb: Vec<BigFloat> = mults.iter().map(|x| BigFloat::from_f64(*x, wp)).collect();
    let mut psi: Vec<BigFloat> = start.iter().map(|x| BigFloat::from_f64(*x, wp)).collect();
    psi[0] = BigFloat::zero(wp);
    let n = psi.len() - 1;
    let target = -(precision as f64 - 32.0);
    let mut gradient_log2 = f64::INFINITY;
    for it in 0..64 {
        let mut g = vec![BigFloat::zero(wp); n];
        let mut h = vec![vec![BigFloat::zero(wp); n]; n];
        for k in 1..=n {
            for i in 0..=n {
                if i == k {
                    continue;
                }
                let d = &psi[k] - &psi[i];
                let (s, c) = (d.sin(), d.cos());
                let w = &mb[i] * &mb[k];
                g[k - 1] = &g[k - 1] + &(&w * &(&c / &s));
                let csc2 = &w / &(&s * &s);
                h[k - 1][k - 1] = &h[k - 1][k - 1] - &csc2;
                if i >= 1 {
                    h[k - 1][i - 1] = &h[k - 1][i - 1] + &csc2;
                }
            }
        }
        gradient_log2 = g.iter().map(|x| x.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
        if gradient_log2 < target {
            let angles = psi.into_iter().map(|x| x.with_precision(precision)).collect();
            return Ok((
                angles,
                LocusDiagnostics {
                    f64_iterations,
                    refine_iterations: it,
                    gradient_log2,
                },
            ));
        }
        let neg: Vec<BigFloat> = g.iter().map(|x| -x).collect();
        let d = solve_big(h, neg).ok_or_else(|| Error::NoConvergence("singular Hessian".into()))?;
        for k in 1..=n {
            psi[k] = &psi[k] + &d[k - 1];
        }
    }
    Err(Error::NoConvergence(format!(
        "refinement stopped with gradient 2^{gradient_log2:.1}"
    )))
}

/// Critical point as a configuration (integer multiplicities only).
pub fn solve_general_locus(mults: &[f64], precision: usize) -> Result<Configuration> {
    let mut ints = Vec::with_capacity(mults.len());
    for &x in mults {
        if x.fract() != 0.0 || x < 1.0 || x > u32::MAX as f64 {
            return Err(Error::NonIntegerMultiplicity(x));
        }
        ints.push(x as u32);
    }
    let (angles, _) = locus_angles(mults, precision)?;
    let lines = angles.into_iter().zip(&ints).map(|(phi, &m)| Line::from_phi(m, phi)).collect();
    Ok(Configuration::assemble(Kind::General, ints[0], None, (ints.len() - 1) as u32, precision, lines))
}
