//! Dimensions of homogeneous quasi-invariants for type-(m,1^n) arrangements.
//!
//! Write p = Σ a_i x^{d−i} y^i. The multiplicity-m line β_0 = (0,1) kills the
//! coefficients with odd i ≤ 2m−1. A simple line β = (1, α) imposes a single
//! functional: ∂_β p restricted to the line equals t^{d−1} g_p(α) with
//! g_p(α) = Σ_i a_i (−1)^{d−i−1} [(d−i) α^{d−i−1} − i α^{d−i+1}].
//! All simple lines together impose R(α) | g_p(α) where R = ∏ (α − α_j).

use num_traits::Zero;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{BigFloat, RatPoly, Rational};

/// Monomial indices i of x^{d−i} y^i left free by the β_0 constraints.
pub fn free_indices(m: u32, d: usize) -> Vec<usize> {
    (0..=d).filter(|&i| !(i % 2 == 1 && i < 2 * m as usize)).collect()
}

/// g for the single monomial x^{d−i} y^i.
pub fn g_monomial(d: usize, i: usize) -> RatPoly {
    let mut v = vec![Rational::zero(); d + 2];
    let sign = if (d as i64 - i as i64 - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    if d > i {
        v[d - i - 1] += Rational::from_integer(((d - i) as i64 * sign).into());
    }
    v[d - i + 1] -= Rational::from_integer((i as i64 * sign).into());
    RatPoly::new(v)
}

/// Rank of a dense rational matrix by Gauss-Jordan elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let Some(cols) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i == rank || rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for k in c..cols {
                let t = &f * &rows[rank][k];
                rows[i][k] -= t;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exact dimension from the multiplicity m of β_0 and R(α).
pub fn qi_dimension_from_r(m: u32, r: &RatPoly, d: usize) -> usize {
    let free = free_indices(m, d);
    let deg_r = r.degree().unwrap_or(0);
    if deg_r == 0 {
        return free.len();
    }
    let rows: Vec<Vec<Rational>> = free
        .iter()
        .map(|&i| {
            let rem = g_monomial(d, i).rem(r);
            (0..deg_r).map(|k| rem.coeff(k)).collect()
        })
        .collect();
    free.len() - rational_rank(rows)
}

/// Dimension of degree-d quasi-invariants via the exact remainder map.
pub fn qi_dimension_exact(c: &Configuration, d: usize) -> Result<usize> {
    let r = c.r_poly.as_ref().ok_or(Error::MissingExactData("R(alpha)"))?;
    if !c.is_type_m1n() {
        return Err(Error::InvalidInput("configuration is not of type (m,1^n)".into()));
    }
    Ok(qi_dimension_from_r(c.lines[0].mult, r, d))
}

/// Numeric rank with full pivoting. Pivots below 2^threshold_log2 times the
/// largest entry are discarded; the decision is accepted only if the last
/// kept pivot exceeds the first discarded one by at least 2^64.
pub fn numeric_rank(mut a: Vec<Vec<BigFloat>>, threshold_log2: f64, degree: usize) -> Result<usize> {
    let rows = a.len();
    let Some(cols) = a.first().map(|r| r.len()) else {
        return Ok(0);
    };
    // equilibrate rows, then columns, by powers of two
    for row in a.iter_mut() {
        let mx = row.iter().map(|x| x.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
        if mx.is_finite() {
            let s = -(mx.floor() as i32);
            for x in row.iter_mut() {
                *x = x.ldexp(s);
            }
        }
    }
    for c in 0..cols {
        let mx = (0..rows).map(|r| a[r][c].log2_abs()).fold(f64::NEG_INFINITY, f64::max);
        if mx.is_finite() {
            let s = -(mx.floor() as i32);
            for row in a.iter_mut() {
                row[c] = row[c].ldexp(s);
            }
        }
    }
    let max0 = a
        .iter()
        .flat_map(|r| r.iter().map(|x| x.log2_abs()))
        .fold(f64::NEG_INFINITY, f64::max);
    if max0 == f64::NEG_INFINITY {
        return Ok(0);
    }
    let cutoff = max0 + threshold_log2;
    let mut row_idx: Vec<usize> = (0..rows).collect();
    let mut col_idx: Vec<usize> = (0..cols).collect();
    let mut last_kept = max0;
    let limit = rows.min(cols);
    for step in 0..limit {
        let mut best = (step, step, f64::NEG_INFINITY);
        for (ri, &r) in row_idx.iter().enumerate().skip(step) {
            for (ci, &c) in col_idx.iter().enumerate().skip(step) {
                let v = a[r][c].log2_abs();
                if v > best.2 {
                    best = (ri, ci, v);
                }
            }
        }
        if best.2 < cutoff {
            let margin = last_kept - best.2;
            if margin < 64.0 {
                return Err(Error::IllConditioned {
                    degree,
                    margin_log2: margin,
                });
            }
            return Ok(step);
        }
        row_idx.swap(step, best.0);
        col_idx.swap(step, best.1);
        last_kept = best.2;
        let pr = row_idx[step];
        let pc = col_idx[step];
        let pivot = a[pr][pc].clone();
        for &r in row_idx.iter().skip(step + 1) {
            if a[r][pc].is_zero() {
                continue;
            }
            let f = &a[r][pc] / &pivot;
            for &c in col_idx.iter().skip(step) {
                let t = &f * &a[pr][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    Ok(limit)
}

/// Dimension of degree-d quasi-invariants from the line angles.
///
/// Row j is s^{d+1} g_i(α_j) with α = c/s, (c, s) = (cos φ_j, sin φ_j):
/// (−1)^{d−i−1} c^{d−i−1} s^i [(d−i) s² − i c²]. Every factor but the bracket
/// is a product, so only the bracket can cancel; brackets (and cosines) that
/// vanish to working precision are set to zero before equilibration.
pub fn qi_dimension_numeric(c: &Configuration, d: usize, precision: usize, threshold_log2: Option<f64>) -> Result<usize> {
    if !c.is_type_m1n() {
        return Err(Error::InvalidInput("configuration is not of type (m,1^n)".into()));
    }
    let m = c.lines[0].mult;
    let free = free_indices(m, d);
    if c.lines.len() == 1 {
        return Ok(free.len());
    }
    let flush = -(precision as f64) + 16.0;
    let rows: Vec<Vec<BigFloat>> = c.lines[1..]
        .iter()
        .map(|l| {
            let phi = l.phi.clone().with_precision(precision);
            let mut cs = phi.cos();
            if cs.log2_abs() < flush {
                cs = BigFloat::zero(precision);
            }
            let sn = phi.sin();
            let (c2, s2) = (&cs * &cs, &sn * &sn);
            free.iter()
                .map(|&i| {
                    if i == d {
                        return &(&cs * &sn.powi(d as u32)) * &BigFloat::from_i64(d as i64, precision);
                    }
                    let a = &s2 * &BigFloat::from_i64((d - i) as i64, precision);
                    let b = &c2 * &BigFloat::from_i64(i as i64, precision);
                    let mut bracket = &a - &b;
                    if bracket.log2_abs() - (&a + &b).log2_abs() < flush {
                        return BigFloat::zero(precision);
                    }
                    if (d - i - 1) % 2 == 1 {
                        bracket = -&bracket;
                    }
                    &(&cs.powi((d - i - 1) as u32) * &sn.powi(i as u32)) * &bracket
                })
                .collect()
        })
        .collect();
    let thr = threshold_log2.unwrap_or(-(precision as f64) / 2.0);
    let rank = numeric_rank(rows, thr, d)?;
    Ok(free.len() - rank)
}

/// Whether p (coefficients a_0..a_d of x^{d−i} y^i) is quasi-invariant for a
/// type-(m,1^n) arrangement with exact R(α).
pub fn is_quasi_invariant(coeffs: &[Rational], m: u32, r: &RatPoly) -> bool {
    let d = coeffs.len() - 1;
    for (i, a) in coeffs.iter().enumerate() {
        if i % 2 == 1 && i < 2 * m as usize && !a.is_zero() {
            return false;
        }
    }
    let mut g = RatPoly::zero();
    for (i, a) in coeffs.iter().enumerate() {
        if !a.is_zero() {
            g = &g + &g_monomial(d, i).scale(a);
        }
    }
    r.degree().unwrap_or(0) == 0 || g.rem(r).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{build_am1n, from_alphas, random_type_m1n};
    use crate::exact::rational::{int, rat};

    #[test]
    fn orthogonal_pair_degree_two() {
        let c = from_alphas(1, &[int(0)], 128).unwrap();
        assert_eq!(qi_dimension_exact(&c, 2).unwrap(), 2);
        assert_eq!(qi_dimension_numeric(&c, 2, 128, None).unwrap(), 2);
    }

    #[test]
    fn am1n_examples() {
        let c = build_am1n(2, 2, 256).unwrap();
        assert_eq!(qi_dimension_exact(&c, 6).unwrap(), 4);
        let c = build_am1n(1, 2, 256).unwrap();
        // b_{2m+n−1} = m for even n
        assert_eq!(qi_dimension_numeric(&c, 3, 256, None).unwrap(), 1);
        for d in 0..=12 {
            assert_eq!(qi_dimension_numeric(&c, d, 256, None).unwrap(), qi_dimension_exact(&c, d).unwrap());
        }
        let r = random_type_m1n(2, 2, 1, 256).unwrap();
        assert_eq!(qi_dimension_exact(&r, 6).unwrap(), 3);
    }

    #[test]
    fn universal_invariants() {
        // x² + y² and ∏ (β_j, x)^{2 m_j}
        let c = from_alphas(2, &[rat(1, 2), rat(-1, 3), int(3)], 128).unwrap();
        let r = c.r_poly.clone().unwrap();
        assert!(is_quasi_invariant(&[int(1), int(0), int(1)], 2, &r));
        // y^4 · ∏ (x + α_j y)^2 as coefficients of x^{d−i} y^i
        let mut p = RatPoly::monomial(4, int(1));
        for a in [rat(1, 2), rat(-1, 3), int(3)] {
            let lin = RatPoly::new(vec![int(1), a]);
            p = &p * &(&lin * &lin);
        }
        let coeffs: Vec<Rational> = (0..=p.degree().unwrap()).map(|i| p.coeff(i)).collect();
        assert!(is_quasi_invariant(&coeffs, 2, &r));
        assert!(!is_quasi_invariant(&[int(1), int(1), int(0)], 2, &r));
    }
}
