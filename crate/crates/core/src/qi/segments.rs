//! Closed-form predictions for stretches of the Hilbert coefficients.
//!
//! Each formula covers a range of degrees and holds under its own
//! hypotheses (parity of n, the relation between r and m+n, symmetry of the
//! arrangement under α ↦ −α, or the arrangement being A_(m,1^n) itself).
//! Rational forms are written as Σ c_j t^{e_j} / (1−t²)² and restricted to
//! the covered degrees.

use std::collections::BTreeMap;

use serde::Serialize;

use super::hilbert::r_parameter;
use crate::config::{Configuration, Kind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentFormula {
    /// b_k = 1 for even k ≤ n, 0 for odd k ≤ n.
    InitialParity,
    /// The same segment as (1 − t^{2[(n+2)/2]})/(1 − t²).
    InitialRational,
    /// b_{2m+n−1} = m (n even), b_{2m+n−2} = m − 1 (n odd).
    FirstOddJump,
    /// b_i = i+1−m−n for odd i ≥ 2m+n−1.
    OddTail,
    /// Odd degrees from 2m+n+1 (n even) or 2m+n (n odd) to 2m+2n−3.
    OddMiddleRational,
    /// b_i = i+1−m−n for even i ≥ 2(m+n).
    EvenTail,
    /// t^{2m+2n−1}(c − (c−1)t)/(1−t)² with c = m+n.
    TailRational,
    /// b_{2(m+n−1)} = m+n for A_(m,1^n), m+n−1 otherwise.
    CriticalCoefficient,
    /// Odd degrees n < i < 2m+n when 2r ≤ m+n.
    OddSegmentByR,
    OddSegmentByRRational,
    /// b_{2(m+n−s)} = 2(m+n−s)−m−n+2 for 1 ≤ s ≤ [n/2], A_(m,1^n) only.
    EvenUpperAm1n,
    EvenUpperAm1nRational,
    /// b_{2(m+n−s)} = m+n−s−[n/2]+1 for [n/2] < s ≤ min(n, m+[(n+1)/2]).
    EvenUpperSymmetric,
    /// Even degrees 2m+2 … 2m+n−2 (n ≤ 2m+1).
    EvenMiddleSymmetricRational,
    /// Even degrees n+1 … 2m+n−2 (n ≥ 2m+1).
    EvenMiddleSymmetricRationalWide,
    /// b_i for n ≤ i ≤ 2m.
    InitialSymmetric,
    InitialSymmetricRational,
    /// b_i = (i+1)/2 − [(n+1)/2] for odd i in [max(2m−1, n−1), 2m+n).
    OddMiddleSymmetric,
    /// Odd degrees from 2m+1 (2m ≥ n).
    OddMiddleSymmetricRational,
    /// Odd degrees from n+1 (2m ≤ n).
    OddMiddleSymmetricRationalWide,
}

pub const ALL_FORMULAS: [SegmentFormula; 20] = [
    SegmentFormula::InitialParity,
    SegmentFormula::InitialRational,
    SegmentFormula::FirstOddJump,
    SegmentFormula::OddTail,
    SegmentFormula::OddMiddleRational,
    SegmentFormula::EvenTail,
    SegmentFormula::TailRational,
    SegmentFormula::CriticalCoefficient,
    SegmentFormula::OddSegmentByR,
    SegmentFormula::OddSegmentByRRational,
    SegmentFormula::EvenUpperAm1n,
    SegmentFormula::EvenUpperAm1nRational,
    SegmentFormula::EvenUpperSymmetric,
    SegmentFormula::EvenMiddleSymmetricRational,
    SegmentFormula::EvenMiddleSymmetricRationalWide,
    SegmentFormula::InitialSymmetric,
    SegmentFormula::InitialSymmetricRational,
    SegmentFormula::OddMiddleSymmetric,
    SegmentFormula::OddMiddleSymmetricRational,
    SegmentFormula::OddMiddleSymmetricRationalWide,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleContext {
    pub m: u32,
    pub n: u32,
    /// Number of distinct α_i².
    pub r: u32,
    /// The α set is invariant under α ↦ −α.
    pub symmetric: bool,
    /// The arrangement is A_(m,1^n).
    pub am1n: bool,
}

impl OracleContext {
    pub fn from_configuration(c: &Configuration) -> Result<Self> {
        if !c.is_type_m1n() {
            return Err(Error::InvalidInput("configuration is not of type (m,1^n)".into()));
        }
        let r = r_parameter(c)? as u32;
        let n = (c.lines.len() - 1) as u32;
        let symmetric = match &c.r_poly {
            Some(p) => {
                let deg = p.degree().unwrap_or(0);
                (0..=deg).all(|i| (deg - i) % 2 == 0 || p.coeff(i) == num_traits::Zero::zero())
            }
            None => {
                // α ↦ −α pairs up the squares, so only r values are needed
                let alphas = c.simple_alphas()?;
                let tol = -(c.precision as f64) / 2.0;
                alphas.iter().all(|a| {
                    let neg = -a;
                    alphas.iter().any(|b| (&neg - b).log2_abs() - a.log2_abs().max(0.0) < tol)
                })
            }
        };
        Ok(OracleContext {
            m: c.lines[0].mult,
            n,
            r,
            symmetric,
            am1n: matches!(c.kind, Kind::Am1n),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SegmentPrediction {
    pub formula: SegmentFormula,
    pub values: BTreeMap<usize, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentMismatch {
    pub formula: SegmentFormula,
    pub degree: usize,
    pub predicted: i64,
    pub computed: i64,
}

/// Σ (c/2) t^e / (1−t²)² on lo..=hi, optionally one parity only. The
/// coefficients are given doubled so half-integers stay exact.
fn rational_segment(terms: &[(i64, i64)], lo: i64, hi: i64, parity: Option<i64>, d_max: usize) -> Result<BTreeMap<usize, i64>> {
    let d = d_max as i64;
    let mut num = vec![0i64; d_max + 1];
    for &(e, c) in terms {
        if (0..=d).contains(&e) {
            num[e as usize] += c;
        }
    }
    let mut out = BTreeMap::new();
    for i in lo.max(0)..=hi.min(d) {
        if parity.is_some_and(|p| i.rem_euclid(2) != p) {
            continue;
        }
        let twice: i64 = (0..=i / 2).map(|k| num[(i - 2 * k) as usize] * (k + 1)).sum();
        if twice % 2 != 0 {
            return Err(Error::IdentityFailed(format!("half-integer prediction at degree {i}")));
        }
        out.insert(i as usize, twice / 2);
    }
    Ok(out)
}

fn out_of_range(f: SegmentFormula, why: &str) -> Error {
    Error::OutOfRange(format!("{f:?}: {why}"))
}

/// Predicted coefficients of one formula, up to degree d_max.
pub fn predict(f: SegmentFormula, ctx: &OracleContext, d_max: usize) -> Result<BTreeMap<usize, i64>> {
    use SegmentFormula::*;
    let (m, n, r) = (ctx.m as i64, ctx.n as i64, ctx.r as i64);
    let even = n % 2 == 0;
    let k = n / 2;
    let big_k = (n + 1) / 2;
    let d = d_max as i64;
    let within = |it: Vec<(i64, i64)>| -> BTreeMap<usize, i64> {
        it.into_iter().filter(|(i, _)| (0..=d).contains(i)).map(|(i, v)| (i as usize, v)).collect()
    };
    // doubled coefficients
    let t2 = |v: &[(i64, i64)]| -> Vec<(i64, i64)> { v.iter().map(|&(e, c)| (e, 2 * c)).collect() };
    let need_sym = || if ctx.symmetric { Ok(()) } else { Err(out_of_range(f, "arrangement is not symmetric")) };
    let need_am1n = || if ctx.am1n { Ok(()) } else { Err(out_of_range(f, "arrangement is not A_(m,1^n)")) };
    match f {
        InitialParity => Ok(within((0..=n).map(|i| (i, if i % 2 == 0 { 1 } else { 0 })).collect())),
        InitialRational => {
            let e = 2 * ((n + 2) / 2);
            rational_segment(&t2(&[(0, 1), (2, -1), (e, -1), (e + 2, 1)]), 0, n, None, d_max)
        }
        FirstOddJump => Ok(if even {
            within(vec![(2 * m + n - 1, m)])
        } else {
            within(vec![(2 * m + n - 2, m - 1)])
        }),
        OddTail => Ok(within((2 * m + n - 1..=d).filter(|i| i % 2 == 1).map(|i| (i, i + 1 - m - n)).collect())),
        OddMiddleRational => {
            let terms = if even {
                [(2 * m + n + 1, m + 2), (2 * m + n + 3, -m), (2 * m + 2 * n - 1, -(m + n)), (2 * m + 2 * n + 1, m + n - 2)]
            } else {
                [(2 * m + n, m + 1), (2 * m + n + 2, -(m - 1)), (2 * m + 2 * n - 1, -(m + n)), (2 * m + 2 * n + 1, m + n - 2)]
            };
            let lo = if even { 2 * m + n + 1 } else { 2 * m + n };
            rational_segment(&t2(&terms), lo, 2 * m + 2 * n - 3, Some(1), d_max)
        }
        EvenTail => Ok(within((2 * (m + n)..=d).filter(|i| i % 2 == 0).map(|i| (i, i + 1 - m - n)).collect())),
        TailRational => {
            let a = 2 * m + 2 * n - 1;
            let c = m + n;
            rational_segment(&t2(&[(a, c), (a + 1, c + 1), (a + 2, 2 - c), (a + 3, -(c - 1))]), a, d, None, d_max)
        }
        CriticalCoefficient => Ok(within(vec![(2 * (m + n - 1), if ctx.am1n { m + n } else { m + n - 1 })])),
        OddSegmentByR | OddSegmentByRRational => {
            if 2 * r > m + n {
                return Err(out_of_range(f, "2r > m+n"));
            }
            if f == OddSegmentByR {
                let vals = (n + 1..2 * m + n)
                    .filter(|i| i % 2 == 1)
                    .map(|i| {
                        let v = if i < 2 * r {
                            0
                        } else if i < 2 * m + 2 * n - 2 * r {
                            (i + 1) / 2 - r
                        } else {
                            i + 1 - m - n
                        };
                        (i, v)
                    })
                    .collect();
                return Ok(within(vals));
            }
            if even {
                let terms = [(2 * r + 1, 1), (2 * n + 2 * m - 2 * r + 1, 1), (2 * m + n + 1, -(m + 2)), (2 * m + n + 3, m)];
                rational_segment(&t2(&terms), n + 1, 2 * m + n - 1, Some(1), d_max)
            } else {
                let terms = [(2 * r + 1, 1), (2 * n + 2 * m - 2 * r + 1, 1), (2 * m + n, -(m + 1)), (2 * m + n + 2, m - 1)];
                rational_segment(&t2(&terms), n + 2, 2 * m + n - 2, Some(1), d_max)
            }
        }
        EvenUpperAm1n => {
            need_am1n()?;
            Ok(within((1..=k).map(|s| (2 * (m + n - s), 2 * (m + n - s) - m - n + 2)).collect()))
        }
        EvenUpperAm1nRational => {
            need_am1n()?;
            let terms = if even {
                [(2 * m + n, m + 2), (2 * m + n + 2, -m), (2 * m + 2 * n, -(m + n + 2)), (2 * m + 2 * n + 2, m + n)]
            } else {
                [(2 * m + n + 1, m + 3), (2 * m + n + 3, -(m + 1)), (2 * m + 2 * n, -(m + n + 2)), (2 * m + 2 * n + 2, m + n)]
            };
            rational_segment(&t2(&terms), 2 * m + n, 2 * m + 2 * n - 2, Some(0), d_max)
        }
        EvenUpperSymmetric => {
            need_sym()?;
            Ok(within((k + 1..=n.min(m + big_k)).map(|s| (2 * (m + n - s), m + n - s - k + 1)).collect()))
        }
        EvenMiddleSymmetricRational => {
            need_sym()?;
            if n > 2 * m + 1 {
                return Err(out_of_range(f, "n > 2m+1"));
            }
            if even {
                let terms = [(2 * m + 2, m - k + 2), (2 * m + 4, -(m - k + 1)), (2 * m + n, -(m + 1)), (2 * m + n + 2, m)];
                rational_segment(&t2(&terms), 2 * m + 2, 2 * m + n - 2, Some(0), d_max)
            } else {
                let terms = [(2 * m + 2, 2 * m - n + 5), (2 * m + 4, -(2 * m - n + 3)), (2 * m + n + 1, -2 * (m + 2)), (2 * m + n + 3, 2 * (m + 1))];
                rational_segment(&terms, 2 * m + 2, 2 * m + n - 1, Some(0), d_max)
            }
        }
        EvenMiddleSymmetricRationalWide => {
            need_sym()?;
            if n < 2 * m + 1 {
                return Err(out_of_range(f, "n < 2m+1"));
            }
            if even {
                let terms = [(n + 2, 2), (n + 4, -1), (2 * m + n, -(m + 1)), (2 * m + n + 2, m)];
                rational_segment(&t2(&terms), n + 1, 2 * m + n - 2, Some(0), d_max)
            } else {
                let terms = [(n + 1, 2), (n + 3, -1), (2 * m + n + 1, -(m + 2)), (2 * m + n + 3, m + 1)];
                rational_segment(&t2(&terms), n + 1, 2 * m + n - 1, Some(0), d_max)
            }
        }
        InitialSymmetric => {
            need_sym()?;
            Ok(within(
                (n..=2 * m)
                    .map(|i| (i, if i % 2 == 1 { (i + 1) / 2 - big_k } else { i / 2 + 1 - k }))
                    .collect(),
            ))
        }
        InitialSymmetricRational => {
            need_sym()?;
            if n > 2 * m {
                return Err(out_of_range(f, "n > 2m"));
            }
            if even {
                let l = m - k;
                let terms = [(n + 1, 2), (n + 2, 4), (n + 4, -2), (2 * m + 1, -2 * (l + 1)), (2 * m + 3, 2 * l), (2 * m + 2, -2 * (l + 2)), (2 * m + 4, 2 * (l + 1))];
                rational_segment(&terms, n + 1, 2 * m, None, d_max)
            } else {
                let h = (n + 1) / 2;
                let terms = [(n + 1, 4), (n + 2, 2), (n + 3, -2), (2 * m + 1, -2 * (m - h + 1)), (2 * m + 3, 2 * (m - h)), (2 * m + 2, -(2 * m - n + 5)), (2 * m + 4, 2 * m - n + 3)];
                rational_segment(&terms, n + 1, 2 * m, None, d_max)
            }
        }
        OddMiddleSymmetric => {
            need_sym()?;
            Ok(within(
                ((2 * m - 1).max(n - 1)..2 * m + n)
                    .filter(|i| i % 2 == 1)
                    .map(|i| (i, (i + 1) / 2 - big_k))
                    .collect(),
            ))
        }
        OddMiddleSymmetricRational => {
            need_sym()?;
            if 2 * m < n {
                return Err(out_of_range(f, "2m < n"));
            }
            if even {
                let terms = [(2 * m + 1, m - k + 1), (2 * m + 3, k - m), (2 * m + n + 1, -(m + 1)), (2 * m + n + 3, m)];
                rational_segment(&t2(&terms), 2 * m + 1, 2 * m + n - 1, Some(1), d_max)
            } else {
                let terms = [(2 * m + 1, m - big_k + 1), (2 * m + 3, big_k - m), (2 * m + n, -m), (2 * m + n + 2, m - 1)];
                rational_segment(&t2(&terms), 2 * m + 1, 2 * m + n - 2, Some(1), d_max)
            }
        }
        OddMiddleSymmetricRationalWide => {
            need_sym()?;
            if 2 * m > n {
                return Err(out_of_range(f, "2m > n"));
            }
            if even {
                let terms = [(n + 1, 1), (2 * m + n + 1, -(m + 1)), (2 * m + n + 3, m)];
                rational_segment(&t2(&terms), n + 1, 2 * m + n - 1, Some(1), d_max)
            } else {
                let terms = [(n + 2, 1), (2 * m + n, -m), (2 * m + n + 2, m - 1)];
                rational_segment(&t2(&terms), n + 1, 2 * m + n - 2, Some(1), d_max)
            }
        }
    }
}

/// Every formula whose hypotheses hold for ctx.
pub fn segment_oracles(ctx: &OracleContext, d_max: usize) -> Result<Vec<SegmentPrediction>> {
    let mut out = Vec::new();
    for f in ALL_FORMULAS {
        match predict(f, ctx, d_max) {
            Ok(values) => out.push(SegmentPrediction { formula: f, values }),
            Err(Error::OutOfRange(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Disagreements between the applicable predictions and computed b_i.
pub fn check_segments(ctx: &OracleContext, coeffs: &[i64]) -> Result<Vec<SegmentMismatch>> {
    let d_max = coeffs.len().saturating_sub(1);
    let mut bad = Vec::new();
    for p in segment_oracles(ctx, d_max)? {
        for (&i, &v) in &p.values {
            if coeffs[i] != v {
                bad.push(SegmentMismatch {
                    formula: p.formula,
                    degree: i,
                    predicted: v,
                    computed: coeffs[i],
                });
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{build_am1n, random_type_m1n};
    use crate::qi::hilbert::hilbert_coefficients;

    #[test]
    fn am1n_and_random_agree() {
        for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 4), (1, 5)] {
            let c = build_am1n(m, n, 128).unwrap();
            let ctx = OracleContext::from_configuration(&c).unwrap();
            assert!(ctx.symmetric && ctx.am1n);
            let b = hilbert_coefficients(&c, (2 * m + 2 * n + 4) as usize).unwrap();
            assert_eq!(check_segments(&ctx, &b).unwrap(), vec![]);
        }
        let c = random_type_m1n(2, 3, 4, 128).unwrap();
        let ctx = OracleContext::from_configuration(&c).unwrap();
        let b = hilbert_coefficients(&c, 14).unwrap();
        assert_eq!(check_segments(&ctx, &b).unwrap(), vec![]);
    }

    #[test]
    fn hypotheses() {
        let ctx = OracleContext { m: 1, n: 6, r: 4, symmetric: false, am1n: false };
        assert!(matches!(predict(SegmentFormula::OddSegmentByR, &ctx, 20), Err(Error::OutOfRange(_))));
        assert!(matches!(predict(SegmentFormula::InitialSymmetric, &ctx, 20), Err(Error::OutOfRange(_))));
        let p = predict(SegmentFormula::InitialParity, &ctx, 20).unwrap();
        assert_eq!(p.values().copied().collect::<Vec<_>>(), vec![1, 0, 1, 0, 1, 0, 1]);
    }
}
