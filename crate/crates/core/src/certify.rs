//! Baker-Akhiezer existence conditions in polar (z) and Cartesian forms, and
//! the characterising ODEs for the exact z-chart polynomials.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Configuration, Kind};
use crate::error::{Error, Result};
use crate::exact::{BigComplex, BigFloat, RatPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionForm {
    PolarFirst,
    PolarLocus,
    CartesianFirst,
    CartesianLocus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    First,
    Locus,
}

#[derive(Clone, Debug)]
pub struct ConditionResidual {
    pub line: usize,
    pub order: u32,
    pub form: ConditionForm,
    pub value: BigComplex,
    /// Largest summand magnitude, the natural scale of cancellation.
    pub scale: BigFloat,
    pub precision: usize,
}

impl ConditionResidual {
    pub fn log2(&self) -> f64 {
        self.value.log2_abs()
    }

    /// log2(|value| / max(1, scale)), floored at −2·precision for exact
    /// zeros. The floor at 1 keeps sums of uniformly tiny terms (orthogonal
    /// pairs) from being judged against their own rounding noise.
    pub fn relative_log2(&self) -> f64 {
        let floor = -2.0 * self.precision as f64;
        let v = self.value.log2_abs();
        if v == f64::NEG_INFINITY {
            return floor;
        }
        let s = self.scale.log2_abs().max(0.0);
        (v - s).max(floor)
    }
}

fn check_order(c: &Configuration, j: usize, k: u32) -> Result<()> {
    if j >= c.lines.len() {
        return Err(Error::InvalidInput(format!("line index {j} out of range")));
    }
    if k == 0 || k > c.lines[j].mult {
        return Err(Error::InvalidInput(format!(
            "order {k} outside 1..={} for line {j}",
            c.lines[j].mult
        )));
    }
    Ok(())
}

fn polar(c: &Configuration, j: usize, k: u32, family: Family) -> Result<ConditionResidual> {
    check_order(c, j, k)?;
    let prec = c.precision;
    let zj = &c.lines[j].z;
    let tol = -(prec as f64) / 2.0;
    let mut acc = BigComplex::zero(prec);
    let mut scale = BigFloat::zero(prec);
    for (i, li) in c.lines.iter().enumerate() {
        if i == j {
            continue;
        }
        let diff = &li.z - zj;
        if diff.log2_abs() < tol {
            return Err(Error::Collinear(i, j));
        }
        let ratio = &(&li.z + zj) / &diff;
        let mi = BigFloat::from_i64(li.mult as i64, prec);
        let term = match family {
            // m_i ((z_i + z_j)/(z_i − z_j))^{2k−1}
            Family::First => ratio.powi(2 * k - 1).scale(&mi),
            // m_i (m_i + 1) z_i (z_i + z_j)^{2k−1} / (z_i − z_j)^{2k+1}
            Family::Locus => {
                let w = BigFloat::from_i64((li.mult as i64) * (li.mult as i64 + 1), prec);
                let t = &ratio.powi(2 * k - 1) * &(&li.z / &(&diff * &diff));
                t.scale(&w)
            }
        };
        let mag = term.abs();
        if mag > scale {
            scale = mag;
        }
        acc = &acc + &term;
    }
    Ok(ConditionResidual {
        line: j,
        order: k,
        form: match family {
            Family::First => ConditionForm::PolarFirst,
            Family::Locus => ConditionForm::PolarLocus,
        },
        value: acc,
        scale,
        precision: prec,
    })
}

/// Σ_{i≠j} m_i (z_i + z_j)^{2k−1} / (z_i − z_j)^{2k−1}
pub fn first_condition_residual(c: &Configuration, j: usize, k: u32) -> Result<ConditionResidual> {
    polar(c, j, k, Family::First)
}

/// Σ_{i≠j} m_i (m_i + 1) z_i (z_i + z_j)^{2k−1} / (z_i − z_j)^{2k+1}
pub fn locus_condition_residual(c: &Configuration, j: usize, k: u32) -> Result<ConditionResidual> {
    polar(c, j, k, Family::Locus)
}

/// The same conditions written with unit normals α_i = (cos φ_i, sin φ_i)
/// and the point x = (−sin φ_j, cos φ_j) on line j:
/// Σ m_i (α_i,α_j)^{2k−1}/(α_i,x)^{2k−1} and
/// Σ m_i (m_i+1)(α_i,α_i)(α_i,α_j)^{2k−1}/(α_i,x)^{2k+1}.
pub fn cartesian_condition_residual(c: &Configuration, j: usize, k: u32, which: Family) -> Result<ConditionResidual> {
    check_order(c, j, k)?;
    let prec = c.precision;
    let unit = |phi: &BigFloat| (phi.cos(), phi.sin());
    let (cj, sj) = unit(&c.lines[j].phi);
    let x = (-&sj, cj.clone());
    let tol = -(prec as f64) / 2.0;
    let mut acc = BigFloat::zero(prec);
    let mut scale = BigFloat::zero(prec);
    for (i, li) in c.lines.iter().enumerate() {
        if i == j {
            continue;
        }
        let (ci, si) = unit(&li.phi);
        let aa = &(&ci * &cj) + &(&si * &sj);
        let ax = &(&ci * &x.0) + &(&si * &x.1);
        if ax.log2_abs() < tol {
            return Err(Error::Collinear(i, j));
        }
        let term = match which {
            Family::First => {
                let r = &aa / &ax;
                &r.powi(2 * k - 1) * &BigFloat::from_i64(li.mult as i64, prec)
            }
            Family::Locus => {
                let norm = &(&ci * &ci) + &(&si * &si);
                let w = BigFloat::from_i64((li.mult as i64) * (li.mult as i64 + 1), prec);
                let t = &(&aa.powi(2 * k - 1) / &ax.powi(2 * k + 1)) * &norm;
                &t * &w
            }
        };
        let mag = term.abs();
        if mag > scale {
            scale = mag;
        }
        acc = &acc + &term;
    }
    Ok(ConditionResidual {
        line: j,
        order: k,
        form: match which {
            Family::First => ConditionForm::CartesianFirst,
            Family::Locus => ConditionForm::CartesianLocus,
        },
        value: BigComplex::from_real(acc),
        scale,
        precision: prec,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionRecord {
    pub line: usize,
    pub order: u32,
    pub form: ConditionForm,
    pub residual_log2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BACertificate {
    pub digest: String,
    pub max_residual_log2: f64,
    pub threshold_log2: f64,
    pub verdict: Verdict,
    pub precision_bits: usize,
    pub per_condition: Vec<ConditionRecord>,
}

impl BACertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Every (j, k ≤ m_j) residual of both families, in polar and Cartesian
/// form; passes iff each relative residual is below 2^threshold_log2.
pub fn certify_ba(c: &Configuration, threshold_log2: f64) -> Result<BACertificate> {
    let mut jobs = Vec::new();
    for (j, l) in c.lines.iter().enumerate() {
        for k in 1..=l.mult {
            jobs.push((j, k));
        }
    }
    let records: Vec<Result<Vec<ConditionRecord>>> = jobs
        .par_iter()
        .map(|&(j, k)| {
            let rs = [
                first_condition_residual(c, j, k)?,
                locus_condition_residual(c, j, k)?,
                cartesian_condition_residual(c, j, k, Family::First)?,
                cartesian_condition_residual(c, j, k, Family::Locus)?,
            ];
            Ok(rs
                .iter()
                .map(|r| ConditionRecord {
                    line: j,
                    order: k,
                    form: r.form,
                    residual_log2: r.relative_log2(),
                })
                .collect())
        })
        .collect();
    let mut per_condition = Vec::new();
    for r in records {
        per_condition.extend(r?);
    }
    let max = per_condition
        .iter()
        .map(|r| r.residual_log2)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(BACertificate {
        digest: c.digest(),
        max_residual_log2: max,
        threshold_log2,
        verdict: if max < threshold_log2 { Verdict::Pass } else { Verdict::Fail },
        precision_bits: c.precision,
        per_condition,
    })
}

/// The certificate verdict alone, stopping at the first condition whose
/// relative residual reaches 2^threshold_log2.
pub fn ba_verdict(c: &Configuration, threshold_log2: f64) -> Result<Verdict> {
    for (j, l) in c.lines.iter().enumerate() {
        for k in 1..=l.mult {
            let rs = [
                first_condition_residual(c, j, k)?,
                locus_condition_residual(c, j, k)?,
                cartesian_condition_residual(c, j, k, Family::First)?,
                cartesian_condition_residual(c, j, k, Family::Locus)?,
            ];
            if rs.iter().any(|r| r.relative_log2() >= threshold_log2) {
                return Ok(Verdict::Fail);
            }
        }
    }
    Ok(Verdict::Pass)
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn poly(c: &[i64]) -> RatPoly {
    RatPoly::new(c.iter().map(|&x| q(x)).collect())
}

/// w(w−1)P″ − ((n−1)(w−1) − m(w+1))P′ − mnP with z_0 = 1.
pub fn ode_residual_am1n_poly(p: &RatPoly, m: u32, n: u32) -> RatPoly {
    let (m, n) = (m as i64, n as i64);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let a = poly(&[0, -1, 1]);
    // (n−1)(w−1) − m(w+1)
    let b = poly(&[-(n - 1) - m, (n - 1) - m]);
    &(&(&a * &d2) - &(&b * &d1)) - &p.scale(&q(m * n))
}

/// w(w²−1)P″ − ((n−1)(w²−1) − m(w+1)² − m̃(w−1)²)P′ − (n(m+m̃)w + n(m−m̃))P.
pub fn ode_residual_two_mult_poly(p: &RatPoly, m: u32, mtilde: u32, n: u32) -> RatPoly {
    let (m, mt, n) = (m as i64, mtilde as i64, n as i64);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let a = poly(&[0, -1, 0, 1]);
    let b = &(&poly(&[-(n - 1), 0, n - 1]) - &poly(&[m, 2 * m, m])) - &poly(&[mt, -2 * mt, mt]);
    let c = poly(&[n * (m - mt), n * (m + mt)]);
    &(&(&a * &d2) - &(&b * &d1)) - &(&c * p)
}

/// P of the unexpanded configuration: for a T_q expansion P_q(w) = P(w^q),
/// so P is read off every q-th coefficient.
fn base_p_poly(c: &Configuration, want: &Kind) -> Result<RatPoly> {
    let (base, q) = c.kind.base();
    if base != want {
        return Err(Error::InvalidInput(format!("configuration is not of kind {}", want.tag())));
    }
    let p = c.p_poly.as_ref().ok_or(Error::MissingExactData("P(w)"))?;
    if q == 1 {
        return Ok(p.clone());
    }
    let q = q as usize;
    let deg = p.degree().unwrap_or(0);
    if (0..=deg).any(|i| i % q != 0 && !p.coeff(i).is_zero()) {
        return Err(Error::IdentityFailed("expanded P(w) is not a polynomial in w^q".into()));
    }
    Ok(RatPoly::new((0..=deg / q).map(|i| p.coeff(i * q)).collect()))
}

/// Residual of the second-order equation for P; T_q expansions are
/// checked through P(w^q).
pub fn ode_residual_am1n(c: &Configuration) -> Result<RatPoly> {
    let p = base_p_poly(c, &Kind::Am1n)?;
    Ok(ode_residual_am1n_poly(&p, c.m, c.n))
}

pub fn ode_residual_two_mult(c: &Configuration) -> Result<RatPoly> {
    let p = base_p_poly(c, &Kind::TwoMult)?;
    Ok(ode_residual_two_mult_poly(&p, c.m, c.mtilde.unwrap_or(0), c.n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{build_am1n, build_two_mult, random_type_m1n};
    use crate::exact::rational::rat;

    #[test]
    fn am1n_two_two_residuals() {
        let c = build_am1n(2, 2, 256).unwrap();
        let r0 = first_condition_residual(&c, 0, 1).unwrap();
        assert!(r0.relative_log2() < -240.0);
        let r1 = first_condition_residual(&c, 1, 1).unwrap();
        assert!(r1.log2() < -220.0);
        let l1 = locus_condition_residual(&c, 1, 1).unwrap();
        assert!(l1.log2() < -220.0);
        let bumped = c.perturbed(1, &BigFloat::from_f64(0.005, 256));
        let r = first_condition_residual(&bumped, 1, 1).unwrap();
        assert!(r.value.abs().to_f64() > 1e-4);
    }

    #[test]
    fn ode_examples() {
        let c = build_am1n(2, 2, 128).unwrap();
        assert!(ode_residual_am1n(&c).unwrap().is_zero());
        let wrong = poly(&[1, 1, 1]);
        assert!(!ode_residual_am1n_poly(&wrong, 2, 2).is_zero());
        let c = build_two_mult(1, 1, 2, 128).unwrap();
        assert!(ode_residual_two_mult(&c).unwrap().is_zero());
        let p = RatPoly::new(vec![q(1), rat(1, 2), q(1)]);
        assert!(ode_residual_two_mult_poly(&p, 2, 1, 2).is_zero());
    }

    #[test]
    fn certificate_verdicts() {
        let c = build_am1n(4, 5, 256).unwrap();
        assert!(certify_ba(&c, -200.0).unwrap().passed());
        let r = random_type_m1n(2, 2, 1, 256).unwrap();
        assert!(!certify_ba(&r, -200.0).unwrap().passed());
    }

    #[test]
    fn order_bounds() {
        let c = build_am1n(2, 2, 128).unwrap();
        assert!(first_condition_residual(&c, 1, 2).is_err());
        assert!(first_condition_residual(&c, 0, 2).is_ok());
    }
}
