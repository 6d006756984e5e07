use num_traits::{One, Zero};

use super::{Configuration, Kind, Line};
use crate::certify::first_condition_residual;
use crate::error::{Error, Result};
use crate::exact::symmetric::{e_am1n, ehat_am1n, poly_from_elementary, r_poly_from_ehat};
use crate::exact::{poly_roots, BigComplex, BigFloat, Rational};

/// Sign of e_{n−1} = ±(m − m̃)n/(n + m + m̃ − 1) in the two-multiplicity
/// recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignBranch {
    /// e_{n−1} = (m̃ − m) n / (n + m + m̃ − 1)
    MtildeMinusM,
    /// e_{n−1} = (m − m̃) n / (n + m + m̃ − 1)
    MMinusMtilde,
}

impl SignBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignBranch::MtildeMinusM => "(mtilde-m)",
            SignBranch::MMinusMtilde => "(m-mtilde)",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "(mtilde-m)" => Some(SignBranch::MtildeMinusM),
            "(m-mtilde)" => Some(SignBranch::MMinusMtilde),
            _ => None,
        }
    }
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn lines_from_roots(m: u32, roots: Vec<BigComplex>, precision: usize) -> Vec<Line> {
    let mut lines = vec![Line::from_phi(m, BigFloat::zero(precision))];
    lines.extend(roots.into_iter().map(|z| Line::from_z(1, z)));
    lines
}

/// The arrangement with a multiplicity-m line at φ = 0 and n simple lines
/// whose z values are the roots of Σ (−1)^k e_k w^{n−k},
/// e_k = (−1)^k C(n,k) C(m+k−1,k) / C(m+n−1,k).
pub fn build_am1n(m: u32, n: u32, precision: usize) -> Result<Configuration> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("build_am1n needs m >= 1 and n >= 1".into()));
    }
    let e = e_am1n(m, n);
    let p = poly_from_elementary(&e, n as usize);
    let roots = poly_roots(&p, precision)?;
    let ehat = ehat_am1n(m, n);
    let r = r_poly_from_ehat(&ehat, n as usize);
    let mut c = Configuration::assemble(Kind::Am1n, m, None, n, precision, lines_from_roots(m, roots, precision));
    c.e = Some(e);
    c.ehat = Some(ehat);
    c.r_poly = Some(r);
    c.p_poly = Some(p);
    Ok(c)
}

/// e_1..e_n from the three-term recurrence seeded with e_n = 1 and the
/// chosen sign of e_{n−1}.
pub fn two_mult_elementary(m: u32, mtilde: u32, n: u32, branch: SignBranch) -> Result<Vec<Rational>> {
    let (mi, mt, ni) = (m as i64, mtilde as i64, n as i64);
    let nn = n as usize;
    let mut e = vec![Rational::zero(); nn + 1];
    e[nn] = Rational::one();
    let seed = Rational::new(((mi - mt) * ni).into(), (ni + mi + mt - 1).into());
    e[nn - 1] = match branch {
        SignBranch::MtildeMinusM => -seed,
        SignBranch::MMinusMtilde => seed,
    };
    // (m+m̃+k−1)(k−n−1) e_{n−k+1} + (n−2k)(m−m̃) e_{n−k} + (m+m̃+n−k−1)(k+1) e_{n−k−1} = 0
    for k in 1..ni {
        let lead = q((mi + mt + ni - k - 1) * (k + 1));
        if lead.is_zero() {
            return Err(Error::RecurrenceBreakdown(k as usize));
        }
        let a = q((mi + mt + k - 1) * (k - ni - 1)) * &e[(ni - k + 1) as usize];
        let b = q((ni - 2 * k) * (mi - mt)) * &e[(ni - k) as usize];
        e[(ni - k - 1) as usize] = -(a + b) / lead;
    }
    Ok(e.into_iter().skip(1).collect())
}

fn assemble_two_mult(m: u32, mtilde: u32, n: u32, precision: usize, branch: SignBranch) -> Result<Configuration> {
    let e = two_mult_elementary(m, mtilde, n, branch)?;
    let p = poly_from_elementary(&e, n as usize);
    let roots = poly_roots(&p, precision)?;
    let mut lines = lines_from_roots(m, roots, precision);
    if mtilde > 0 {
        lines.push(Line::from_phi(mtilde, BigFloat::pi(precision).ldexp(-1)));
    }
    let mut c = Configuration::assemble(Kind::TwoMult, m, Some(mtilde), n, precision, lines);
    c.check_distinct()?;
    c.e = Some(e);
    c.p_poly = Some(p);
    c.branch = Some(branch);
    Ok(c)
}

/// The arrangement with multiplicity m at φ = 0, m̃ at φ = π/2 (omitted when
/// m̃ = 0) and n simple lines from the two-multiplicity recurrence. The sign
/// of e_{n−1} is chosen by testing the first-order condition on every simple
/// line; the chosen branch is recorded in `Configuration::branch`.
pub fn build_two_mult(m: u32, mtilde: u32, n: u32, precision: usize) -> Result<Configuration> {
    if m == 0 || n == 0 || n % 2 == 1 {
        return Err(Error::InvalidInput("build_two_mult needs m >= 1 and even n >= 2".into()));
    }
    let threshold = -(precision as f64 - 32.0);
    let mut last_err = None;
    for branch in [SignBranch::MtildeMinusM, SignBranch::MMinusMtilde] {
        let c = match assemble_two_mult(m, mtilde, n, precision, branch) {
            Ok(c) => c,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let mut ok = true;
        for (j, _) in c.simple_lines() {
            let r = first_condition_residual(&c, j, 1)?;
            if r.relative_log2() >= threshold {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(c);
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::DegenerateConfiguration(format!("no sign branch satisfies the first-order conditions for ({m},{mtilde},{n})"))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn am1n_examples() {
        let c = build_am1n(2, 2, 256).unwrap();
        assert_eq!(c.e.as_ref().unwrap(), &vec![rat(-4, 3), int(1)]);
        assert_eq!(c.ehat.as_ref().unwrap(), &vec![rat(1, 5)]);
        assert!(c.unimodularity_log2() < -240.0);
        let a = c.lines[1].alpha.as_ref().unwrap().to_f64();
        assert!((a.abs() - 1.0 / 5f64.sqrt()).abs() < 1e-14);

        let c = build_am1n(1, 2, 128).unwrap();
        let pi = std::f64::consts::PI;
        assert!((c.lines[1].phi.to_f64() - pi / 3.0).abs() < 1e-14);
        assert!((c.lines[2].phi.to_f64() - 2.0 * pi / 3.0).abs() < 1e-14);

        let c = build_am1n(1, 1, 128).unwrap();
        assert!((c.lines[1].phi.to_f64() - pi / 2.0).abs() < 1e-14);
        assert!(c.lines[1].alpha.as_ref().unwrap().is_zero());
    }

    #[test]
    fn two_mult_recurrence_by_hand() {
        let e = two_mult_elementary(1, 1, 2, SignBranch::MtildeMinusM).unwrap();
        assert_eq!(e, vec![int(0), int(1)]);
        let e = two_mult_elementary(2, 1, 2, SignBranch::MtildeMinusM).unwrap();
        assert_eq!(e, vec![rat(-1, 2), int(1)]);
    }

    #[test]
    fn two_mult_dihedral() {
        let c = build_two_mult(1, 1, 2, 128).unwrap();
        let phis: Vec<f64> = c.lines.iter().map(|l| l.phi.to_f64()).collect();
        let pi = std::f64::consts::PI;
        for (got, want) in phis.iter().zip([0.0, pi / 4.0, pi / 2.0, 3.0 * pi / 4.0]) {
            assert!((got - want).abs() < 1e-14, "{phis:?}");
        }
        assert!(build_two_mult(2, 1, 3, 128).is_err());
    }

    #[test]
    fn two_mult_branch_is_the_derived_sign() {
        let c = build_two_mult(3, 1, 4, 256).unwrap();
        assert_eq!(c.branch, Some(SignBranch::MtildeMinusM));
    }
}
