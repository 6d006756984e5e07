//! Planar line arrangements with multiplicities in the z, φ and α charts.

mod build;
mod equivalence;
mod locus;
mod random;
mod serial;
mod tq;

pub use build::{build_am1n, build_two_mult, two_mult_elementary, SignBranch};
pub use equivalence::{angle_distance, angle_distance_log2};
pub use locus::{locus_angles, solve_general_locus, LocusDiagnostics};
pub use random::{from_alphas, random_type_m1n, ALPHA_BOUND};
pub use serial::{ConfigJson, LineJson};
pub use tq::t_q_expand;

use crate::error::{Error, Result};
use crate::exact::roots::arg_0_2pi;
use crate::exact::{BigComplex, BigFloat, RatPoly, Rational};

/// Which construction produced a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Am1n,
    TwoMult,
    QExpanded { base: Box<Kind>, q: u32 },
    General,
    Random { seed: u64 },
    /// Rational α chart supplied by the caller.
    Rational,
}

impl Kind {
    pub fn tag(&self) -> &'static str {
        match self {
            Kind::Am1n => "am1n",
            Kind::TwoMult => "twomult",
            Kind::QExpanded { .. } => "tq",
            Kind::General => "general",
            Kind::Random { .. } => "random",
            Kind::Rational => "rational",
        }
    }

    /// The innermost non-expanded kind and the accumulated q.
    pub fn base(&self) -> (&Kind, u32) {
        match self {
            Kind::QExpanded { base, q } => {
                let (b, q0) = base.base();
                (b, q0 * q)
            }
            k => (k, 1),
        }
    }
}

/// One line: multiplicity plus its three chart coordinates.
#[derive(Clone, Debug)]
pub struct Line {
    pub mult: u32,
    /// z = e^{2iφ}
    pub z: BigComplex,
    /// φ in [0, π)
    pub phi: BigFloat,
    /// cot φ, `None` for the line φ = 0
    pub alpha: Option<BigFloat>,
    /// exact α when the configuration lives in a rational chart
    pub alpha_exact: Option<Rational>,
}

impl Line {
    pub fn from_phi(mult: u32, phi: BigFloat) -> Self {
        let phi = reduce_mod_pi(phi);
        let two = &phi + &phi;
        let z = BigComplex::cis(&two);
        let alpha = if phi.is_zero() { None } else { Some(&phi.cos() / &phi.sin()) };
        Line {
            mult,
            z,
            phi,
            alpha,
            alpha_exact: None,
        }
    }

    pub fn from_z(mult: u32, z: BigComplex) -> Self {
        let prec = z.precision();
        let one = BigFloat::one(prec);
        let phi = if z.im.is_zero() && z.re > BigFloat::zero(prec) {
            BigFloat::zero(prec)
        } else {
            arg_0_2pi(&z).ldexp(-1)
        };
        // cot φ = sin 2φ / (1 − cos 2φ)
        let alpha = if phi.is_zero() { None } else { Some(&z.im / &(&one - &z.re)) };
        Line {
            mult,
            z,
            phi,
            alpha,
            alpha_exact: None,
        }
    }

    /// Line through the normal chart β = (1, α): φ = arccot α in (0, π).
    pub fn from_alpha(mult: u32, alpha: &Rational, prec: usize) -> Self {
        let a = BigFloat::from_rational(alpha, prec);
        let phi = BigFloat::atan2(&BigFloat::one(prec), &a);
        // z = (α + i)² / (α² + 1)
        let a2 = alpha * alpha;
        let den = &a2 + Rational::from_integer(1.into());
        let re = (&a2 - Rational::from_integer(1.into())) / &den;
        let im = (alpha * Rational::from_integer(2.into())) / &den;
        let z = BigComplex::new(BigFloat::from_rational(&re, prec), BigFloat::from_rational(&im, prec));
        Line {
            mult,
            z,
            phi,
            alpha: Some(a),
            alpha_exact: Some(alpha.clone()),
        }
    }
}

pub(crate) fn reduce_mod_pi(phi: BigFloat) -> BigFloat {
    let prec = phi.precision();
    let pi = BigFloat::pi(prec);
    let mut x = phi;
    while x.is_negative() {
        x = &x + &pi;
    }
    while x >= pi {
        x = &x - &pi;
    }
    x
}

/// A planar arrangement with multiplicities.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub kind: Kind,
    pub m: u32,
    pub mtilde: Option<u32>,
    pub n: u32,
    pub precision: usize,
    /// Lines sorted by φ; for every constructed family line 0 is the
    /// multiplicity-m line at φ = 0.
    pub lines: Vec<Line>,
    /// e_1..e_n of the multiplicity-1 z values (z_0 = 1).
    pub e: Option<Vec<Rational>>,
    /// ê_1..ê_[n/2] of the α² values.
    pub ehat: Option<Vec<Rational>>,
    /// Rational polynomial whose roots are the α of the multiplicity-1 lines.
    pub r_poly: Option<RatPoly>,
    /// ∏ (w − z_j) over the multiplicity-1 lines.
    pub p_poly: Option<RatPoly>,
    /// Sign branch chosen for e_{n−1} in the two-multiplicity recurrence.
    pub branch: Option<SignBranch>,
}

impl Configuration {
    pub(crate) fn assemble(kind: Kind, m: u32, mtilde: Option<u32>, n: u32, precision: usize, mut lines: Vec<Line>) -> Self {
        lines.sort_by(|a, b| a.phi.partial_cmp(&b.phi).unwrap_or(std::cmp::Ordering::Equal));
        Configuration {
            kind,
            m,
            mtilde,
            n,
            precision,
            lines,
            e: None,
            ehat: None,
            r_poly: None,
            p_poly: None,
            branch: None,
        }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.lines.iter().map(|l| l.mult).collect()
    }

    pub fn angles(&self) -> Vec<BigFloat> {
        self.lines.iter().map(|l| l.phi.clone()).collect()
    }

    /// Multiplicity-1 lines other than line 0.
    pub fn simple_lines(&self) -> impl Iterator<Item = (usize, &Line)> {
        self.lines.iter().enumerate().skip(1).filter(|(_, l)| l.mult == 1)
    }

    /// Whether the arrangement has type (m, 1^n) in the α chart: line 0 at
    /// φ = 0 and every other line simple.
    pub fn is_type_m1n(&self) -> bool {
        !self.lines.is_empty()
            && self.lines[0].alpha.is_none()
            && self.lines.iter().skip(1).all(|l| l.mult == 1 && l.alpha.is_some())
    }

    /// Numeric α of the simple lines (type (m,1^n) configurations).
    pub fn simple_alphas(&self) -> Result<Vec<BigFloat>> {
        if !self.is_type_m1n() {
            return Err(Error::InvalidInput("configuration is not of type (m,1^n)".into()));
        }
        Ok(self.lines.iter().skip(1).filter_map(|l| l.alpha.clone()).collect())
    }

    /// Largest deviation of |z| from 1, as log2.
    pub fn unimodularity_log2(&self) -> f64 {
        self.lines
            .iter()
            .map(|l| (l.z.abs() - BigFloat::one(self.precision)).log2_abs())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Errors if two lines coincide at working precision.
    pub fn check_distinct(&self) -> Result<()> {
        let tol = -(self.precision as f64) / 2.0;
        for i in 0..self.lines.len() {
            for j in i + 1..self.lines.len() {
                if (&self.lines[i].z - &self.lines[j].z).log2_abs() < tol {
                    return Err(Error::Collinear(i, j));
                }
            }
        }
        Ok(())
    }

    /// Copy with line `j` rotated by `delta` radians.
    pub fn perturbed(&self, j: usize, delta: &BigFloat) -> Configuration {
        let mut c = self.clone();
        let l = &self.lines[j];
        let mut nl = Line::from_phi(l.mult, &l.phi + delta);
        nl.alpha_exact = None;
        c.lines[j] = nl;
        c.kind = Kind::General;
        c.e = None;
        c.ehat = None;
        c.r_poly = None;
        c.p_poly = None;
        c
    }

    /// Copy with every line rotated by `delta`.
    pub fn rotated(&self, delta: &BigFloat) -> Configuration {
        let lines = self.lines.iter().map(|l| Line::from_phi(l.mult, &l.phi + delta)).collect();
        let mut c = Configuration::assemble(Kind::General, self.m, self.mtilde, self.n, self.precision, lines);
        c.branch = self.branch;
        c
    }
}
