//! Darboux–Crum data for the two-multiplicity family: the chain
//! χ_j = sin(q k_j φ), its Wronskian W, and the exact trigonometric
//! identities linking W to Q(φ) = Σ (−1)^i e_i e^{i(n−2i)φ}.

use num_traits::One;
use serde::Serialize;

use crate::config::{build_am1n, build_two_mult, Configuration};
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, gauss_real};
use crate::exact::{wronskian, Rational, TrigPoly};

/// Frequencies k_1 < … < k_m of the chain.
pub fn darboux_levels(m: u32, mtilde: u32, n: u32) -> Result<Vec<i64>> {
    if m < mtilde {
        return Err(Error::InvalidOrder { m, mtilde });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let (m, mt, n) = (m as i64, mtilde as i64, n as i64);
    if mt == 0 {
        let mut v: Vec<i64> = (1..m).collect();
        v.push(m + n);
        return Ok(v);
    }
    if n % 2 != 0 {
        return Err(Error::InvalidInput(format!("n = {n} must be even when the second multiplicity is positive")));
    }
    let mut v: Vec<i64> = (1..=m - mt).collect();
    v.extend((1..mt).map(|j| m - mt + 2 * j));
    v.push(mt + m + n);
    Ok(v)
}

/// ν = 2^{−m̃(m̃+1)/2 − m(m−1)/2} (−1)^{m(m−1)/2} ∏_{p>q} (k_p − k_q)^{−1}.
pub fn nu(levels: &[i64], mtilde: u32) -> Rational {
    let m = levels.len() as i64;
    let mt = mtilde as i64;
    let e = mt * (mt + 1) / 2 + m * (m - 1) / 2;
    let mut v = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(e as u32));
    if (m * (m - 1) / 2) % 2 == 1 {
        v = -v;
    }
    for p in 0..levels.len() {
        for q in 0..p {
            v /= Rational::from_integer((levels[p] - levels[q]).into());
        }
    }
    v
}

#[derive(Clone, Debug)]
pub struct DarbouxChain {
    pub m: u32,
    pub mtilde: u32,
    pub n: u32,
    pub q: u32,
    pub levels: Vec<i64>,
    pub chi: Vec<TrigPoly>,
    pub w: TrigPoly,
}

pub fn build_chain(m: u32, mtilde: u32, n: u32, q: u32) -> Result<DarbouxChain> {
    if q == 0 {
        return Err(Error::InvalidInput("q must be positive".into()));
    }
    let levels = darboux_levels(m, mtilde, n)?;
    let chi: Vec<TrigPoly> = levels.iter().map(|k| TrigPoly::sin_k(q as i64 * k)).collect();
    let w = if chi.is_empty() { TrigPoly::one() } else { wronskian(&chi) };
    Ok(DarbouxChain {
        m,
        mtilde,
        n,
        q,
        levels,
        chi,
        w,
    })
}

/// The configuration the chain describes: A_(m,m̃,1^n), or A_(m,1^n) when
/// m̃ = 0.
pub fn chain_configuration(chain: &DarbouxChain, precision: usize) -> Result<Configuration> {
    if chain.mtilde == 0 {
        build_am1n(chain.m, chain.n, precision)
    } else {
        build_two_mult(chain.m, chain.mtilde, chain.n, precision)
    }
}

/// Q(φ) = P(u²) u^{−n} with u = e^{iφ}, from the exact e_k.
pub fn q_trig(c: &Configuration) -> Result<TrigPoly> {
    let e = c.e.as_ref().ok_or(Error::MissingExactData("elementary symmetric functions e_k"))?;
    let n = e.len() as i64;
    let mut q = TrigPoly::monomial(n, gauss_real(Rational::one()));
    for (i, ei) in e.iter().enumerate() {
        let i = i as i64 + 1;
        let c = if i % 2 == 0 { ei.clone() } else { -ei.clone() };
        q.add_term(n - 2 * i, gauss_real(c));
    }
    Ok(q)
}

fn check_pair(chain: &DarbouxChain, c: &Configuration) -> Result<()> {
    if chain.q != 1 {
        return Err(Error::InvalidInput("identities are checked on the q = 1 chain".into()));
    }
    let ct = c.mtilde.unwrap_or(0);
    if c.m != chain.m || ct != chain.mtilde || c.n != chain.n {
        return Err(Error::InvalidInput(format!(
            "chain ({}, {}, {}) does not match configuration ({}, {}, {})",
            chain.m, chain.mtilde, chain.n, c.m, ct, c.n
        )));
    }
    Ok(())
}

fn require_zero(diff: TrigPoly, what: &str) -> Result<()> {
    if diff.is_zero() {
        Ok(())
    } else {
        Err(Error::IdentityFailed(format!("{what}: difference {diff}")))
    }
}

/// W = ν^{−1} Q(φ) cos^{m̃(m̃+1)/2}φ sin^{m(m+1)/2}φ.
pub fn verify_factorization(chain: &DarbouxChain, c: &Configuration) -> Result<()> {
    check_pair(chain, c)?;
    let q = q_trig(c)?;
    let (m, mt) = (chain.m, chain.mtilde);
    let inv = Rational::one() / nu(&chain.levels, mt);
    let rhs = &(&q * &TrigPoly::cos().pow(mt * (mt + 1) / 2)) * &TrigPoly::sin().pow(m * (m + 1) / 2);
    require_zero(&chain.w - &rhs.scale_real(&inv), "factorization")
}

/// −2(W″W − W′²) s²c²Q² = W² [m(m+1) c²Q² + m̃(m̃+1) s²Q² + 2 s²c² (Q′² − Q″Q)],
/// i.e. −2(log W)″ = m(m+1)/sin² + m̃(m̃+1)/cos² + Σ 2/sin²(φ − φ_j).
pub fn verify_potential(chain: &DarbouxChain, c: &Configuration) -> Result<()> {
    check_pair(chain, c)?;
    let q = q_trig(c)?;
    let (m, mt) = (chain.m as i64, chain.mtilde as i64);
    let w = &chain.w;
    let (w1, w2) = (w.derivative(), w.nth_derivative(2));
    let (q1, q2) = (q.derivative(), q.nth_derivative(2));
    let s2 = TrigPoly::sin().pow(2);
    let c2 = TrigPoly::cos().pow(2);
    let sc2 = &s2 * &c2;
    let qq = &q * &q;
    let r = |v: i64| Rational::from_integer(v.into());
    let lhs = (&(&(&(&w2 * w) - &(&w1 * &w1)) * &sc2) * &qq).scale_real(&r(-2));
    let bracket = &(&(&c2 * &qq).scale_real(&r(m * (m + 1))) + &(&s2 * &qq).scale_real(&r(mt * (mt + 1))))
        + &(&sc2 * &(&(&q1 * &q1) - &(&q2 * &q))).scale_real(&r(2));
    let rhs = &(w * w) * &bracket;
    require_zero(&lhs - &rhs, "potential")
}

/// s c Q″ + 2(m c² − m̃ s²) Q′ + n(2(m+m̃)+n) s c Q = 0.
pub fn verify_eigen(c: &Configuration) -> Result<()> {
    let q = q_trig(c)?;
    let (m, mt, n) = (c.m as i64, c.mtilde.unwrap_or(0) as i64, c.n as i64);
    let r = |v: i64| Rational::from_integer(v.into());
    let sc = &TrigPoly::sin() * &TrigPoly::cos();
    let s2 = TrigPoly::sin().pow(2);
    let c2 = TrigPoly::cos().pow(2);
    let mid = &c2.scale_real(&r(2 * m)) - &s2.scale_real(&r(2 * mt));
    let total = &(&(&sc * &q.nth_derivative(2)) + &(&mid * &q.derivative())) + &(&sc * &q).scale_real(&r(n * (2 * (m + mt) + n)));
    require_zero(total, "eigen")
}

/// W_q(φ) = q^{m(m−1)/2} W_1(qφ).
pub fn q_scaling_check(base: &DarbouxChain, q: u32) -> Result<()> {
    if base.q != 1 {
        return Err(Error::InvalidInput("base chain must have q = 1".into()));
    }
    let scaled = build_chain(base.m, base.mtilde, base.n, q)?;
    let m = base.levels.len() as u32;
    let factor = Rational::from_integer(num_bigint::BigInt::from(q).pow(m * m.saturating_sub(1) / 2));
    require_zero(&scaled.w - &base.w.substitute(q as i64).scale_real(&factor), "q-scaling")
}

#[derive(Clone, Debug, Serialize)]
pub struct DarbouxReport {
    pub m: u32,
    pub mtilde: u32,
    pub n: u32,
    pub levels: Vec<i64>,
    pub nu: String,
    pub factorization: String,
    pub potential: String,
    pub eigen: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub q_scaling: Vec<(u32, String)>,
}

impl DarbouxReport {
    pub fn passed(&self) -> bool {
        [&self.factorization, &self.potential, &self.eigen]
            .into_iter()
            .chain(self.q_scaling.iter().map(|(_, v)| v))
            .all(|v| v == "exact-pass")
    }
}

fn verdict(r: Result<()>) -> String {
    match r {
        Ok(()) => "exact-pass".to_string(),
        Err(Error::IdentityFailed(d)) => format!("fail: {d}"),
        Err(e) => format!("error: {e}"),
    }
}

/// All identities for one (m, m̃, n), with q-scaling for q = 2..=q_max.
pub fn darboux_report(m: u32, mtilde: u32, n: u32, q_max: u32, precision: usize) -> Result<DarbouxReport> {
    let chain = build_chain(m, mtilde, n, 1)?;
    let c = chain_configuration(&chain, precision)?;
    Ok(DarbouxReport {
        m,
        mtilde,
        n,
        levels: chain.levels.clone(),
        nu: format_rational(&nu(&chain.levels, mtilde)),
        factorization: verdict(verify_factorization(&chain, &c)),
        potential: verdict(verify_potential(&chain, &c)),
        eigen: verdict(verify_eigen(&c)),
        q_scaling: (2..=q_max).map(|q| (q, verdict(q_scaling_check(&chain, q)))).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn levels() {
        assert_eq!(darboux_levels(3, 2, 2).unwrap(), vec![1, 3, 7]);
        assert_eq!(darboux_levels(1, 0, 2).unwrap(), vec![3]);
        assert_eq!(darboux_levels(2, 0, 2).unwrap(), vec![1, 4]);
        assert_eq!(darboux_levels(2, 0, 1).unwrap(), vec![1, 3]);
        assert!(darboux_levels(2, 1, 1).is_err());
        assert!(matches!(darboux_levels(1, 2, 2), Err(Error::InvalidOrder { m: 1, mtilde: 2 })));
        assert_eq!(darboux_levels(0, 0, 3).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn small_chains() {
        let ch = build_chain(1, 0, 2, 1).unwrap();
        assert_eq!(ch.w, TrigPoly::sin_k(3));
        assert_eq!(nu(&ch.levels, 0), int(1));
        assert_eq!(nu(&[1, 3], 0), rat(-1, 4));
        let ch = build_chain(2, 0, 1, 1).unwrap();
        // −8 cos φ sin³ φ
        let expect = (&TrigPoly::cos() * &TrigPoly::sin().pow(3)).scale_real(&int(-8));
        assert_eq!(ch.w, expect);
        assert!(ch.w.is_real());
    }

    #[test]
    fn identities() {
        for (m, mt, n) in [(1, 0, 2), (2, 0, 1), (1, 1, 2), (2, 1, 2), (3, 2, 4)] {
            let r = darboux_report(m, mt, n, 3, 128).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn mismatched_configuration_is_rejected() {
        let ch = build_chain(2, 1, 2, 1).unwrap();
        let c = build_am1n(2, 2, 128).unwrap();
        assert!(verify_factorization(&ch, &c).is_err());
    }
}
