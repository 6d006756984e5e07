use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Configuration, Kind, Line};
use crate::error::{Error, Result};
use crate::exact::{BigFloat, RatPoly, Rational};

/// Numerators lie in [−ALPHA_BOUND, ALPHA_BOUND], denominators in [1, ALPHA_BOUND].
pub const ALPHA_BOUND: i64 = 50;

/// Multiplicity m at β_0 = (0,1) (φ = 0) plus simple lines β_i = (1, α_i).
pub fn from_alphas(m: u32, alphas: &[Rational], precision: usize) -> Result<Configuration> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let distinct: BTreeSet<&Rational> = alphas.iter().collect();
    if distinct.len() != alphas.len() {
        return Err(Error::InvalidInput("α values must be distinct".into()));
    }
    let mut lines = vec![Line::from_phi(m, BigFloat::zero(precision))];
    lines.extend(alphas.iter().map(|a| Line::from_alpha(1, a, precision)));
    let mut r = RatPoly::one();
    for a in alphas {
        r = &r * &RatPoly::new(vec![-a.clone(), Rational::from_integer(1.into())]);
    }
    let mut c = Configuration::assemble(Kind::Rational, m, None, alphas.len() as u32, precision, lines);
    c.r_poly = Some(r);
    Ok(c)
}

/// Seeded generic type-(m,1^n) arrangement with distinct nonzero rational α.
pub fn random_type_m1n(m: u32, n: u32, seed: u64, precision: usize) -> Result<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut alphas = Vec::with_capacity(n as usize);
    while alphas.len() < n as usize {
        let p: i64 = rng.random_range(-ALPHA_BOUND..=ALPHA_BOUND);
        let q: i64 = rng.random_range(1..=ALPHA_BOUND);
        let a = Rational::new(p.into(), q.into());
        if p == 0 || !seen.insert(a.clone()) {
            continue;
        }
        alphas.push(a);
    }
    let mut c = from_alphas(m, &alphas, precision)?;
    c.kind = Kind::Random { seed };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn product_form() {
        let c = from_alphas(2, &[rat(1, 2), rat(-1, 3)], 128).unwrap();
        let r = c.r_poly.unwrap();
        assert_eq!(r, RatPoly::new(vec![rat(-1, 6), rat(-1, 6), rat(1, 1)]));
    }

    #[test]
    fn seeded_and_distinct() {
        let a = random_type_m1n(2, 5, 7, 128).unwrap();
        let b = random_type_m1n(2, 5, 7, 128).unwrap();
        let ea: Vec<_> = a.lines.iter().map(|l| l.alpha_exact.clone()).collect();
        let eb: Vec<_> = b.lines.iter().map(|l| l.alpha_exact.clone()).collect();
        assert_eq!(ea, eb);
        assert_eq!(a.lines.len(), 6);
        assert!(a.is_type_m1n());
        let one = random_type_m1n(1, 1, 3, 128).unwrap();
        assert_eq!(one.lines.len(), 2);
    }
}
