use super::{Configuration, Kind, Line};
use crate::error::{Error, Result};
use crate::exact::symmetric::poly_from_elementary;
use crate::exact::{BigFloat, Rational};

/// Replace every line φ_i by the q lines (φ_i + πs)/q, s = 0..q−1, i.e. the
/// preimages of φ_i under φ ↦ qφ.
///
/// The exact z-chart data of the simple block transforms as
/// ∏ (w − z_i) ↦ ∏ (w^q − z_i).
pub fn t_q_expand(c: &Configuration, q: u32) -> Result<Configuration> {
    if q == 0 {
        return Err(Error::InvalidInput("q must be positive".into()));
    }
    if q == 1 {
        return Ok(c.clone());
    }
    let prec = c.precision;
    let step = &BigFloat::pi(prec) / &BigFloat::from_i64(q as i64, prec);
    let mut lines = Vec::with_capacity(c.lines.len() * q as usize);
    let qf = BigFloat::from_i64(q as i64, prec);
    for l in &c.lines {
        let base = &l.phi / &qf;
        for s in 0..q {
            let shift = &step * &BigFloat::from_i64(s as i64, prec);
            lines.push(Line::from_phi(l.mult, &base + &shift));
        }
    }
    let kind = Kind::QExpanded {
        base: Box::new(c.kind.clone()),
        q,
    };
    let mut out = Configuration::assemble(kind, c.m, c.mtilde, c.n, prec, lines);
    let tol = -(prec as f64) / 2.0;
    for i in 0..out.lines.len() {
        for j in i + 1..out.lines.len() {
            if (&out.lines[i].z - &out.lines[j].z).log2_abs() < tol {
                return Err(Error::Collision(i, j));
            }
        }
    }
    if let Some(e) = &c.e {
        let n = e.len();
        let q = q as usize;
        let big = poly_from_elementary(e, n).substitute_power(q);
        let coeffs = big.coeffs();
        let total = n * q;
        let e_big: Vec<Rational> = (1..=total)
            .map(|i| {
                let c = coeffs[total - i].clone();
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        out.e = Some(e_big);
        out.p_poly = Some(big);
    }
    out.branch = c.branch;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::build_am1n;

    #[test]
    fn identity_and_counts() {
        let c = build_am1n(1, 2, 128).unwrap();
        let same = t_q_expand(&c, 1).unwrap();
        assert_eq!(same.lines.len(), 3);
        let six = t_q_expand(&c, 2).unwrap();
        assert_eq!(six.lines.len(), 6);
        let pi = std::f64::consts::PI;
        for (k, l) in six.lines.iter().enumerate() {
            assert!((l.phi.to_f64() - k as f64 * pi / 6.0).abs() < 1e-14);
        }
        // w² + w + 1 with w ↦ w²
        let p = six.p_poly.unwrap();
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.coeff(2), crate::exact::rational::int(1));
    }
}
