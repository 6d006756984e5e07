//! JSON form of a configuration.

use serde::{Deserialize, Serialize};

use super::{Configuration, Kind, Line, SignBranch};
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational, serde_rational_vec};
use crate::exact::symmetric::{poly_from_elementary, r_poly_from_ehat};
use crate::exact::{BigFloat, RatPoly, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineJson {
    pub mult: u32,
    pub phi_hex: String,
    /// "p/q" for an exact chart, "inf" for the φ = 0 line, otherwise null.
    pub alpha: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub kind: String,
    pub m: u32,
    pub mtilde: Option<u32>,
    pub n: u32,
    pub q: Option<u32>,
    pub precision_bits: usize,
    #[serde(with = "serde_rational_vec")]
    pub e: Option<Vec<Rational>>,
    #[serde(with = "serde_rational_vec")]
    pub ehat: Option<Vec<Rational>>,
    pub lines: Vec<LineJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
}

impl Configuration {
    pub fn to_json(&self) -> ConfigJson {
        let (base, q) = self.kind.base();
        let lines = self
            .lines
            .iter()
            .map(|l| LineJson {
                mult: l.mult,
                phi_hex: l.phi.to_hex(),
                alpha: match (&l.alpha, &l.alpha_exact) {
                    (None, _) => Some("inf".to_string()),
                    (_, Some(a)) => Some(format_rational(a)),
                    _ => None,
                },
            })
            .collect();
        let seed = match base {
            Kind::Random { seed } => Some(*seed),
            _ => None,
        };
        ConfigJson {
            kind: self.kind.tag().to_string(),
            m: self.m,
            mtilde: self.mtilde,
            n: self.n,
            q: matches!(self.kind, Kind::QExpanded { .. }).then_some(q),
            precision_bits: self.precision,
            e: self.e.clone(),
            ehat: self.ehat.clone(),
            lines,
            base_kind: matches!(self.kind, Kind::QExpanded { .. }).then(|| base.tag().to_string()),
            seed,
            branch: self.branch.map(|b| b.as_str().to_string()),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("configuration serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Configuration> {
        let j: ConfigJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Configuration::from_json(&j)
    }

    pub fn from_json(j: &ConfigJson) -> Result<Configuration> {
        let prec = j.precision_bits.max(64);
        let base_kind = |tag: &str| -> Result<Kind> {
            Ok(match tag {
                "am1n" => Kind::Am1n,
                "twomult" => Kind::TwoMult,
                "general" => Kind::General,
                "rational" => Kind::Rational,
                "random" => Kind::Random { seed: j.seed.unwrap_or(0) },
                other => return Err(Error::Parse(format!("unknown configuration kind {other:?}"))),
            })
        };
        let kind = if j.kind == "tq" {
            let base = base_kind(j.base_kind.as_deref().unwrap_or("general"))?;
            Kind::QExpanded {
                base: Box::new(base),
                q: j.q.unwrap_or(1),
            }
        } else {
            base_kind(&j.kind)?
        };
        let mut lines = Vec::with_capacity(j.lines.len());
        for l in &j.lines {
            let phi = BigFloat::from_hex(&l.phi_hex, prec)?;
            let line = match l.alpha.as_deref() {
                Some("inf") | None => Line::from_phi(l.mult, phi),
                Some(a) => {
                    let exact = parse_rational(a)?;
                    let mut line = Line::from_alpha(l.mult, &exact, prec);
                    line.phi = phi;
                    line
                }
            };
            lines.push(line);
        }
        let mut c = Configuration::assemble(kind, j.m, j.mtilde, j.n, prec, lines);
        c.e = j.e.clone();
        c.ehat = j.ehat.clone();
        c.branch = j.branch.as_deref().and_then(SignBranch::parse);
        if let Some(e) = &c.e {
            c.p_poly = Some(poly_from_elementary(e, e.len()));
        }
        if let Some(eh) = &c.ehat {
            c.r_poly = Some(r_poly_from_ehat(eh, j.n as usize));
        } else if c.lines.iter().skip(1).all(|l| l.alpha_exact.is_some()) && c.is_type_m1n() {
            let mut r = RatPoly::one();
            for l in c.lines.iter().skip(1) {
                let a = l.alpha_exact.clone().unwrap_or_default();
                r = &r * &RatPoly::new(vec![-a, Rational::from_integer(1.into())]);
            }
            c.r_poly = Some(r);
        }
        Ok(c)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let text = serde_json::to_string(&self.to_json()).expect("configuration serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use crate::config::{build_am1n, random_type_m1n, t_q_expand};
    use crate::config::Configuration;

    #[test]
    fn round_trip_am1n() {
        let c = build_am1n(2, 2, 256).unwrap();
        let s = c.to_json_string();
        assert!(s.contains("\"-4/3\""));
        let back = Configuration::from_json_str(&s).unwrap();
        assert_eq!(back.to_json(), c.to_json());
        assert_eq!(back.r_poly, c.r_poly);
        assert_eq!(back.p_poly, c.p_poly);
    }

    #[test]
    fn round_trip_random_and_tq() {
        let c = random_type_m1n(2, 3, 11, 128).unwrap();
        let back = Configuration::from_json_str(&c.to_json_string()).unwrap();
        assert_eq!(back.to_json(), c.to_json());
        assert_eq!(back.r_poly, c.r_poly);
        let t = t_q_expand(&build_am1n(2, 2, 128).unwrap(), 3).unwrap();
        let back = Configuration::from_json_str(&t.to_json_string()).unwrap();
        assert_eq!(back.to_json(), t.to_json());
        assert_eq!(back.kind, t.kind);
    }
}
