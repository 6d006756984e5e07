use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ba_core::certify::certify_ba;
use ba_core::config::{
    build_am1n, build_two_mult, from_alphas, random_type_m1n, solve_general_locus, t_q_expand, Configuration,
};
use ba_core::darboux::darboux_report;
use ba_core::exact::rational::parse_rational;
use ba_core::exact::{BigFloat, Rational};
use ba_core::qi::{
    closed_form_numerator, hilbert_coefficients, hilbert_coefficients_numeric, hilbert_rational_form, r_parameter,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{CertifyArgs, Construct, Family, Global, HilbertArgs, Scan};
use crate::grid::Grid;

/// Non-success outcomes, mapped to exit codes by `main`.
#[derive(Debug)]
pub enum Failure {
    /// A check ran to completion and did not hold.
    Verified,
    Usage(String),
    Computation(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Verified => 1,
            Failure::Usage(_) => 2,
            Failure::Computation(_) => 3,
        }
    }
}

impl From<ba_core::Error> for Failure {
    fn from(e: ba_core::Error) -> Self {
        Failure::Computation(e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

fn emit(g: &Global, text: &str) -> Outcome {
    match &g.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Computation(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(g: &Global, v: &Value) -> Outcome {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    emit(g, &s)
}

fn load(path: &Path) -> Result<Configuration, Failure> {
    let s = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Configuration::from_json_str(&s)?)
}

fn threshold_for(g: &Global, c: &Configuration) -> f64 {
    g.threshold_log2
        .map(|t| t as f64)
        .unwrap_or(-(c.precision as f64 - 32.0))
}

pub fn construct(g: &Global, what: &Construct) -> Outcome {
    let p = g.precision;
    let c = match what {
        Construct::Am1n { m, n } => build_am1n(*m, *n, p)?,
        Construct::Twomult { m, mt, n } => build_two_mult(*m, *mt, *n, p)?,
        Construct::Tq { input, q } => t_q_expand(&load(input)?, *q)?,
        Construct::General { mults } => solve_general_locus(mults, p)?,
        Construct::Random { m, n } => random_type_m1n(*m, *n, g.seed, p)?,
        Construct::Rational { m, alphas } => {
            let alphas = alphas
                .iter()
                .map(|s| parse_rational(s.trim()))
                .collect::<Result<Vec<Rational>, _>>()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            from_alphas(*m, &alphas, p)?
        }
    };
    let mut s = c.to_json_string();
    s.push('\n');
    emit(g, &s)
}

fn parse_perturb(s: &str, prec: usize) -> Result<(usize, BigFloat), Failure> {
    let bad = || Failure::Usage(format!("--perturb expects LINE:RADIANS, got {s:?}"));
    let (j, d) = s.split_once(':').ok_or_else(bad)?;
    let j = j.trim().parse::<usize>().map_err(|_| bad())?;
    let d = d.trim();
    let delta = match parse_rational(d) {
        Ok(r) => BigFloat::from_rational(&r, prec),
        Err(_) => BigFloat::from_f64(d.parse::<f64>().map_err(|_| bad())?, prec),
    };
    Ok((j, delta))
}

pub fn certify(g: &Global, a: &CertifyArgs) -> Outcome {
    let mut c = load(&a.input)?;
    if let Some(p) = &a.perturb {
        let (j, delta) = parse_perturb(p, c.precision)?;
        if j >= c.len() {
            return Err(Failure::Usage(format!("line {j} out of range (configuration has {})", c.len())));
        }
        c = c.perturbed(j, &delta);
    }
    let cert = certify_ba(&c, threshold_for(g, &c))?;
    let mut v = serde_json::to_value(&cert).expect("certificate serializes");
    if let Some(worst) = cert
        .per_condition
        .iter()
        .max_by(|x, y| x.residual_log2.total_cmp(&y.residual_log2))
    {
        v["worst"] = serde_json::to_value(worst).expect("record serializes");
    }
    if !a.full {
        v.as_object_mut().expect("object").remove("per_condition");
    }
    emit_json(g, &v)?;
    if cert.passed() {
        Ok(())
    } else {
        Err(Failure::Verified)
    }
}

pub fn hilbert(g: &Global, a: &HilbertArgs) -> Outcome {
    let c = match (&a.input, a.random) {
        (Some(p), false) => load(p)?,
        (None, true) => random_type_m1n(a.m.unwrap_or(0), a.n.unwrap_or(0), g.seed, g.precision)?,
        _ => return Err(Failure::Usage("give exactly one of --input or --random".into())),
    };
    if !c.is_type_m1n() {
        return Err(Failure::Usage("hilbert needs a type-(m,1^n) configuration".into()));
    }
    let m = c.lines[0].mult;
    let n = (c.len() - 1) as u32;
    let d = a.d.unwrap_or((2 * m + 2 * n + 4) as usize);
    let coeffs = if a.numeric {
        hilbert_coefficients_numeric(&c, d, g.precision)?
    } else {
        hilbert_coefficients(&c, d)?
    };
    let series = hilbert_rational_form(&coeffs, m, n)?;
    let mut v = series.to_json_value();
    v["r"] = json!(r_parameter(&c)?);
    v["digest"] = json!(c.digest());
    let closed_ok = series.numerator == closed_form_numerator(m, n);
    if a.check_closed_form {
        v["closed_form"] = json!(closed_ok);
    }
    if let Some(p) = &a.csv {
        fs::write(p, series.to_csv()).map_err(|e| Failure::Computation(format!("{}: {e}", p.display())))?;
    }
    emit_json(g, &v)?;
    if a.check_closed_form && !closed_ok {
        return Err(Failure::Verified);
    }
    Ok(())
}

fn grid(s: &str) -> Result<Grid, Failure> {
    Grid::parse(s).map_err(Failure::Usage)
}

fn consts(s: &str) -> Result<Vec<u32>, Failure> {
    grid(s)?.constants().map_err(Failure::Usage)
}

/// One scan item: its parameters, a check producing (passed, detail), and
/// the wall-clock time it took.
fn run_item<F>(params: Value, f: F) -> (Option<bool>, Value)
where
    F: FnOnce() -> ba_core::Result<(bool, Value)>,
{
    let t = Instant::now();
    let r = f();
    let ms = t.elapsed().as_secs_f64() * 1e3;
    let (ok, mut v) = match r {
        Ok((ok, detail)) => (Some(ok), json!({ "passed": ok, "result": detail })),
        Err(e) => (None, json!({ "error": e.to_string() })),
    };
    v["params"] = params;
    v["wall_ms"] = json!(ms);
    (ok, v)
}

fn manifest(g: &Global, sub: &str, grid: Value, items: Vec<(Option<bool>, Value)>) -> Outcome {
    let passed = items.iter().filter(|i| i.0 == Some(true)).count();
    let failed = items.iter().filter(|i| i.0 == Some(false)).count();
    let errors = items.iter().filter(|i| i.0.is_none()).count();
    let outputs: Vec<&PathBuf> = g.output.iter().collect();
    let v = json!({
        "subcommand": sub,
        "grid": grid,
        "seed": g.seed,
        "precision": g.precision,
        "threshold_log2": g.threshold(),
        "version": env!("CARGO_PKG_VERSION"),
        "outputs": outputs,
        "summary": { "items": items.len(), "passed": passed, "failed": failed, "errors": errors },
        "items": items.into_iter().map(|i| i.1).collect::<Vec<_>>(),
    });
    emit_json(g, &v)?;
    if errors > 0 {
        Err(Failure::Computation(format!("{errors} item(s) raised errors")))
    } else if failed > 0 {
        Err(Failure::Verified)
    } else {
        Ok(())
    }
}

fn hilbert_item(c: &Configuration, expect_gorenstein: bool) -> ba_core::Result<(bool, Value)> {
    let m = c.lines[0].mult;
    let n = (c.len() - 1) as u32;
    let coeffs = hilbert_coefficients(c, (2 * m + 2 * n + 4) as usize)?;
    let s = hilbert_rational_form(&coeffs, m, n)?;
    let (gor, big_m) = s.gorenstein();
    Ok((
        gor == expect_gorenstein,
        json!({ "gorenstein": gor, "M": big_m, "numerator": s.numerator, "digest": c.digest() }),
    ))
}

fn certify_item(c: ba_core::Result<Configuration>, thr: f64) -> ba_core::Result<(bool, Value)> {
    let c = c?;
    let cert = certify_ba(&c, thr)?;
    Ok((
        cert.passed(),
        json!({
            "lines": c.len(),
            "digest": cert.digest,
            "max_residual_log2": cert.max_residual_log2,
        }),
    ))
}

pub fn scan(g: &Global, what: &Scan) -> Outcome {
    let p = g.precision;
    match what {
        Scan::Gorenstein { m, n, samples } => {
            let mut jobs = Vec::new();
            for &mv in &consts(m)? {
                for &nv in &consts(n)? {
                    jobs.push((mv, nv, None));
                    for s in 0..*samples {
                        jobs.push((mv, nv, Some(g.seed + s)));
                    }
                }
            }
            let items = jobs
                .par_iter()
                .map(|&(mv, nv, seed)| match seed {
                    None => run_item(json!({ "family": "am1n", "m": mv, "n": nv }), || {
                        hilbert_item(&build_am1n(mv, nv, p)?, true)
                    }),
                    Some(s) => run_item(json!({ "family": "random", "m": mv, "n": nv, "seed": s }), || {
                        hilbert_item(&random_type_m1n(mv, nv, s, p)?, false)
                    }),
                })
                .collect();
            manifest(g, "scan gorenstein", json!({ "m": m, "n": n, "samples": samples }), items)
        }
        Scan::Certify { family, m, mt, n, q } => {
            let mt_grid = grid(mt)?;
            let mut jobs = Vec::new();
            for &mv in &consts(m)? {
                let mts = match family {
                    Family::Am1n => vec![0],
                    _ => mt_grid
                        .values(&BTreeMap::from([("m", mv)]))
                        .map_err(Failure::Usage)?,
                };
                let qs = match family {
                    Family::Tq => consts(q)?,
                    _ => vec![1],
                };
                for &mtv in &mts {
                    for &nv in &consts(n)? {
                        for &qv in &qs {
                            jobs.push((mv, mtv, nv, qv));
                        }
                    }
                }
            }
            let thr = g.threshold();
            let fam = *family;
            let items = jobs
                .par_iter()
                .map(|&(mv, mtv, nv, qv)| {
                    let params = json!({ "m": mv, "mt": mtv, "n": nv, "q": qv });
                    run_item(params, || {
                        let c = match (fam, mtv) {
                            (Family::Am1n, _) | (Family::Tq, 0) => build_am1n(mv, nv, p),
                            _ => build_two_mult(mv, mtv, nv, p),
                        };
                        let c = if fam == Family::Tq { c.and_then(|c| t_q_expand(&c, qv)) } else { c };
                        certify_item(c, thr)
                    })
                })
                .collect();
            let fam_name = match family {
                Family::Am1n => "am1n",
                Family::Twomult => "twomult",
                Family::Tq => "tq",
            };
            manifest(
                g,
                "scan certify",
                json!({ "family": fam_name, "m": m, "mt": mt, "n": n, "q": q }),
                items,
            )
        }
        Scan::Darboux { m, mt, n, q_max } => {
            let mt_grid = grid(mt)?;
            let mut jobs = Vec::new();
            for &mv in &consts(m)? {
                let mts = mt_grid
                    .values(&BTreeMap::from([("m", mv)]))
                    .map_err(Failure::Usage)?;
                for &mtv in &mts {
                    for &nv in &consts(n)? {
                        jobs.push((mv, mtv, nv));
                    }
                }
            }
            let qm = *q_max;
            let items = jobs
                .par_iter()
                .map(|&(mv, mtv, nv)| {
                    run_item(json!({ "m": mv, "mt": mtv, "n": nv }), || {
                        let r = darboux_report(mv, mtv, nv, qm, p)?;
                        Ok((r.passed(), serde_json::to_value(&r).expect("report serializes")))
                    })
                })
                .collect();
            manifest(
                g,
                "scan darboux",
                json!({ "m": m, "mt": mt, "n": n, "q_max": q_max }),
                items,
            )
        }
    }
}
