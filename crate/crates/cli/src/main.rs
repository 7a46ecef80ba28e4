mod config;
mod render;

use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use ogr_core::grassmann_ring::{QuotientRing, RingOptions};
use ogr_core::koszul::{self, SeparatingCertificate};
use ogr_core::{identities, schubert, torsion, Error};

use config::{Cli, Command, Method, Oracle, RunConfig};
use render::Report;

/// Why a run did not finish normally; each maps to its own exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Invariant(String),
    Disagreement(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::Disagreement(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "invalid input: {m}"),
            Failure::Invariant(m) => write!(f, "invariant violated: {m}"),
            Failure::Disagreement(m) => write!(f, "oracle disagreement: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::Cache(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(Report, Option<Failure>), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::resolve(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if cfg.threads > 0 {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }
    match run(&cli.command, &cfg) {
        Ok((report, failure)) => {
            print!("{}", report.render(&cfg));
            match failure {
                None => ExitCode::SUCCESS,
                Some(f) => {
                    eprintln!("error: {f}");
                    ExitCode::from(f.exit_code())
                }
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

fn ring(cfg: &RunConfig, k: usize, n: usize, max_degree: Option<u32>) -> Result<QuotientRing, Failure> {
    let opts = RingOptions {
        cache_dir: cfg.cache_dir.clone(),
        ..RingOptions::default()
    };
    Ok(QuotientRing::build_with(k, n, max_degree.or(cfg.max_degree), &opts)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn run(command: &Command, cfg: &RunConfig) -> Outcome {
    match command {
        Command::Betti { k, n, oriented } => betti(cfg, *k, *n, *oriented),
        Command::Torsion4 { k, n, n_max, method } => torsion4(cfg, *k, *n, n_max.unwrap_or(*n), *method),
        Command::Charrank { k, n } => charrank(cfg, *k, *n),
        Command::Deficiency { k, n } => {
            let d = koszul::deficiency(*k, *n)?;
            let value = json!({"k": k, "n": n, "deficiency": d});
            Ok((Report::single(value, "deficiency", d.to_string()), None))
        }
        Command::Height { k, n, oracle } => height(cfg, *k, *n, *oracle),
        Command::Koszul { k, n, degree_max } => koszul_cmd(cfg, *k, *n, degree_max.unwrap_or((n + k) as u32)),
        Command::Certificate {
            k,
            n,
            degree,
            verify,
            appendix,
            offset,
        } => {
            let (cert, found) = if let Some(path) = verify {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
                (Some(SeparatingCertificate::from_json(&text)?), true)
            } else if let Some(t) = appendix {
                (Some(koszul::appendix_certificate(*t, *offset)?), true)
            } else {
                let (k, n, d) = (k.expect("clap"), n.expect("clap"), degree.expect("clap"));
                let c = koszul::find_certificate(k, n, d)?;
                let found = c.is_some();
                (c, found)
            };
            let (valid, complete) = match &cert {
                Some(c) => (koszul::verify_certificate(c)?, c.is_complete()),
                None => (false, false),
            };
            let value = json!({
                "found": found,
                "valid": valid,
                "complete": complete,
                "certificate": cert,
            });
            Ok((render::certificate(value, cert.as_ref()), None))
        }
        Command::VerifyIdentities => {
            let checks = identities::standard_checks();
            let failed = checks.iter().filter(|c| !c.holds).count();
            let value = json!({"checks": checks, "failed": failed});
            let failure = (failed > 0).then(|| Failure::Invariant(format!("{failed} identities failed")));
            Ok((render::identities(value, &checks), failure))
        }
    }
}

fn betti(cfg: &RunConfig, k: usize, n: usize, oriented: bool) -> Outcome {
    let r = ring(cfg, k, n, None)?;
    let dims = if oriented { r.oriented_betti() } else { r.betti() };
    let total: usize = dims.iter().sum();
    let value = json!({
        "k": k,
        "n": n,
        "oriented": oriented,
        "complete": r.max_degree() == r.top_degree(),
        "betti": dims,
        "total": total,
    });
    Ok((render::per_degree(value, &["dim"], dims.iter().map(|&d| vec![d.to_string()]).collect()), None))
}

fn torsion4(cfg: &RunConfig, k: usize, n0: usize, n1: usize, method: Method) -> Outcome {
    let reports = (n0..=n1)
        .into_par_iter()
        .map(|n| {
            let r = ring(cfg, k, n, None)?;
            Ok(torsion::torsion4_scan_ring(&r)?)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let mut failure = None;
    let rings: Vec<Value> = reports
        .iter()
        .map(|rep| {
            let two = rep.has_torsion(torsion::Condition::Two);
            let three = rep.has_torsion(torsion::Condition::Three);
            if two != three {
                failure = Some(Failure::Invariant(format!(
                    "conditions disagree on the existence of 4-torsion for ({}, {})",
                    rep.k, rep.n
                )));
            }
            let mut v = to_value(&rep.summary());
            v["verdict"] = json!({"condition2": two, "condition3": three});
            v
        })
        .collect();
    let value = json!({"method": method, "rings": rings});
    Ok((render::torsion(value, &reports, method), failure))
}

fn charrank(cfg: &RunConfig, k: usize, n: usize) -> Outcome {
    let r = ring(cfg, k, n, None)?;
    let crk = r.char_rank();
    let first = match crk {
        ogr_core::grassmann_ring::CharRank::Exact(c) => Some(c + 1),
        ogr_core::grassmann_ring::CharRank::AtLeast(_) => None,
    };
    let value = json!({"k": k, "n": n, "char_rank": crk, "first_anomalous_degree": first});
    let shown = match crk {
        ogr_core::grassmann_ring::CharRank::Exact(c) => c.to_string(),
        ogr_core::grassmann_ring::CharRank::AtLeast(c) => format!(">= {c}"),
    };
    Ok((Report::single(value, "char_rank", shown), None))
}

fn height(cfg: &RunConfig, k: usize, n: usize, oracle: Oracle) -> Outcome {
    let quotient = match oracle {
        Oracle::Quotient | Oracle::Both => quotient_height(cfg, k, n)?,
        Oracle::Schubert => None,
    };
    let schubert = match oracle {
        Oracle::Schubert | Oracle::Both => Some(schubert::height_w1_oracle(k, n)),
        Oracle::Quotient => None,
    };
    let agree = match oracle {
        Oracle::Both => Some(quotient == schubert),
        _ => None,
    };
    let value = json!({"k": k, "n": n, "quotient": quotient, "schubert": schubert, "agree": agree});
    let failure = (agree == Some(false)).then(|| {
        Failure::Disagreement(format!("height oracles disagree: quotient {quotient:?}, schubert {schubert:?}"))
    });
    let shown = quotient.or(schubert).map_or("unbounded in built range".to_string(), |h| h.to_string());
    Ok((Report::single(value, "height_w1", shown), failure))
}

/// Build only as far as needed: a vanishing power inside the built range
/// already fixes the height, so double the degree bound until one shows up.
fn quotient_height(cfg: &RunConfig, k: usize, n: usize) -> Result<Option<u32>, Failure> {
    let top = (k * (n - k)) as u32;
    let limit = cfg.max_degree.unwrap_or(top).min(top);
    let mut cap = 16.min(limit);
    loop {
        let r = ring(cfg, k, n, Some(cap))?;
        if let Some(h) = r.height_w1()? {
            return Ok(Some(h));
        }
        if cap >= limit {
            return Ok(None);
        }
        cap = (2 * cap).min(limit);
    }
}

fn koszul_cmd(cfg: &RunConfig, k: usize, n: usize, degree_max: u32) -> Outcome {
    let top = (k * (n - k)) as u32;
    let r = ring(cfg, k, n, Some(degree_max.min(top)))?;
    let w1 = ogr_core::f2_algebra::F2Polynomial::generator(k, 1, ogr_core::f2_algebra::Flavor::W1);
    let lo = (n + 1 - k) as u32;
    let per_degree = (lo..=degree_max)
        .into_par_iter()
        .map(|d| koszul::relations_in_degree(k, n, d))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut relations = vec![];
    let mut failure = None;
    for r_d in per_degree.iter().flatten() {
        let x = koszul::koszul_boundary(r_d)?;
        let (nonzero, in_ker) = if r_d.degree >= 1 && r_d.degree - 1 <= r.max_degree() {
            let c = r.reduce_in_degree(&x, r_d.degree - 1)?;
            let in_ker = r.multiply_poly(&c, &w1)?.is_zero();
            (Some(!c.is_zero()), Some(in_ker))
        } else {
            (None, None)
        };
        if in_ker == Some(false) {
            failure = Some(Failure::Invariant(format!("boundary in degree {} is not in ker w1", r_d.degree - 1)));
        }
        relations.push(json!({
            "degree": r_d.degree,
            "coeffs": r_d.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "boundary": x.to_string(),
            "boundary_nonzero": nonzero,
            "boundary_in_ker_w1": in_ker,
        }));
    }
    let first_relation = per_degree.iter().position(|v| !v.is_empty()).map(|i| lo + i as u32);
    let value = json!({
        "k": k,
        "n": n,
        "degree_max": degree_max,
        "first_relation_degree": first_relation,
        "relations": relations,
    });
    Ok((render::koszul(value), failure))
}
