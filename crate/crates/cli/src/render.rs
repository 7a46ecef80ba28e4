use std::fmt::Write;

use serde_json::{json, Value};

use ogr_core::identities::IdentityCheck;
use ogr_core::koszul::SeparatingCertificate;
use ogr_core::torsion::{Condition, TorsionReport};

use crate::config::{Format, Method, RunConfig};

/// A command result in all three renderings. JSON is the source of truth;
/// table and CSV are derived from the same data.
pub struct Report {
    pub value: Value,
    pub table: String,
    pub csv: String,
}

impl Report {
    /// A single named scalar.
    pub fn single(value: Value, name: &str, shown: String) -> Self {
        let mut table = String::new();
        for key in ["k", "n"] {
            if let Some(v) = value.get(key) {
                let _ = writeln!(table, "{key:<12} {v}");
            }
        }
        let _ = writeln!(table, "{name:<12} {shown}");
        let csv = csv_from_object(&value);
        Report { value, table, csv }
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        let config = serde_json::to_string(cfg).expect("config serialises");
        match cfg.format {
            Format::Json => {
                let doc = json!({"config": cfg, "result": self.value});
                let mut s = serde_json::to_string_pretty(&doc).expect("serialisable");
                s.push('\n');
                s
            }
            Format::Table => format!("# ogr {config}\n{}", self.table),
            Format::Csv => format!("# ogr {config}\n{}", self.csv),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One header row and one value row for the scalar fields of an object.
fn csv_from_object(value: &Value) -> String {
    let obj = value.as_object().expect("object result");
    let mut keys = vec![];
    let mut vals = vec![];
    for (k, v) in obj {
        match v {
            Value::Object(inner) => {
                for (ik, iv) in inner {
                    keys.push(format!("{k}.{ik}"));
                    vals.push(scalar(iv));
                }
            }
            Value::Array(_) => {}
            other => {
                keys.push(k.clone());
                vals.push(scalar(other));
            }
        }
    }
    format!("{}\n{}\n", keys.join(","), vals.join(","))
}

/// Rows indexed by degree.
pub fn per_degree(value: Value, columns: &[&str], rows: Vec<Vec<String>>) -> Report {
    let mut table = format!("{:>6}", "degree");
    let mut csv = format!("degree,{}\n", columns.join(","));
    for c in columns {
        let _ = write!(table, " {c:>8}");
    }
    table.push('\n');
    for (d, row) in rows.iter().enumerate() {
        let _ = write!(table, "{d:>6}");
        for x in row {
            let _ = write!(table, " {x:>8}");
        }
        table.push('\n');
        let _ = writeln!(csv, "{d},{}", row.join(","));
    }
    if let Some(total) = value.get("total") {
        let _ = writeln!(table, "{:>6} {total:>8}", "total");
    }
    Report { value, table, csv }
}

pub fn torsion(value: Value, reports: &[TorsionReport], method: Method) -> Report {
    let conditions: &[Condition] = match method {
        Method::Two => &[Condition::Two],
        Method::Three => &[Condition::Three],
        Method::Both => &[Condition::Two, Condition::Three],
    };
    let mut table = String::new();
    let mut csv = String::from("k,n,degree,dim,a2,b2,a3,b3,multiplicity2,multiplicity3\n");
    for rep in reports {
        for &c in conditions {
            let label = match c {
                Condition::Two => "2",
                Condition::Three => "3",
            };
            let _ = writeln!(
                table,
                "Gr~_{}({}) condition {label}: 4-torsion degrees {:?}{}",
                rep.k,
                rep.n,
                rep.degree_multiset(c),
                if rep.complete { "" } else { " (partial scan)" }
            );
        }
        let disc = rep.discrepancies();
        if !disc.is_empty() {
            let _ = writeln!(table, "  degreewise discrepancies between conditions: {disc:?}");
        }
        for x in &rep.counts {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{},{},{},{}",
                rep.k,
                rep.n,
                x.degree,
                x.dim,
                x.a2,
                x.b2,
                x.a3,
                x.b3,
                x.multiplicity(Condition::Two),
                x.multiplicity(Condition::Three)
            );
        }
    }
    Report { value, table, csv }
}

pub fn koszul(value: Value) -> Report {
    let mut table = String::new();
    let _ = writeln!(
        table,
        "Gr_{}({}): first relation degree {}",
        value["k"],
        value["n"],
        scalar(&value["first_relation_degree"])
    );
    let mut csv = String::from("degree,coeffs,boundary,boundary_nonzero,boundary_in_ker_w1\n");
    for r in value["relations"].as_array().expect("array") {
        let coeffs: Vec<String> = r["coeffs"]
            .as_array()
            .expect("array")
            .iter()
            .map(scalar)
            .collect();
        let _ = writeln!(
            table,
            "degree {:>3}: ({})  boundary {}  [nonzero: {}, in ker w1: {}]",
            r["degree"],
            coeffs.join(", "),
            scalar(&r["boundary"]),
            scalar(&r["boundary_nonzero"]),
            scalar(&r["boundary_in_ker_w1"])
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            r["degree"],
            coeffs.join(";"),
            scalar(&r["boundary"]),
            scalar(&r["boundary_nonzero"]),
            scalar(&r["boundary_in_ker_w1"])
        );
    }
    Report { value, table, csv }
}

fn monomial_string(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("w{}", i + 1) } else { format!("w{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

pub fn certificate(value: Value, cert: Option<&SeparatingCertificate>) -> Report {
    let mut table = String::new();
    let mut csv = String::from("monomial");
    let _ = writeln!(
        table,
        "found: {}  valid: {}  complete: {}",
        value["found"], value["valid"], value["complete"]
    );
    if let Some(c) = cert {
        let _ = writeln!(table, "Gr_{}({}), degree {}", c.k, c.n, c.degree);
        let labels: Vec<String> = c
            .generators
            .iter()
            .map(|g| {
                let b = monomial_string(&g.multiplier_exponents);
                if b == "1" {
                    format!("q{}", g.q_index)
                } else {
                    format!("{b} q{}", g.q_index)
                }
            })
            .collect();
        let _ = writeln!(table, "columns: {}", labels.join(" | "));
        for l in &labels {
            let _ = write!(csv, ",{l}");
        }
        csv.push('\n');
        for (m, row) in c.monomials.iter().zip(&c.matrix) {
            let bits: Vec<String> = row.iter().map(u8::to_string).collect();
            let _ = writeln!(table, "{:>24}  {}", monomial_string(m), bits.join(" "));
            let _ = writeln!(csv, "{},{}", monomial_string(m), bits.join(","));
        }
    } else {
        csv.push('\n');
    }
    Report { value, table, csv }
}

pub fn identities(value: Value, checks: &[IdentityCheck]) -> Report {
    let mut table = String::new();
    let mut csv = String::from("identity,k,param,holds\n");
    for c in checks {
        let name = serde_json::to_value(c.identity).expect("serialisable");
        let name = scalar(&name);
        let _ = writeln!(csv, "{name},{},{},{}", c.k, c.param, c.holds);
        if !c.holds {
            let _ = writeln!(table, "FAILED {name} k={} param={}", c.k, c.param);
        }
    }
    let _ = writeln!(
        table,
        "{} identities checked, {} failed",
        checks.len(),
        value["failed"]
    );
    Report { value, table, csv }
}
