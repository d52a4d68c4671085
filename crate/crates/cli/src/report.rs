use serde::{Deserialize, Serialize};

use crate::Format;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DimEntry {
    pub n: usize,
    pub dim: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DimReport {
    pub presentation: String,
    pub dims: Vec<DimEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DualReport {
    pub presentation: String,
    pub ops: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EqvReport {
    pub left: String,
    pub right: String,
    pub max_arity: usize,
    pub equivalent: bool,
    /// `identity` or `opposite` when equivalent.
    pub map: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EmbedReport {
    pub term: String,
    pub image: String,
    pub homogeneous: bool,
    pub weight: Option<(u64, u64)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

pub fn dims(reports: &[DimReport], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json if reports.len() == 1 => out = json(&reports[0]),
        Format::Json => out = json(&reports),
        Format::Csv => {
            out.push_str("presentation,n,dim\n");
            for r in reports {
                for e in &r.dims {
                    out.push_str(&format!("{},{},{}\n", r.presentation, e.n, e.dim));
                }
            }
        }
        Format::Table => {
            let width = reports.iter().map(|r| r.presentation.len()).max().unwrap_or(0).max(12);
            out.push_str(&format!("{:<width$}  {:>3}  {:>8}\n", "presentation", "n", "dim"));
            for r in reports {
                for e in &r.dims {
                    out.push_str(&format!("{:<width$}  {:>3}  {:>8}\n", r.presentation, e.n, e.dim));
                }
            }
        }
    }
    out.trim_end().to_string()
}

pub fn dual(r: &DualReport, text: &str, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut out = String::from("relation\n");
            for rel in &r.relations {
                out.push_str(rel);
                out.push('\n');
            }
            out.trim_end().to_string()
        }
        Format::Table => text.trim_end().to_string(),
    }
}

pub fn eqv(r: &EqvReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => format!(
            "left,right,max_arity,equivalent,map\n{},{},{},{},{}",
            r.left,
            r.right,
            r.max_arity,
            r.equivalent,
            r.map.as_deref().unwrap_or("")
        ),
        Format::Table => match &r.map {
            Some(m) => format!("true ({m} map, arities 1..{})", r.max_arity),
            None => format!("false (arities 1..{})", r.max_arity),
        },
    }
}

pub fn embed(r: &EmbedReport, format: Format) -> String {
    let weight = match r.weight {
        Some((a, b)) => format!("({a},{b})"),
        None => "inhomogeneous".to_string(),
    };
    match format {
        Format::Json => json(r),
        Format::Csv => format!("term,image,weight\n{},{},{}", r.term, r.image, weight.replace(',', ";")),
        Format::Table => format!("{}\nweight {weight}", r.image),
    }
}

pub fn verify(r: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for c in &r.checks {
                out.push_str(&format!("{},{},{}\n", c.name, c.passed, c.detail.replace(',', ";")));
            }
            out.trim_end().to_string()
        }
        Format::Table => {
            let mut out = String::new();
            for c in &r.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!("{tag}  {}: {}\n", c.name, c.detail));
            }
            out.push_str(if r.passed { "all checks passed" } else { "some checks failed" });
            out
        }
    }
}
