//! Report documents: the machine-readable JSON schema and the
//! fixed-width text tables.

use serde::{Deserialize, Serialize};

use recurseq_core::divisors::DivisorReport;
use recurseq_core::modular::{ClassMax, PeriodCertificate};

/// JSON form of a divisor report:
/// `{source, bound, divisors:[{p, first_n}], non_divisors:[p],
///   errors:[{p, reason}], checkpoints:[{bound, count}]}`
/// plus the zero-term bookkeeping and assertion flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub source: String,
    pub bound: u64,
    pub divisors: Vec<DivisorEntry>,
    pub non_divisors: Vec<u64>,
    pub errors: Vec<ErrorEntry>,
    pub checkpoints: Vec<CheckpointEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zero_terms: Vec<u64>,
    pub zero_scan_window: u64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub has_zero_term: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub finite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth_strict: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorEntry {
    pub p: u64,
    pub first_n: u64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub zero_term: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorEntry {
    pub p: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckpointEntry {
    pub bound: u64,
    pub count: u64,
}

impl From<&DivisorReport> for ReportDoc {
    fn from(report: &DivisorReport) -> Self {
        ReportDoc {
            source: report.source.clone(),
            bound: report.prime_bound,
            divisors: report
                .divisors
                .iter()
                .map(|h| DivisorEntry {
                    p: h.prime,
                    first_n: h.first_index,
                    zero_term: h.zero_term,
                })
                .collect(),
            non_divisors: report.non_divisors.clone(),
            errors: report
                .errors
                .iter()
                .map(|e| ErrorEntry {
                    p: e.prime,
                    reason: e.reason.to_string(),
                })
                .collect(),
            checkpoints: report
                .checkpoints
                .iter()
                .map(|c| CheckpointEntry {
                    bound: c.bound,
                    count: c.count,
                })
                .collect(),
            zero_terms: report.zero_terms.clone(),
            zero_scan_window: report.zero_scan_window,
            has_zero_term: report.has_zero_term(),
            finite: report.finite,
            growth_strict: report.growth_strict,
            trace: report.trace.clone(),
        }
    }
}

fn pad(text: &str, width: usize) -> String {
    format!("{text:<width$}")
}

/// Fixed-width table: one row per divisor, then the summary sections.
pub fn divisor_table(doc: &ReportDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("source: {}\n", doc.source));
    out.push_str(&format!("bound:  {}\n", doc.bound));
    if !doc.divisors.is_empty() {
        let pw = doc
            .divisors
            .iter()
            .map(|d| d.p.to_string().len())
            .max()
            .unwrap()
            .max(2);
        let nw = doc
            .divisors
            .iter()
            .map(|d| d.first_n.to_string().len())
            .max()
            .unwrap()
            .max(7);
        out.push_str(&format!("{} {}\n", pad("p", pw), pad("first_n", nw)));
        for d in &doc.divisors {
            let mark = if d.zero_term { " (zero term)" } else { "" };
            out.push_str(&format!(
                "{} {}{mark}\n",
                pad(&d.p.to_string(), pw),
                pad(&d.first_n.to_string(), nw)
            ));
        }
    }
    out.push_str(&format!(
        "divisors: {}   non-divisors: {}\n",
        doc.divisors.len(),
        doc.non_divisors.len()
    ));
    if !doc.errors.is_empty() {
        for e in &doc.errors {
            out.push_str(&format!("error p={}: {}\n", e.p, e.reason));
        }
    }
    if !doc.checkpoints.is_empty() {
        let line = doc
            .checkpoints
            .iter()
            .map(|c| format!("<= {}: {}", c.bound, c.count))
            .collect::<Vec<_>>()
            .join("   ");
        out.push_str(&format!("checkpoints: {line}\n"));
    }
    if doc.has_zero_term {
        out.push_str(&format!(
            "zero terms at {:?} (window {})\n",
            doc.zero_terms, doc.zero_scan_window
        ));
    }
    if doc.finite {
        out.push_str("divisor set: FINITE (constant polynomial)\n");
    }
    if let Some(strict) = doc.growth_strict {
        out.push_str(&format!(
            "checkpoint growth strict: {}\n",
            if strict { "yes" } else { "NO" }
        ));
    }
    for line in &doc.trace {
        out.push_str(&format!("trace: {line}\n"));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodDoc {
    pub modulus: String,
    pub preperiod: u64,
    pub period: u64,
    pub states: u64,
}

impl From<&PeriodCertificate> for PeriodDoc {
    fn from(cert: &PeriodCertificate) -> Self {
        PeriodDoc {
            modulus: cert.modulus.to_string(),
            preperiod: cert.preperiod,
            period: cert.period,
            states: cert.cycle_residue_states,
        }
    }
}

pub fn period_table(doc: &PeriodDoc) -> String {
    format!(
        "modulus   {}\npreperiod {}\nperiod    {}\nstates    {}\n",
        doc.modulus, doc.preperiod, doc.period, doc.states
    )
}

pub fn class_maxima_table(maxima: &[ClassMax]) -> String {
    let mut out = String::from("class  max|a_n|  at_n\n");
    for c in maxima {
        out.push_str(&format!(
            "{:<6} {:<9} {}\n",
            c.class,
            c.max_abs,
            c.at_index.map_or("-".into(), |n| n.to_string())
        ));
    }
    out
}
