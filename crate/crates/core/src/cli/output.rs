//! Rendering of command results as plain text, JSON or CSV.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::quaternion::Quaternion;
use crate::rational::RegularQuotient;
use crate::series::{RegularPolynomial, SphericalExpansion};
use crate::verify::{AggregateReport, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

pub struct Output {
    format: Format,
}

fn json_line<T: Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    text
}

fn csv_quaternion(q: Quaternion) -> String {
    let q = q + Quaternion::ZERO;
    format!("{},{},{},{}", q.w, q.x, q.y, q.z)
}

fn csv_coefficients(prefix: &str, coeffs: &[Quaternion], out: &mut String) {
    for (n, &c) in coeffs.iter().enumerate() {
        let _ = writeln!(out, "{prefix}{n},{}", csv_quaternion(c));
    }
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format }
    }

    pub fn quaternion(&self, label: &str, q: Quaternion) -> String {
        match self.format {
            Format::Pretty => format!("{q}\n"),
            Format::Json => json_line(&json!({ label: q })),
            Format::Csv => format!("w,x,y,z\n{}\n", csv_quaternion(q)),
        }
    }

    pub fn quaternions(&self, items: &[(&str, Quaternion)]) -> String {
        match self.format {
            Format::Pretty => items.iter().map(|(name, q)| format!("{name}: {q}\n")).collect(),
            Format::Json => {
                let map: serde_json::Map<String, Value> =
                    items.iter().map(|(name, q)| (name.to_string(), json!(q))).collect();
                json_line(&map)
            }
            Format::Csv => {
                let mut out = String::from("name,w,x,y,z\n");
                for (name, q) in items {
                    let _ = writeln!(out, "{name},{}", csv_quaternion(*q));
                }
                out
            }
        }
    }

    pub fn real(&self, label: &str, x: f64) -> String {
        match self.format {
            Format::Pretty => format!("{x}\n"),
            Format::Json => json_line(&json!({ label: x })),
            Format::Csv => format!("{label}\n{x}\n"),
        }
    }

    pub fn polynomial(&self, p: &RegularPolynomial) -> String {
        match self.format {
            Format::Pretty => format!("{p}\n"),
            Format::Json => json_line(p),
            Format::Csv => {
                let mut out = String::from("n,w,x,y,z\n");
                csv_coefficients("", p.coeffs(), &mut out);
                out
            }
        }
    }

    pub fn quotient(&self, f: &RegularQuotient) -> String {
        match self.format {
            Format::Pretty => format!("{f}\n"),
            Format::Json => json_line(f),
            Format::Csv => {
                let mut out = String::from("part,n,w,x,y,z\n");
                csv_coefficients("den,", f.den().coeffs(), &mut out);
                csv_coefficients("num,", f.num().coeffs(), &mut out);
                out
            }
        }
    }

    pub fn expansion(&self, e: &SphericalExpansion) -> String {
        match self.format {
            Format::Pretty => e
                .coefficients
                .iter()
                .enumerate()
                .map(|(n, a)| format!("A_{n} = {a}\n"))
                .collect(),
            Format::Json => json_line(e),
            Format::Csv => {
                let mut out = String::from("n,w,x,y,z\n");
                csv_coefficients("", &e.coefficients, &mut out);
                out
            }
        }
    }

    pub fn report(&self, r: &VerificationReport) -> String {
        match self.format {
            Format::Pretty => pretty_report(r),
            Format::Json => json_line(r),
            Format::Csv => {
                let mut out = csv_report_header();
                csv_report_rows(r, &mut out);
                out
            }
        }
    }

    pub fn aggregate(&self, a: &AggregateReport) -> String {
        match self.format {
            Format::Pretty => {
                let mut out: String = a.suites.iter().map(pretty_report).collect();
                let verdict = if a.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "all: {verdict} (seed {}, {} samples per suite)", a.seed, a.samples);
                out
            }
            Format::Json => json_line(a),
            Format::Csv => {
                let mut out = csv_report_header();
                for r in &a.suites {
                    csv_report_rows(r, &mut out);
                }
                out
            }
        }
    }
}

fn pretty_report(r: &VerificationReport) -> String {
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    let mut out = format!(
        "{}: {verdict} (seed {}, {} samples, worst margin {:e})\n",
        r.suite, r.seed, r.samples, r.worst_margin
    );
    for p in &r.properties {
        let verdict = if p.pass { "ok" } else { "FAILED" };
        let _ = writeln!(
            out,
            "  {:<24} {verdict:<6} {:>6} checks, {} violations, worst {:e}",
            p.name, p.samples, p.violations, p.worst_margin
        );
    }
    out
}

fn csv_report_header() -> String {
    String::from("suite,property,kind,samples,violations,worst_margin,pass\n")
}

fn csv_report_rows(r: &VerificationReport, out: &mut String) {
    for p in &r.properties {
        let kind = serde_json::to_value(p.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(out, "{},{},{kind},{},{},{},{}", r.suite, p.name, p.samples, p.violations, p.worst_margin, p.pass);
    }
}
