//! Rendering of forms, reports and tables.

use killform_core::classifier::ClassificationReport;
use killform_core::exterior::blades;
use killform_core::Multivector;
use serde_json::{json, Map, Value};

const ZERO: f64 = 1e-12;

fn blade_name(mask: u32) -> String {
    let mut parts = Vec::new();
    for b in 0..32 {
        if mask & (1 << b) != 0 {
            parts.push(format!("e{}", b + 1));
        }
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join("^")
    }
}

fn coefficient(c: f64) -> String {
    let a = c.abs();
    if (a - 1.0).abs() < ZERO {
        String::new()
    } else if (a - a.round()).abs() < ZERO {
        format!("{} ", a.round())
    } else {
        format!("{a:.6} ")
    }
}

/// `e1^e3 - e2^e4` style rendering with one based indices.
pub fn form(u: &Multivector) -> String {
    let mut out = String::new();
    for p in u.grades_present() {
        for (mask, &c) in blades(u.n(), p).into_iter().zip(u.grade_coeffs(p)) {
            if c.abs() < ZERO {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0.0 {
                    out.push_str("- ");
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&coefficient(c));
            out.push_str(&blade_name(mask));
        }
    }
    if out.is_empty() {
        String::from("0")
    } else {
        out
    }
}

pub fn report_json(report: &ClassificationReport) -> Value {
    let residuals: Map<String, Value> = report
        .residuals
        .iter()
        .map(|(name, v)| (name.clone(), json!(v)))
        .collect();
    let trace: Vec<Value> = report
        .trace
        .steps
        .iter()
        .map(|&(k, e, f)| json!([k, e, f]))
        .collect();
    json!({
        "model": report.model,
        "n": report.n,
        "p": report.p,
        "dims": {
            "E0": report.dims.e0,
            "F0": report.dims.f0,
            "E": report.dims.e,
            "F": report.dims.f,
        },
        "branch": report.branch.as_str(),
        "flags": {
            "kahler": report.flags.kahler,
            "irreducible": report.flags.irreducible,
            "weyl_norm": report.flags.weyl_norm,
            "r_plus_vanishes_on_E": report.flags.r_plus_vanishes_on_e,
            "holonomy_dim": report.flags.holonomy_dim,
        },
        "residuals": residuals,
        "trace": trace,
        "warnings": report.warnings,
    })
}

/// Left-aligned columns.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.clone()));
        out.push('\n');
    }
    out
}

pub fn sci(v: f64) -> String {
    format!("{v:.2e}")
}
