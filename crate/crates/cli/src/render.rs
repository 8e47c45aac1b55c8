use accr_core::TheoremReport;
use serde_json::{json, Map, Value};
use std::fmt::Write;

/// `0` below 1e-12, integers when within 1e-9 of one, otherwise up to 12 decimals.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let r = x.round();
    if (x - r).abs() < 1e-9 * (1.0 + x.abs()) && r.abs() < 1e15 {
        return format!("{}", r as i64);
    }
    let s = format!("{x:.12}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn text_report(r: &TheoremReport) -> String {
    let mut out = String::new();
    writeln!(out, "checks ({}, tolerance {:e}):", r.title, r.tolerance).unwrap();
    for c in &r.checks {
        let flag = if c.passed { "pass" } else { "FAIL" };
        writeln!(out, "  {flag}  {:.3e}  {}", c.residual, c.name).unwrap();
    }
    for n in &r.notes {
        writeln!(out, "note: {n}").unwrap();
    }
    let worst = r.worst().map(|c| c.residual).unwrap_or(0.0);
    let failed = r.failures().count();
    if failed == 0 {
        writeln!(
            out,
            "result: pass ({} checks, worst residual {worst:.3e})",
            r.checks.len()
        )
        .unwrap();
    } else {
        writeln!(
            out,
            "result: FAIL ({failed} of {} checks, worst residual {worst:.3e})",
            r.checks.len()
        )
        .unwrap();
    }
    out
}

pub fn json_report(r: &TheoremReport) -> Value {
    let values: Map<String, Value> = r.values.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    json!({
        "title": r.title,
        "tolerance": r.tolerance,
        "passed": r.passed(),
        "worst_residual": r.worst().map(|c| c.residual),
        "checks": r.checks,
        "values": values,
        "notes": r.notes,
    })
}
