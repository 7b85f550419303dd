use std::fmt::Write as _;

use super::{Format, GroupResult, ReportEnvelope, RunError};
use crate::verify::ClauseRole;

pub const CSV_HEADER: [&str; 5] = ["group", "order", "max_size", "maximum_count", "truncated"];

pub fn emit(envelope: &ReportEnvelope, format: Format) -> Result<String, RunError> {
    match format {
        Format::Json => serde_json::to_string_pretty(envelope)
            .map(|s| s + "\n")
            .map_err(|e| RunError::Serialise(e.to_string())),
        Format::Csv => csv(envelope),
        Format::Text => Ok(text(envelope)),
    }
}

fn csv(envelope: &ReportEnvelope) -> Result<String, RunError> {
    let err = |e: csv::Error| RunError::Serialise(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(err)?;
    for r in &envelope.results {
        let Some(e) = &r.enumeration else { continue };
        w.write_record([
            r.group.clone(),
            r.order.to_string(),
            e.max_size.to_string(),
            e.maximum_count.to_string(),
            e.truncated.to_string(),
        ])
        .map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| RunError::Serialise(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| RunError::Serialise(e.to_string()))
}

fn text(envelope: &ReportEnvelope) -> String {
    let mut out = String::new();
    for r in &envelope.results {
        group_text(&mut out, r);
    }
    let status = if envelope.verified {
        "verified"
    } else if envelope.truncated {
        "truncated"
    } else {
        "not verified"
    };
    let _ = writeln!(out, "status: {status} (exit {})", envelope.exit_code);
    out
}

fn group_text(out: &mut String, r: &GroupResult) {
    let _ = writeln!(out, "{} (order {})", r.group, r.order);
    if let Some(a) = &r.analysis {
        let _ = writeln!(out, "  abelian: {}, exponent {}", a.abelian, a.exponent);
        if let Some(t) = &a.elementary_abelian {
            let _ = writeln!(out, "  elementary abelian: p={}, n={}", t.p, t.n);
        }
        if let Some(n) = a.subgroup_count {
            let _ = writeln!(out, "  subgroups: {n}");
        }
        let _ = writeln!(out, "  maximal subgroups: {}", a.maximal_subgroup_count);
        let _ = writeln!(out, "  frattini: {}", a.frattini);
        let bound = if a.max_size_truncated {
            " (lower bound)"
        } else {
            ""
        };
        let _ = writeln!(out, "  max sum-free size: {}{bound}", a.max_sum_free_size);
        if let Some(s) = &a.set {
            let _ = writeln!(
                out,
                "  set {}: sum-free {}, maximum {}",
                s.set, s.sum_free, s.maximum
            );
            if let Some(lm) = s.locally_maximal {
                let _ = writeln!(out, "    locally maximal: {lm}");
            }
            let _ = writeln!(out, "    SS = {}", s.product_set);
            let _ = writeln!(out, "    S^-1 = {}", s.inverse_set);
            let _ = writeln!(out, "    SS^-1 = {}", s.quotient_set);
            let _ = writeln!(out, "    sqrt(S) = {}", s.sqrt_set);
        }
    }
    if let Some(e) = &r.enumeration {
        let _ = writeln!(
            out,
            "  max size {}, {} maximum sets{}",
            e.max_size,
            e.maximum_count,
            if e.truncated { " (truncated)" } else { "" }
        );
        for s in &e.maximum_sets {
            let _ = writeln!(out, "    {s}");
        }
        if let Some(n) = e.locally_maximal_count {
            let _ = writeln!(out, "  {n} locally maximal sets");
        }
    }
    for v in &r.verdicts {
        let _ = writeln!(
            out,
            "  {:?}: {}",
            v.theorem,
            if v.overall { "true" } else { "false" }
        );
        for c in &v.clauses {
            let role = match c.role {
                ClauseRole::Claim => "claim",
                ClauseRole::Observation => "observation",
            };
            let _ = writeln!(out, "    [{role}] {}: {}", c.label, c.holds);
        }
        for s in &v.skipped {
            let _ = writeln!(out, "    [skipped] {s}");
        }
    }
    for e in &r.errors {
        let _ = writeln!(out, "  error: {e}");
    }
}
