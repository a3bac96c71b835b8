//! Plain-text and CSV rendering. Numbers carry 10 significant digits.

use std::io::{self, Write};

use inflexion::harness::{AnalysisReport, ExperimentReport, RefineResult, ReplicateResult, TableReport};
use inflexion::refine::IterationRow;
use serde::Serialize;

const SIGNIFICANT: i32 = 10;

/// `v` rounded to 10 significant digits, without trailing zeros.
pub fn sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = SIGNIFICANT - 1 - magnitude;
    if !(0..=20).contains(&decimals) {
        return format!("{:.*e}", (SIGNIFICANT - 1) as usize, v);
    }
    let s = format!("{:.*}", decimals as usize, v);
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn opt(v: Option<f64>) -> String {
    v.map(sig).unwrap_or_default()
}

fn opt_plain(v: Option<f64>) -> String {
    v.map(sig).unwrap_or_else(|| "none".into())
}

pub fn analysis_plain<W: Write>(out: &mut W, report: &AnalysisReport) -> io::Result<()> {
    writeln!(
        out,
        "points {}  interval [{}, {}]{}",
        report.points,
        sig(report.a),
        sig(report.b),
        if report.flipped { "  (ordinates negated: concave-convex input)" } else { "" }
    )?;
    replicate_plain(out, &report.result)
}

fn replicate_plain<W: Write>(out: &mut W, r: &ReplicateResult) -> io::Result<()> {
    if let Some(e) = r.ese {
        writeln!(out, "ESE   j_r={} j_l={}  chi_r={}  chi_l={}  chi_S={}", e.j_r, e.j_l, sig(e.chi_r), sig(e.chi_l), sig(e.chi_s))?;
    }
    if let Some(e) = r.ede {
        match e.chi_d {
            Some(d) => writeln!(
                out,
                "EDE   j_1={} j_2={}  chi_F1={}  chi_F2={}  chi_D={}",
                e.j_1,
                e.j_2,
                sig(e.chi_f1),
                sig(e.chi_f2),
                sig(d)
            )?,
            None => writeln!(
                out,
                "EDE   non-detection: chi_F2={} < chi_F1={}",
                sig(e.chi_f2),
                sig(e.chi_f1)
            )?,
        }
    }
    if let Some(t) = &r.bese {
        trace_plain(out, "BESE", t)?;
    }
    if let Some(t) = &r.bede {
        trace_plain(out, "BEDE", t)?;
    }
    if let Some(p) = r.cubic_corrected {
        writeln!(out, "cubic-corrected p={}", sig(p))?;
    }
    if let Some(e) = &r.error {
        writeln!(out, "error: {e}")?;
    }
    Ok(())
}

fn trace_plain<W: Write>(out: &mut W, label: &str, t: &RefineResult) -> io::Result<()> {
    writeln!(
        out,
        "{label}  estimate={}  iterations={}  stop={}",
        opt_plain(t.estimate),
        t.trace.iterations(),
        serde_plain(&t.trace.stop_reason)
    )?;
    writeln!(out, "  {:>3} {:>6} {:>6} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}", "k", "lo", "hi", "chi_r", "chi_l", "chi_S", "chi_F1", "chi_F2", "chi_D")?;
    for row in &t.trace.rows {
        writeln!(
            out,
            "  {:>3} {:>6} {:>6} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
            row.k,
            row.lo,
            row.hi,
            sig(row.chi_r),
            sig(row.chi_l),
            sig(row.chi_s),
            opt(row.chi_f1),
            opt(row.chi_f2),
            opt(row.chi_d)
        )?;
    }
    Ok(())
}

fn serde_plain<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn experiment_plain<W: Write>(out: &mut W, report: &ExperimentReport) -> io::Result<()> {
    let c = &report.config;
    writeln!(
        out,
        "{} on [{}, {}], n={}, p={}{}",
        c.curve.family(),
        sig(c.a),
        sig(c.b),
        c.n,
        sig(report.true_inflection),
        c.noise.map(|n| format!(", noise {n}, seeds {}..{}", n.seed, n.seed + c.replicates as u64 - 1)).unwrap_or_default()
    )?;
    if report.replicates.len() == 1 {
        return replicate_plain(out, &report.replicates[0]);
    }
    writeln!(out, "{:<16} {:>6} {:>8} {:>14} {:>14} {:>14}", "estimator", "count", "missing", "mean", "std_dev", "bias")?;
    for s in &report.summaries {
        writeln!(
            out,
            "{:<16} {:>6} {:>8} {:>14} {:>14} {:>14}",
            s.estimator.as_str(),
            s.count,
            s.missing,
            opt_plain(s.mean),
            opt_plain(s.std_dev),
            opt_plain(s.bias)
        )?;
    }
    Ok(())
}

const CSV_HEADER: &str = "replicate,method,k,lo,hi,chi_r,chi_l,chi_s,chi_f1,chi_f2,chi_d,estimate";

/// One row per method (and per trace row for refinements).
pub fn analysis_csv<W: Write>(out: &mut W, rows: &[ReplicateResult]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        let i = r.replicate;
        if let Some(e) = r.ese {
            writeln!(out, "{i},ese,,,,{},{},{},,,,{}", sig(e.chi_r), sig(e.chi_l), sig(e.chi_s), sig(e.chi_s))?;
        }
        if let Some(e) = r.ede {
            writeln!(out, "{i},ede,,,,,,,{},{},{},{}", sig(e.chi_f1), sig(e.chi_f2), opt(e.chi_d), opt(e.chi_d))?;
        }
        for (name, trace) in [("bese", &r.bese), ("bede", &r.bede)] {
            if let Some(t) = trace {
                let last = t.trace.rows.len().saturating_sub(1);
                for row in &t.trace.rows {
                    let estimate = if row.k == last { opt(t.estimate) } else { String::new() };
                    writeln!(out, "{i},{name},{},{estimate}", trace_cells(row))?;
                }
            }
        }
        if let Some(p) = r.cubic_corrected {
            writeln!(out, "{i},cubic-correction,,,,,,,,,,{}", sig(p))?;
        }
    }
    Ok(())
}

fn trace_cells(row: &IterationRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        row.k,
        row.lo,
        row.hi,
        sig(row.chi_r),
        sig(row.chi_l),
        sig(row.chi_s),
        opt(row.chi_f1),
        opt(row.chi_f2),
        opt(row.chi_d)
    )
}

#[derive(Serialize)]
pub struct TableSummary<'a> {
    name: &'a str,
    caption: &'a str,
    passed: bool,
    checks: &'a [inflexion::harness::Check],
}

pub fn bundle_summary(tables: &[TableReport]) -> Vec<TableSummary<'_>> {
    tables
        .iter()
        .map(|t| TableSummary { name: &t.name, caption: &t.caption, passed: t.passed, checks: &t.checks })
        .collect()
}

pub fn checks_csv<W: Write>(out: &mut W, tables: &[TableReport]) -> io::Result<()> {
    writeln!(out, "table,quantity,class,expected,actual,tolerance,lower,upper,passed")?;
    for t in tables {
        for c in &t.checks {
            let [lo, hi] = c.interval.map(|[l, h]| [sig(l), sig(h)]).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                t.name,
                c.quantity.replace(',', ";"),
                serde_plain(&c.class),
                sig(c.expected),
                opt(c.actual),
                sig(c.tolerance),
                lo,
                hi,
                c.passed
            )?;
        }
    }
    Ok(())
}

pub fn checks_plain<W: Write>(out: &mut W, tables: &[TableReport]) -> io::Result<()> {
    for t in tables {
        let passed = t.checks.iter().filter(|c| c.passed).count();
        writeln!(
            out,
            "{} {:<24} {:>3}/{:<3} {}",
            if t.passed { "PASS" } else { "FAIL" },
            t.name,
            passed,
            t.checks.len(),
            t.caption
        )?;
        for c in t.checks.iter().filter(|c| !c.passed) {
            let bounds = c.interval.map(|[l, h]| format!(" interval [{}, {}]", sig(l), sig(h))).unwrap_or_default();
            writeln!(
                out,
                "     {} ({}) expected {} got {}{}",
                c.quantity,
                serde_plain(&c.class),
                sig(c.expected),
                opt_plain(c.actual),
                bounds
            )?;
        }
    }
    let ok = tables.iter().filter(|t| t.passed).count();
    writeln!(out, "{ok}/{} tables passed", tables.len())
}
