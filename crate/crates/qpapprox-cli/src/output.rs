//! Rendering: aligned tables on stdout, CSV files, JSON documents.

use qpapprox_core::{Analysis, PeriodGrid, QuasiperiodicSpec};
use serde::Serialize;
use std::io::Write;

/// Five significant digits, the table display convention.
pub fn sig5(x: f64) -> String {
    format!("{x:.4e}")
}

#[derive(Serialize)]
pub struct ReportJson {
    pub lengths: Vec<i64>,
    pub diophantine_entries_pass: usize,
    pub diophantine_entries_total: usize,
    pub nodes: Vec<i64>,
    pub eta: u32,
    pub zeta: usize,
    pub d_m: usize,
    pub d_max_coincide: usize,
    pub distinct_irrational: Vec<usize>,
    pub exponents: Vec<Vec<i64>>,
    pub coefficients: Vec<[f64; 2]>,
    pub delta_v_e: f64,
    pub eps0: Option<f64>,
    pub eps1: f64,
    pub eps2: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub y2: f64,
    pub b_max: f64,
    pub admissible_full: bool,
    pub admissible_weak: bool,
    pub notes: Vec<String>,
}

pub fn report_json(
    grid: &PeriodGrid,
    analysis: &Analysis,
    diophantine: &qpapprox_core::DiophantineReport,
) -> ReportJson {
    let r = &analysis.report;
    ReportJson {
        lengths: grid.lengths().to_vec(),
        diophantine_entries_pass: diophantine.entries.iter().filter(|e| e.pass).count(),
        diophantine_entries_total: diophantine.entries.len(),
        nodes: grid.nodes().to_vec(),
        eta: grid.eta(),
        zeta: analysis.set.zeta(),
        d_m: analysis.set.min_integer_count(),
        d_max_coincide: analysis.set.max_zero_diff(),
        distinct_irrational: analysis.set.distinct_irrational().to_vec(),
        exponents: analysis.approximant.exponents().to_vec(),
        coefficients: analysis
            .approximant
            .coefficients()
            .iter()
            .map(|c| [c.re, c.im])
            .collect(),
        delta_v_e: r.delta_v_e,
        eps0: r.eps0,
        eps1: r.eps1,
        eps2: r.eps2,
        x1: r.x1,
        x2: r.x2,
        x3: r.x3,
        y2: r.y2,
        b_max: r.b_max,
        admissible_full: r.admissible_full,
        admissible_weak: r.admissible_weak,
        notes: r.notes.clone(),
    }
}

pub fn print_report_human(
    spec: &QuasiperiodicSpec,
    grid: &PeriodGrid,
    analysis: &Analysis,
    diophantine: &qpapprox_core::DiophantineReport,
) {
    let r = &analysis.report;
    println!(
        "problem: d = {}, n = {}, D = {}, N = {}, eta = {}",
        spec.dim(),
        spec.rank(),
        spec.count(),
        spec.cutoff(),
        grid.eta()
    );
    println!("L = {:?}   G = {:?}", grid.lengths(), grid.nodes());
    println!(
        "classification: zeta = {}, d_m = {}, d_M = {}, s_j = {:?}",
        analysis.set.zeta(),
        analysis.set.min_integer_count(),
        analysis.set.max_zero_diff(),
        analysis.set.distinct_irrational()
    );
    println!("exponents and periodic coefficients:");
    println!("  {:<4} {:<20} {:>13} {:>13}", "l", "h", "re(b)", "im(b)");
    for (i, (h, b)) in analysis
        .approximant
        .exponents()
        .iter()
        .zip(analysis.approximant.coefficients())
        .enumerate()
    {
        println!(
            "  {:<4} {:<20} {:>13} {:>13}",
            i + 1,
            format!("{h:?}"),
            sig5(b.re),
            sig5(b.im)
        );
    }
    println!("report:");
    println!("  |Delta V|_e = {}", sig5(r.delta_v_e));
    match r.eps0 {
        Some(e0) => println!("  eps0 = {}", sig5(e0)),
        None => println!("  eps0 = (not measured)"),
    }
    println!("  eps1 = {}", sig5(r.eps1));
    println!("  eps2 = {}", sig5(r.eps2));
    println!(
        "  x1 = {}, x2 = {}, x3 = {}, y2 = {}",
        sig5(r.x1),
        sig5(r.x2),
        sig5(r.x3),
        sig5(r.y2)
    );
    println!("  b_max = {}", sig5(r.b_max));
    println!(
        "  admissible: full = {}, weak = {}",
        r.admissible_full, r.admissible_weak
    );
    println!(
        "  diophantine condition (reporting parameters): {} of {} irrational entries pass",
        diophantine.entries.iter().filter(|e| e.pass).count(),
        diophantine.entries.len()
    );
    for e in diophantine.entries.iter().filter(|e| !e.pass) {
        println!(
            "    entry ({}, {}): |{}| vs bound {} (margin {})",
            e.row,
            e.col,
            sig5(e.value),
            sig5(e.bound),
            sig5(e.margin)
        );
    }
    if !r.notes.is_empty() {
        println!("notes:");
        for n in &r.notes {
            println!("  - {n}");
        }
    }
}

/// Writes the per-exponent table as CSV (header row, LF endings, shortest
/// round-trip float formatting).
pub fn write_approximant_csv(path: &std::path::Path, analysis: &Analysis) -> anyhow::Result<()> {
    let mut out = std::fs::File::create(path)?;
    let d = analysis.approximant.lengths().len();
    let mut header = String::from("index");
    for j in 0..d {
        header.push_str(&format!(",h_{j}"));
    }
    header.push_str(",re_b,im_b");
    writeln!(out, "{header}")?;
    for (i, (h, b)) in analysis
        .approximant
        .exponents()
        .iter()
        .zip(analysis.approximant.coefficients())
        .enumerate()
    {
        let mut line = format!("{}", i + 1);
        for &hj in h {
            line.push_str(&format!(",{hj}"));
        }
        line.push_str(&format!(",{},{}", b.re, b.im));
        writeln!(out, "{line}")?;
    }
    Ok(())
}
