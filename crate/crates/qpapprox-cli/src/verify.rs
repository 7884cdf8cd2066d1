//! Reference-table verification: recompute every cell, diff, report.

use qpapprox_core::fixtures::{self, ReferenceRow, ReferenceTolerances};
use qpapprox_core::{analyze, AnalysisOptions, PeriodGrid, QuasiperiodicSpec};
use serde::Serialize;

#[derive(Serialize)]
struct CellDiff {
    row: String,
    cell: &'static str,
    computed: f64,
    reference: f64,
    rel: f64,
    tolerance: f64,
    pass: bool,
}

fn diff_rows(
    spec: &QuasiperiodicSpec,
    rows: &[ReferenceRow],
    rule: qpapprox_core::GridRule,
    eta: u32,
    tol: ReferenceTolerances,
    out: &mut Vec<CellDiff>,
) -> anyhow::Result<()> {
    for row in rows {
        let grid = PeriodGrid::from_rule(row.lengths.to_vec(), rule, eta)?;
        let analysis = analyze(spec, &grid, &AnalysisOptions::default())?;
        let r = &analysis.report;
        let label = format!("{:?}", row.lengths);
        let mut push = |cell: &'static str, computed: f64, reference: f64, tolerance: f64| {
            let rel = (computed - reference) / reference;
            out.push(CellDiff {
                row: label.clone(),
                cell,
                computed,
                reference,
                rel,
                tolerance,
                pass: rel.abs() <= tolerance,
            });
        };
        push("delta_v", r.delta_v_e, row.delta_v_e, tol.delta_v_e);
        push("eps0", r.eps0.unwrap(), row.eps0, tol.eps0);
        push("eps1", r.eps1, row.eps1, tol.eps1);
        push("eps2", r.eps2, row.eps2, tol.eps2);
    }
    Ok(())
}

pub fn run(table: &str, json: bool) -> anyhow::Result<i32> {
    let mut diffs = Vec::new();
    match table {
        "t1" => {
            diff_rows(
                &fixtures::benchmark_1d(),
                fixtures::reference_table_1d(),
                fixtures::GRID_RULE_1D,
                fixtures::ETA_1D,
                fixtures::tolerances_1d(),
                &mut diffs,
            )?;
        }
        "t2" => {
            diff_rows(
                &fixtures::benchmark_3d_case1(),
                fixtures::reference_table_3d_case1(),
                fixtures::GRID_RULE_3D,
                fixtures::ETA_3D,
                fixtures::tolerances_3d(),
                &mut diffs,
            )?;
            diff_rows(
                &fixtures::benchmark_3d_case2(),
                fixtures::reference_table_3d_case2(),
                fixtures::GRID_RULE_3D,
                fixtures::ETA_3D,
                fixtures::tolerances_3d(),
                &mut diffs,
            )?;
        }
        other => anyhow::bail!("unknown table {other:?}; expected \"t1\" or \"t2\""),
    }
    let failed = diffs.iter().filter(|d| !d.pass).count();
    if json {
        println!("{}", serde_json::to_string_pretty(&diffs)?);
    } else {
        println!(
            "{:<18} {:<8} {:>13} {:>12} {:>10} {:>8}  status",
            "L", "cell", "computed", "reference", "rel", "tol"
        );
        for d in &diffs {
            println!(
                "{:<18} {:<8} {:>13} {:>12} {:>10} {:>8}  {}",
                d.row,
                d.cell,
                format!("{:.4e}", d.computed),
                format!("{:.4e}", d.reference),
                format!("{:+.1e}", d.rel),
                format!("{:.0e}", d.tolerance),
                if d.pass { "pass" } else { "FAIL" }
            );
        }
        println!(
            "{} of {} cells within tolerance{}",
            diffs.len() - failed,
            diffs.len(),
            if table == "t2" && failed > 0 {
                " (the eps0/eps1 cells of L=[127, 99, 209] are known to be inconsistent \
                 with that row's own delta_v and eps2)"
            } else {
                ""
            }
        );
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
