use std::path::Path;

use anyhow::Result;
use num_complex::Complex64 as C;
use serde_json::json;

use plasma_core::exec::Exec;
use plasma_core::finite_n::{exp_section, exp_section_limit, rescaled_kernel, FiniteKernel, FrameKind, Potential, RescaleFrame};
use plasma_core::limits::{LimitKernel, LimitKernelSpec};
use plasma_core::special::plasma_f_real;

use crate::args::{ConvergeArgs, ConvergeMode};
use crate::output::{write_table, Run};
use crate::{parse, thresholds, Status};

fn kernel_table(a: &ConvergeArgs, out: &Path) -> Result<Status> {
    let pot: Potential = parse::core(&a.pot, "--pot")?;
    let kind: FrameKind = parse::core(&a.frame, "--frame")?;
    let spec: LimitKernelSpec = match &a.spec {
        Some(s) => parse::core(s, "--spec")?,
        None => super::default_target(pot, kind)?,
    };
    let ns = parse::n_list(&a.n)?;
    // the hard-edge density jumps at x = 0, where no pointwise limit holds
    let jump = spec == LimitKernelSpec::HardEdge;
    let xs: Vec<f64> = parse::axis(&a.grid)?.points().filter(|x| !(jump && x.abs() < 1e-12)).collect();
    let limit = LimitKernel::new(spec.clone())?;
    let target: Vec<f64> = xs.iter().map(|&x| limit.one_point(C::new(x, 0.0))).collect::<plasma_core::Result<_>>()?;

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        let kernel = FiniteKernel::new(pot, n)?;
        let frame = RescaleFrame::of_kind(pot, kind, n)?;
        let errs = Exec::default().map(xs.len(), |k| {
            let z = C::new(xs[k], 0.0);
            (rescaled_kernel(&kernel, &frame, z, z).re - target[k]).abs()
        });
        let err = errs.into_iter().fold(0.0, f64::max);
        let (ratio, expected) = match i {
            0 => (f64::NAN, f64::NAN),
            _ => (rows[i - 1][1] / err, (n as f64 / ns[i - 1] as f64).sqrt()),
        };
        rows.push(vec![n as f64, err, ratio, expected]);
    }

    let last = rows.last().map(|r| r[1]).unwrap_or(f64::NAN);
    let factor = thresholds::get("converge.rate-factor");
    let rates_ok = rows.iter().skip(1).all(|r| r[2] >= r[3] / factor && r[2] <= r[3] * factor);
    let (pass, rule) = match kind {
        FrameKind::Bulk => (last <= thresholds::get("converge.bulk"), "error at largest n ≤ converge.bulk"),
        FrameKind::Boundary => (
            last <= thresholds::get("converge.boundary") && rates_ok,
            "error at largest n ≤ converge.boundary and ratios within converge.rate-factor of sqrt(n ratio)",
        ),
        FrameKind::Singularity => (rows.windows(2).all(|w| w[1][1] <= w[0][1]), "errors decrease with n"),
    };

    let mut config = serde_json::to_value(a)?;
    config["spec"] = json!(spec.to_string());
    let run = Run::new("converge", config, None, out);
    let header = ["n", "sup_error", "ratio_to_previous", "sqrt_n_ratio"];
    let csv = run.write_csv("converge.csv", |w| write_table(w, &header, &rows))?;
    let json_path = run.write_json(
        "converge.json",
        json!({
            "potential": pot.to_string(),
            "frame": a.frame,
            "target": spec.to_string(),
            "table": rows.iter().map(|r| json!({"n": r[0], "sup_error": r[1], "ratio_to_previous": if r[2].is_nan() { json!(null) } else { json!(r[2]) }})).collect::<Vec<_>>(),
            "rule": rule,
            "pass": pass,
            "csv": "converge.csv",
        }),
    )?;
    for r in &rows {
        println!("n = {:>7}  sup error {:.6e}  ratio {:.3}", r[0], r[1], r[2]);
    }
    println!("converge [{pot}, {} frame -> {spec}]: {}", a.frame, if pass { "PASS" } else { "FAIL" });
    println!("wrote {} and {}", csv.display(), json_path.display());
    Ok(if pass { Status::Pass } else { Status::Fail })
}

/// Table of `s_n(n + √n x)e^{-n-√n x}` with the CLT limit `F(x)` and the
/// curve `F(x)e^{x²/4}` for comparison.
fn sections_table(a: &ConvergeArgs, out: &Path) -> Result<Status> {
    let ns = parse::n_list(&a.n)?;
    let xs: Vec<f64> = parse::axis(&a.grid)?.points().collect();
    let rows: Vec<Vec<f64>> = xs
        .iter()
        .map(|&x| {
            let mut row = vec![x];
            row.extend(ns.iter().map(|&n| exp_section(n, x)));
            row.push(exp_section_limit(x));
            row.push(plasma_f_real(x) * (0.25 * x * x).exp());
            row
        })
        .collect();
    let sup = |col: usize| rows.iter().map(|r| (r[col] - r[ns.len() + 1]).abs()).fold(0.0, f64::max);
    let sups: Vec<f64> = (1..=ns.len()).map(sup).collect();

    let header: Vec<String> = std::iter::once("x".to_string())
        .chain(ns.iter().map(|n| format!("section_n{n}")))
        .chain(["limit_F".to_string(), "F_exp_x2_over_4".to_string()])
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let run = Run::new("converge", serde_json::to_value(a)?, None, out);
    let csv = run.write_csv("converge-sections.csv", |w| write_table(w, &header, &rows))?;
    let json_path = run.write_json(
        "converge-sections.json",
        json!({ "n": ns, "sup_deviation_from_F": sups, "csv": "converge-sections.csv" }),
    )?;
    for (n, s) in ns.iter().zip(&sups) {
        println!("n = {n:>7}  sup |section - F| {s:.6e}");
    }
    println!("wrote {} and {}", csv.display(), json_path.display());
    Ok(Status::Pass)
}

pub fn run(a: &ConvergeArgs, out: &Path) -> Result<Status> {
    match a.mode {
        ConvergeMode::Kernel => kernel_table(a, out),
        ConvergeMode::Sections => sections_table(a, out),
    }
}
