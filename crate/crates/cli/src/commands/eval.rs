use std::path::Path;

use anyhow::Result;
use num_complex::Complex64 as C;
use serde_json::json;

use plasma_core::exec::Exec;
use plasma_core::finite_n::{rescaled_kernel, FiniteKernel, FrameKind, Potential, RescaleFrame};
use plasma_core::grid::{GridSpec, KernelGrid};
use plasma_core::limits::{LimitKernel, LimitKernelSpec};

use crate::args::EvalArgs;
use crate::output::Run;
use crate::{parse, Status};

pub fn run(a: &EvalArgs, out: &Path) -> Result<Status> {
    let grid = GridSpec::square(parse::axis(&a.grid)?);
    let w = a.w.as_deref().map(parse::complex).transpose()?;
    let mut config = json!({ "grid": a.grid, "w": a.w });
    let grid_values = if let Some(limit) = &a.limit {
        let spec: LimitKernelSpec = parse::core(limit, "--limit")?;
        config["limit"] = json!(spec.to_string());
        let kernel = LimitKernel::new(spec)?;
        KernelGrid::fill(Exec::default(), grid, json!(null), |z| match w {
            None => Ok(C::new(kernel.one_point(z)?, 0.0)),
            Some(w) => kernel.eval(z, w),
        })?
    } else {
        let pot: Potential = parse::core(a.finite.as_deref().unwrap_or("ginibre"), "--finite")?;
        let kind: FrameKind = parse::core(&a.frame, "--frame")?;
        config["finite"] = json!(pot.to_string());
        config["n"] = json!(a.n);
        config["frame"] = json!(a.frame);
        let kernel = FiniteKernel::new(pot, a.n)?;
        let frame = RescaleFrame::of_kind(pot, kind, a.n)?;
        KernelGrid::fill(Exec::default(), grid, json!(null), |z| {
            let k = rescaled_kernel(&kernel, &frame, z, w.unwrap_or(z));
            // the diagonal is real; drop the rounding-level imaginary part
            Ok(if w.is_none() { C::new(k.re, 0.0) } else { k })
        })?
    };
    let run = Run::new("eval", config, None, out);
    let grid_values = KernelGrid { meta: run.provenance(), ..grid_values };
    let csv = run.write_csv("eval.csv", |w| Ok(grid_values.write_csv(w)?))?;
    let (lo, hi) = grid_values.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v.re), hi.max(v.re)));
    let json_path = run.write_json(
        "eval.json",
        json!({ "grid": grid_values.envelope(), "points": grid_values.values.len(), "re_min": lo, "re_max": hi, "csv": "eval.csv" }),
    )?;
    println!("eval: {}×{} values, Re in [{lo:.6}, {hi:.6}]", grid_values.nx, grid_values.ny);
    println!("wrote {} and {}", csv.display(), json_path.display());
    Ok(Status::Pass)
}
