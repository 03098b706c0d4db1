use std::path::Path;

use anyhow::Result;
use num_complex::Complex64 as C;
use serde_json::json;

use plasma_core::exec::Exec;
use plasma_core::finite_n::{FrameKind, Potential, RescaleFrame};
use plasma_core::limits::LimitKernel;
use plasma_core::sampler::{boundary_profile, bulk_singularity_profile, HistSpec, SampleConfig};

use crate::args::SampleArgs;
use crate::output::Run;
use crate::{parse, Status, UsageError};

const SIGMAS: f64 = 3.0;
const BIAS: f64 = 0.02;

pub fn run(a: &SampleArgs, out: &Path) -> Result<Status> {
    let pot: Potential = parse::core(&a.pot, "--pot")?;
    let kind: FrameKind = parse::core(&a.frame, "--frame")?;
    let (lo, hi) = match &a.window {
        Some(w) => parse::window(w)?,
        None if kind == FrameKind::Singularity => (0.0, 4.0),
        None => (-3.0, 1.0),
    };
    let spec = match a.bins {
        Some(b) => HistSpec::new(lo, hi, b)?,
        None => HistSpec::with_width(lo, hi, 0.1)?,
    };
    let cfg = SampleConfig::new(pot, a.n, a.trials, a.seed)?;
    let target = LimitKernel::new(super::default_target(pot, kind)?)?;
    let hist = match kind {
        FrameKind::Boundary => {
            let frame = RescaleFrame::boundary(pot, a.n, 0.0)?;
            boundary_profile(Exec::default(), &cfg, &frame, spec)?
        }
        FrameKind::Singularity => bulk_singularity_profile(Exec::default(), &cfg, spec)?,
        FrameKind::Bulk => return Err(UsageError("sample supports --frame boundary or singularity".into()).into()),
    };
    // radial profiles: the target is evaluated along the positive real axis
    let f = |x: f64| target.one_point(C::new(x, 0.0)).unwrap_or(f64::NAN);
    let excess = hist.envelope_excess(f, SIGMAS, BIAS);

    let run = Run::new("sample", serde_json::to_value(a)?, Some(a.seed), out);
    let csv = run.write_csv("sample.csv", |w| Ok(hist.write_csv(w)?))?;
    let json_path = run.write_json(
        "sample.json",
        json!({
            "potential": pot.to_string(),
            "frame": a.frame,
            "target": target.spec().to_string(),
            "histogram": hist.summary(Some(&f)),
            "envelope": { "sigmas": SIGMAS, "bias": BIAS, "max_excess": excess, "within": excess <= 0.0 },
            "csv": "sample.csv",
        }),
    )?;
    println!(
        "sample [{pot}, {} frame, n = {}, {} trials]: {} counts, envelope excess {excess:.4}",
        a.frame,
        a.n,
        a.trials,
        hist.total()
    );
    println!("wrote {} and {}", csv.display(), json_path.display());
    Ok(Status::Pass)
}
