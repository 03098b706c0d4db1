use std::path::Path;

use anyhow::Result;
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use plasma_core::exec::Exec;
use plasma_core::grid::{AxisSpec, GridSpec};
use plasma_core::limits::*;

use crate::args::{Equation, VerifyArgs};
use crate::output::{write_table, Run};
use crate::thresholds::{self, family};
use crate::{parse, Status, UsageError};

/// Outcome of one equation check.
struct Check {
    /// Signed or absolute value compared with `threshold`.
    value: f64,
    threshold: f64,
    pass: bool,
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
    extra: Value,
}

fn bbox(grid: &GridSpec) -> (C, C) {
    let hi = grid.origin + C::new((grid.nx - 1) as f64 * grid.step, (grid.ny - 1) as f64 * grid.step);
    (grid.origin, hi)
}

fn random_in(rng: &mut ChaCha8Rng, lo: C, hi: C) -> C {
    C::new(rng.gen_range(lo.re..=hi.re), rng.gen_range(lo.im..=hi.im))
}

fn grid_or(a: &VerifyArgs, default: &str) -> Result<GridSpec, UsageError> {
    Ok(GridSpec::square(parse::axis(a.grid.as_deref().unwrap_or(default))?))
}

fn sup_check(key: &str, header: Vec<&'static str>, rows: Vec<Vec<f64>>, extra: Value) -> Check {
    let col = header.len() - 1;
    let value = rows.iter().map(|r| r[col].abs()).fold(0.0, f64::max);
    let threshold = thresholds::get(key);
    Check { value, threshold, pass: value <= threshold, header, rows, extra }
}

fn ward(a: &VerifyArgs, spec: &LimitKernelSpec) -> Result<Check> {
    let default = if *spec == LimitKernelSpec::HardEdge { "-2:-0.2:0.45" } else { "-2:2:0.5" };
    let grid = grid_or(a, default)?;
    let quad = parse::quad(a.quad.as_deref())?;
    let punctured = matches!(spec, LimitKernelSpec::MittagLeffler(_));
    let points: Vec<C> = grid.points().filter(|z| !(punctured && z.norm() < 1e-12)).collect();
    let rows = Exec::default()
        .map(points.len(), |k| {
            let one = GridSpec { origin: points[k], step: 1.0, nx: 1, ny: 1 };
            let r = ward_residual_with(Exec::Sequential, spec, one, quad, a.fd_step)?;
            Ok(vec![points[k].re, points[k].im, r.sup_norm])
        })
        .into_iter()
        .collect::<plasma_core::Result<Vec<_>>>()?;
    let skipped = grid.len() - points.len();
    Ok(sup_check(
        &format!("ward.{}", family(spec)),
        vec!["x", "y", "residual"],
        rows,
        json!({ "quad": quad, "fd_step": a.fd_step, "skipped_points": skipped }),
    ))
}

fn mass_one(a: &VerifyArgs, spec: &LimitKernelSpec) -> Result<Check> {
    let grid = grid_or(a, "-2:2:1")?;
    let quad = parse::quad(a.quad.as_deref())?;
    let hard = *spec == LimitKernelSpec::HardEdge;
    let points: Vec<C> = grid.points().filter(|z| !(hard && z.re >= 0.0)).collect();
    let rows = Exec::default()
        .map(points.len(), |k| Ok(vec![points[k].re, points[k].im, mass_one_residual(spec, points[k], quad)?]))
        .into_iter()
        .collect::<plasma_core::Result<Vec<_>>>()?;
    Ok(sup_check(&format!("mass-one.{}", family(spec)), vec!["x", "y", "residual"], rows, json!({ "quad": quad })))
}

fn polarized(a: &VerifyArgs, spec: &LimitKernelSpec) -> Result<Check> {
    let grid = grid_or(a, "-2:2:1")?;
    let quad = parse::quad(a.quad.as_deref())?;
    let pairs = parse::random_points(a.points.as_deref().unwrap_or("random:8"))?;
    let (lo, mut hi) = bbox(&grid);
    if *spec == LimitKernelSpec::HardEdge {
        hi.re = hi.re.min(-1e-3);
        if hi.re <= lo.re {
            return Err(UsageError("hard-edge polarized check needs grid points with Re z < 0".into()).into());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let pts: Vec<(C, C)> = (0..pairs).map(|_| (random_in(&mut rng, lo, hi), random_in(&mut rng, lo, hi))).collect();
    let rows = Exec::default()
        .map(pts.len(), |k| {
            let (z, w) = pts[k];
            let r = polarized_mass_one_residual(spec, z, w, quad)?;
            Ok(vec![z.re, z.im, w.re, w.im, r.norm()])
        })
        .into_iter()
        .collect::<plasma_core::Result<Vec<_>>>()?;
    let key = if family(spec) == "free-boundary" { "polarized.free-boundary" } else { "polarized.other" };
    Ok(sup_check(key, vec!["z_re", "z_im", "w_re", "w_im", "residual"], rows, json!({ "quad": quad, "seed": a.seed })))
}

fn series(a: &VerifyArgs) -> Result<Check> {
    let xs: AxisSpec = parse::axis(a.grid.as_deref().unwrap_or("-4:4:0.25"))?;
    let resummed = a.n_terms == "inf";
    let n: usize = if resummed {
        0
    } else {
        a.n_terms.parse().map_err(|_| UsageError(format!("--n-terms expects an integer or 'inf', got '{}'", a.n_terms)))?
    };
    let mut rows = Vec::new();
    for x in xs.points() {
        let row = if resummed {
            vec![x, mass_one_series_resummed(x)?, hermite_identity_resummed(x)?, 0.0]
        } else {
            vec![x, mass_one_series_residual(x, n)?, hermite_identity_residual(x, n)?, telescoping_residual(x, n)?]
        };
        let worst = row[1..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        rows.push([row, vec![worst]].concat());
    }
    Ok(sup_check(
        "series",
        vec!["x", "mass_one", "hermite", "telescoping", "worst"],
        rows,
        json!({ "n_terms": a.n_terms }),
    ))
}

fn eighth(a: &VerifyArgs) -> Result<Check> {
    let (value, target) = if a.shift == 0.0 {
        (eighth_formula(1e-13)?, 0.125)
    } else {
        (eighth_formula_shifted(a.shift, 1e-13)?, 0.125 * (1.0 + a.shift * a.shift))
    };
    let err = (value - target).abs();
    let threshold = thresholds::get("eighth");
    println!("eighth: {value:.12} (target {target}, |error| {err:.2e} ≤ {threshold:e})");
    Ok(Check {
        value: err,
        threshold,
        pass: err <= threshold,
        header: vec!["shift", "value", "target", "error"],
        rows: vec![vec![a.shift, value, target, err]],
        extra: json!({ "value": value, "target": target }),
    })
}

fn inequalities(a: &VerifyArgs) -> Result<Check> {
    let grid = match &a.grid {
        Some(g) => GridSpec::square(parse::axis(g)?),
        None => GridSpec { origin: C::new(-5.0, -2.0), step: 0.25, nx: 41, ny: 17 },
    };
    let pairs = parse::random_points(a.points.as_deref().unwrap_or("random:200"))?;
    let rep = inequality_suite(grid, pairs, a.seed)?;
    let margin = rep.min_margin();
    let sharp = rep.sharp_plasma.abs().max(rep.sharp_hard_edge.abs()).max(rep.sharp_ecu.abs());
    let (tm, ts) = (thresholds::get("inequalities.margin"), thresholds::get("inequalities.sharpness"));
    let rows = vec![
        vec![0.0, rep.plasma.min_value()],
        vec![1.0, rep.hard_edge.min_value()],
        vec![2.0, rep.ecu.min_value()],
    ];
    Ok(Check {
        value: margin,
        threshold: -tm,
        pass: margin >= -tm && sharp <= ts,
        header: vec!["inequality", "min_margin"],
        rows,
        extra: json!({
            "inequalities": ["plasma", "hard-edge", "ecu"],
            "sharp_plasma": rep.sharp_plasma,
            "sharp_hard_edge": rep.sharp_hard_edge,
            "sharp_ecu": rep.sharp_ecu,
            "sharpness_threshold": ts,
            "pairs": pairs,
            "seed": a.seed,
        }),
    })
}

fn positivity(a: &VerifyArgs, spec: &LimitKernelSpec) -> Result<Check> {
    let grid = grid_or(a, "-2:2:4")?;
    let k = parse::random_points(a.points.as_deref().unwrap_or("random:8"))?;
    let (lo, hi) = bbox(&grid);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let sets: Vec<Vec<C>> = (0..a.sets).map(|_| (0..k).map(|_| random_in(&mut rng, lo, hi)).collect()).collect();
    let rows = Exec::default()
        .map(sets.len(), |i| Ok(vec![i as f64, gram_min_eig(spec, &sets[i], a.complementary)?]))
        .into_iter()
        .collect::<plasma_core::Result<Vec<_>>>()?;
    let min = rows.iter().map(|r| r[1]).fold(f64::INFINITY, f64::min);
    let threshold = thresholds::get("positivity");
    Ok(Check {
        value: min,
        threshold: -threshold,
        pass: min >= -threshold,
        header: vec!["set", "min_eigenvalue"],
        rows,
        extra: json!({ "points_per_set": k, "sets": a.sets, "complementary": a.complementary, "seed": a.seed }),
    })
}

pub fn run(a: &VerifyArgs, out: &Path) -> Result<Status> {
    let spec: LimitKernelSpec = parse::core(&a.spec, "--spec")?;
    let check = match a.equation {
        Equation::Ward => ward(a, &spec)?,
        Equation::MassOne => mass_one(a, &spec)?,
        Equation::Polarized => polarized(a, &spec)?,
        Equation::Series => series(a)?,
        Equation::Eighth => eighth(a)?,
        Equation::Inequalities => inequalities(a)?,
        Equation::Positivity => positivity(a, &spec)?,
    };
    let name = serde_json::to_value(a.equation)?.as_str().unwrap_or("check").to_string();
    let mut config = serde_json::to_value(a)?;
    config["spec"] = json!(spec.to_string());
    let seeded = matches!(a.equation, Equation::Polarized | Equation::Inequalities | Equation::Positivity);
    let run = Run::new("verify", config, seeded.then_some(a.seed), out);
    let csv_name = format!("verify-{name}.csv");
    let csv = run.write_csv(&csv_name, |w| write_table(w, &check.header, &check.rows))?;
    let json_path = run.write_json(
        &format!("verify-{name}.json"),
        json!({
            "equation": name,
            "spec": spec.to_string(),
            "value": check.value,
            "threshold": check.threshold,
            "pass": check.pass,
            "details": check.extra,
            "csv": csv_name,
        }),
    )?;
    let verdict = if check.pass { "PASS" } else { "FAIL" };
    println!("verify {name} [{spec}]: value {:.6e}, threshold {:e} -> {verdict}", check.value, check.threshold);
    println!("wrote {} and {}", csv.display(), json_path.display());
    Ok(if check.pass { Status::Pass } else { Status::Fail })
}
