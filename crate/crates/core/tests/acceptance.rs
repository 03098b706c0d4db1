//! Acceptance suite: one PASS/FAIL line per criterion, plus INFO lines with
//! context. Exits non-zero if any criterion fails.

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64 as C;
use plasma_core::exec::{with_threads, Exec};
use plasma_core::finite_n::{exp_section, exp_section_limit, rescaled_kernel, FiniteKernel, Potential, RescaleFrame};
use plasma_core::grid::{AxisSpec, GridSpec};
use plasma_core::limits::*;
use plasma_core::sampler::{boundary_profile, HistSpec, Histogram1D, SampleConfig};
use plasma_core::special::{hard_edge_h, plasma_f_real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every threshold the suite uses.
mod tol {
    pub const H0: f64 = 1e-8;
    pub const EIGHTH: f64 = 1e-8;
    pub const EIGHTH_SHIFT_MIN: f64 = 1e-3;
    pub const MASS_FREE: f64 = 1e-6;
    pub const MASS_HARD: f64 = 1e-4;
    pub const MASS_ML: f64 = 1e-4;
    pub const MASS_CONST: f64 = 1e-9;
    pub const WARD_BULK: f64 = 1e-8;
    pub const WARD_FREE: f64 = 5e-4;
    pub const WARD_HARD: f64 = 1e-3;
    pub const WARD_DISCONNECTED_FACTOR: f64 = 20.0;
    pub const WARD_ML: f64 = 5e-3;
    pub const FD_STEP: f64 = 1e-3;
    pub const SERIES: f64 = 1e-10;
    pub const SERIES_TERMS: usize = 80;
    pub const CONV_SUP: f64 = 0.03;
    pub const CONV_RATIO: (f64, f64) = (2.5, 6.5);
    pub const CONV_BULK: f64 = 1e-3;
    pub const SECTIONS: f64 = 0.02;
    pub const GRAM: f64 = -1e-9;
    pub const TAIL_EXTERIOR: f64 = 0.2;
    pub const TAIL_INTERIOR: f64 = 1.0;
    pub const INEQ_MARGIN: f64 = -1e-10;
    pub const INEQ_SHARP: f64 = 1e-6;
    pub const SAMPLER_SIGMAS: f64 = 3.0;
    pub const SAMPLER_BIAS: f64 = 0.02;
    pub const COND_ZERO: f64 = 1e-12;
    pub const COND_PROFILE: f64 = 1e-10;
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

struct Outcome {
    pass: bool,
    detail: String,
    info: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), info: Vec::new() }
    }

    fn info(mut self, line: impl Into<String>) -> Self {
        self.info.push(line.into());
        self
    }
}

type Res = plasma_core::Result<Outcome>;

fn fb() -> LimitKernelSpec {
    LimitKernelSpec::free_boundary(0.0)
}

fn c1_h_at_zero() -> Res {
    let h = hard_edge_h(c(0.0, 0.0))?;
    let err = (h - LN_2).norm();
    Ok(Outcome::new(err <= tol::H0, format!("|H(0) - ln 2| = {err:.3e} (tol {:.0e})", tol::H0)))
}

fn c2_eighth() -> Res {
    let v = eighth_formula(1e-13)?;
    let shifted = eighth_formula_shifted(0.5, 1e-13)?;
    let (err, dev) = ((v - 0.125).abs(), (shifted - 0.125).abs());
    Ok(Outcome::new(
        err <= tol::EIGHTH && dev > tol::EIGHTH_SHIFT_MIN,
        format!("eighth = {v:.12} (err {err:.2e}); shifted a=0.5 deviates by {dev:.4e} (> {:.0e})", tol::EIGHTH_SHIFT_MIN),
    ))
}

fn c3_mass_one() -> Res {
    let q = QuadratureConfig::default();
    let worst = |spec: &LimitKernelSpec, zs: &[C]| -> plasma_core::Result<f64> {
        zs.iter().map(|&z| mass_one_residual(spec, z, q).map(f64::abs)).try_fold(0.0f64, |m, r| Ok(m.max(r?)))
    };
    let free = worst(&fb(), &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 1.0), c(-2.0, 0.0)])?;
    let hard = worst(&LimitKernelSpec::HardEdge, &[c(-0.5, 0.0), c(-1.0, -1.0)])?;
    let ml = worst(&LimitKernelSpec::MittagLeffler(2.0), &[c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.5)])?;
    let constant = mass_one_residual(&LimitKernelSpec::ConstantProfile(0.5), c(0.3, -0.2), q)?;
    let pass = free <= tol::MASS_FREE
        && hard <= tol::MASS_HARD
        && ml <= tol::MASS_ML
        && (constant + 0.5).abs() <= tol::MASS_CONST;
    Ok(Outcome::new(
        pass,
        format!("free {free:.2e}, hard-edge {hard:.2e}, mittag-leffler:2 {ml:.2e}, constant residual {constant:.10}"),
    ))
}

fn c4_ward() -> Res {
    let q = QuadratureConfig::default();
    let exec = Exec::default();
    let square = GridSpec::square(AxisSpec::new(-2.0, 2.0, 0.5)?);
    let bulk = ward_residual_with(exec, &LimitKernelSpec::GinibreBulk, square, q, tol::FD_STEP)?.sup_norm;
    let free = ward_residual_with(exec, &fb(), square, q, tol::FD_STEP)?.sup_norm;

    // [-2,-0.2]×[-1,1] sampled at x-step 0.45, y-step 0.5 (25 points)
    let mut hard = 0.0f64;
    for iy in 0..5 {
        let row = GridSpec { origin: c(-2.0, -1.0 + 0.5 * iy as f64), step: 0.45, nx: 5, ny: 1 };
        hard = hard.max(ward_residual_with(exec, &LimitKernelSpec::HardEdge, row, q, tol::FD_STEP)?.sup_norm);
    }

    let disconnected: LimitKernelSpec = "free-boundary:-2,-1,1,2".parse()?;
    let coarse = GridSpec::square(AxisSpec::new(-2.0, 2.0, 1.0)?);
    let dis = ward_residual_with(exec, &disconnected, coarse, q, tol::FD_STEP)?.sup_norm;
    let floor = free.max(f64::EPSILON);

    let ml_spec = LimitKernelSpec::MittagLeffler(2.0);
    let mut ml = 0.0f64;
    for z in GridSpec::square(AxisSpec::new(-1.5, 1.5, 0.5)?).points() {
        if z.norm() > 1.5 || z.norm() < 1e-12 {
            continue;
        }
        let one = GridSpec { origin: z, step: 1.0, nx: 1, ny: 1 };
        ml = ml.max(ward_residual_with(exec, &ml_spec, one, q, tol::FD_STEP)?.sup_norm);
    }

    let pass = bulk <= tol::WARD_BULK
        && free <= tol::WARD_FREE
        && hard <= tol::WARD_HARD
        && dis >= tol::WARD_DISCONNECTED_FACTOR * floor
        && ml <= tol::WARD_ML;
    Ok(Outcome::new(
        pass,
        format!(
            "bulk {bulk:.2e}, free {free:.2e}, hard-edge {hard:.2e}, disconnected {dis:.3} ({:.1e}x floor), mittag-leffler:2 {ml:.2e}",
            dis / floor
        ),
    ))
}

fn c5_series() -> Res {
    let xs = AxisSpec::new(-4.0, 4.0, 0.25)?;
    let n = tol::SERIES_TERMS;
    let (mut mass, mut herm, mut tele) = (0.0f64, 0.0f64, 0.0f64);
    let (mut mass_inf, mut herm_inf) = (0.0f64, 0.0f64);
    for x in xs.points() {
        mass = mass.max(mass_one_series_residual(x, n)?.abs());
        herm = herm.max(hermite_identity_residual(x, n)?.abs());
        tele = tele.max(telescoping_residual(x, n)?.abs());
        mass_inf = mass_inf.max(mass_one_series_resummed(x)?.abs());
        herm_inf = herm_inf.max(hermite_identity_resummed(x)?.abs());
    }
    let pass = mass <= tol::SERIES && herm <= tol::SERIES && tele <= tol::SERIES;
    Ok(Outcome::new(
        pass,
        format!("N={n}: mass-one {mass:.3e}, hermite {herm:.3e}, telescoping |sum - 1| {tele:.3e} (tol {:.0e})", tol::SERIES),
    )
    .info(format!(
        "truncated sums converge like N^(-1/2); telescoping residual is exactly -h_N(s)^2/N!; resummed: mass-one {mass_inf:.2e}, hermite {herm_inf:.2e}"
    )))
}

fn boundary_sup(n: usize, xs: AxisSpec) -> plasma_core::Result<f64> {
    let kern = FiniteKernel::new(Potential::Ginibre, n)?;
    let frame = RescaleFrame::boundary(Potential::Ginibre, n, 0.0)?;
    Ok(xs
        .points()
        .map(|x| (rescaled_kernel(&kern, &frame, c(x, 0.0), c(x, 0.0)).re - plasma_f_real(2.0 * x)).abs())
        .fold(0.0, f64::max))
}

fn c6_convergence() -> Res {
    let xs = AxisSpec::new(-3.0, 3.0, 0.02)?;
    let e64 = boundary_sup(64, xs)?;
    let e1024 = boundary_sup(1024, xs)?;
    let ratio = e64 / e1024;
    let kern = FiniteKernel::new(Potential::Ginibre, 1024)?;
    let frame = RescaleFrame::bulk(Potential::Ginibre, 1024)?;
    let bulk = (rescaled_kernel(&kern, &frame, c(0.0, 0.0), c(0.0, 0.0)).re - 1.0).abs();
    let pass = e1024 <= tol::CONV_SUP && (tol::CONV_RATIO.0..=tol::CONV_RATIO.1).contains(&ratio) && bulk <= tol::CONV_BULK;
    Ok(Outcome::new(
        pass,
        format!("sup err n=64 {e64:.4e}, n=1024 {e1024:.4e}, ratio {ratio:.3}; bulk |R_n(0) - 1| {bulk:.2e}"),
    ))
}

fn c7_sections() -> Res {
    let xs = AxisSpec::new(-2.0, 2.0, 0.05)?;
    let n = 4096;
    let dev = xs
        .points()
        .map(|x| (exp_section(n, x) - plasma_f_real(x) * (0.25 * x * x).exp()).abs())
        .fold(0.0, f64::max);
    let to_limit = xs.points().map(|x| (exp_section(n, x) - exp_section_limit(x)).abs()).fold(0.0, f64::max);
    Ok(Outcome::new(dev <= tol::SECTIONS, format!("sup |s_n e^(-n-sqrt(n)x) - F(x)e^(x^2/4)| = {dev:.4} at n={n}"))
        .info(format!("against the Poisson-CLT limit F(x): sup deviation {to_limit:.4e}")))
}

fn c8_positivity() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut plain, mut comp) = (f64::INFINITY, f64::INFINITY);
    for _ in 0..100 {
        let pts: Vec<C> = (0..8).map(|_| c(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0))).collect();
        plain = plain.min(gram_min_eig(&fb(), &pts, false)?);
        comp = comp.min(gram_min_eig(&fb(), &pts, true)?);
    }
    Ok(Outcome::new(
        plain >= tol::GRAM && comp >= tol::GRAM,
        format!("min eigenvalue K {plain:.3e}, complementary {comp:.3e}"),
    ))
}

fn c9_tails() -> Res {
    let rep = tail_bounds_report(&fb(), AxisSpec::new(-3.0, 3.0, 0.05)?)?;
    let ext = rep.params["sup_exterior"].as_f64().unwrap_or(f64::NAN);
    let int = rep.params["sup_interior"].as_f64().unwrap_or(f64::NAN);
    let away = AxisSpec::new(1.0, 3.0, 0.05)?
        .points()
        .map(|x| plasma_f_real(2.0 * x) * (2.0 * x * x).exp())
        .fold(0.0, f64::max);
    Ok(Outcome::new(
        ext <= tol::TAIL_EXTERIOR && int <= tol::TAIL_INTERIOR,
        format!("sup_[0,3] F(2x)e^(2x^2) = {ext:.4}; sup_[-3,0] |F(2x)-1|e^(0.4x^2) = {int:.4}"),
    )
    .info(format!("F(0) = 1/2 caps the exterior sup at x = 0; on [1,3] it is {away:.4}")))
}

fn c10_inequalities() -> Res {
    let grid = GridSpec { origin: c(-5.0, -2.0), step: 0.25, nx: 41, ny: 17 };
    let rep = inequality_suite(grid, 200, 10)?;
    let sharp = rep.sharp_plasma.abs().max(rep.sharp_hard_edge.abs()).max(rep.sharp_ecu.abs());
    Ok(Outcome::new(
        rep.min_margin() >= tol::INEQ_MARGIN && sharp <= tol::INEQ_SHARP,
        format!(
            "margins: plasma {:.2e}, hard-edge {:.2e}, ecu {:.2e}; sharpness {sharp:.2e}",
            rep.plasma.min_value(),
            rep.hard_edge.min_value(),
            rep.ecu.min_value()
        ),
    ))
}

fn sampler_run(pot: Potential) -> plasma_core::Result<Histogram1D> {
    let cfg = SampleConfig::new(pot, 1024, 4000, 20_241_019)?;
    let frame = RescaleFrame::boundary(pot, 1024, 0.0)?;
    boundary_profile(Exec::default(), &cfg, &frame, HistSpec::with_width(-3.0, 1.0, 0.1)?)
}

fn c11_sampler() -> Res {
    let ginibre = sampler_run(Potential::Ginibre)?;
    let g_excess = ginibre.envelope_excess(|x| plasma_f_real(2.0 * x), tol::SAMPLER_SIGMAS, tol::SAMPLER_BIAS);
    let hard = sampler_run(Potential::HardEdgeGinibre)?;
    let h_target = |x: f64| if x < 0.0 { hard_edge_h(c(2.0 * x, 0.0)).map(|h| h.re).unwrap_or(f64::NAN) } else { 0.0 };
    let spec = hard.spec();
    let outside_zero = (0..hard.bins).filter(|&k| spec.edge(k) >= 0.0).all(|k| hard.counts[k] == 0);
    let h_excess = (0..hard.bins)
        .filter(|&k| spec.edge(k + 1) <= 0.0)
        .map(|k| {
            (hard.estimate(k) - hard.bin_target(k, h_target)).abs()
                - (tol::SAMPLER_SIGMAS * hard.stderr(k) + tol::SAMPLER_BIAS)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let t1 = with_threads(1, || sampler_run(Potential::Ginibre))?;
    let t8 = with_threads(8, || sampler_run(Potential::Ginibre))?;
    let deterministic = t1 == t8 && t1 == ginibre;
    Ok(Outcome::new(
        g_excess <= 0.0 && h_excess <= 0.0 && outside_zero && deterministic,
        format!(
            "envelope excess ginibre {g_excess:.4}, hard-edge {h_excess:.4}; hard-edge x>0 empty {outside_zero}; threads 1 vs 8 identical {deterministic}"
        ),
    ))
}

fn c12_conditional() -> Res {
    let zero_bulk = conditional_intensity(&LimitKernelSpec::GinibreBulk, c(0.0, 0.0), c(0.0, 0.0))?.abs();
    let zero_free = conditional_intensity(&fb(), c(0.0, 0.0), c(0.0, 0.0))?.abs();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut profile = 0.0f64;
    for _ in 0..200 {
        let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let want = 1.0 - (-z.norm_sqr()).exp();
        profile = profile.max((conditional_intensity(&LimitKernelSpec::GinibreBulk, c(0.0, 0.0), z)? - want).abs());
    }
    Ok(Outcome::new(
        zero_bulk <= tol::COND_ZERO && zero_free <= tol::COND_ZERO && profile <= tol::COND_PROFILE,
        format!("R0(0): bulk {zero_bulk:.1e}, free {zero_free:.1e}; bulk profile error {profile:.2e}"),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Res); 12] = [
        ("H(0) = log 2", c1_h_at_zero),
        ("eighth formula", c2_eighth),
        ("mass-one equation", c3_mass_one),
        ("Ward residuals", c4_ward),
        ("series identities", c5_series),
        ("finite-n convergence", c6_convergence),
        ("exponential sections", c7_sections),
        ("positivity", c8_positivity),
        ("tail bounds", c9_tails),
        ("inequalities", c10_inequalities),
        ("sampler", c11_sampler),
        ("conditional intensity", c12_conditional),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {:>2} {} — {name}: {} [{secs:.1}s]", i + 1, if out.pass { "PASS" } else { "FAIL" }, out.detail);
        for line in &out.info {
            println!("             INFO: {line}");
        }
        if !out.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 12 criteria fail: {failed:?}", failed.len());
        ExitCode::FAILURE
    }
}
