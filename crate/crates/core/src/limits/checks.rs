//! Tail bounds, kernel positivity and the kernel inequalities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::ward::ResidualReport;
use super::{log_g, LimitKernel, LimitKernelSpec};
use crate::exec::Exec;
use crate::grid::{AxisSpec, GridSpec, KernelGrid};
use crate::special::{exp_times_f, plasma_f, plasma_f_real, HardEdgeRule};
use crate::{Cpx, Error, Result};

pub const MAX_GRAM_POINTS: usize = 32;
/// Decay rate used for the interior estimate `|R - 1| ≤ C e^{-ℓx²}`.
pub const INTERIOR_RATE: f64 = 0.4;

/// Exterior `R(x)e^{2x²}` for `x ≥ 0` and interior `|R(x) - 1|e^{ℓx²}` for
/// `x < 0`, along the real axis, for the free boundary at `0`.
pub fn tail_bounds_report(spec: &LimitKernelSpec, x_grid: AxisSpec) -> Result<ResidualReport> {
    if *spec != LimitKernelSpec::free_boundary(0.0) {
        return Err(Error::Domain(format!("tail bounds are stated for free-boundary:-inf,0, not {spec}")));
    }
    let kernel = LimitKernel::new(spec.clone())?;
    let grid = GridSpec::line(x_grid);
    let scaled = |z: Cpx| -> Result<f64> {
        let x = z.re;
        let r = kernel.one_point(z)?;
        Ok(if x >= 0.0 { r * (2.0 * x * x).exp() } else { (r - 1.0).abs() * (INTERIOR_RATE * x * x).exp() })
    };
    let values = KernelGrid::fill(Exec::Sequential, grid, json!(null), |z| Ok(Cpx::new(scaled(z)?, 0.0)))?;
    let residuals: Vec<f64> = values.values.iter().map(|v| v.re).collect();
    let (mut ext, mut int) = (0.0f64, 0.0f64);
    for (k, r) in residuals.iter().enumerate() {
        if grid.point(k).re >= 0.0 {
            ext = ext.max(*r);
        } else {
            int = int.max(*r);
        }
    }
    let params = json!({
        "check": "tail-bounds",
        "spec": spec.to_string(),
        "interior_rate": INTERIOR_RATE,
        "sup_exterior": ext,
        "sup_interior": int,
    });
    Ok(ResidualReport::new(KernelGrid { meta: params.clone(), ..values }, residuals, params))
}

/// Eigenvalues of a real symmetric `n×n` matrix (row-major) by cyclic
/// Jacobi rotations, in ascending order.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let idx = |i: usize, j: usize| i * n + j;
    let norm: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[idx(i, j)].powi(2)).sum::<f64>().sqrt();
        if off <= 1e-15 * norm || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[idx(k, p)], a[idx(k, q)]);
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[idx(p, k)], a[idx(q, k)]);
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[idx(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Smallest eigenvalue of a Hermitian `n×n` matrix (row-major), via the
/// real symmetric embedding `[[A, -B], [B, A]]` of `A + iB`.
pub fn gram_min_eig_of(m: &[Cpx], n: usize) -> Result<f64> {
    let scale = m.iter().fold(1.0f64, |s, v| s.max(v.norm()));
    let mut asym: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            asym = asym.max((m[i * n + j] - m[j * n + i].conj()).norm());
        }
    }
    if asym > 1e-10 * scale {
        return Err(Error::NonHermitianInput(asym));
    }
    let n2 = 2 * n;
    let mut a = vec![0.0; n2 * n2];
    for i in 0..n {
        for j in 0..n {
            let h = 0.5 * (m[i * n + j] + m[j * n + i].conj());
            a[i * n2 + j] = h.re;
            a[(i + n) * n2 + j + n] = h.re;
            a[i * n2 + j + n] = -h.im;
            a[(i + n) * n2 + j] = h.im;
        }
    }
    Ok(jacobi_eigenvalues(a, n2)[0])
}

/// Minimum eigenvalue of `[K(z_i, z_j)]`, or of the complementary kernel
/// `[G(z_i,z_j)(1 - Ψ(z_i,z_j))]` for translation-invariant specs.
pub fn gram_min_eig(spec: &LimitKernelSpec, points: &[Cpx], complementary: bool) -> Result<f64> {
    if points.is_empty() || points.len() > MAX_GRAM_POINTS {
        return Err(Error::Invalid(format!("Gram matrices take 1..={MAX_GRAM_POINTS} points, got {}", points.len())));
    }
    if complementary && !matches!(spec, LimitKernelSpec::GinibreBulk | LimitKernelSpec::FreeBoundary(_)) {
        return Err(Error::Domain(format!("complementary kernel is not defined for {spec}")));
    }
    let kernel = LimitKernel::new(spec.clone())?;
    let n = points.len();
    let mut m = Vec::with_capacity(n * n);
    for &zi in points {
        for &zj in points {
            let k = kernel.eval(zi, zj)?;
            m.push(if complementary { log_g(zi, zj).exp() - k } else { k });
        }
    }
    gram_min_eig_of(&m, n)
}

/// Margins of the three kernel inequalities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    /// `F(x) - F(x)² - e^{-x²}/4` along the real axis.
    pub plasma: ResidualReport,
    /// `H(2x) log 2 - e^{-|z|²}|H(z)|²` for `Re z < 0`.
    pub hard_edge: ResidualReport,
    /// `F(2x)F(2u) - e^{-|z-w|²}|F(z + w̄)|²` at random pairs.
    pub ecu: ResidualReport,
    /// Margins at the points where the inequalities are sharp.
    pub sharp_plasma: f64,
    pub sharp_hard_edge: f64,
    pub sharp_ecu: f64,
}

impl InequalityReport {
    pub fn min_margin(&self) -> f64 {
        self.plasma.min_value().min(self.hard_edge.min_value()).min(self.ecu.min_value())
    }
}

fn h_margin(z: Cpx) -> Result<f64> {
    let rule = HardEdgeRule::get();
    let diag = rule.h(Cpx::new(2.0 * z.re, 0.0))?.re;
    // e^{-|z|²}|H(z)|² = |e^{-|z|²/2} H(z)|²
    let off = rule.exp_times_h(Cpx::new(-0.5 * z.norm_sqr(), 0.0), z)?.norm_sqr();
    Ok(diag * std::f64::consts::LN_2 - off)
}

fn ecu_margin(z: Cpx, w: Cpx) -> f64 {
    let k = exp_times_f(log_g(z, w), z + w.conj());
    plasma_f_real(2.0 * z.re) * plasma_f_real(2.0 * w.re) - k.norm_sqr()
}

/// Evaluates the inequalities
/// `F - F² ≥ e^{-x²}/4`, `|H(z)|² ≤ e^{|z|²} H(z + z̄) log 2` and
/// `|F(z + w̄)|² ≤ e^{|z-w|²} F(z + z̄) F(w + w̄)`,
/// the last two multiplied through by `e^{-|z|²}` and `e^{-|z-w|²}` so that
/// both sides stay bounded. The plasma inequality uses the real projections
/// of `grid`, the hard-edge one its points with `Re z < 0`, and the third
/// `pairs` random pairs drawn from its bounding box.
pub fn inequality_suite(grid: GridSpec, pairs: usize, seed: u64) -> Result<InequalityReport> {
    let xs = AxisSpec::new(grid.origin.re, grid.origin.re + (grid.nx - 1) as f64 * grid.step, grid.step)?;
    let line = GridSpec::line(xs);
    let plasma_vals = KernelGrid::fill(Exec::default(), line, json!({"inequality": "plasma"}), |z| {
        let f = plasma_f(z).re;
        Ok(Cpx::new(f - f * f - 0.25 * (-z.re * z.re).exp(), 0.0))
    })?;
    let plasma_res = plasma_vals.values.iter().map(|v| v.re).collect();
    let plasma = ResidualReport::new(plasma_vals, plasma_res, json!({"inequality": "plasma"}));

    let he_vals = KernelGrid::fill(Exec::default(), grid, json!({"inequality": "hard-edge"}), |z| {
        if z.re < 0.0 {
            Ok(Cpx::new(h_margin(z)?, 0.0))
        } else {
            Ok(Cpx::new(f64::NAN, 0.0))
        }
    })?;
    let he_res: Vec<f64> = he_vals.values.iter().map(|v| v.re).filter(|v| !v.is_nan()).collect();
    let he_vals = KernelGrid {
        values: he_vals.values.into_iter().map(|v| if v.re.is_nan() { Cpx::new(0.0, 0.0) } else { v }).collect(),
        ..he_vals
    };
    let hard_edge = ResidualReport::new(he_vals, he_res, json!({"inequality": "hard-edge", "domain": "Re z < 0"}));

    let hi = grid.origin + Cpx::new((grid.nx - 1) as f64 * grid.step, (grid.ny - 1) as f64 * grid.step);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || Cpx::new(rng.gen_range(grid.origin.re..=hi.re), rng.gen_range(grid.origin.im..=hi.im));
    let pts: Vec<(Cpx, Cpx)> = (0..pairs).map(|_| (draw(), draw())).collect();
    let ecu_res: Vec<f64> = pts.iter().map(|&(z, w)| ecu_margin(z, w)).collect();
    let ecu_grid = KernelGrid {
        origin: Cpx::new(0.0, 0.0),
        step: 1.0,
        nx: pairs,
        ny: 1,
        values: ecu_res.iter().map(|&m| Cpx::new(m, 0.0)).collect(),
        meta: json!({"inequality": "ecu", "seed": seed}),
    };
    let ecu = ResidualReport::new(ecu_grid, ecu_res, json!({"inequality": "ecu", "pairs": pairs, "seed": seed}));

    let z0 = Cpx::new(0.3, -0.8);
    Ok(InequalityReport {
        plasma,
        hard_edge,
        ecu,
        sharp_plasma: {
            let f = plasma_f_real(0.0);
            f - f * f - 0.25
        },
        sharp_hard_edge: h_margin(Cpx::new(0.0, 0.0))?,
        sharp_ecu: ecu_margin(z0, z0),
    })
}
