//! Ward's equation `∂̄C = R - 1 - Δ log R` (type λ: `R - λ²|z|^{2λ-2} - Δ log R`)
//! checked pointwise on a grid.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::plane::{Integrator, QuadratureConfig};
use super::{LimitKernel, LimitKernelSpec};
use crate::exec::{pairwise_sum, Exec};
use crate::grid::{fmt_f64, GridSpec, KernelGrid};
use crate::{Cpx, Error, Result};

/// Residual values on a grid with their norms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Complex residual (or signed margin) at each grid point.
    pub grid: KernelGrid,
    /// Real residual used for the norms: `|residual|` for equations, the
    /// signed margin for inequalities.
    pub residuals: Vec<f64>,
    pub sup_norm: f64,
    pub l2_norm: f64,
    pub params: Value,
}

impl ResidualReport {
    pub fn new(grid: KernelGrid, residuals: Vec<f64>, params: Value) -> Self {
        let sup_norm = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        let cell = if grid.ny > 1 { grid.step * grid.step } else { grid.step };
        let squares: Vec<f64> = residuals.iter().map(|r| r * r).collect();
        let l2_norm = (pairwise_sum(&squares) * cell).sqrt();
        ResidualReport { grid, residuals, sup_norm, l2_norm, params }
    }

    /// Smallest signed residual (the worst margin of an inequality).
    pub fn min_value(&self) -> f64 {
        self.residuals.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// CSV with columns `x, y, residual`.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Invalid(format!("csv write failed: {e}"));
        w.write_record(["x", "y", "residual"]).map_err(io)?;
        let spec = self.grid.spec();
        for (k, r) in self.residuals.iter().enumerate() {
            let z = spec.point(k);
            w.write_record([fmt_f64(z.re), fmt_f64(z.im), fmt_f64(*r)]).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Invalid(format!("csv write failed: {e}")))?;
        Ok(())
    }

    pub fn summary(&self) -> Value {
        json!({ "sup_norm": self.sup_norm, "l2_norm": self.l2_norm, "min": self.min_value(), "params": self.params })
    }
}

/// `ln R(z)` for the Mittag-Leffler kernel, without overflow.
fn ml_ln_one_point(kernel: &LimitKernel, lambda: f64, z: Cpx) -> Result<f64> {
    let r2 = z.norm_sqr();
    Ok(kernel.ml().eval_scaled(Cpx::new(r2, 0.0))?.ln_abs() - r2.powf(lambda))
}

const ML_FD_STEP: f64 = 1e-3;

/// `Δ log R(z)` with `Δ = ∂∂̄ = ¼(∂²_x + ∂²_y)`.
///
/// For kernels `G·Φ(z + w̄)` (and the hard edge with `Φ = H`) `R(z) = Φ(2x)`,
/// so `Δ log R = (log Φ)''(2x) = (Φ''Φ - Φ'²)/Φ²`. For Mittag-Leffler
/// kernels a fourth-order central difference is used.
pub fn laplacian_log_r(spec: &LimitKernelSpec, z: Cpx) -> Result<f64> {
    laplacian_log_r_with(&LimitKernel::new(spec.clone())?, z)
}

pub(crate) fn laplacian_log_r_with(kernel: &LimitKernel, z: Cpx) -> Result<f64> {
    if let LimitKernelSpec::MittagLeffler(l) = *kernel.spec() {
        let h = ML_FD_STEP;
        let f = |dx: f64, dy: f64| ml_ln_one_point(kernel, l, z + Cpx::new(dx, dy));
        let c = f(0.0, 0.0)?;
        let fxx = (-f(-2.0 * h, 0.0)? + 16.0 * f(-h, 0.0)? - 30.0 * c + 16.0 * f(h, 0.0)? - f(2.0 * h, 0.0)?) / (12.0 * h * h);
        let fyy = (-f(0.0, -2.0 * h)? + 16.0 * f(0.0, -h)? - 30.0 * c + 16.0 * f(0.0, h)? - f(0.0, 2.0 * h)?) / (12.0 * h * h);
        return Ok(0.25 * (fxx + fyy));
    }
    let s = 2.0 * z.re;
    let [p, dp, ddp] = kernel
        .profile_derivs(s)?
        .ok_or_else(|| Error::Domain(format!("no profile for {}", kernel.spec())))?;
    if !(p > 0.0) {
        return Err(Error::ZeroIntensity(p));
    }
    Ok((ddp * p - dp * dp) / (p * p))
}

/// Right-hand side of Ward's equation at `z`.
pub(crate) fn ward_rhs(kernel: &LimitKernel, z: Cpx) -> Result<f64> {
    let r = kernel.one_point(z)?;
    let density = match *kernel.spec() {
        LimitKernelSpec::MittagLeffler(l) => l * l * z.norm_sqr().powf(l - 1.0),
        _ => 1.0,
    };
    Ok(r - density - laplacian_log_r_with(kernel, z)?)
}

/// `∂̄C(z)` by fourth-order central differences of the Cauchy transform.
pub(crate) fn dbar_cauchy(integ: &Integrator, z: Cpx, h: f64) -> Result<Cpx> {
    let d = |dir: Cpx| -> Result<Cpx> {
        let c = |k: f64| integ.cauchy(z + dir * (k * h));
        Ok((c(-2.0)? - 8.0 * c(-1.0)? + 8.0 * c(1.0)? - c(2.0)?) / (12.0 * h))
    };
    let cx = d(Cpx::new(1.0, 0.0))?;
    let cy = d(Cpx::new(0.0, 1.0))?;
    Ok(0.5 * (cx + Cpx::new(0.0, 1.0) * cy))
}

/// Ward residual `∂̄C - (R - 1 - Δ log R)` on `grid`.
pub fn ward_residual(spec: &LimitKernelSpec, grid: GridSpec, quad: QuadratureConfig, fd_step: f64) -> Result<ResidualReport> {
    ward_residual_with(Exec::default(), spec, grid, quad, fd_step)
}

pub fn ward_residual_with(
    exec: Exec,
    spec: &LimitKernelSpec,
    grid: GridSpec,
    quad: QuadratureConfig,
    fd_step: f64,
) -> Result<ResidualReport> {
    if !(fd_step > 0.0) {
        return Err(Error::Invalid(format!("finite-difference step must be positive, got {fd_step}")));
    }
    if *spec == LimitKernelSpec::HardEdge {
        let max_re = grid.origin.re + (grid.nx - 1) as f64 * grid.step;
        if max_re > -2.0 * fd_step {
            return Err(Error::Domain(format!(
                "hard-edge Ward grids must satisfy Re z <= -2·fd_step = {}, got {max_re}",
                -2.0 * fd_step
            )));
        }
    }
    let integ = Integrator::new(spec, quad)?;
    let params = json!({
        "equation": "ward",
        "spec": spec.to_string(),
        "quad": quad,
        "fd_step": fd_step,
    });
    let values = KernelGrid::fill(exec, grid, params.clone(), |z| Ok(dbar_cauchy(&integ, z, fd_step)? - ward_rhs(&integ.kernel, z)?))?;
    let residuals = values.values.iter().map(|v| v.norm()).collect();
    Ok(ResidualReport::new(values, residuals, params))
}
