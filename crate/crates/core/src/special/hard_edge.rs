//! Hard-edge plasma function
//! `H(z) = ∫_{-∞}^0 γ(z - t)/F(t) dt`.
//!
//! On `(-∞, -T]` with `T = 12` the weight `1/F(t) = 1 + F(-t)/F(t)` differs
//! from one by at most `F(12)/F(-12) < 2e-33`, so that piece is replaced by
//! `F(z + T)` and only `[-T, 0]` needs quadrature.
//!
//! Two evaluators are provided:
//!
//! * [`hard_edge_h`], adaptive Gauss–Kronrod; the reference.
//! * [`HardEdgeRule`], a fixed composite Gauss–Legendre rule that returns
//!   `G·H` for the limiting kernel with the Gaussian factors folded into the
//!   integrand. For `|Im ζ| > 16` the real-axis rule cannot resolve
//!   `e^{iζt}`; there the integration path is rotated by 35° into the
//!   half plane where `e^{ζt}` decays. The zeros of `F` approach the rays
//!   `arg t = ±135°` and never enter the swept sector.

use std::sync::OnceLock;

use super::erfc::{exp_times_f, gauss_gamma, gauss_gamma_real, plasma_f, plasma_f_real};
use super::hermite::hermite_prob_real;
use crate::quadrature::{adaptive_gk, adaptive_gk_real, GaussLegendre};
use crate::{Cpx, Error, Result, INV_SQRT_2PI};

pub const SPLIT: f64 = 12.0;
const PANEL_WIDTH: f64 = 0.5;
const PANEL_NODES: usize = 16;
const ROTATION: f64 = 35.0 * std::f64::consts::PI / 180.0;
const ROTATE_ABOVE: f64 = 16.0;
const WATSON_TERMS: usize = 72;
// Nearest zero of F(t) off the real axis: √2 times the first erfc zero.
const POLE_RE: f64 = -1.916_004;
const POLE_IM: f64 = 2.816_362;

fn check_envelope(z: Cpx) -> Result<()> {
    if z.re > 10.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("hard-edge H needs Re z <= 10, got {z}")));
    }
    Ok(())
}

/// `H(z)` by adaptive quadrature; absolute error below `1e-9` for `|z| ≤ 6`.
pub fn hard_edge_h(z: Cpx) -> Result<Cpx> {
    check_envelope(z)?;
    let scale = (0.5 * z.im * z.im).exp();
    let body = adaptive_gk(
        |t| gauss_gamma(z - t) / plasma_f_real(t),
        -SPLIT,
        0.0,
        1e-13 * scale,
        1e-13,
        4000,
    )?;
    Ok(plasma_f(z + SPLIT) + body)
}

/// `[H(s), H'(s), H''(s)]` for real `s`, using
/// `dⁿ/dsⁿ γ(s - t) = (-1)ⁿ h_n(s - t) γ(s - t)`.
pub fn hard_edge_h_derivs(s: f64) -> Result<[f64; 3]> {
    check_envelope(Cpx::new(s, 0.0))?;
    let mut out = [0.0; 3];
    for (n, slot) in out.iter_mut().enumerate() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let body = adaptive_gk_real(
            |t| sign * hermite_prob_real(n, s - t) * gauss_gamma_real(s - t) / plasma_f_real(t),
            -SPLIT,
            0.0,
            1e-15,
            1e-13,
        )?;
        let tail = if n == 0 {
            plasma_f_real(s + SPLIT)
        } else {
            sign * hermite_prob_real(n - 1, s + SPLIT) * gauss_gamma_real(s + SPLIT)
        };
        *slot = body + tail;
    }
    Ok(out)
}

/// Fixed-node evaluator of `e^{log_g}·H(ζ)`.
#[derive(Debug, Clone)]
pub struct HardEdgeRule {
    /// Node offsets inside a panel, relative to its centre.
    offsets: Vec<f64>,
    /// Panel centres `c_p`.
    centres: Vec<f64>,
    /// `w_{p,k}/(√(2π) F(t)) · e^{-δ_k²/2 - c_p δ_k}`, row-major by panel.
    weights: Vec<f64>,
    ray: GaussLegendre,
    /// `(-1)^k k! g_k` for the Taylor coefficients `g_k` of `γ/F` at 0.
    watson: Vec<f64>,
}

/// Taylor coefficients of `γ(t)/F(t)` at `t = 0` by power-series division.
fn ratio_taylor(terms: usize) -> Vec<f64> {
    // γ(t) = Σ (-1)^m t^{2m} / (2^m m! √(2π))
    let mut gam = vec![0.0; terms];
    let mut denom = 1.0;
    for m in 0..terms.div_ceil(2) {
        if m > 0 {
            denom *= -2.0 * m as f64;
        }
        gam[2 * m] = INV_SQRT_2PI / denom;
    }
    // F' = -γ, F(0) = 1/2
    let mut f = vec![0.0; terms];
    f[0] = 0.5;
    for k in 1..terms {
        f[k] = -gam[k - 1] / k as f64;
    }
    let mut g = vec![0.0; terms];
    for k in 0..terms {
        let conv: f64 = (1..=k).map(|j| f[j] * g[k - j]).sum();
        g[k] = (gam[k] - conv) / f[0];
    }
    g
}

impl HardEdgeRule {
    fn build() -> Self {
        let gl = GaussLegendre::new(PANEL_NODES);
        let half = 0.5 * PANEL_WIDTH;
        let offsets: Vec<f64> = gl.mapped(-half, half).map(|(x, _)| x).collect();
        let panels = (SPLIT / PANEL_WIDTH).round() as usize;
        let centres: Vec<f64> = (0..panels).map(|p| -SPLIT + (p as f64 + 0.5) * PANEL_WIDTH).collect();
        let mut weights = Vec::with_capacity(panels * PANEL_NODES);
        for &c in &centres {
            for (d, w) in gl.mapped(-half, half) {
                let t = c + d;
                weights.push(w * INV_SQRT_2PI / plasma_f_real(t) * (-0.5 * d * d - c * d).exp());
            }
        }
        let mut fact = 1.0;
        let watson = ratio_taylor(WATSON_TERMS)
            .into_iter()
            .enumerate()
            .map(|(k, g)| {
                if k > 0 {
                    fact *= -(k as f64);
                }
                fact * g
            })
            .collect();
        HardEdgeRule { offsets, centres, weights, ray: GaussLegendre::new(PANEL_NODES), watson }
    }

    /// Shared instance.
    pub fn get() -> &'static HardEdgeRule {
        static RULE: OnceLock<HardEdgeRule> = OnceLock::new();
        RULE.get_or_init(HardEdgeRule::build)
    }

    /// `H(ζ)`.
    pub fn h(&self, zeta: Cpx) -> Result<Cpx> {
        self.exp_times_h(Cpx::new(0.0, 0.0), zeta)
    }

    /// `e^{log_g}·H(ζ)`. Bounded whenever `Re(log_g - (ζ - t)²/2) ≤ 0` on
    /// `t ≤ 0`, which is the case for `log_g = log G(z,w)`, `ζ = z + w̄`.
    pub fn exp_times_h(&self, log_g: Cpx, zeta: Cpx) -> Result<Cpx> {
        check_envelope(zeta)?;
        let a = log_g - 0.5 * zeta * zeta;
        let s = zeta.im;
        if s.abs() > ROTATE_ABOVE {
            let kappa = zeta.re * ROTATION.cos() + s.abs() * ROTATION.sin();
            if kappa >= 1.0 {
                if let Some(j) = self.watson(zeta) {
                    return Ok(a.exp() * j);
                }
                return Ok(self.rotated(a, zeta, kappa));
            }
            let body = adaptive_gk(
                |t| (a + zeta * t - 0.5 * t * t).exp() * INV_SQRT_2PI / plasma_f_real(t),
                -SPLIT,
                0.0,
                1e-15,
                1e-12,
                20_000,
            )?;
            return Ok(exp_times_f(log_g, zeta + SPLIT) + body);
        }
        let e: Vec<Cpx> = self.offsets.iter().map(|&d| (zeta * d).exp()).collect();
        let mut total = Cpx::new(0.0, 0.0);
        for (p, &c) in self.centres.iter().enumerate() {
            let row = &self.weights[p * PANEL_NODES..(p + 1) * PANEL_NODES];
            let inner: Cpx = row.iter().zip(&e).map(|(&w, &ek)| ek * w).sum();
            total += (a + zeta * c - 0.5 * c * c).exp() * inner;
        }
        Ok(exp_times_f(log_g, zeta + SPLIT) + total)
    }

    /// Asymptotic series `Σ (-1)^k k! g_k / ζ^{k+1}` for `∫_{-∞}^0 e^{ζt} g(t) dt`.
    /// The series misses the pole of `g` nearest the steepest-descent ray, whose
    /// weight is about `|e^{ζ t_p}|`; decline when that is not negligible.
    fn watson(&self, zeta: Cpx) -> Option<Cpx> {
        let r = zeta.norm();
        let pole = POLE_RE * zeta.re - POLE_IM * zeta.im.abs() + r.ln();
        if pole > -40.0 {
            return None;
        }
        let inv = zeta.inv();
        let mut pow = inv;
        let mut sum = Cpx::new(0.0, 0.0);
        // Coefficients oscillate in size; require two consecutive negligible terms.
        let mut small = 0;
        for &c in &self.watson {
            let term = pow * c;
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                small += 1;
                if small == 2 {
                    return Some(sum);
                }
            } else {
                small = 0;
            }
            pow *= inv;
        }
        None
    }

    /// `e^{a}∫_{-∞}^0 e^{ζt} g(t) dt`, `g = γ/F`, along `t = -ρ e^{iσθ}`.
    fn rotated(&self, a: Cpx, zeta: Cpx, kappa: f64) -> Cpx {
        let sigma = if zeta.im > 0.0 { -1.0 } else { 1.0 };
        let dir = Cpx::from_polar(1.0, sigma * ROTATION);
        // ρ = v/κ makes the decay e^{-v}; η is the residual oscillation rate.
        let eta = (zeta * dir).im.abs() / kappa;
        let v_max = 40.0;
        let panels = ((v_max * eta.max(1.0)) / 6.0).ceil().min(400.0) as usize;
        let width = v_max / panels as f64;
        let mut sum = Cpx::new(0.0, 0.0);
        for p in 0..panels {
            let lo = p as f64 * width;
            for (v, w) in self.ray.mapped(lo, lo + width) {
                let t = -dir * (v / kappa);
                let g = (a + zeta * t - 0.5 * t * t).exp() * INV_SQRT_2PI / plasma_f(t);
                sum += g * w;
            }
        }
        dir * sum / kappa
    }
}
