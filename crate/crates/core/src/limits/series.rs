//! Series forms of the mass-one equation for `R(x + iy) = F(2x)`, Hermite
//! identities, and the 1/8-formula.
//!
//! With `s = 2x`, `F^{(n)}(s) = (-1)^n h_{n-1}(s) γ(s)` for `n ≥ 1`, so the
//! terms are products of scaled Hermite values `ĥ_n = h_n/√(n!)`:
//! `F^{(n)}²/n! = γ² ĥ_{n-1}²/n` and `F^{(n)}F^{(n+1)}/n! = -γ² ĥ_{n-1}ĥ_n/√n`.
//!
//! `ĥ_n(s)²` decays only like `n^{-1/2}`, so the truncated series converge
//! like `N^{-1/2}`. The `_resummed` variants use Mehler's formula
//! `Σ ĥ_m² t^m = (1 - t²)^{-1/2} e^{s²t/(1+t)}` and integrate in `t` over
//! `[0, 1]` (Abel summation), which gives the full sums to quadrature
//! accuracy.

use crate::quadrature::adaptive_gk_real;
use crate::special::{gauss_gamma_real, plasma_f_real, ScaledHermite};
use crate::{Error, Result};

pub const MAX_TERMS: usize = 200;

fn check_terms(n: usize) -> Result<()> {
    if n > MAX_TERMS {
        return Err(Error::Domain(format!("series truncation N = {n} exceeds {MAX_TERMS}")));
    }
    Ok(())
}

/// `F(2x) - Σ_{n=0}^{N} F^{(n)}(2x)²/n!`.
pub fn mass_one_series_residual(x: f64, n_terms: usize) -> Result<f64> {
    check_terms(n_terms)?;
    let s = 2.0 * x;
    let (f, g) = (plasma_f_real(s), gauss_gamma_real(s));
    let tail: f64 = ScaledHermite::new(s).take(n_terms).enumerate().map(|(m, h)| h * h / (m + 1) as f64).sum();
    Ok(f - f * f - g * g * tail)
}

/// `∫_0^1 (1-t²)^{-1/2} e^{s²t/(1+t)} w(t) dt` via `t = sin θ`.
fn mehler_integral(s: f64, w: impl Fn(f64) -> f64) -> Result<f64> {
    adaptive_gk_real(
        |th| {
            let t = th.sin();
            (s * s * t / (1.0 + t)).exp() * w(t)
        },
        0.0,
        std::f64::consts::FRAC_PI_2,
        1e-300,
        1e-14,
    )
}

/// [`mass_one_series_residual`] with `N = ∞`: `F - F² - γ² Σ_{m≥0} ĥ_m²/(m+1)`.
pub fn mass_one_series_resummed(x: f64) -> Result<f64> {
    let s = 2.0 * x;
    let (f, g) = (plasma_f_real(s), gauss_gamma_real(s));
    Ok(f - f * f - g * g * mehler_integral(s, |_| 1.0)?)
}

/// `Σ_{n=0}^{N} F^{(n)}(s)F^{(n+1)}(s)/n! - F'(s)/2`.
pub fn hermite_identity_residual(s: f64, n_terms: usize) -> Result<f64> {
    check_terms(n_terms)?;
    let (f, g) = (plasma_f_real(s), gauss_gamma_real(s));
    let hs: Vec<f64> = ScaledHermite::new(s).take(n_terms + 1).collect();
    let products: f64 = (1..=n_terms).map(|n| hs[n - 1] * hs[n] / (n as f64).sqrt()).sum();
    Ok(-f * g - g * g * products + 0.5 * g)
}

/// [`hermite_identity_residual`] with `N = ∞`, using
/// `Σ_{n≥1} h_{n-1}h_n/n! = s ∫_0^1 (1-t²)^{-1/2} e^{s²t/(1+t)}/(1+t) dt`.
pub fn hermite_identity_resummed(s: f64) -> Result<f64> {
    let (f, g) = (plasma_f_real(s), gauss_gamma_real(s));
    let products = s * mehler_integral(s, |t| 1.0 / (1.0 + t))?;
    Ok(-f * g - g * g * products + 0.5 * g)
}

/// `Σ_{n=1}^{N} (n h_{n-1}² - h_n²)/n! - 1`. The partial sum telescopes to
/// `1 - ĥ_N²`, so this is exactly `-ĥ_N(s)²`.
pub fn telescoping_residual(s: f64, n_terms: usize) -> Result<f64> {
    check_terms(n_terms)?;
    let hs: Vec<f64> = ScaledHermite::new(s).take(n_terms + 1).collect();
    let sum: f64 = (1..=n_terms).map(|n| hs[n - 1] * hs[n - 1] - hs[n] * hs[n]).sum();
    Ok(sum - 1.0)
}

/// `∫ t (F(2t) - 1_{t<0}) dt`; by `F(-s) = 1 - F(s)` both half-lines give
/// `∫_0^∞ t F(2t) dt`.
pub fn eighth_formula(rel_tol: f64) -> Result<f64> {
    let half = adaptive_gk_real(|t| t * plasma_f_real(2.0 * t), 0.0, 20.0, 1e-300, rel_tol)?;
    Ok(2.0 * half)
}

/// `∫ t (F(2t - a) - 1_{t<0}) dt` for the profile of `γ * 1_{(-∞,a)}`;
/// equals `1/8 + a²/8`.
pub fn eighth_formula_shifted(a: f64, rel_tol: f64) -> Result<f64> {
    let reach = 20.0 + a.abs();
    let right = adaptive_gk_real(|t| t * plasma_f_real(2.0 * t - a), 0.0, reach, 1e-300, rel_tol)?;
    let left = adaptive_gk_real(|t| t * (plasma_f_real(2.0 * t - a) - 1.0), -reach, 0.0, 1e-300, rel_tol)?;
    Ok(right + left)
}
