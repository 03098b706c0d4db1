//! Generalized Mittag-Leffler function
//! `M_λ(z) = λ Σ_{j≥0} z^j / Γ((j+1)/λ)`.
//!
//! `M_1 = exp`, and in general `M_λ(z)` grows like `exp(z^λ)` along the
//! positive axis, so values are produced in scaled form `e^{scale}·value`
//! and the unscaled entry point reports [`Error::Overflow`].
//!
//! Terms are generated by the ratio `Γ(j/λ)/Γ((j+1)/λ)`, tabulated once per
//! `λ` from log-gamma, and the running term/sum pair is rescaled whenever the
//! term grows past `RESCALE`.

use super::gamma::ln_gamma;
use crate::{Cpx, Error, Result};

const MAX_TERMS: usize = 100_000;
const RESCALE: f64 = 1e200;
const TABLE_LEN: usize = 2048;

/// Value `e^{scale}·value` of a scaled evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub scale: f64,
    pub value: Cpx,
}

impl Scaled {
    pub fn ln_abs(&self) -> f64 {
        self.scale + self.value.norm().ln()
    }

    pub fn to_cpx(&self) -> Result<Cpx> {
        let l = self.ln_abs();
        if l > 709.0 {
            return Err(Error::Overflow { log_magnitude: l });
        }
        Ok(self.value * self.scale.exp())
    }
}

/// Precomputed coefficient ratios for one `λ`.
#[derive(Debug, Clone)]
pub struct MittagLeffler {
    lambda: f64,
    lead: f64,
    /// `ratio[j] = Γ(j/λ)/Γ((j+1)/λ)` for `j ≥ 1`.
    ratio: Vec<f64>,
}

impl MittagLeffler {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(1.0..=10.0).contains(&lambda) {
            return Err(Error::Domain(format!("Mittag-Leffler index λ = {lambda} outside [1, 10]")));
        }
        let lg = |j: usize| ln_gamma((j + 1) as f64 / lambda);
        let ratio = (0..TABLE_LEN).map(|j| if j == 0 { 0.0 } else { (lg(j - 1) - lg(j)).exp() }).collect();
        Ok(MittagLeffler { lambda, lead: lambda * (-lg(0)).exp(), ratio })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn ratio(&self, j: usize) -> f64 {
        match self.ratio.get(j) {
            Some(&r) => r,
            None => (ln_gamma(j as f64 / self.lambda) - ln_gamma((j + 1) as f64 / self.lambda)).exp(),
        }
    }

    /// `M_λ(z)` in scaled form.
    pub fn eval_scaled(&self, z: Cpx) -> Result<Scaled> {
        let mut scale = 0.0;
        let mut term = Cpx::new(self.lead, 0.0);
        let mut sum = term;
        let mut comp = Cpx::new(0.0, 0.0);
        if z == Cpx::new(0.0, 0.0) {
            return Ok(Scaled { scale, value: sum });
        }
        let mut small_run = 0;
        let mut prev_abs = term.norm();
        for j in 1..MAX_TERMS {
            term *= z * self.ratio(j);
            // Kahan-compensated complex sum.
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;

            let a = term.norm();
            if a > RESCALE {
                term /= RESCALE;
                sum /= RESCALE;
                comp /= RESCALE;
                scale += RESCALE.ln();
            }
            let decreasing = a <= prev_abs;
            prev_abs = a;
            if decreasing && a < 1e-18 * sum.norm() {
                small_run += 1;
                if small_run >= 5 {
                    return Ok(Scaled { scale, value: sum });
                }
            } else {
                small_run = 0;
            }
        }
        Err(Error::SeriesNotConverged { terms: MAX_TERMS })
    }

    pub fn eval(&self, z: Cpx) -> Result<Cpx> {
        self.eval_scaled(z)?.to_cpx()
    }

    /// `λ/Γ(1/λ) = M_λ(0)`.
    pub fn at_zero(&self) -> f64 {
        self.lead
    }

    /// Partial sum `λ Σ_{j<n} z^j/Γ((j+1)/λ)` without any stopping rule.
    pub fn partial_sum(&self, z: Cpx, n: usize) -> Cpx {
        let mut term = Cpx::new(self.lead, 0.0);
        let mut sum = Cpx::new(0.0, 0.0);
        for j in 0..n {
            if j > 0 {
                term *= z * self.ratio(j);
            }
            sum += term;
        }
        sum
    }
}

/// `M_λ(z)` for `λ ∈ [1, 10]`.
pub fn mittag_leffler_m(lambda: f64, z: Cpx) -> Result<Cpx> {
    MittagLeffler::new(lambda)?.eval(z)
}
