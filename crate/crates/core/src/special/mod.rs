//! Special functions behind every kernel.

mod erfc;
mod gamma;
mod hard_edge;
mod hermite;
mod mittag_leffler;

use serde::{Deserialize, Serialize};

pub use erfc::{
    erf_cpx, erfc_cpx, erfc_tagged, erfcx_cpx, exp_times_f, gauss_gamma, gauss_gamma_real, plasma_f,
    plasma_f_real, Envelope, Tagged,
};
pub use gamma::{
    ln_factorial, ln_gamma, ln_lower_inc_gamma, ln_reg_lower_gamma, lower_inc_gamma, poisson_ln_pmf, reg_lower_gamma,
    reg_upper_gamma,
};
pub use hard_edge::{hard_edge_h, hard_edge_h_derivs, HardEdgeRule};
pub use hermite::{hermite_paired_product, hermite_prob, hermite_prob_real, hermite_scaled_table, ScaledHermite};
pub use mittag_leffler::{mittag_leffler_m, MittagLeffler, Scaled};

use crate::{Cpx, Error, Result};

/// Interval of the real line with possibly infinite endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalR {
    pub lo: f64,
    pub hi: f64,
}

impl IntervalR {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::Invalid(format!("interval ({lo}, {hi}) is empty")));
        }
        Ok(IntervalR { lo, hi })
    }

    /// `(-∞, a)`.
    pub fn below(a: f64) -> Self {
        IntervalR { lo: f64::NEG_INFINITY, hi: a }
    }

    pub fn real_line() -> Self {
        IntervalR { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo < t && t < self.hi
    }
}

/// `γ * 1_I (z) = ∫_I γ(z - t) dt = F(z - hi) - F(z - lo)`, where the term
/// with `hi = +∞` is `1` and the term with `lo = -∞` is `0`.
pub fn conv_indicator(z: Cpx, i: IntervalR) -> Cpx {
    let upper = if i.hi == f64::INFINITY { Cpx::new(1.0, 0.0) } else { plasma_f(z - i.hi) };
    let lower = if i.lo == f64::NEG_INFINITY { Cpx::new(0.0, 0.0) } else { plasma_f(z - i.lo) };
    upper - lower
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_line_is_plasma_f() {
        let z = Cpx::new(0.4, -1.3);
        assert_eq!(conv_indicator(z, IntervalR::below(0.0)), plasma_f(z));
    }

    #[test]
    fn real_line_has_unit_mass() {
        assert_eq!(conv_indicator(Cpx::new(3.0, 2.0), IntervalR::real_line()), Cpx::new(1.0, 0.0));
    }

    #[test]
    fn bad_intervals_rejected() {
        assert!(IntervalR::new(1.0, 1.0).is_err());
        assert!(IntervalR::new(2.0, 1.0).is_err());
        assert!(IntervalR::new(f64::NEG_INFINITY, f64::INFINITY).is_ok());
    }
}
