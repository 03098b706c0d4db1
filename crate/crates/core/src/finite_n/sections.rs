//! Sections of the exponential series, `s_n(z) = Σ_{j<n} z^j/j!`, at
//! `z = n + √n x`.

use crate::special::{ln_factorial, plasma_f_real, poisson_ln_pmf};

/// `s_n(n + √n x)·e^{-n-√n x}`, summed in log space. For `n + √n x > 0`
/// this is `P(Poisson(n + √n x) ≤ n - 1)`, and each log-term
/// `j ln y - ln j! - y` is evaluated in the cancellation-free form of
/// [`poisson_ln_pmf`].
pub fn exp_section(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    let y = nf + nf.sqrt() * x;
    if y == 0.0 {
        return 1.0;
    }
    let ln_y = y.abs().ln();
    let log_term = |j: usize| {
        if y > 0.0 {
            poisson_ln_pmf(j as u64, y)
        } else {
            j as f64 * ln_y - ln_factorial(j as u64) - y
        }
    };
    let m = (0..n).map(log_term).fold(f64::NEG_INFINITY, f64::max);
    let mut acc = super::Kahan::default();
    for j in 0..n {
        let sign = if y < 0.0 && j % 2 == 1 { -1.0 } else { 1.0 };
        acc.add(sign * (log_term(j) - m).exp());
    }
    acc.sum() * m.exp()
}

/// Limit of [`exp_section`] as `n → ∞`: the Poisson law of mean
/// `n + √n x` has its `(n-1)`-quantile `x` standard deviations below the
/// mean, so the section tends to `F(x)`.
pub fn exp_section_limit(x: f64) -> f64 {
    plasma_f_real(x)
}
