//! Independent numerical oracles for the integration tests. Nothing here
//! calls into the crate's own quadrature code.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use std::f64::consts::PI;

/// Tanh-sinh quadrature on `[a, b]` with step `h` over `|t| ≤ t_max`.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (h, t_max) = (1.0 / 64.0, 4.0);
    let (c, d) = (0.5 * (a + b), 0.5 * (b - a));
    let mut sum = 0.0;
    let k = (t_max / h) as i64;
    for i in -k..=k {
        let t = i as f64 * h;
        let u = 0.5 * PI * t.sinh();
        let x = u.tanh();
        let w = 0.5 * PI * t.cosh() / u.cosh().powi(2);
        // skip nodes that round onto the endpoints
        if (1.0 - x.abs()) * d <= 0.0 || w == 0.0 {
            continue;
        }
        sum += w * f(c + d * x);
    }
    sum * h * d
}

/// Complex-valued tanh-sinh on `[a, b]`.
pub fn tanh_sinh_c(f: impl Fn(f64) -> C, a: f64, b: f64) -> C {
    C::new(tanh_sinh(|x| f(x).re, a, b), tanh_sinh(|x| f(x).im, a, b))
}

/// `n`-th derivative at `z0` from the Cauchy integral on a circle of radius
/// `r`, trapezoid rule with `m` nodes (spectrally accurate for entire `f`).
pub fn cauchy_derivative(f: impl Fn(C) -> C, z0: C, n: u32, r: f64, m: usize) -> C {
    let mut acc = C::new(0.0, 0.0);
    for k in 0..m {
        let th = 2.0 * PI * k as f64 / m as f64;
        let e = C::from_polar(1.0, th);
        acc += f(z0 + e * r) * C::from_polar(1.0, -(n as f64) * th);
    }
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    acc * fact / (m as f64 * r.powi(n as i32))
}

/// Standard normal upper tail `P(Z > x)` by quadrature of the density.
pub fn normal_tail(x: f64) -> f64 {
    if x >= 0.0 {
        tanh_sinh(gauss, x, x + 40.0)
    } else {
        1.0 - tanh_sinh(gauss, -x, -x + 40.0)
    }
}

pub fn gauss(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `P(Poisson(mu) ≤ k)` by direct forward summation in log space.
pub fn poisson_cdf(k: u64, mu: f64) -> f64 {
    let mut ln_term = -mu;
    let mut sum = ln_term.exp();
    for j in 1..=k {
        ln_term += mu.ln() - (j as f64).ln();
        sum += ln_term.exp();
    }
    sum
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
