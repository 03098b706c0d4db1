//! Probabilists' Hermite polynomials `h_n`, with `h_0 = 1`, `h_1 = z`,
//! `h_n = z h_{n-1} - (n-1) h_{n-2}`.
//!
//! The plain recursion grows like `√(n!)`; series that sum `h_n²/n!` or
//! `h_{n-1} h_n / n!` use the scaled sequence `ĥ_n = h_n/√(n!)`, which obeys
//! `√n ĥ_n = z ĥ_{n-1} - √(n-1) ĥ_{n-2}` and stays `O(e^{z²/4})`.

use crate::{Cpx, Error, Result};

pub const MAX_DEGREE: usize = 400;

/// `h_n(z)` by the three-term recursion.
pub fn hermite_prob(n: usize, z: Cpx) -> Result<Cpx> {
    if n > MAX_DEGREE {
        return Err(Error::Domain(format!("Hermite degree {n} exceeds {MAX_DEGREE}")));
    }
    let (mut a, mut b) = (Cpx::new(1.0, 0.0), z);
    if n == 0 {
        return Ok(a);
    }
    for k in 2..=n {
        let c = z * b - (k - 1) as f64 * a;
        a = b;
        b = c;
    }
    Ok(b)
}

pub fn hermite_prob_real(n: usize, s: f64) -> f64 {
    let (mut a, mut b) = (1.0, s);
    if n == 0 {
        return a;
    }
    for k in 2..=n {
        let c = s * b - (k - 1) as f64 * a;
        a = b;
        b = c;
    }
    b
}

/// Iterator over `ĥ_0(s), ĥ_1(s), …` with `ĥ_n = h_n(s)/√(n!)`.
#[derive(Debug, Clone)]
pub struct ScaledHermite {
    s: f64,
    n: usize,
    prev: f64,
    cur: f64,
}

impl ScaledHermite {
    pub fn new(s: f64) -> Self {
        ScaledHermite { s, n: 0, prev: 0.0, cur: 1.0 }
    }
}

impl Iterator for ScaledHermite {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        self.n += 1;
        let n = self.n as f64;
        let next = (self.s * self.cur - (n - 1.0).sqrt() * self.prev) / n.sqrt();
        self.prev = self.cur;
        self.cur = next;
        Some(out)
    }
}

/// `ĥ_n(s) = h_n(s)/√(n!)` for all `n ≤ n_max`.
pub fn hermite_scaled_table(s: f64, n_max: usize) -> Vec<f64> {
    ScaledHermite::new(s).take(n_max + 1).collect()
}

/// Fused `h_{n-1}(s) h_n(s)/n! = ĥ_{n-1} ĥ_n/√n` for `n ≥ 1`.
pub fn hermite_paired_product(n: usize, s: f64) -> f64 {
    assert!(n >= 1);
    let t = hermite_scaled_table(s, n);
    t[n - 1] * t[n] / (n as f64).sqrt()
}
