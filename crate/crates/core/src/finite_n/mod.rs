//! Exact finite-n kernels of radially symmetric ensembles.
//!
//! For a radial potential the monomials `ζ^j` are orthogonal in
//! `L²(e^{-nQ} dA)`, so
//! `K_n(ζ,η) = Σ_{j<n} (ζη̄)^j/‖ζ^j‖² · e^{-n(Q(ζ)+Q(η))/2}`.
//! Every term is formed from its log-magnitude and phase; the sum is taken
//! relative to the largest term, and terms more than `e^{-40}` below it are
//! dropped.
//!
//! For the two Gaussian potentials the term magnitudes are Poisson masses,
//! `n^{j+1}|ζη̄|^j/j! · e^{-n|ζη̄|}` times `e^{-n(|ζ|-|η|)²/2}`, and are
//! evaluated in the deviance form of [`poisson_ln_pmf`]; the naive
//! `j ln x - ln j!` loses about `log10(n)` digits.

mod frame;
mod sections;

use serde::{Deserialize, Serialize};

use crate::special::{ln_factorial, ln_gamma, ln_lower_inc_gamma, ln_reg_lower_gamma, poisson_ln_pmf};
use crate::{Cpx, Error, Result};

pub use frame::{bulk_approx_kernel, cocycle_fix, psi_n, rescaled_kernel, FrameKind, RescaleFrame};
pub use sections::{exp_section, exp_section_limit};

/// Largest supported matrix size.
pub const MAX_N: usize = 1 << 20;
const DROP_BELOW: f64 = 40.0;

/// Radially symmetric external potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "lambda", rename_all = "kebab-case")]
pub enum Potential {
    /// `Q = |ζ|²`.
    Ginibre,
    /// `Q = |ζ|^{2λ}`, `λ ≥ 1`.
    Power(f64),
    /// `Q = |ζ|²` on the closed unit disc, `+∞` outside.
    HardEdgeGinibre,
}

impl Potential {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Potential::Power(l) if !(l >= 1.0 && l.is_finite()) => {
                Err(Error::Domain(format!("power potential needs λ >= 1, got {l}")))
            }
            _ => Ok(()),
        }
    }

    /// Power(1) is Ginibre; everything downstream uses the canonical form.
    fn canonical(self) -> Self {
        match self {
            Potential::Power(l) if l == 1.0 => Potential::Ginibre,
            p => p,
        }
    }

    /// `Q(ζ)`; `+∞` outside the unit disc for the hard edge.
    pub fn q(&self, zeta: Cpx) -> f64 {
        let r2 = zeta.norm_sqr();
        match self.canonical() {
            Potential::Ginibre => r2,
            Potential::Power(l) => r2.powf(l),
            Potential::HardEdgeGinibre => {
                if r2 <= 1.0 {
                    r2
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Normalized Laplacian `ΔQ = ∂∂̄Q`.
    pub fn laplacian_q(&self, zeta: Cpx) -> f64 {
        match self.canonical() {
            Potential::Ginibre | Potential::HardEdgeGinibre => 1.0,
            Potential::Power(l) => l * l * zeta.norm_sqr().powf(l - 1.0),
        }
    }
}

impl std::str::FromStr for Potential {
    type Err = Error;

    /// `ginibre`, `hard-edge`, `power:λ`.
    fn from_str(s: &str) -> Result<Self> {
        let pot = match s.split_once(':') {
            None if s == "ginibre" => Potential::Ginibre,
            None if s == "hard-edge" || s == "hard-edge-ginibre" => Potential::HardEdgeGinibre,
            Some(("power", l)) => Potential::Power(
                l.trim().parse().map_err(|_| Error::Invalid(format!("'{l}' is not a number in potential '{s}'")))?,
            ),
            _ => return Err(Error::Invalid(format!("unknown potential '{s}' (ginibre|hard-edge|power:λ)"))),
        };
        pot.validate()?;
        Ok(pot)
    }
}

impl std::fmt::Display for Potential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Potential::Ginibre => write!(f, "ginibre"),
            Potential::HardEdgeGinibre => write!(f, "hard-edge"),
            Potential::Power(l) => write!(f, "power:{l}"),
        }
    }
}

/// Radius of the droplet (support of the equilibrium measure).
pub fn droplet_radius(pot: Potential) -> f64 {
    match pot.canonical() {
        Potential::Ginibre | Potential::HardEdgeGinibre => 1.0,
        Potential::Power(l) => l.powf(-0.5 / l),
    }
}

/// `ln ‖ζ^j‖²` in `L²(e^{-nQ} dA)`, `dA = d²ζ/π`.
pub fn poly_norm_sq(pot: Potential, n: usize, j: usize) -> Result<f64> {
    pot.validate()?;
    if j >= n {
        return Err(Error::Domain(format!("monomial degree {j} >= n = {n}")));
    }
    let (nf, j1) = (n as f64, (j + 1) as f64);
    Ok(match pot.canonical() {
        Potential::Ginibre => ln_factorial(j as u64) - j1 * nf.ln(),
        Potential::Power(l) => ln_gamma(j1 / l) - l.ln() - j1 / l * nf.ln(),
        Potential::HardEdgeGinibre => ln_lower_inc_gamma(j as u64 + 1, nf)? - j1 * nf.ln(),
    })
}

/// `K_n` for one potential and size, with the monomial norms cached.
#[derive(Debug, Clone)]
pub struct FiniteKernel {
    pot: Potential,
    n: usize,
    ln_norms: Vec<f64>,
    /// Hard edge: `ln P(j+1, n)`, the truncation of the Gaussian norm.
    ln_trunc: Vec<f64>,
}

impl FiniteKernel {
    pub fn new(pot: Potential, n: usize) -> Result<Self> {
        pot.validate()?;
        if n == 0 || n > MAX_N {
            return Err(Error::Domain(format!("matrix size n = {n} outside 1..={MAX_N}")));
        }
        let ln_norms = (0..n).map(|j| poly_norm_sq(pot, n, j)).collect::<Result<_>>()?;
        let ln_trunc = match pot {
            Potential::HardEdgeGinibre => {
                (0..n).map(|j| ln_reg_lower_gamma(j as u64 + 1, n as f64)).collect::<Result<_>>()?
            }
            _ => Vec::new(),
        };
        Ok(FiniteKernel { pot: pot.canonical(), n, ln_norms, ln_trunc })
    }

    pub fn potential(&self) -> Potential {
        self.pot
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `K_n(ζ, η)`.
    pub fn eval(&self, zeta: Cpx, eta: Cpx) -> Cpx {
        let nf = self.n as f64;
        let weight = -0.5 * nf * (self.pot.q(zeta) + self.pot.q(eta));
        if weight == f64::NEG_INFINITY {
            return Cpx::new(0.0, 0.0);
        }
        let x = zeta * eta.conj();
        if x == Cpx::new(0.0, 0.0) {
            return Cpx::new((weight - self.ln_norms[0]).exp(), 0.0);
        }
        let (r, phi) = (x.norm(), x.arg());
        let ln_r = r.ln();
        let gaussian = matches!(self.pot, Potential::Ginibre | Potential::HardEdgeGinibre);
        let (nr, offset) = if gaussian {
            (nf * r, nf.ln() - 0.5 * nf * (zeta.norm() - eta.norm()).powi(2))
        } else {
            (0.0, weight)
        };
        let log_term = |j: usize| {
            if gaussian {
                let t = poisson_ln_pmf(j as u64, nr);
                if self.ln_trunc.is_empty() {
                    t
                } else {
                    t - self.ln_trunc[j]
                }
            } else {
                j as f64 * ln_r - self.ln_norms[j]
            }
        };
        // log-terms are concave in j: locate the peak, then walk both ways.
        let peak = (0..self.n).map(|j| (j, log_term(j))).fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
        let (jp, m) = peak;
        let mut re = Kahan::default();
        let mut im = Kahan::default();
        let mut add = |j: usize| -> bool {
            let d = log_term(j) - m;
            if d < -DROP_BELOW {
                return false;
            }
            let (s, c) = (j as f64 * phi).sin_cos();
            let mag = d.exp();
            re.add(mag * c);
            im.add(mag * s);
            true
        };
        for j in jp..self.n {
            if !add(j) {
                break;
            }
        }
        for j in (0..jp).rev() {
            if !add(j) {
                break;
            }
        }
        Cpx::new(re.sum(), im.sum()) * (m + offset).exp()
    }

    /// One-point function `K_n(ζ, ζ)`.
    pub fn density(&self, zeta: Cpx) -> f64 {
        self.eval(zeta, zeta).re
    }
}

/// `K_n(ζ, η)`; builds the norm table on every call, so prefer
/// [`FiniteKernel`] for repeated evaluation.
pub fn kernel_finite_n(pot: Potential, n: usize, zeta: Cpx, eta: Cpx) -> Result<Cpx> {
    Ok(FiniteKernel::new(pot, n)?.eval(zeta, eta))
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub(crate) fn add(&mut self, x: f64) {
        // Neumaier's variant: also correct when |x| > |sum|.
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}
