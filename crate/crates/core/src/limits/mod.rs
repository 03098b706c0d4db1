//! Limiting kernels and the machinery that checks the equations they
//! satisfy.
//!
//! All translation-invariant kernels have the form `K = G·Φ(z + w̄)` with
//! `G(z,w) = e^{zw̄ - |z|²/2 - |w|²/2}`. Products `G·F(ζ - c)` are formed in
//! one step (see [`exp_times_f`]) because `|G|` and `|F|` separately leave
//! f64 range far from the diagonal.

mod checks;
mod plane;
mod series;
mod ward;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::special::{
    exp_times_f, gauss_gamma_real, hard_edge_h_derivs, plasma_f_real, HardEdgeRule, IntervalR, MittagLeffler,
};
use crate::{Cpx, Error, Result};

pub use checks::{
    gram_min_eig, gram_min_eig_of, inequality_suite, jacobi_eigenvalues, tail_bounds_report, InequalityReport,
};
pub use plane::{cauchy_transform, mass_one_residual, polarized_mass_one_residual, QuadratureConfig};
pub use series::{
    eighth_formula, eighth_formula_shifted, hermite_identity_residual, hermite_identity_resummed,
    mass_one_series_residual, mass_one_series_resummed, telescoping_residual,
};
pub use ward::{laplacian_log_r, ward_residual, ward_residual_with, ResidualReport};

/// Finite union of disjoint open intervals, kept sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet(Vec<IntervalR>);

impl IntervalSet {
    pub fn new(mut parts: Vec<IntervalR>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid("interval set is empty".into()));
        }
        parts.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for w in parts.windows(2) {
            if w[0].hi > w[1].lo {
                return Err(Error::Invalid("intervals overlap".into()));
            }
        }
        Ok(IntervalSet(parts))
    }

    pub fn single(i: IntervalR) -> Self {
        IntervalSet(vec![i])
    }

    pub fn intervals(&self) -> &[IntervalR] {
        &self.0
    }

    pub fn is_connected(&self) -> bool {
        self.0.windows(2).all(|w| w[0].hi == w[1].lo)
    }

    /// Finite endpoints with orientation: `(c, +1)` for an upper end,
    /// `(c, -1)` for a lower end, so `Φ(ζ) = const + Σ ± F(ζ - c)`.
    fn endpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.0.iter().flat_map(|i| {
            let hi = i.hi.is_finite().then_some((i.hi, 1.0));
            let lo = i.lo.is_finite().then_some((i.lo, -1.0));
            hi.into_iter().chain(lo)
        })
    }

    /// Number of intervals reaching `+∞` (0 or 1).
    fn unbounded_above(&self) -> f64 {
        self.0.iter().filter(|i| i.hi == f64::INFINITY).count() as f64
    }

    pub fn finite_endpoints(&self) -> Vec<f64> {
        self.endpoints().map(|(c, _)| c).collect()
    }
}

/// Analytic limiting kernels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "kebab-case")]
pub enum LimitKernelSpec {
    /// `G(z,w)`.
    GinibreBulk,
    /// `G·(γ * 1_E)(z + w̄)`.
    FreeBoundary(IntervalSet),
    /// `G·H(z + w̄)` on the left half plane.
    HardEdge,
    /// `M_λ(zw̄) e^{-(|z|^{2λ} + |w|^{2λ})/2}`.
    MittagLeffler(f64),
    /// `c·G(z,w)`, i.e. `Φ ≡ c`; a translation-invariant kernel that is not
    /// of the form `γ * 1_E`.
    ConstantProfile(f64),
}

impl LimitKernelSpec {
    /// Free boundary with `E = (-∞, a)`.
    pub fn free_boundary(a: f64) -> Self {
        LimitKernelSpec::FreeBoundary(IntervalSet::single(IntervalR::below(a)))
    }

    pub fn is_translation_invariant(&self) -> bool {
        matches!(self, LimitKernelSpec::GinibreBulk | LimitKernelSpec::FreeBoundary(_) | LimitKernelSpec::ConstantProfile(_))
    }
}

impl FromStr for LimitKernelSpec {
    type Err = Error;

    /// `ginibre-bulk`, `free-boundary`, `free-boundary:a`,
    /// `free-boundary:a1,b1,a2,b2,…` (`inf`/`-inf` allowed), `hard-edge`,
    /// `mittag-leffler:λ`, `constant:c`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let nums = |a: &str| -> Result<Vec<f64>> {
            a.split(',')
                .map(|t| match t.trim() {
                    "inf" | "+inf" => Ok(f64::INFINITY),
                    "-inf" => Ok(f64::NEG_INFINITY),
                    t => t.parse::<f64>().map_err(|_| Error::Invalid(format!("'{t}' is not a number in spec '{s}'"))),
                })
                .collect()
        };
        let one = |a: Option<&str>| -> Result<f64> {
            match a.map(nums).transpose()?.as_deref() {
                Some([v]) => Ok(*v),
                _ => Err(Error::Invalid(format!("spec '{s}' needs exactly one parameter"))),
            }
        };
        match head {
            "ginibre-bulk" | "bulk" if arg.is_none() => Ok(LimitKernelSpec::GinibreBulk),
            "hard-edge" if arg.is_none() => Ok(LimitKernelSpec::HardEdge),
            "free-boundary" => match arg {
                None => Ok(LimitKernelSpec::free_boundary(0.0)),
                Some(a) => {
                    let v = nums(a)?;
                    match v.len() {
                        1 => Ok(LimitKernelSpec::free_boundary(v[0])),
                        k if k % 2 == 0 => {
                            let parts = v.chunks(2).map(|p| IntervalR::new(p[0], p[1])).collect::<Result<_>>()?;
                            Ok(LimitKernelSpec::FreeBoundary(IntervalSet::new(parts)?))
                        }
                        _ => Err(Error::Invalid(format!("free-boundary spec '{s}' needs one edge or endpoint pairs"))),
                    }
                }
            },
            "mittag-leffler" => {
                let l = one(arg)?;
                MittagLeffler::new(l)?;
                Ok(LimitKernelSpec::MittagLeffler(l))
            }
            "constant" => Ok(LimitKernelSpec::ConstantProfile(one(arg)?)),
            _ => Err(Error::Invalid(format!("unknown kernel spec '{s}'"))),
        }
    }
}

impl fmt::Display for LimitKernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitKernelSpec::GinibreBulk => write!(f, "ginibre-bulk"),
            LimitKernelSpec::HardEdge => write!(f, "hard-edge"),
            LimitKernelSpec::MittagLeffler(l) => write!(f, "mittag-leffler:{l}"),
            LimitKernelSpec::ConstantProfile(c) => write!(f, "constant:{c}"),
            LimitKernelSpec::FreeBoundary(set) => {
                let ends: Vec<String> = set.intervals().iter().flat_map(|i| [i.lo, i.hi]).map(|x| x.to_string()).collect();
                write!(f, "free-boundary:{}", ends.join(","))
            }
        }
    }
}

/// `log G(z,w) = zw̄ - |z|²/2 - |w|²/2`.
pub fn log_g(z: Cpx, w: Cpx) -> Cpx {
    z * w.conj() - 0.5 * (z.norm_sqr() + w.norm_sqr())
}

/// Evaluator for one [`LimitKernelSpec`], with per-spec tables built once.
#[derive(Debug, Clone)]
pub struct LimitKernel {
    spec: LimitKernelSpec,
    ml: Option<MittagLeffler>,
}

impl LimitKernel {
    pub fn new(spec: LimitKernelSpec) -> Result<Self> {
        let ml = match spec {
            LimitKernelSpec::MittagLeffler(l) => Some(MittagLeffler::new(l)?),
            _ => None,
        };
        Ok(LimitKernel { spec, ml })
    }

    pub fn spec(&self) -> &LimitKernelSpec {
        &self.spec
    }

    fn ml(&self) -> &MittagLeffler {
        self.ml.as_ref().expect("Mittag-Leffler table")
    }

    /// `K(z, w)`.
    pub fn eval(&self, z: Cpx, w: Cpx) -> Result<Cpx> {
        let lg = log_g(z, w);
        let zeta = z + w.conj();
        match &self.spec {
            LimitKernelSpec::GinibreBulk => Ok(lg.exp()),
            LimitKernelSpec::ConstantProfile(c) => Ok(*c * lg.exp()),
            LimitKernelSpec::FreeBoundary(set) => {
                let mut k = set.unbounded_above() * lg.exp();
                for (c, sign) in set.endpoints() {
                    // upper end contributes +F(ζ - hi); lower end -F(ζ - lo)
                    k += sign * exp_times_f(lg, zeta - c);
                }
                Ok(k)
            }
            LimitKernelSpec::HardEdge => {
                if z.re >= 0.0 || w.re >= 0.0 {
                    return Ok(Cpx::new(0.0, 0.0));
                }
                HardEdgeRule::get().exp_times_h(lg, zeta)
            }
            LimitKernelSpec::MittagLeffler(l) => {
                let m = self.ml().eval_scaled(z * w.conj())?;
                let e = m.scale - 0.5 * (z.norm_sqr().powf(*l) + w.norm_sqr().powf(*l));
                if e > 709.0 {
                    return Err(Error::Overflow { log_magnitude: e });
                }
                Ok(m.value * e.exp())
            }
        }
    }

    /// `Φ(s)` for real `s`, translation-invariant specs only.
    pub fn profile(&self, s: f64) -> Option<f64> {
        match &self.spec {
            LimitKernelSpec::GinibreBulk => Some(1.0),
            LimitKernelSpec::ConstantProfile(c) => Some(*c),
            LimitKernelSpec::FreeBoundary(set) => {
                Some(set.unbounded_above() + set.endpoints().map(|(c, sign)| sign * plasma_f_real(s - c)).sum::<f64>())
            }
            _ => None,
        }
    }

    /// `[Φ, Φ', Φ'']` at real `s` for the free-boundary and hard-edge
    /// profiles (`Φ = H` for the hard edge).
    pub fn profile_derivs(&self, s: f64) -> Result<Option<[f64; 3]>> {
        match &self.spec {
            LimitKernelSpec::GinibreBulk => Ok(Some([1.0, 0.0, 0.0])),
            LimitKernelSpec::ConstantProfile(c) => Ok(Some([*c, 0.0, 0.0])),
            LimitKernelSpec::FreeBoundary(set) => {
                let mut d = [self.profile(s).unwrap(), 0.0, 0.0];
                for (c, sign) in set.endpoints() {
                    // F' = -γ, F'' = sγ
                    let g = gauss_gamma_real(s - c);
                    d[1] -= sign * g;
                    d[2] += sign * (s - c) * g;
                }
                Ok(Some(d))
            }
            LimitKernelSpec::HardEdge => hard_edge_h_derivs(s).map(Some),
            LimitKernelSpec::MittagLeffler(_) => Ok(None),
        }
    }

    /// One-point function `R(z) = K(z, z)`.
    pub fn one_point(&self, z: Cpx) -> Result<f64> {
        match &self.spec {
            LimitKernelSpec::HardEdge => {
                if z.re >= 0.0 {
                    Ok(0.0)
                } else {
                    Ok(HardEdgeRule::get().h(Cpx::new(2.0 * z.re, 0.0))?.re)
                }
            }
            LimitKernelSpec::MittagLeffler(_) => Ok(self.eval(z, z)?.re),
            _ => Ok(self.profile(2.0 * z.re).unwrap()),
        }
    }

    /// Berezin kernel given `R(z)`; see [`LimitKernel::berezin`].
    pub(crate) fn berezin_with(&self, z: Cpx, r_z: f64, w: Cpx) -> Result<f64> {
        if let LimitKernelSpec::MittagLeffler(l) = self.spec {
            // |M(zw̄)|²/M(|z|²)·e^{-|w|^{2λ}} in log form
            let num = self.ml().eval_scaled(z * w.conj())?;
            let den = self.ml().eval_scaled(Cpx::new(z.norm_sqr(), 0.0))?;
            if num.value == Cpx::new(0.0, 0.0) {
                return Ok(0.0);
            }
            return Ok((2.0 * num.ln_abs() - den.ln_abs() - w.norm_sqr().powf(l)).exp());
        }
        Ok(self.eval(z, w)?.norm_sqr() / r_z)
    }

    fn checked_one_point(&self, z: Cpx) -> Result<f64> {
        let r = self.one_point(z)?;
        if !(r >= 1e-300) {
            return Err(Error::ZeroIntensity(r));
        }
        Ok(r)
    }

    /// `B(z, w) = |K(z,w)|²/K(z,z)`.
    pub fn berezin(&self, z: Cpx, w: Cpx) -> Result<f64> {
        let r = self.checked_one_point(z)?;
        self.berezin_with(z, r, w)
    }

    /// `R(z) - B(a, z)`: intensity at `z` given a particle at `a`.
    pub fn conditional_intensity(&self, a: Cpx, z: Cpx) -> Result<f64> {
        let r_a = self.checked_one_point(a)?;
        Ok(self.one_point(z)? - self.berezin_with(a, r_a, z)?)
    }
}

pub fn limit_kernel(spec: &LimitKernelSpec, z: Cpx, w: Cpx) -> Result<Cpx> {
    LimitKernel::new(spec.clone())?.eval(z, w)
}

pub fn one_point(spec: &LimitKernelSpec, z: Cpx) -> Result<f64> {
    LimitKernel::new(spec.clone())?.one_point(z)
}

pub fn berezin(spec: &LimitKernelSpec, z: Cpx, w: Cpx) -> Result<f64> {
    LimitKernel::new(spec.clone())?.berezin(z, w)
}

pub fn conditional_intensity(spec: &LimitKernelSpec, a: Cpx, z: Cpx) -> Result<f64> {
    LimitKernel::new(spec.clone())?.conditional_intensity(a, z)
}
