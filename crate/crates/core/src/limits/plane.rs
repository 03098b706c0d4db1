//! Plane integrals `∫ f(w) dA(w)`, `dA = d²w/π`, centred at a point `z`.
//!
//! A disc of radius `R_in` around `z` is integrated in polar coordinates
//! (Gauss–Legendre in `r`, trapezoid in `φ`). For the Cauchy kernel
//! `1/(z - w) = -e^{-iφ}/r` the Jacobian `r` cancels the singularity, so the
//! integrand stays bounded. For the hard edge the disc is clipped at
//! `Re w = 0`: the angle range is split where the clip line meets the circle
//! and each arc gets Gauss–Legendre nodes with radial limit `d/cos φ` on the
//! clipped arc.
//!
//! Outside the disc, kernels built from `F` or `H` are not Gaussian-small:
//! along a vertical line `Re w = c/2` near an edge `c`, `B(z, w)` decays only
//! like `|Im w|^{-2}`. Those vertical bands are integrated separately in
//! Cartesian coordinates with `Im w - Im z = ±t0(h)/u`, `u ∈ (0, 1]`, which
//! turns the algebraic tail into a smooth integrand on a finite interval.

use serde::{Deserialize, Serialize};

use super::{LimitKernel, LimitKernelSpec};
use crate::quadrature::GaussLegendre;
use crate::{Cpx, Error, Result};

/// Half-width of the vertical tail band around `c/2` for each edge `c`.
const BAND_HALF_WIDTH: f64 = 6.0;
/// Minimum gap between the band edges and the disc boundary.
const BAND_MARGIN: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Radius of the polar disc (raised automatically to contain the bands).
    pub r_max: f64,
    pub n_radial: usize,
    pub n_angular: usize,
    /// Gauss–Legendre nodes across a tail band.
    #[serde(default = "default_band")]
    pub n_band: usize,
    /// Gauss–Legendre nodes along each half of a tail band.
    #[serde(default = "default_tail")]
    pub n_tail: usize,
}

fn default_band() -> usize {
    64
}

fn default_tail() -> usize {
    48
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { r_max: 8.0, n_radial: 96, n_angular: 128, n_band: default_band(), n_tail: default_tail() }
    }
}

impl QuadratureConfig {
    /// Every node count doubled.
    pub fn doubled(&self) -> Self {
        QuadratureConfig {
            r_max: self.r_max,
            n_radial: 2 * self.n_radial,
            n_angular: 2 * self.n_angular,
            n_band: 2 * self.n_band,
            n_tail: 2 * self.n_tail,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_max > 0.0) || self.n_radial < 2 || self.n_angular < 4 || self.n_band < 2 || self.n_tail < 2 {
            return Err(Error::Invalid(format!("bad quadrature configuration {self:?}")));
        }
        Ok(())
    }
}

impl std::str::FromStr for QuadratureConfig {
    type Err = Error;

    /// `r_max,n_radial,n_angular[,n_band,n_tail]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("quadrature '{s}' is not r_max,nr,na[,nb,nt]"));
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 && parts.len() != 5 {
            return Err(bad());
        }
        let mut q = QuadratureConfig { r_max: parts[0].parse().map_err(|_| bad())?, ..Default::default() };
        q.n_radial = parts[1].parse().map_err(|_| bad())?;
        q.n_angular = parts[2].parse().map_err(|_| bad())?;
        if parts.len() == 5 {
            q.n_band = parts[3].parse().map_err(|_| bad())?;
            q.n_tail = parts[4].parse().map_err(|_| bad())?;
        }
        q.validate()?;
        Ok(q)
    }
}

/// Integration domain of a kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Region {
    /// Integrate over `Re w < clip` only.
    pub clip: Option<f64>,
    /// Vertical band `lo ≤ Re w ≤ hi` with algebraic decay.
    pub band: Option<(f64, f64)>,
}

impl Region {
    pub(crate) fn of(spec: &LimitKernelSpec) -> Self {
        match spec {
            LimitKernelSpec::HardEdge => Region { clip: Some(0.0), band: Some((-BAND_HALF_WIDTH, 0.0)) },
            LimitKernelSpec::FreeBoundary(set) => {
                let ends = set.finite_endpoints();
                let band = if ends.is_empty() {
                    None
                } else {
                    let lo = ends.iter().cloned().fold(f64::INFINITY, f64::min);
                    let hi = ends.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    Some((0.5 * lo - BAND_HALF_WIDTH, 0.5 * hi + BAND_HALF_WIDTH))
                };
                Region { clip: None, band }
            }
            _ => Region { clip: None, band: None },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Weight {
    /// `∫ f dA`.
    Mass,
    /// `∫ f/(z - w) dA`.
    Cauchy,
}

/// Nodes for one [`QuadratureConfig`].
#[derive(Debug, Clone)]
pub(crate) struct PlaneRule {
    cfg: QuadratureConfig,
    radial: GaussLegendre,
    arc: GaussLegendre,
    arc_half: GaussLegendre,
    band: GaussLegendre,
    tail: GaussLegendre,
}

impl PlaneRule {
    pub(crate) fn new(cfg: QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(PlaneRule {
            cfg,
            radial: GaussLegendre::new(cfg.n_radial),
            arc: GaussLegendre::new(cfg.n_angular),
            arc_half: GaussLegendre::new((cfg.n_angular / 2).max(2)),
            band: GaussLegendre::new(cfg.n_band),
            tail: GaussLegendre::new(cfg.n_tail),
        })
    }

    fn disc_radius(&self, z: Cpx, region: &Region) -> f64 {
        let mut r = self.cfg.r_max;
        if let Some((lo, hi)) = region.band {
            r = r.max((z.re - lo).abs().max((z.re - hi).abs()) + BAND_MARGIN);
        }
        r
    }

    /// `∫_{region} f(w)·k(w) dA(w)` with `k = 1` or `1/(z - w)`.
    pub(crate) fn integrate(
        &self,
        z: Cpx,
        region: &Region,
        weight: Weight,
        f: &dyn Fn(Cpx) -> Result<Cpx>,
    ) -> Result<Cpx> {
        let r_in = self.disc_radius(z, region);
        let mut total = self.disc(z, r_in, region, weight, f)?;
        if let Some((lo, hi)) = region.band {
            let hi = region.clip.map_or(hi, |c| hi.min(c));
            if hi > lo {
                total += self.band(z, r_in, lo, hi, weight, f)?;
            }
        }
        Ok(total)
    }

    /// Radial integral along one ray; returns `∫_0^ρ f·(r or -e^{-iφ}) dr`.
    fn ray(&self, z: Cpx, phi: f64, rho: f64, weight: Weight, f: &dyn Fn(Cpx) -> Result<Cpx>) -> Result<Cpx> {
        let dir = Cpx::from_polar(1.0, phi);
        let mut acc = Cpx::new(0.0, 0.0);
        for (r, wr) in self.radial.mapped(0.0, rho) {
            let v = f(z + dir * r)?;
            acc += match weight {
                Weight::Mass => v * (r * wr),
                Weight::Cauchy => -v * dir.conj() * wr,
            };
        }
        Ok(acc)
    }

    fn disc(&self, z: Cpx, r_in: f64, region: &Region, weight: Weight, f: &dyn Fn(Cpx) -> Result<Cpx>) -> Result<Cpx> {
        let inv_pi = std::f64::consts::FRAC_1_PI;
        let d = region.clip.map(|c| c - z.re);
        match d {
            Some(d) if d <= 0.0 => Ok(Cpx::new(0.0, 0.0)),
            Some(d) if d < r_in => {
                let phi_c = (d / r_in).acos();
                let mut acc = Cpx::new(0.0, 0.0);
                // unclipped arc [φ_c, 2π - φ_c]
                for (phi, wp) in self.arc.mapped(phi_c, 2.0 * std::f64::consts::PI - phi_c) {
                    acc += self.ray(z, phi, r_in, weight, f)? * wp;
                }
                // clipped arc [-φ_c, φ_c], radial limit d/cos φ
                for (phi, wp) in self.arc_half.mapped(-phi_c, phi_c) {
                    acc += self.ray(z, phi, d / phi.cos(), weight, f)? * wp;
                }
                Ok(acc * inv_pi)
            }
            _ => {
                let n = self.cfg.n_angular;
                let h = 2.0 * std::f64::consts::PI / n as f64;
                let mut acc = Cpx::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.ray(z, k as f64 * h, r_in, weight, f)?;
                }
                Ok(acc * (h * inv_pi))
            }
        }
    }

    fn band(&self, z: Cpx, r_in: f64, lo: f64, hi: f64, weight: Weight, f: &dyn Fn(Cpx) -> Result<Cpx>) -> Result<Cpx> {
        let mut acc = Cpx::new(0.0, 0.0);
        for (h, wh) in self.band.mapped(lo, hi) {
            let dx = h - z.re;
            let t0 = (r_in * r_in - dx * dx).sqrt();
            for (u, wu) in self.tail.mapped(0.0, 1.0) {
                let t = t0 / u;
                let jac = t0 / (u * u);
                for sign in [1.0, -1.0] {
                    let w = Cpx::new(h, z.im + sign * t);
                    let v = f(w)?;
                    let v = match weight {
                        Weight::Mass => v,
                        Weight::Cauchy => v / (z - w),
                    };
                    acc += v * (wh * wu * jac);
                }
            }
        }
        Ok(acc * std::f64::consts::FRAC_1_PI)
    }
}

/// Plane integrals for one kernel and quadrature.
#[derive(Debug, Clone)]
pub(crate) struct Integrator {
    pub kernel: LimitKernel,
    pub rule: PlaneRule,
    pub region: Region,
}

impl Integrator {
    pub(crate) fn new(spec: &LimitKernelSpec, quad: QuadratureConfig) -> Result<Self> {
        Ok(Integrator { kernel: LimitKernel::new(spec.clone())?, rule: PlaneRule::new(quad)?, region: Region::of(spec) })
    }

    fn berezin_integral(&self, z: Cpx, weight: Weight) -> Result<Cpx> {
        let r_z = self.kernel.one_point(z)?;
        if !(r_z >= 1e-300) {
            return Err(Error::ZeroIntensity(r_z));
        }
        let f = |w: Cpx| -> Result<Cpx> {
            if self.region.clip.is_some_and(|c| w.re >= c) {
                return Ok(Cpx::new(0.0, 0.0));
            }
            Ok(Cpx::new(self.kernel.berezin_with(z, r_z, w)?, 0.0))
        };
        self.rule.integrate(z, &self.region, weight, &f)
    }

    pub(crate) fn cauchy(&self, z: Cpx) -> Result<Cpx> {
        self.berezin_integral(z, Weight::Cauchy)
    }

    pub(crate) fn mass(&self, z: Cpx) -> Result<f64> {
        Ok(self.berezin_integral(z, Weight::Mass)?.re)
    }

    pub(crate) fn polarized(&self, z: Cpx, w: Cpx) -> Result<Cpx> {
        let k = &self.kernel;
        let f = |t: Cpx| -> Result<Cpx> { Ok(k.eval(t, z)? * k.eval(w, t)?) };
        let centre = 0.5 * (z + w);
        Ok(self.rule.integrate(centre, &self.region, Weight::Mass, &f)? - k.eval(w, z)?)
    }
}

/// `C(z) = ∫ B(z,w)/(z - w) dA(w)`.
pub fn cauchy_transform(spec: &LimitKernelSpec, z: Cpx, quad: QuadratureConfig) -> Result<Cpx> {
    Integrator::new(spec, quad)?.cauchy(z)
}

/// `∫ B(z,w) dA(w) - 1`.
pub fn mass_one_residual(spec: &LimitKernelSpec, z: Cpx, quad: QuadratureConfig) -> Result<f64> {
    Ok(Integrator::new(spec, quad)?.mass(z)? - 1.0)
}

/// `∫ K(t,z) K(w,t) dA(t) - K(w,z)`.
pub fn polarized_mass_one_residual(spec: &LimitKernelSpec, z: Cpx, w: Cpx, quad: QuadratureConfig) -> Result<Cpx> {
    match spec {
        LimitKernelSpec::FreeBoundary(_) | LimitKernelSpec::HardEdge => {}
        _ => return Err(Error::Domain(format!("polarized mass-one is defined for free-boundary and hard-edge kernels, not {spec}"))),
    }
    Integrator::new(spec, quad)?.polarized(z, w)
}
