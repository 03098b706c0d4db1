//! Rescaling frames `z = e^{-iθ}·zoom·(ζ - p)`, `zoom = √(nΔQ(p))`, and the
//! kernels pulled back through them.

use serde::{Deserialize, Serialize};

use super::{droplet_radius, FiniteKernel, Potential};
use crate::{Cpx, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameKind {
    Bulk,
    Boundary,
    Singularity,
}

impl std::str::FromStr for FrameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bulk" => Ok(FrameKind::Bulk),
            "boundary" => Ok(FrameKind::Boundary),
            "singularity" => Ok(FrameKind::Singularity),
            _ => Err(Error::Invalid(format!("unknown frame '{s}' (bulk|boundary|singularity)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RescaleFrame {
    pub p: Cpx,
    pub theta: f64,
    pub n: usize,
    pub zoom: f64,
}

impl RescaleFrame {
    /// Regular frame at `p` with zoom `√(nΔQ(p))`.
    pub fn new(pot: Potential, p: Cpx, theta: f64, n: usize) -> Result<Self> {
        pot.validate()?;
        let lap = pot.laplacian_q(p);
        if lap <= 0.0 {
            return Err(Error::Domain(format!("ΔQ vanishes at {p}; use a singular frame")));
        }
        Self::with_zoom(p, theta, n, (n as f64 * lap).sqrt())
    }

    pub fn with_zoom(p: Cpx, theta: f64, n: usize, zoom: f64) -> Result<Self> {
        if n == 0 || !(zoom > 0.0 && zoom.is_finite()) {
            return Err(Error::Domain(format!("frame needs n > 0 and zoom > 0 (n = {n}, zoom = {zoom})")));
        }
        Ok(RescaleFrame { p, theta, n, zoom })
    }

    /// Boundary point at angle `alpha`, rotated so that `Re z > 0` points outward.
    pub fn boundary(pot: Potential, n: usize, alpha: f64) -> Result<Self> {
        let p = Cpx::from_polar(droplet_radius(pot), alpha);
        Self::new(pot, p, alpha, n)
    }

    /// Origin with the regular zoom.
    pub fn bulk(pot: Potential, n: usize) -> Result<Self> {
        Self::new(pot, Cpx::new(0.0, 0.0), 0.0, n)
    }

    /// Origin of `Q = |ζ|^{2λ}` with zoom `n^{1/(2λ)}`.
    pub fn singular(pot: Potential, n: usize) -> Result<Self> {
        match pot {
            Potential::Power(l) => {
                pot.validate()?;
                Self::with_zoom(Cpx::new(0.0, 0.0), 0.0, n, (n as f64).powf(0.5 / l))
            }
            _ => Err(Error::Domain("singular frames need a power potential".into())),
        }
    }

    pub fn of_kind(pot: Potential, kind: FrameKind, n: usize) -> Result<Self> {
        match kind {
            FrameKind::Bulk => Self::bulk(pot, n),
            FrameKind::Boundary => Self::boundary(pot, n, 0.0),
            FrameKind::Singularity => Self::singular(pot, n),
        }
    }

    /// `ζ ↦ z`.
    pub fn to_local(&self, zeta: Cpx) -> Cpx {
        Cpx::from_polar(self.zoom, -self.theta) * (zeta - self.p)
    }

    /// `z ↦ ζ`.
    pub fn to_global(&self, z: Cpx) -> Cpx {
        self.p + Cpx::from_polar(1.0 / self.zoom, self.theta) * z
    }

    /// Conjugate of the Ginibre cocycle in this frame,
    /// `exp(-i (n/zoom) Im(p̄ e^{iθ}(z - w)))`; reduces to [`cocycle_fix`]
    /// for `p = 1`, `θ = 0`.
    pub fn cocycle_fix(&self, z: Cpx, w: Cpx) -> Cpx {
        let rot = self.p.conj() * Cpx::from_polar(1.0, self.theta);
        Cpx::from_polar(1.0, -(self.n as f64 / self.zoom) * (rot * (z - w)).im)
    }
}

/// `K_n(z, w) = K_n(ζ, η)/zoom²` in frame coordinates.
pub fn rescaled_kernel(kernel: &FiniteKernel, frame: &RescaleFrame, z: Cpx, w: Cpx) -> Cpx {
    kernel.eval(frame.to_global(z), frame.to_global(w)) / (frame.zoom * frame.zoom)
}

/// `conj c_n(z, w) = e^{-i√n Im(z - w)}`.
pub fn cocycle_fix(n: usize, z: Cpx, w: Cpx) -> Cpx {
    Cpx::from_polar(1.0, -(n as f64).sqrt() * (z - w).im)
}

/// Ginibre bulk approximation `K_n^#(ζ,η) = n e^{nζη̄ - n|ζ|²/2 - n|η|²/2}`
/// pulled back through `frame`.
pub fn bulk_approx_kernel(frame: &RescaleFrame, z: Cpx, w: Cpx) -> Cpx {
    let (zeta, eta) = (frame.to_global(z), frame.to_global(w));
    let nf = frame.n as f64;
    // ζη̄ - |ζ|²/2 - |η|²/2 = -|ζ - η|²/2 + i Im(ζη̄)
    let log = nf * Cpx::new(-0.5 * (zeta - eta).norm_sqr(), (zeta * eta.conj()).im);
    nf * log.exp() / (frame.zoom * frame.zoom)
}

/// `Ψ_n = K_n / K_n^#` in frame coordinates (Ginibre only).
pub fn psi_n(kernel: &FiniteKernel, frame: &RescaleFrame, z: Cpx, w: Cpx) -> Result<Cpx> {
    if kernel.potential() != Potential::Ginibre && kernel.potential() != Potential::Power(1.0) {
        return Err(Error::Domain("bulk approximation is implemented for the Ginibre potential only".into()));
    }
    let b = bulk_approx_kernel(frame, z, w);
    if b.norm() < 1e-300 {
        return Err(Error::DivisionNearZero(b.norm()));
    }
    Ok(rescaled_kernel(kernel, frame, z, w) / b)
}
