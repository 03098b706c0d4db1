//! Seeded Monte Carlo sampling of eigenvalue moduli.
//!
//! For a rotation-invariant determinantal ensemble the moduli `|ζ_j|` are
//! independent, with densities `∝ r^{2j+1} e^{-nQ(r)}`, `j = 0..n-1`. Every
//! observable here is radial, so angles are never drawn and no eigenvalue
//! solver is needed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exec::Exec;
use crate::finite_n::{droplet_radius, Potential, RescaleFrame, MAX_N};
use crate::grid::fmt_f64;
use crate::quadrature::GaussLegendre;
use crate::special::reg_lower_gamma;
use crate::{Error, Result};

/// Upper limit on `n · trials`.
pub const BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub pot: Potential,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(pot: Potential, n: usize, trials: usize, seed: u64) -> Result<Self> {
        let cfg = SampleConfig { pot, n, trials, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.pot.validate()?;
        if self.n == 0 || self.n > MAX_N {
            return Err(Error::Domain(format!("n must lie in 1..={MAX_N}, got {}", self.n)));
        }
        if self.trials == 0 {
            return Err(Error::Domain("trials must be positive".into()));
        }
        let requested = self.n as u128 * self.trials as u128;
        if requested > BUDGET {
            return Err(Error::BudgetExceeded { requested, limit: BUDGET });
        }
        Ok(())
    }

    /// Independent stream for one trial.
    pub fn rng(&self, trial: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(split_seed(self.seed, trial as u64))
    }
}

/// SplitMix64 finalizer applied to `seed + (trial+1)·φ`.
pub fn split_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gamma(shape: f64) -> Gamma<f64> {
    // shape > 0 is guaranteed by construction at every call site
    Gamma::new(shape, 1.0).expect("positive gamma shape")
}

/// One draw of the `n` moduli, sorted ascending.
pub fn sample_radii(cfg: &SampleConfig, trial: usize) -> Result<Vec<f64>> {
    let mut out = sample_radii_indexed(cfg, trial)?;
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// One draw of the moduli in index order: entry `j` has density
/// `∝ r^{2j+1} e^{-nQ(r)}`.
pub fn sample_radii_indexed(cfg: &SampleConfig, trial: usize) -> Result<Vec<f64>> {
    cfg.validate()?;
    let mut rng = cfg.rng(trial);
    Ok(radii_with(cfg.pot, cfg.n, &mut rng))
}

fn radii_with<R: Rng>(pot: Potential, n: usize, rng: &mut R) -> Vec<f64> {
    let nf = n as f64;
    match pot {
        Potential::Ginibre => (0..n).map(|j| (gamma(j as f64 + 1.0).sample(rng) / nf).sqrt()).collect(),
        Potential::Power(l) => (0..n)
            .map(|j| (gamma((j as f64 + 1.0) / l).sample(rng) / nf).powf(0.5 / l))
            .collect(),
        // Gamma(j+1)/n conditioned on < 1; acceptance P(j+1, n) ≥ ~1/2 for j < n.
        Potential::HardEdgeGinibre => (0..n)
            .map(|j| {
                let g = gamma(j as f64 + 1.0);
                loop {
                    let u = g.sample(rng) / nf;
                    if u < 1.0 {
                        break u.sqrt();
                    }
                }
            })
            .collect(),
    }
}

/// Inverse CDF of the `j`-th modulus: the `r` with `P(|ζ_j| ≤ r) = u`.
///
/// For the hard edge the CDF is `P(j+1, n r²)/P(j+1, n)`, which dominates
/// the Ginibre CDF, so the same `u` always gives a smaller radius; the
/// bracket is chosen to make that hold exactly in floating point too.
pub fn radius_from_uniform(pot: Potential, n: usize, j: usize, u: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("u must lie in [0, 1], got {u}")));
    }
    if j >= n {
        return Err(Error::Domain(format!("index {j} out of range for n = {n}")));
    }
    let s = j as u64 + 1;
    let nf = n as f64;
    let cdf = |v: f64| reg_lower_gamma(s, nf * v);
    let ginibre = || -> Result<f64> {
        let mut hi = 1.0;
        while cdf(hi)? < u {
            hi *= 2.0;
            if hi > 1e6 {
                return Ok(hi);
            }
        }
        bisect(&cdf, u, hi)
    };
    match pot {
        Potential::Ginibre => Ok(ginibre()?.sqrt()),
        Potential::HardEdgeGinibre => {
            let target = u * cdf(1.0)?;
            let hi = ginibre()?.min(1.0);
            Ok(bisect(&cdf, target, hi)?.sqrt())
        }
        Potential::Power(_) => Err(Error::Domain("inverse-CDF radii are implemented for Ginibre and hard edge".into())),
    }
}

/// Smallest representable `v ∈ [0, hi]` (to bisection resolution) with `cdf(v) ≥ target`.
fn bisect(cdf: &impl Fn(f64) -> Result<f64>, target: f64, hi: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0f64, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cdf(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// counts / (trials · bin width)
    DensityPerUnitLength,
    /// counts / (trials · dA-area of the bin's annulus in frame units)
    RescaledIntensity,
}

/// Window `[lo, hi)` split into `bins` equal bins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistSpec {
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
}

impl HistSpec {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        let h = HistSpec { lo, hi, bins };
        h.validate()?;
        Ok(h)
    }

    /// Window with the default boundary bin width 0.1.
    pub fn with_width(lo: f64, hi: f64, width: f64) -> Result<Self> {
        Self::new(lo, hi, ((hi - lo) / width).round().max(1.0) as usize)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) || self.bins == 0 {
            return Err(Error::Invalid(format!("bad histogram window [{}, {}) with {} bins", self.lo, self.hi, self.bins)));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.bins as f64
    }

    pub fn edge(&self, k: usize) -> f64 {
        self.lo + k as f64 * self.width()
    }

    pub fn center(&self, k: usize) -> f64 {
        self.lo + (k as f64 + 0.5) * self.width()
    }

    fn bin(&self, x: f64) -> Option<usize> {
        if !(x >= self.lo && x < self.hi) {
            return None;
        }
        Some((((x - self.lo) / self.width()) as usize).min(self.bins - 1))
    }
}

/// Histogram accumulated over independent trials. `sq_counts` holds the sum
/// over trials of squared per-trial counts, from which standard errors follow.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram1D {
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
    pub counts: Vec<u64>,
    pub sq_counts: Vec<u64>,
    pub trials: usize,
    pub normalization: Normalization,
    /// Per-bin divisor (besides `trials`) turning counts into estimates.
    pub measure: Vec<f64>,
    /// For radial intensities, the coordinate value `-c·r0` at which the
    /// frame radius vanishes; the area element of a bin is `∝ (x + offset)`.
    pub radial_offset: Option<f64>,
}

impl Histogram1D {
    pub fn spec(&self) -> HistSpec {
        HistSpec { lo: self.lo, hi: self.hi, bins: self.bins }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn center(&self, k: usize) -> f64 {
        self.spec().center(k)
    }

    pub fn estimate(&self, k: usize) -> f64 {
        self.counts[k] as f64 / (self.trials as f64 * self.measure[k])
    }

    /// Standard error of [`Self::estimate`] from the across-trial variance.
    pub fn stderr(&self, k: usize) -> f64 {
        let t = self.trials as f64;
        let mean = self.counts[k] as f64 / t;
        let var = if self.trials > 1 {
            ((self.sq_counts[k] as f64 - t * mean * mean) / (t - 1.0)).max(0.0)
        } else {
            0.0
        };
        (var / t).sqrt() / self.measure[k]
    }

    /// Rows `(bin_center, estimate, stderr)`.
    pub fn rows(&self) -> Vec<(f64, f64, f64)> {
        (0..self.bins).map(|k| (self.center(k), self.estimate(k), self.stderr(k))).collect()
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Invalid(format!("csv write failed: {e}"));
        w.write_record(["bin_center", "estimate", "stderr"]).map_err(io)?;
        for (c, e, s) in self.rows() {
            w.write_record([fmt_f64(c), fmt_f64(e), fmt_f64(s)]).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Invalid(format!("csv flush failed: {e}")))?;
        Ok(())
    }

    /// Average of `target` over bin `k` in the measure the estimate uses
    /// (area element for radial intensities, length otherwise), so that it
    /// is directly comparable with [`Self::estimate`].
    pub fn bin_target(&self, k: usize, target: impl Fn(f64) -> f64) -> f64 {
        let spec = self.spec();
        let (a, b) = (spec.edge(k), spec.edge(k + 1));
        let weight = |x: f64| self.radial_offset.map_or(1.0, |o| (x + o).max(0.0));
        let gl = GaussLegendre::new(12);
        let num = gl.integrate(a, b, |x| target(x) * weight(x));
        let den = gl.integrate(a, b, weight);
        if den > 0.0 {
            num / den
        } else {
            target(spec.center(k))
        }
    }

    /// Largest `|estimate - target| - (k_sigma·stderr + bias)` over bins, with
    /// bin-averaged targets; a non-positive value means every bin is inside
    /// the envelope.
    pub fn envelope_excess(&self, target: impl Fn(f64) -> f64, k_sigma: f64, bias: f64) -> f64 {
        (0..self.bins)
            .map(|k| (self.estimate(k) - self.bin_target(k, &target)).abs() - (k_sigma * self.stderr(k) + bias))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn summary(&self, target: Option<&dyn Fn(f64) -> f64>) -> Value {
        let mut v = json!({
            "lo": self.lo, "hi": self.hi, "bins": self.bins, "trials": self.trials,
            "total_count": self.total(), "normalization": self.normalization,
        });
        if let Some(t) = target {
            let dev = (0..self.bins).map(|k| (self.estimate(k) - self.bin_target(k, t)).abs()).fold(0.0, f64::max);
            let z = (0..self.bins)
                .filter(|&k| self.stderr(k) > 0.0)
                .map(|k| (self.estimate(k) - self.bin_target(k, t)).abs() / self.stderr(k))
                .fold(0.0, f64::max);
            v["max_abs_deviation"] = json!(dev);
            v["max_z_score"] = json!(z);
        }
        v
    }
}

/// Shared accumulation loop: `coord` maps a radius to the histogram
/// coordinate; the per-trial count vectors and their squares are summed.
fn accumulate(exec: Exec, cfg: &SampleConfig, spec: HistSpec, coord: impl Fn(f64) -> f64 + Sync + Send) -> Result<(Vec<u64>, Vec<u64>)> {
    cfg.validate()?;
    spec.validate()?;
    let bins = spec.bins;
    let acc = exec.fold_sum(cfg.trials, 2 * bins, |trial, acc| {
        let mut rng = cfg.rng(trial);
        let mut local = vec![0u64; bins];
        for r in radii_with(cfg.pot, cfg.n, &mut rng) {
            if let Some(k) = spec.bin(coord(r)) {
                local[k] += 1;
            }
        }
        for (k, c) in local.into_iter().enumerate() {
            acc[k] += c;
            acc[bins + k] += c * c;
        }
    });
    let (c, s) = acc.split_at(bins);
    Ok((c.to_vec(), s.to_vec()))
}

/// Histogram of the raw moduli, normalized as a density per unit length.
pub fn radius_histogram(exec: Exec, cfg: &SampleConfig, spec: HistSpec) -> Result<Histogram1D> {
    let (counts, sq_counts) = accumulate(exec, cfg, spec, |r| r)?;
    Ok(Histogram1D {
        lo: spec.lo,
        hi: spec.hi,
        bins: spec.bins,
        counts,
        sq_counts,
        trials: cfg.trials,
        normalization: Normalization::DensityPerUnitLength,
        measure: vec![spec.width(); spec.bins],
        radial_offset: None,
    })
}

/// Bin areas (w.r.t. `dA = d²z/π`) of the annuli `{edge_k ≤ s < edge_{k+1}}`
/// for `s = c·(r - r0)`, measured in local units `z = c·ζ`.
fn annulus_measure(spec: HistSpec, zoom: f64, r0: f64) -> Vec<f64> {
    (0..spec.bins)
        .map(|k| {
            let a = (r0 * zoom + spec.edge(k)).max(0.0);
            let b = (r0 * zoom + spec.edge(k + 1)).max(0.0);
            (b - a) * (b + a)
        })
        .collect()
}

/// Empirical rescaled one-point function along the outward normal at a
/// boundary point: bins of `x = zoom·(r - r_droplet)`, each count divided by
/// the `dA`-area of its annulus in frame units, so the estimate converges to
/// `R_n(x)` (hence to `F(2x)` for Ginibre).
pub fn boundary_profile(exec: Exec, cfg: &SampleConfig, frame: &RescaleFrame, spec: HistSpec) -> Result<Histogram1D> {
    let r0 = droplet_radius(cfg.pot);
    if (frame.p.norm() - r0).abs() > 1e-12 * r0.max(1.0) {
        return Err(Error::Domain(format!("frame centre {} is not on the droplet boundary |ζ| = {r0}", frame.p)));
    }
    if frame.n != cfg.n {
        return Err(Error::Invalid(format!("frame built for n = {} but sampling n = {}", frame.n, cfg.n)));
    }
    let zoom = frame.zoom;
    let (counts, sq_counts) = accumulate(exec, cfg, spec, |r| zoom * (r - r0))?;
    Ok(Histogram1D {
        lo: spec.lo,
        hi: spec.hi,
        bins: spec.bins,
        counts,
        sq_counts,
        trials: cfg.trials,
        normalization: Normalization::RescaledIntensity,
        measure: annulus_measure(spec, zoom, r0),
        radial_offset: Some(zoom * r0),
    })
}

/// Radial intensity at the singular origin of `Q = |ζ|^{2λ}` in the variable
/// `s = n^{1/(2λ)} r`; converges to `M_λ(s²) e^{-s^{2λ}}`.
pub fn bulk_singularity_profile(exec: Exec, cfg: &SampleConfig, spec: HistSpec) -> Result<Histogram1D> {
    let lambda = match cfg.pot {
        Potential::Power(l) if l >= 1.0 => l,
        Potential::Ginibre => 1.0,
        _ => return Err(Error::Domain("singularity profile needs a power potential with λ ≥ 1".into())),
    };
    if spec.lo < 0.0 {
        return Err(Error::Invalid("singularity window must start at s ≥ 0".into()));
    }
    let zoom = (cfg.n as f64).powf(0.5 / lambda);
    let (counts, sq_counts) = accumulate(exec, cfg, spec, |r| zoom * r)?;
    Ok(Histogram1D {
        lo: spec.lo,
        hi: spec.hi,
        bins: spec.bins,
        counts,
        sq_counts,
        trials: cfg.trials,
        normalization: Normalization::RescaledIntensity,
        measure: annulus_measure(spec, 1.0, 0.0),
        radial_offset: Some(0.0),
    })
}
