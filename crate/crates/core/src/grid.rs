//! Rectangular evaluation grids and their CSV/JSON serializations.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exec::Exec;
use crate::{Cpx, Error, Result};

/// One axis `a:b:step`, endpoints inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl AxisSpec {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Invalid(format!("bad grid axis {lo}:{hi}:{step}")));
        }
        Ok(AxisSpec { lo, hi, step })
    }

    pub fn len(&self) -> usize {
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at(&self, i: usize) -> f64 {
        self.lo + i as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.at(i))
    }
}

impl std::str::FromStr for AxisSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Invalid(format!("grid '{s}' is not of the form a:b:step")));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("'{t}' is not a number in grid '{s}'")));
        AxisSpec::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

/// Tensor grid with equal spacing on both axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub origin: Cpx,
    pub step: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// `[a, b]²` with spacing `step`.
    pub fn square(axis: AxisSpec) -> Self {
        GridSpec { origin: Cpx::new(axis.lo, axis.lo), step: axis.step, nx: axis.len(), ny: axis.len() }
    }

    pub fn rect(x: AxisSpec, y_lo: f64, y_hi: f64) -> Result<Self> {
        let y = AxisSpec::new(y_lo, y_hi, x.step)?;
        Ok(GridSpec { origin: Cpx::new(x.lo, y.lo), step: x.step, nx: x.len(), ny: y.len() })
    }

    /// Points along the real axis only.
    pub fn line(x: AxisSpec) -> Self {
        GridSpec { origin: Cpx::new(x.lo, 0.0), step: x.step, nx: x.len(), ny: 1 }
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point with flat index `k` (row-major, x fastest).
    pub fn point(&self, k: usize) -> Cpx {
        let (ix, iy) = (k % self.nx, k / self.nx);
        self.origin + Cpx::new(ix as f64 * self.step, iy as f64 * self.step)
    }

    pub fn points(&self) -> impl Iterator<Item = Cpx> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }
}

/// Complex values on a [`GridSpec`] with a free-form provenance record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelGrid {
    pub origin: Cpx,
    pub step: f64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<Cpx>,
    pub meta: Value,
}

impl KernelGrid {
    /// Evaluates `f` at every grid point; output order is independent of
    /// how the work is partitioned.
    pub fn fill(exec: Exec, spec: GridSpec, meta: Value, f: impl Fn(Cpx) -> Result<Cpx> + Sync) -> Result<Self> {
        let values = exec.map(spec.len(), |k| f(spec.point(k))).into_iter().collect::<Result<Vec<_>>>()?;
        Ok(KernelGrid { origin: spec.origin, step: spec.step, nx: spec.nx, ny: spec.ny, values, meta })
    }

    pub fn spec(&self) -> GridSpec {
        GridSpec { origin: self.origin, step: self.step, nx: self.nx, ny: self.ny }
    }

    /// Value at column `i`, row `j`.
    pub fn value(&self, i: usize, j: usize) -> Cpx {
        self.values[j * self.nx + i]
    }

    /// `max |v(i,j) - conj v(j,i)|` for square grids holding Gram matrices.
    pub fn hermitian_defect(&self) -> Option<f64> {
        if self.nx != self.ny {
            return None;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.nx {
            for j in 0..=i {
                worst = worst.max((self.value(i, j) - self.value(j, i).conj()).norm());
            }
        }
        Some(worst)
    }

    /// CSV with columns `re_z, im_z, re_val, im_val`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Invalid(format!("csv write failed: {e}"));
        w.write_record(["re_z", "im_z", "re_val", "im_val"]).map_err(io)?;
        for (k, v) in self.values.iter().enumerate() {
            let z = self.spec().point(k);
            w.write_record([fmt_f64(z.re), fmt_f64(z.im), fmt_f64(v.re), fmt_f64(v.im)]).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Invalid(format!("csv write failed: {e}")))?;
        Ok(())
    }

    /// JSON envelope: grid geometry and provenance, without the values.
    pub fn envelope(&self) -> Value {
        serde_json::json!({
            "origin": [self.origin.re, self.origin.im],
            "step": self.step,
            "nx": self.nx,
            "ny": self.ny,
            "columns": ["re_z", "im_z", "re_val", "im_val"],
            "meta": self.meta,
        })
    }
}

/// Fixed 17-significant-digit float formatting used by every CSV artifact.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
