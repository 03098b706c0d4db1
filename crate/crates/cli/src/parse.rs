//! Parsers for the compact flag syntaxes (`a:b:step`, `re,im`, `random:k`, …).

use num_complex::Complex64 as C;
use plasma_core::grid::AxisSpec;
use plasma_core::limits::QuadratureConfig;

use crate::UsageError;

type R<T> = Result<T, UsageError>;

fn num<T: std::str::FromStr>(s: &str, what: &str) -> R<T> {
    s.trim().parse().map_err(|_| UsageError(format!("'{s}' is not a valid {what}")))
}

pub fn axis(s: &str) -> R<AxisSpec> {
    s.parse().map_err(|e: plasma_core::Error| UsageError(format!("--grid '{s}': {e}")))
}

/// `r_max,n_radial,n_angular`; band and tail node counts keep their defaults.
pub fn quad(s: Option<&str>) -> R<QuadratureConfig> {
    let mut q = QuadratureConfig::default();
    if let Some(s) = s {
        let parts: Vec<&str> = s.split(',').collect();
        let [r, nr, na] = parts.as_slice() else {
            return Err(UsageError(format!("--quad expects r_max,n_radial,n_angular, got '{s}'")));
        };
        q.r_max = num(r, "radius")?;
        q.n_radial = num(nr, "node count")?;
        q.n_angular = num(na, "node count")?;
        q.validate().map_err(|e| UsageError(e.to_string()))?;
    }
    Ok(q)
}

pub fn complex(s: &str) -> R<C> {
    match s.split_once(',') {
        Some((re, im)) => Ok(C::new(num(re, "number")?, num(im, "number")?)),
        None => Ok(C::new(num(s, "number")?, 0.0)),
    }
}

/// `random:k`.
pub fn random_points(s: &str) -> R<usize> {
    match s.split_once(':') {
        Some(("random", k)) => {
            let k: usize = num(k, "point count")?;
            if k == 0 {
                return Err(UsageError("--points needs at least one point".into()));
            }
            Ok(k)
        }
        _ => Err(UsageError(format!("--points expects random:k, got '{s}'"))),
    }
}

pub fn n_list(s: &str) -> R<Vec<usize>> {
    let ns: Vec<usize> = s.split(',').map(|t| num(t, "matrix size")).collect::<R<_>>()?;
    if ns.is_empty() || ns.contains(&0) {
        return Err(UsageError(format!("--n expects positive sizes, got '{s}'")));
    }
    Ok(ns)
}

/// `lo:hi`.
pub fn window(s: &str) -> R<(f64, f64)> {
    match s.split_once(':') {
        Some((lo, hi)) => Ok((num(lo, "number")?, num(hi, "number")?)),
        None => Err(UsageError(format!("--window expects lo:hi, got '{s}'"))),
    }
}

pub fn core<T: std::str::FromStr<Err = plasma_core::Error>>(s: &str, flag: &str) -> R<T> {
    s.parse().map_err(|e: plasma_core::Error| UsageError(format!("{flag} '{s}': {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_syntaxes() {
        assert_eq!(axis("-3:3:0.1").unwrap().len(), 61);
        assert!(axis("3:-3:0.1").is_err());
        let q = quad(Some("9,64,96")).unwrap();
        assert_eq!((q.r_max, q.n_radial, q.n_angular), (9.0, 64, 96));
        assert!(quad(Some("9,64")).is_err());
        assert_eq!(complex("1.5,-2").unwrap(), C::new(1.5, -2.0));
        assert_eq!(random_points("random:8").unwrap(), 8);
        assert!(random_points("grid:8").is_err());
        assert_eq!(n_list("64,256").unwrap(), vec![64, 256]);
        assert!(n_list("64,0").is_err());
        assert_eq!(window("-3:1").unwrap(), (-3.0, 1.0));
    }
}
