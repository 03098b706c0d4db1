//! Pass/fail thresholds used by `verify` and `converge`. Bump
//! [`VERSION`] whenever a value changes.

use plasma_core::limits::LimitKernelSpec;

pub const VERSION: &str = "1";

pub struct Threshold {
    pub key: &'static str,
    pub value: f64,
    pub meaning: &'static str,
}

pub const TABLE: &[Threshold] = &[
    Threshold { key: "ward.ginibre-bulk", value: 1e-8, meaning: "sup |Ward residual|" },
    Threshold { key: "ward.free-boundary", value: 5e-4, meaning: "sup |Ward residual|" },
    Threshold { key: "ward.hard-edge", value: 1e-3, meaning: "sup |Ward residual|, Re z < 0" },
    Threshold { key: "ward.mittag-leffler", value: 5e-3, meaning: "sup |type-λ Ward residual|, z ≠ 0" },
    Threshold { key: "mass-one.ginibre-bulk", value: 1e-6, meaning: "sup |∫B dA - 1|" },
    Threshold { key: "mass-one.free-boundary", value: 1e-6, meaning: "sup |∫B dA - 1|" },
    Threshold { key: "mass-one.hard-edge", value: 1e-4, meaning: "sup |∫B dA - 1|, Re z < 0" },
    Threshold { key: "mass-one.mittag-leffler", value: 1e-4, meaning: "sup |∫B dA - 1|" },
    Threshold { key: "polarized.free-boundary", value: 1e-6, meaning: "sup |polarized mass-one residual|" },
    Threshold { key: "polarized.other", value: 1e-4, meaning: "sup |polarized mass-one residual|" },
    Threshold { key: "series", value: 1e-10, meaning: "sup |series residual| over the grid" },
    Threshold { key: "eighth", value: 1e-8, meaning: "|∫x(R - 1_{x<0}) dx - (1 + a²)/8|" },
    Threshold { key: "inequalities.margin", value: 1e-10, meaning: "min margin ≥ -value" },
    Threshold { key: "inequalities.sharpness", value: 1e-6, meaning: "|margin| at sharpness points" },
    Threshold { key: "positivity", value: 1e-9, meaning: "min Gram eigenvalue ≥ -value" },
    Threshold { key: "converge.bulk", value: 1e-3, meaning: "error at the largest n" },
    Threshold { key: "converge.boundary", value: 0.03, meaning: "error at the largest n" },
    Threshold { key: "converge.rate-factor", value: 2.0, meaning: "observed/expected n^(-1/2) ratio within this factor" },
];

pub fn get(key: &str) -> f64 {
    TABLE
        .iter()
        .find(|t| t.key == key)
        .map(|t| t.value)
        .unwrap_or_else(|| panic!("no threshold named {key}"))
}

/// Threshold key suffix for a kernel spec.
pub fn family(spec: &LimitKernelSpec) -> &'static str {
    match spec {
        LimitKernelSpec::GinibreBulk => "ginibre-bulk",
        LimitKernelSpec::HardEdge => "hard-edge",
        LimitKernelSpec::MittagLeffler(_) => "mittag-leffler",
        LimitKernelSpec::FreeBoundary(_) | LimitKernelSpec::ConstantProfile(_) => "free-boundary",
    }
}

pub fn render() -> String {
    let mut out = format!("thresholds version {VERSION}\n");
    for t in TABLE {
        out.push_str(&format!("{:<26} {:<8e} {}\n", t.key, t.value, t.meaning));
    }
    out
}
