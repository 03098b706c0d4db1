mod common;

use common::*;
use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use plasma_core::grid::{AxisSpec, GridSpec};
use plasma_core::limits::*;
use plasma_core::special::{hard_edge_h, mittag_leffler_m, IntervalR};
use plasma_core::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn fb() -> LimitKernelSpec {
    LimitKernelSpec::free_boundary(0.0)
}

fn f(x: f64) -> f64 {
    normal_tail(x)
}

fn q() -> QuadratureConfig {
    QuadratureConfig::default()
}

// ---- spec parsing -------------------------------------------------------------

#[test]
fn spec_round_trip() {
    for s in ["ginibre-bulk", "free-boundary:-inf,0", "free-boundary:-2,-1,1,2", "hard-edge", "mittag-leffler:2", "constant:0.5"] {
        let spec: LimitKernelSpec = s.parse().unwrap();
        assert_eq!(spec.to_string().parse::<LimitKernelSpec>().unwrap(), spec, "{s}");
    }
    assert_eq!("free-boundary".parse::<LimitKernelSpec>().unwrap(), fb());
    assert!("free-boundary:1,0".parse::<LimitKernelSpec>().is_err());
    assert!("mittag-leffler:0.5".parse::<LimitKernelSpec>().and_then(LimitKernel::new).is_err());
    assert!("nope".parse::<LimitKernelSpec>().is_err());
}

#[test]
fn interval_sets() {
    let two = IntervalSet::new(vec![IntervalR::new(1.0, 2.0).unwrap(), IntervalR::new(-2.0, -1.0).unwrap()]).unwrap();
    assert!(!two.is_connected());
    let mut ends = two.finite_endpoints();
    ends.sort_by(f64::total_cmp);
    assert_eq!(ends, vec![-2.0, -1.0, 1.0, 2.0]);
    assert!(IntervalSet::new(vec![IntervalR::new(0.0, 2.0).unwrap(), IntervalR::new(1.0, 3.0).unwrap()]).is_err());
}

// ---- kernels --------------------------------------------------------------------

#[test]
fn limit_kernel_examples() {
    for &z in &[c(0.0, 0.0), c(1.3, -2.0), c(-4.0, 0.5)] {
        assert!((limit_kernel(&LimitKernelSpec::GinibreBulk, z, z).unwrap() - 1.0).norm() < 1e-15);
    }
    assert!((limit_kernel(&fb(), c(0.0, 0.0), c(0.0, 0.0)).unwrap() - 0.5).norm() < 1e-15);
    let (z, w) = (c(0.4, 0.9), c(-0.3, 0.2));
    let ml1 = limit_kernel(&LimitKernelSpec::MittagLeffler(1.0), z, w).unwrap().norm();
    let g = (-(z - w).norm_sqr() / 2.0).exp();
    assert!((ml1 - g).abs() < 1e-14);
}

#[test]
fn free_boundary_diagonal_is_f_of_2x() {
    let k = LimitKernel::new(fb()).unwrap();
    for i in -12..=12 {
        let z = c(0.25 * i as f64, 0.37 * i as f64);
        let r = k.eval(z, z).unwrap();
        assert!((r.re - f(2.0 * z.re)).abs() < 1e-14 && r.im.abs() < 1e-15, "{z}");
    }
}

#[test]
fn hard_edge_kernel_support_and_diagonal() {
    let k = LimitKernel::new(LimitKernelSpec::HardEdge).unwrap();
    assert_eq!(k.eval(c(0.1, 0.0), c(-1.0, 0.0)).unwrap(), c(0.0, 0.0));
    assert_eq!(k.eval(c(-1.0, 0.0), c(0.0, 0.3)).unwrap(), c(0.0, 0.0));
    for &x in &[-0.1, -0.8, -2.5] {
        let r = k.one_point(c(x, 0.7)).unwrap();
        assert!((r - hard_edge_h(c(2.0 * x, 0.0)).unwrap().re).abs() < 1e-11);
        assert!(r < 2.0);
    }
}

#[test]
fn constant_profile_kernel() {
    let k = LimitKernel::new(LimitKernelSpec::ConstantProfile(0.5)).unwrap();
    let z = c(0.3, -0.2);
    assert!((k.one_point(z).unwrap() - 0.5).abs() < 1e-15);
}

// ---- Berezin and conditional intensity ---------------------------------------

#[test]
fn berezin_examples() {
    let (z, w) = (c(0.3, 0.1), c(-1.0, 0.8));
    let b = berezin(&LimitKernelSpec::GinibreBulk, z, w).unwrap();
    assert!((b - (-(z - w).norm_sqr()).exp()).abs() < 1e-15);
    assert!((berezin(&fb(), c(0.0, 0.0), c(0.0, 0.0)).unwrap() - 0.5).abs() < 1e-15);
    let m = |x: f64| mittag_leffler_m(2.0, c(x, 0.0)).unwrap().re;
    let want = m(0.5).powi(2) / m(1.0) * (-(0.5f64.powi(4))).exp();
    let got = berezin(&LimitKernelSpec::MittagLeffler(2.0), c(1.0, 0.0), c(0.5, 0.0)).unwrap();
    assert!((got - want).abs() < 1e-13 * want, "{got} vs {want}");
}

#[test]
fn berezin_zero_intensity() {
    let e = berezin(&LimitKernelSpec::HardEdge, c(0.5, 0.0), c(-1.0, 0.0)).unwrap_err();
    assert!(matches!(e, Error::ZeroIntensity(_)));
}

#[test]
fn conditional_intensity_examples() {
    assert!(conditional_intensity(&fb(), c(0.0, 0.0), c(0.0, 0.0)).unwrap().abs() < 1e-12);
    let z = c(1.0, 1.0);
    let got = conditional_intensity(&LimitKernelSpec::GinibreBulk, c(0.0, 0.0), z).unwrap();
    assert!((got - (1.0 - (-2.0f64).exp())).abs() < 1e-14);
    let got = conditional_intensity(&fb(), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    let want = f(2.0) - (-1.0f64).exp() * f(1.0).powi(2) / 0.5;
    assert!((got - want).abs() < 1e-14);
}

// ---- Cauchy transform and mass-one ---------------------------------------------

#[test]
fn cauchy_transform_examples() {
    for &z in &[c(0.0, 0.0), c(1.2, -0.7)] {
        assert!(cauchy_transform(&LimitKernelSpec::GinibreBulk, z, q()).unwrap().norm() < 1e-14);
    }
    assert!(cauchy_transform(&fb(), c(-3.0, 0.0), q()).unwrap().norm() <= 0.05);
    let z = c(0.3, 0.1);
    let a = cauchy_transform(&fb(), z, q()).unwrap();
    let b = cauchy_transform(&fb(), z, q().doubled()).unwrap();
    assert!((a - b).norm() < 1e-9);
    for &z in &[c(0.0, 0.0), c(1.5, 0.0), c(-1.0, 2.0)] {
        assert!(cauchy_transform(&fb(), z, q()).unwrap().norm() <= 3.0);
    }
}

#[test]
fn cauchy_transform_against_brute_force_polar() {
    // C(z) = (1/π)∫_0^∞∫_0^{2π} -B(z, z + re^{iφ}) e^{-iφ} dφ dr. Off the real
    // direction B decays only like 1/Im(w)², concentrated near φ = ±π/2, so the
    // angular rule is split there and r runs to ∞ via r = R/s.
    let z = c(0.4, 0.0);
    let k = LimitKernel::new(fb()).unwrap();
    let inner = |r: f64| -> C {
        let g = |phi: f64| {
            let e = C::from_polar(1.0, phi);
            -k.berezin(z, z + e * r).unwrap() * e.conj() / PI
        };
        let h = PI / 2.0;
        (0..4).map(|q| tanh_sinh_c(g, q as f64 * h, (q + 1) as f64 * h)).sum()
    };
    let near = tanh_sinh_c(inner, 0.0, 9.0);
    let far = tanh_sinh_c(|s| inner(9.0 / s) * (9.0 / (s * s)), 0.0, 1.0);
    let oracle = near + far;
    let got = cauchy_transform(&fb(), z, q()).unwrap();
    assert!((got - oracle).norm() < 1e-9, "{got} vs {oracle} (truncated at 9: {near})");
}

#[test]
fn mass_one_examples() {
    for &z in &[c(0.0, 0.0), c(2.0, -1.0)] {
        assert!(mass_one_residual(&LimitKernelSpec::GinibreBulk, z, q()).unwrap().abs() < 1e-12);
    }
    for &z in &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 1.0)] {
        assert!(mass_one_residual(&fb(), z, q()).unwrap().abs() <= 1e-6, "{z}");
    }
    let r = mass_one_residual(&LimitKernelSpec::ConstantProfile(0.5), c(0.2, 0.3), q()).unwrap();
    assert!((r + 0.5).abs() < 1e-9, "{r}");
}

#[test]
fn polarized_mass_one() {
    let r = polarized_mass_one_residual(&fb(), c(0.2, 0.0), c(-0.3, 0.4), q()).unwrap();
    assert!(r.norm() <= 1e-6);
    let r = polarized_mass_one_residual(&LimitKernelSpec::HardEdge, c(-0.5, 0.0), c(-1.0, -0.5), q()).unwrap();
    assert!(r.norm() <= 1e-4);
    // z = w reduces to the mass-one residual
    let z = c(0.7, -0.2);
    let p = polarized_mass_one_residual(&fb(), z, z, q()).unwrap();
    let m = mass_one_residual(&fb(), z, q()).unwrap();
    let k = LimitKernel::new(fb()).unwrap().one_point(z).unwrap();
    assert!((p.re - k * m).abs() < 1e-10 && p.im.abs() < 1e-10);
    assert!(polarized_mass_one_residual(&LimitKernelSpec::GinibreBulk, z, z, q()).is_err());
}

#[test]
fn quadrature_config_parsing() {
    let qc: QuadratureConfig = "8,96,128".parse().unwrap();
    assert_eq!(qc, QuadratureConfig::default());
    assert!("8,96".parse::<QuadratureConfig>().is_err());
    assert!("-1,96,128".parse::<QuadratureConfig>().and_then(|q| q.validate().map(|_| q)).is_err());
}

// ---- Laplacian and Ward -------------------------------------------------------

#[test]
fn laplacian_examples() {
    assert_eq!(laplacian_log_r(&LimitKernelSpec::GinibreBulk, c(0.5, 0.5)).unwrap(), 0.0);
    let v = laplacian_log_r(&fb(), c(0.0, 0.0)).unwrap();
    assert!((v + 2.0 / PI).abs() < 1e-14);
    // analytic vs finite differences of log F(2x), Δ = ¼∂²_x here
    let h = 1e-3;
    let lr = |x: f64| f(2.0 * x).ln();
    for i in 0..=12 {
        let x = -2.0 + 0.25 * i as f64;
        let fd = (-lr(x - 2.0 * h) + 16.0 * lr(x - h) - 30.0 * lr(x) + 16.0 * lr(x + h) - lr(x + 2.0 * h)) / (12.0 * h * h) / 4.0;
        let an = laplacian_log_r(&fb(), c(x, 0.3)).unwrap();
        assert!((an - fd).abs() < 1e-6, "{x}: {an} vs {fd}");
    }
    // hard edge uses H derivatives
    let lh = |x: f64| hard_edge_h(c(2.0 * x, 0.0)).unwrap().re.ln();
    let x = -0.7;
    let fd = (-lh(x - 2.0 * h) + 16.0 * lh(x - h) - 30.0 * lh(x) + 16.0 * lh(x + h) - lh(x + 2.0 * h)) / (12.0 * h * h) / 4.0;
    let an = laplacian_log_r(&LimitKernelSpec::HardEdge, c(x, 0.0)).unwrap();
    assert!((an - fd).abs() < 1e-6);
}

#[test]
fn ward_small_grids() {
    let grid = GridSpec { origin: c(-0.5, -0.5), step: 1.0, nx: 2, ny: 2 };
    let bulk = ward_residual(&LimitKernelSpec::GinibreBulk, grid, q(), 1e-3).unwrap();
    assert!(bulk.sup_norm <= 1e-8);
    let free = ward_residual(&fb(), grid, q(), 1e-3).unwrap();
    assert!(free.sup_norm <= 5e-4, "{}", free.sup_norm);
    let deep = GridSpec { origin: c(-3.5, 0.0), step: 0.5, nx: 2, ny: 1 };
    let fd = ward_residual(&fb(), deep, q(), 1e-3).unwrap();
    let bd = ward_residual(&LimitKernelSpec::GinibreBulk, deep, q(), 1e-3).unwrap();
    for (a, b) in fd.residuals.iter().zip(&bd.residuals) {
        assert!((a - b).abs() <= 1e-3);
    }
}

#[test]
fn ward_hard_edge_grid_guard() {
    let grid = GridSpec { origin: c(-0.5, 0.0), step: 0.5, nx: 2, ny: 1 };
    assert!(matches!(ward_residual(&LimitKernelSpec::HardEdge, grid, q(), 1e-3), Err(Error::Domain(_))));
}

#[test]
fn ward_disconnected_fails() {
    let spec: LimitKernelSpec = "free-boundary:-2,-1,1,2".parse().unwrap();
    let grid = GridSpec { origin: c(0.0, 0.0), step: 1.0, nx: 1, ny: 1 };
    let r = ward_residual(&spec, grid, q(), 1e-3).unwrap();
    assert!(r.sup_norm > 0.1, "{}", r.sup_norm);
}

// ---- series and the 1/8 formula ------------------------------------------------

#[test]
fn series_examples() {
    assert!(mass_one_series_residual(-6.0, 80).unwrap().abs() < 1e-10);
    assert!((mass_one_series_residual(0.0, 0).unwrap() - 0.25).abs() < 1e-16);
    assert!(hermite_identity_residual(-6.0, 40).unwrap().abs() < 1e-9);
    assert!(mass_one_series_residual(0.0, MAX_TERMS_PLUS).is_err());
}

const MAX_TERMS_PLUS: usize = 201;

#[test]
fn truncated_series_converge_to_resummed_values() {
    // the truncation error is γ²Σ_{m≥N} ĥ_m²/(m+1); doubling N shrinks it
    for &x in &[-1.0, 0.0, 0.6] {
        let e80 = mass_one_series_residual(x, 80).unwrap() - mass_one_series_resummed(x).unwrap();
        let e160 = mass_one_series_residual(x, 160).unwrap() - mass_one_series_resummed(x).unwrap();
        assert!(e160.abs() < e80.abs(), "{x}: {e80} {e160}");
    }
    for &s in &[-3.0, 0.0, 1.2, 4.0] {
        assert!(hermite_identity_resummed(s).unwrap().abs() < 1e-13);
    }
}

#[test]
fn telescoping_partial_sum() {
    // partial sum = 1 - ĥ_N², with ĥ_N² = h_N²/N! from the plain recursion
    let (s, n) = (1.2, 80usize);
    let mut lnfact = 0.0;
    let (mut a, mut b) = (1.0f64, s);
    for k in 2..=n {
        let next = s * b - (k - 1) as f64 * a;
        a = b;
        b = next;
    }
    for k in 1..=n {
        lnfact += (k as f64).ln();
    }
    let hn2 = (2.0 * b.abs().ln() - lnfact).exp();
    assert!((telescoping_residual(s, n).unwrap() + hn2).abs() < 1e-12);
}

#[test]
fn eighth_formula_values() {
    assert!((eighth_formula(1e-12).unwrap() - 0.125).abs() < 1e-10);
    // ∫ t(F(2t - a) - 1_{t<0}) dt = 1/8 + a²/8 by oracle quadrature
    let a = 0.5;
    let right = tanh_sinh(|t| t * f(2.0 * t - a), 0.0, 20.0);
    let left = tanh_sinh(|t| t * (f(2.0 * t - a) - 1.0), -20.0, 0.0);
    let got = eighth_formula_shifted(a, 1e-12).unwrap();
    assert!((got - (right + left)).abs() < 1e-10);
    assert!((got - (0.125 + a * a / 8.0)).abs() < 1e-10);
    // parity: ∫_{-L}^{L} t(F(2t) + F(-2t) - 1) dt = 0
    let parity = tanh_sinh(|t| t * (f(2.0 * t) + f(-2.0 * t) - 1.0), -5.0, 5.0);
    assert!(parity.abs() < 1e-14);
}

// ---- tail bounds, positivity, inequalities ---------------------------------------

#[test]
fn tail_bounds() {
    let r = tail_bounds_report(&fb(), AxisSpec::new(-3.0, 3.0, 0.25).unwrap()).unwrap();
    let ext: Vec<f64> = [1.0, 2.0, 3.0].iter().map(|&x| f(2.0 * x) * (2.0 * x * x).exp()).collect();
    assert!(ext.iter().all(|&v| v <= 0.2));
    assert!((f(-6.0) - 1.0).abs() * (0.4f64 * 9.0).exp() <= 1.0);
    assert!(r.params["sup_interior"].as_f64().unwrap() <= 1.0);
    assert!((r.params["sup_exterior"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert!(tail_bounds_report(&LimitKernelSpec::HardEdge, AxisSpec::new(0.0, 1.0, 0.5).unwrap()).is_err());
}

fn random_points(rng: &mut ChaCha8Rng, k: usize) -> Vec<C> {
    (0..k).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect()
}

#[test]
fn gram_positivity_free_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let pts = random_points(&mut rng, 8);
        assert!(gram_min_eig(&fb(), &pts, false).unwrap() >= -1e-9);
        assert!(gram_min_eig(&fb(), &pts, true).unwrap() >= -1e-9);
    }
    let z = c(0.4, -0.3);
    let single = gram_min_eig(&fb(), &[z], false).unwrap();
    assert!((single - one_point(&fb(), z).unwrap()).abs() < 1e-14);
    assert!(gram_min_eig(&LimitKernelSpec::HardEdge, &[c(-1.0, 0.0)], true).is_err());
    assert!(gram_min_eig(&fb(), &vec![z; 33], false).is_err());
}

#[test]
fn gram_min_eig_matches_nalgebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let k = LimitKernel::new(fb()).unwrap();
    let pts = random_points(&mut rng, 10);
    let n = pts.len();
    let m: Vec<C> = pts.iter().flat_map(|&a| pts.iter().map(move |&b| (a, b))).map(|(a, b)| k.eval(a, b).unwrap()).collect();
    let a = DMatrix::from_fn(n, n, |i, j| m[i * n + j]);
    let want = a.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min);
    assert!((gram_min_eig_of(&m, n).unwrap() - want).abs() < 1e-12);
}

#[test]
fn inequality_margins() {
    let grid = GridSpec { origin: c(-5.0, -2.0), step: 0.25, nx: 41, ny: 17 };
    let rep = inequality_suite(grid, 200, 3).unwrap();
    assert!(rep.min_margin() >= -1e-10, "{}", rep.min_margin());
    assert!(rep.sharp_plasma.abs() <= 1e-6);
    assert!(rep.sharp_hard_edge.abs() <= 1e-6);
    assert!(rep.sharp_ecu.abs() <= 1e-6);
}

// ---- properties --------------------------------------------------------------------

fn pt(r: f64) -> impl Strategy<Value = C> {
    (-r..r, -r..r).prop_map(|(a, b)| C::new(a, b))
}

fn specs() -> Vec<LimitKernelSpec> {
    vec![
        LimitKernelSpec::GinibreBulk,
        fb(),
        "free-boundary:-2,-1,1,2".parse().unwrap(),
        LimitKernelSpec::HardEdge,
        LimitKernelSpec::MittagLeffler(2.0),
        LimitKernelSpec::MittagLeffler(3.5),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermitian_and_real_diagonal(z in pt(3.0), w in pt(3.0)) {
        for spec in specs() {
            let k = LimitKernel::new(spec.clone()).unwrap();
            let a = k.eval(z, w).unwrap();
            let b = k.eval(w, z).unwrap();
            prop_assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()), "{}", spec);
            let d = k.eval(z, z).unwrap();
            prop_assert!(d.im.abs() <= 1e-14 && d.re >= 0.0, "{}", spec);
        }
    }

    #[test]
    fn intensity_bounds(z in pt(3.0)) {
        prop_assert!(one_point(&LimitKernelSpec::GinibreBulk, z).unwrap() <= 1.0 + 1e-9);
        prop_assert!(one_point(&fb(), z).unwrap() <= 1.0 + 1e-9);
        let h = one_point(&LimitKernelSpec::HardEdge, z).unwrap();
        prop_assert!((0.0..2.0).contains(&h));
    }

    #[test]
    fn berezin_bounds(z in pt(2.5), w in pt(2.5)) {
        for spec in [LimitKernelSpec::GinibreBulk, fb(), LimitKernelSpec::MittagLeffler(2.0)] {
            let k = LimitKernel::new(spec.clone()).unwrap();
            let b = k.berezin(z, w).unwrap();
            prop_assert!(b >= 0.0);
            prop_assert!(b <= k.one_point(w).unwrap() + 1e-9, "{}", spec);
            prop_assert!((k.berezin(z, z).unwrap() - k.one_point(z).unwrap()).abs() <= 1e-12);
            prop_assert!(k.conditional_intensity(z, w).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn bulk_conditional_profile(z in pt(3.0)) {
        let v = conditional_intensity(&LimitKernelSpec::GinibreBulk, c(0.0, 0.0), z).unwrap();
        prop_assert!((v - (1.0 - (-z.norm_sqr()).exp())).abs() <= 1e-10);
    }
}
