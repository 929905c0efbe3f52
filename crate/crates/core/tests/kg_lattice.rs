use std::f64::consts::PI;

use latwave::dispersion::{self, DispersionForm};
use latwave::extended::{Extended, Wavelength};
use latwave::grid::GridSpec;
use latwave::kg_lattice::{self, KGParams};
use latwave::waves::{WaveForm, WaveSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn slice(vals: &[(f64, f64)]) -> Vec<Complex64> {
    vals.iter().map(|&(a, b)| Complex64::new(a, b)).collect()
}

fn data(nx: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), nx)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolution_is_linear(
        a0 in data(16), a1 in data(16), b0 in data(16), b1 in data(16),
        alpha in -2.0..2.0f64, beta in -2.0..2.0f64, m0 in 0.0..3.0f64,
    ) {
        let p = KGParams::new(m0, GridSpec::default()).unwrap();
        let (a0, a1, b0, b1) = (slice(&a0), slice(&a1), slice(&b0), slice(&b1));
        let mix = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
            x.iter().zip(y).map(|(u, v)| alpha * u + beta * v).collect()
        };
        let ea = kg_lattice::evolve([&a0, &a1], 16, &p).unwrap();
        let eb = kg_lattice::evolve([&b0, &b1], 16, &p).unwrap();
        let em = kg_lattice::evolve([&mix(&a0, &b0), &mix(&a1, &b1)], 16, &p).unwrap();
        for k in 0..em.values().len() {
            let want = alpha * ea.values()[k] + beta * eb.values()[k];
            prop_assert!((em.values()[k] - want).norm() <= 1e-11);
        }
    }

    #[test]
    fn evolution_commutes_with_shifts(a0 in data(12), a1 in data(12), shift in 1usize..12, m0 in 0.0..3.0f64) {
        let p = KGParams::new(m0, GridSpec::default()).unwrap();
        let (a0, a1) = (slice(&a0), slice(&a1));
        let roll = |v: &[Complex64]| -> Vec<Complex64> { (0..v.len()).map(|j| v[(j + v.len() - shift) % v.len()]).collect() };
        let plain = kg_lattice::evolve([&a0, &a1], 10, &p).unwrap();
        let moved = kg_lattice::evolve([&roll(&a0), &roll(&a1)], 10, &p).unwrap();
        for n in 0..12 {
            prop_assert_eq!(moved.row(n).to_vec(), roll(plain.row(n)));
        }
    }
}

#[test]
fn cayley_rest_mode_stays_unimodular_over_64_steps() {
    let g = GridSpec::default();
    let spec = WaveSpec::new(WaveForm::Cayley, 6, Wavelength::Infinite).unwrap();
    let m0 = dispersion::mass_from_rest_period(6, &g).unwrap();
    let (slab, dev) = kg_lattice::evolve_plane_wave(&spec, &KGParams::new(m0, g).unwrap(), 32, 64).unwrap();
    assert!(dev <= 1e-10, "{dev}");
    let drift = slab.values().iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    assert!(drift <= 1e-9, "{drift}");
}

#[test]
fn exponential_modes_evolve_exactly_when_m_divides_nx() {
    let g = GridSpec::default();
    for (n, m) in [(4, Wavelength::Sites(8)), (5, Wavelength::Sites(16)), (3, Wavelength::Sites(32)), (6, Wavelength::Infinite)] {
        let spec = WaveSpec::new(WaveForm::Exponential, n, m).unwrap();
        let m0 = dispersion::mass_for_mode(DispersionForm::Exponential, n, m, &g).unwrap();
        let (_, dev) = kg_lattice::evolve_plane_wave(&spec, &KGParams::new(m0, g).unwrap(), 32, 16).unwrap();
        assert!(dev <= 1e-10, "({n}, {m}): {dev}");
    }
}

#[test]
fn printed_tan_coefficient_leaves_a_residual() {
    let g = GridSpec::default();
    let spec = WaveSpec::new(WaveForm::Exponential, 4, Wavelength::Infinite).unwrap();
    let m0 = dispersion::mass_for_mode(DispersionForm::ExponentialAsPrinted, 4, Wavelength::Infinite, &g).unwrap();
    let r = kg_lattice::plane_wave_residual(&spec, &KGParams::new(m0, g).unwrap(), (32, 32)).unwrap();
    assert!(r > 1e-3, "{r}");
}

#[test]
fn calibration_matches_the_tangent_oracle() {
    for n in [3u32, 4, 16, 64, 256] {
        let x = PI / n as f64;
        let want = 4.0 * x.tan().powi(2);
        let got = kg_lattice::calibrate_time_coefficient(n, 32).unwrap().finite().unwrap();
        assert!((got - want).abs() <= 1e-9 * want, "N={n}: {got} vs {want}");
    }
    assert_eq!(kg_lattice::calibrate_time_coefficient(2, 32).unwrap(), Extended::Infinite);
    let scaled: Vec<f64> = [16u32, 64, 256]
        .iter()
        .map(|&n| kg_lattice::calibrate_time_coefficient(n, 32).unwrap().finite().unwrap() * (n as f64 / (2.0 * PI)).powi(2))
        .collect();
    assert!(scaled.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()));
    assert!((scaled[2] - 1.0).abs() <= 1e-3);
}

#[test]
fn finite_wavelength_cayley_waves_do_not_wrap() {
    // quasi-periodic in space, so periodic-boundary evolution cannot reproduce them
    let g = GridSpec::default();
    let spec = WaveSpec::new(WaveForm::Cayley, 3, Wavelength::Sites(6)).unwrap();
    let m0 = dispersion::mass_for_mode(DispersionForm::Cayley, 3, Wavelength::Sites(6), &g).unwrap();
    let (_, dev) = kg_lattice::evolve_plane_wave(&spec, &KGParams::new(m0, g).unwrap(), 36, 16).unwrap();
    assert!(dev > 1e-3, "{dev}");
    assert!((spec.eval(0, 6) - spec.eval(0, 0)).norm() > 1e-3);
}
