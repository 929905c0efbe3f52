use std::f64::consts::PI;

use latwave::dispersion::{self, DispersionForm};
use latwave::extended::{Extended, Wavelength};
use latwave::grid::GridSpec;
use latwave::kg_lattice::{self, KGParams};
use latwave::kinematics::LatticeStep;
use latwave::waves::WaveSpec;

fn modes(sol: &[dispersion::DispersionSolution]) -> Vec<(u32, Wavelength)> {
    sol.iter().map(|s| (s.period, s.wavelength)).collect()
}

#[test]
fn massless_scan_is_the_diagonal() {
    let g = GridSpec::default();
    for form in [DispersionForm::Cayley, DispersionForm::Exponential, DispersionForm::Continuum] {
        let got = modes(&dispersion::solve_modes(0.0, form, 40, 40, 1e-12, &g).unwrap());
        let diagonal: Vec<_> = (2..=40).map(|n| (n, Wavelength::Sites(n))).collect();
        assert_eq!(got, diagonal, "{form:?}");
    }
}

#[test]
fn cayley_scan_contains_three_six() {
    let m0 = 2.0 * PI / 12f64.sqrt();
    let got = modes(&dispersion::solve_modes(m0, DispersionForm::Cayley, 64, 64, 1e-9, &GridSpec::default()).unwrap());
    assert!(got.contains(&(3, Wavelength::Sites(6))), "{got:?}");
}

#[test]
fn enlarging_bounds_gives_a_superset() {
    let g = GridSpec::default();
    let m0 = 2.0 * PI / 12f64.sqrt();
    let small = modes(&dispersion::solve_modes(m0, DispersionForm::Cayley, 20, 20, 1e-6, &g).unwrap());
    let large = modes(&dispersion::solve_modes(m0, DispersionForm::Cayley, 80, 80, 1e-6, &g).unwrap());
    assert!(!small.is_empty());
    assert!(small.iter().all(|m| large.contains(m)));
    let again = modes(&dispersion::solve_modes(m0, DispersionForm::Cayley, 20, 20, 1e-6, &g).unwrap());
    assert_eq!(small, again);
}

#[test]
fn rest_modes_match_the_mass_spectrum() {
    let g = GridSpec { tau: 0.5, c: 2.0, hbar: 0.75, ..GridSpec::default() };
    for n in 2..60u32 {
        let m0 = dispersion::mass_from_rest_period(n, &g).unwrap();
        let sol = dispersion::solve_modes(m0, DispersionForm::Cayley, 60, 10, 1e-12, &g).unwrap();
        let rest = sol.iter().find(|s| s.period == n && s.wavelength == Wavelength::Infinite).expect("rest mode");
        let solved = dispersion::mass_for_mode(DispersionForm::Cayley, n, Wavelength::Infinite, &g).unwrap();
        assert!((solved - rest.rest_mass).abs() <= 1e-13 * rest.rest_mass);
    }
}

#[test]
fn mass_spectrum_by_hand() {
    let g = GridSpec { tau: 2.0, c: 3.0, ..GridSpec::default() };
    let m = dispersion::mass_from_rest_period(6, &g).unwrap();
    assert!((m - PI / 54.0).abs() <= 1e-16);
    assert_eq!(dispersion::mass_from_rest_period(1, &GridSpec::default()).unwrap(), 2.0 * PI);
}

#[test]
fn every_scanned_mode_solves_the_lattice_equation() {
    let g = GridSpec::default();
    let cases = [
        (DispersionForm::Cayley, 2.0 * PI / 12f64.sqrt()),
        (DispersionForm::Cayley, dispersion::mass_for_mode(DispersionForm::Cayley, 5, Wavelength::Sites(7), &g).unwrap()),
        (DispersionForm::Exponential, 2.0),
        (DispersionForm::Exponential, dispersion::mass_for_mode(DispersionForm::Exponential, 4, Wavelength::Sites(8), &g).unwrap()),
        (DispersionForm::Cayley, 0.0),
        (DispersionForm::Exponential, 0.0),
    ];
    let mut checked = 0;
    for (form, m0) in cases {
        for s in dispersion::solve_modes(m0, form, 40, 40, 1e-12, &g).unwrap() {
            let spec = WaveSpec::new(form.wave_form().unwrap(), s.period, s.wavelength).unwrap();
            let r = kg_lattice::plane_wave_residual(&spec, &KGParams::new(m0, g).unwrap(), (32, 32)).unwrap();
            assert!(r <= 1e-10, "{form:?} ({}, {}) residual {r}", s.period, s.wavelength);
            checked += 1;
        }
    }
    assert!(checked > 80, "{checked}");
}

#[test]
fn tan_relation_approaches_continuum_at_second_order() {
    let g = GridSpec::default();
    let s = [4.0f64, 8.0, 16.0, 32.0];
    let gaps: Vec<f64> = s
        .iter()
        .map(|&k| dispersion::continuum_discrepancy(3 * k as u32, Wavelength::Sites(5 * k as u32), &g))
        .collect();
    for w in gaps.windows(2) {
        let ratio = w[1] / w[0];
        assert!((ratio - 0.25).abs() <= 0.02, "{ratio}");
    }
}

#[test]
fn quantization_examples() {
    let g = GridSpec::default();
    let q = dispersion::quantization_check(LatticeStep::new(1, [0, 0, 0]), 2.0 * PI, &g, 1e-12).unwrap();
    assert_eq!(q.period_real, 1.0);
    assert_eq!(q.period, Some(1));
    assert_eq!(q.wavelength_real, Extended::Infinite);
    assert_eq!(q.wavelength, None);
    let q = dispersion::quantization_check(LatticeStep::new(1, [0, 0, 0]), 2f64.sqrt() * 2.0 * PI, &g, 1e-6).unwrap();
    assert_eq!((q.period, q.wavelength), (None, None));
    assert!(dispersion::quantization_check(LatticeStep::new(1, [1, 0, 0]), 1.0, &g, 1e-6).is_err());
}

#[test]
fn printed_tan_coefficient_misses_the_rest_mode() {
    let g = GridSpec::default();
    let r = dispersion::dispersion_residual(DispersionForm::ExponentialAsPrinted, 4, Wavelength::Infinite, 2.0, &g);
    assert!((r - (-3.0)).abs() <= 1e-12, "{r}");
    assert!(dispersion::dispersion_residual(DispersionForm::Exponential, 4, Wavelength::Infinite, 2.0, &g).abs() <= 1e-15);
}
