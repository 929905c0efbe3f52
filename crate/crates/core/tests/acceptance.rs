//! One test per acceptance criterion. Each prints its report table, then asserts.

use latwave::verify::{self, VerifyOptions};

fn run(id: usize) {
    let report = verify::CRITERIA[id - 1](&VerifyOptions::default());
    print!("{report}");
    assert!(report.passed(), "criterion {id} failed:\n{report}");
}

#[test]
fn criterion_01_transform_equivalence() {
    run(1);
}

#[test]
fn criterion_02_discrete_energy_momentum() {
    run(2);
}

#[test]
fn criterion_03_product_rule() {
    run(3);
}

#[test]
fn criterion_04_total_difference() {
    run(4);
}

#[test]
fn criterion_05_beat_velocities() {
    run(5);
}

#[test]
fn criterion_06_plane_wave_certification() {
    run(6);
}

#[test]
fn criterion_07_mass_spectrum() {
    run(7);
}

#[test]
fn criterion_08_integral_lorentz_group() {
    run(8);
}

#[test]
fn criterion_09_evolution_fidelity() {
    run(9);
}

#[test]
fn criterion_10_continuum_limits() {
    run(10);
}

#[test]
fn printed_forms_fail_as_documented() {
    let opts = VerifyOptions {
        as_printed: verify::AsPrinted { s4: true, tan_dispersion: true },
        ..VerifyOptions::default()
    };
    let c6 = verify::criterion_6(&opts);
    let c8 = verify::criterion_8(&opts);
    print!("{c6}{c8}");
    assert!(!c6.passed());
    assert!(!c8.passed());
}
