use latwave::grid::GridSpec;
use latwave::kinematics::{self, printed, LatticeStep, ParticleState, Vec3};
use proptest::prelude::*;

fn norm(v: &Vec3) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn velocity(c: f64) -> impl Strategy<Value = Vec3> {
    (0.0..0.9f64, 0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(move |(s, th, ph)| {
        [s * c * th.sin() * ph.cos(), s * c * th.sin() * ph.sin(), s * c * th.cos()]
    })
}

proptest! {
    #[test]
    fn waves_and_particles_transform_alike(
        m0 in 0.01..5.0f64,
        p in prop::array::uniform3(-4.0..4.0f64),
        hbar in 0.1..3.0f64,
        v in velocity(1.0),
    ) {
        prop_assume!(norm(&p) > 1e-3);
        let s = ParticleState::on_shell(m0, p, 1.0).unwrap();
        let sp = kinematics::transform_particle(&s, v, 1.0).unwrap();
        let (w, k) = kinematics::transform_wave(s.energy / hbar, p.map(|x| x / hbar), v, 1.0).unwrap();
        let scale = w.abs().max(norm(&k));
        prop_assert!((w - sp.energy / hbar).abs() / scale <= 1e-12);
        for i in 0..3 {
            prop_assert!((k[i] - sp.momentum[i] / hbar).abs() / scale <= 1e-12);
        }
    }

    #[test]
    fn mass_shell_survives_five_boosts(
        m0 in 0.1..3.0f64,
        p in prop::array::uniform3(-3.0..3.0f64),
        boosts in prop::collection::vec(velocity(2.0), 1..=5),
    ) {
        let c = 2.0;
        let mut s = ParticleState::on_shell(m0, p, c).unwrap();
        for v in boosts {
            s = kinematics::transform_particle(&s, v, c).unwrap();
        }
        prop_assert!(s.mass_shell_defect(c).abs() <= 1e-10);
    }

    #[test]
    fn printed_wave_law_matches_matrix_boost(
        m0 in 0.0..3.0f64,
        p in prop::array::uniform3(-3.0..3.0f64),
        v in velocity(1.5),
    ) {
        prop_assume!(norm(&p) > 1e-2 && norm(&v) > 1e-6);
        let c = 1.5;
        let s = ParticleState::on_shell(m0, p, c).unwrap();
        let (w, k) = (s.energy, s.momentum);
        let pw = printed::wave(w, k, v, c).unwrap();
        let (mw, mk) = kinematics::transform_wave(w, k, v, c).unwrap();
        let scale = mw.abs().max(norm(&mk));
        prop_assert!((pw.w - mw).abs() / scale <= 1e-10);
        for i in 0..3 {
            prop_assert!((pw.k[i] - mk[i]).abs() / scale <= 1e-10);
        }
        prop_assert!((pw.k_magnitude - norm(&mk)).abs() / scale <= 1e-10);
    }

    #[test]
    fn printed_particle_law_matches_matrix_boost(
        m0 in 0.1..3.0f64,
        p in prop::array::uniform3(-3.0..3.0f64),
        v in velocity(1.0),
    ) {
        prop_assume!(norm(&p) > 1e-2 && norm(&v) > 1e-6);
        let s = ParticleState::on_shell(m0, p, 1.0).unwrap();
        let pp = printed::particle(&s, v, 1.0).unwrap();
        let m = kinematics::transform_particle(&s, v, 1.0).unwrap();
        let scale = m.energy;
        prop_assert!((pp.energy - m.energy).abs() / scale <= 1e-10);
        for i in 0..3 {
            prop_assert!((pp.momentum[i] - m.momentum[i]).abs() / scale <= 1e-10);
        }
        prop_assert!((pp.momentum_magnitude - norm(&m.momentum)).abs() / scale <= 1e-10);
    }

    #[test]
    fn collinear_boosts_add_relativistically(a in -0.9..0.9f64, b in -0.9..0.9f64) {
        let ab = kinematics::mat_mul(
            &kinematics::boost_matrix([a, 0.0, 0.0], 1.0).unwrap(),
            &kinematics::boost_matrix([b, 0.0, 0.0], 1.0).unwrap(),
        );
        let sum = kinematics::boost_matrix([(a + b) / (1.0 + a * b), 0.0, 0.0], 1.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((ab[i][j] - sum[i][j]).abs() <= 1e-12 * sum[0][0]);
            }
        }
    }
}

#[test]
fn printed_laws_in_parallel_and_perpendicular_configurations() {
    let s = ParticleState::on_shell(1.0, [0.75, 0.0, 0.0], 1.0).unwrap();
    for v in [[0.6, 0.0, 0.0], [-0.3, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, -0.8]] {
        let pw = printed::wave(s.energy, s.momentum, v, 1.0).unwrap();
        let (w, k) = kinematics::transform_wave(s.energy, s.momentum, v, 1.0).unwrap();
        assert!(rel(pw.w, w) <= 1e-12);
        assert!(rel(pw.k_magnitude, norm(&k)) <= 1e-12);
    }
    let pw = printed::wave(1.25, [0.75, 0.0, 0.0], [0.6, 0.0, 0.0], 1.0).unwrap();
    assert!((pw.w - 1.0).abs() <= 1e-12 && pw.k_magnitude.abs() <= 1e-7);
}

#[test]
fn lattice_steps_give_exact_velocities() {
    let grid = GridSpec { tau: 0.5, eps: 0.25, c: 1.0, ..GridSpec::default() };
    let mut checked = 0;
    for dn in 1..=20u64 {
        for dj in -(dn as i64)..=(dn as i64) {
            let step = LatticeStep::new(dn, [dj, dj / 2, -dj / 3]);
            let Ok(lk) = kinematics::discrete_energy_momentum(1.3, step, &grid) else { continue };
            assert!(kinematics::velocity_matches_exactly(step, &grid));
            let u = lk.state.velocity;
            let dt = dn as f64 * grid.tau;
            let pc2_over_e = lk.state.momentum.map(|p| p * grid.c * grid.c / lk.state.energy);
            for i in 0..3 {
                let dx = step.dj[i] as f64 * grid.eps;
                assert_eq!(u[i], dx / dt);
                assert!((pc2_over_e[i] - dx / dt).abs() <= 1e-14);
            }
            assert!(lk.state.mass_shell_defect(grid.c).abs() <= 1e-12);
            checked += 1;
        }
    }
    assert!(checked >= 200, "{checked}");
}

#[test]
fn total_difference_on_the_documented_pair() {
    let a = ParticleState::on_shell(1.0, [0.75, 0.0, 0.0], 1.0).unwrap();
    let b = ParticleState::on_shell(1.0, [1.0, 0.0, 0.0], 1.0).unwrap();
    let td = kinematics::total_difference_mass_shell(&a, &b, 1.0).unwrap();
    assert!(td.residual23.abs() <= 1e-12);
    assert!(td.residual24.abs() <= 1e-12);
    let (de, dp) = (2f64.sqrt() - 1.25, 0.25);
    assert!((td.invariant - (de * de - dp * dp)).abs() <= 1e-15);
    // the difference of two distinct points on one mass shell is spacelike
    assert!(td.invariant < -0.035);
}

#[test]
fn averaged_velocity_closes_the_energy_difference() {
    for (p, q) in [(0.1, 2.0), (-1.0, 3.0), (0.5, 0.5000001)] {
        let a = ParticleState::on_shell(2.0, [p, 0.0, 0.0], 1.5).unwrap();
        let b = ParticleState::on_shell(2.0, [q, 0.0, 0.0], 1.5).unwrap();
        let td = kinematics::total_difference_mass_shell(&a, &b, 1.5).unwrap();
        let u = td.averaged_velocity[0];
        assert!((u - 1.5 * 1.5 * (p + q) / (a.energy + b.energy)).abs() <= 1e-14);
        assert!(td.residual24.abs() <= 1e-12);
    }
}
