//! Lattice steps fix a velocity; the matching energy and momentum may or may not
//! land on integer periods and wavelengths.

use std::f64::consts::PI;

use latwave::dispersion;
use latwave::grid::GridSpec;
use latwave::kinematics::{self, LatticeStep};

fn main() -> latwave::error::Result<()> {
    let grid = GridSpec::default();
    let step = LatticeStep::along_x(5, 3);
    let lk = kinematics::discrete_energy_momentum(1.0, step, &grid)?;
    println!("step (5, 3): u = {} exactly, E = {}, p = {}", lk.velocity_exact[0], lk.state.energy, lk.state.momentum[0]);

    for (label, m0) in [("2 pi", 2.0 * PI), ("sqrt(2) 2 pi", 2f64.sqrt() * 2.0 * PI)] {
        let q = dispersion::quantization_check(LatticeStep::new(1, [0, 0, 0]), m0, &grid, 1e-6)?;
        println!("rest step, m0 = {label}: N_real = {}, N = {:?}, M_real = {}", q.period_real, q.period, q.wavelength_real);
    }
    Ok(())
}
