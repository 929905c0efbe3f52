//! Which lattice modes (N, M) carry a given rest mass?
//!
//! Pass a mass on the command line; the default is the mass of the cayley
//! mode with period 3 and wavelength 6.

use std::f64::consts::PI;

use latwave::dispersion::{self, DispersionForm};
use latwave::grid::GridSpec;

fn main() -> latwave::error::Result<()> {
    let m0: f64 = std::env::args().nth(1).map_or(2.0 * PI / 12f64.sqrt(), |a| a.parse().expect("a number"));
    let grid = GridSpec::default();
    for form in [DispersionForm::Cayley, DispersionForm::Exponential] {
        let found = dispersion::solve_modes(m0, form, 64, 64, 1e-9, &grid)?;
        println!("{} relation, m0 = {m0}: {} modes", form.name(), found.len());
        for s in found.iter().take(8) {
            println!("  N = {:>3}  M = {:>4}  residual {:+.1e}", s.period, s.wavelength, s.residual);
        }
    }
    for n in [1, 2, 3, 6] {
        println!("rest mass of period {n}: {}", dispersion::mass_from_rest_period(n, &grid)?);
    }
    Ok(())
}
