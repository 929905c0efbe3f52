//! Two cosines beat; the envelope moves at the group velocity.

use latwave::grid::GridSpec;
use latwave::waves::{self, BeatSpec};

fn main() -> latwave::error::Result<()> {
    let beat = BeatSpec::new(4.0, 6.0, 3.0, 5.0)?;
    let v = waves::beat_velocities(&beat)?;
    println!("analytic: v_phase = {}, v_group = {}", v.phase, v.group);
    println!("envelope wavelength {}, carrier wavelength {}", beat.envelope_wavelength(), beat.carrier_wavelength());

    let grid = GridSpec::natural(256, 1024);
    let measured = waves::measure_beat_group_velocity(&beat, &grid)?;
    println!("tracked envelope on {}x{}: v_group = {measured:.6} ({:.2e} relative)", grid.nt, grid.nx, (measured / v.group - 1.0).abs());

    let standing = BeatSpec::new(10.0, 10.0, 12.0, -12.0)?;
    println!("standing beat: v_group = {:.2e}", waves::measure_beat_group_velocity(&standing, &grid)?);
    Ok(())
}
