//! A particle and its de Broglie wave, boosted into the particle's rest frame.

use latwave::kinematics::{self, ParticleState};

fn main() -> latwave::error::Result<()> {
    let c = 1.0;
    let hbar = 1.0;
    let s = ParticleState::on_shell(1.0, [0.75, 0.0, 0.0], c)?;
    let wave = kinematics::debroglie_map(&s, hbar)?;
    println!("E = {}, p = {:?}, u = {:?}", s.energy, s.momentum, s.velocity);
    println!("w = {}, k = {:?}, v_phase = {}, v_group = {}", wave.w, wave.k, wave.phase_velocity, wave.group_velocity);

    let v = [0.6, 0.0, 0.0];
    let rest = kinematics::transform_particle(&s, v, c)?;
    let (w, k) = kinematics::transform_wave(wave.w, wave.k, v, c)?;
    println!("boosted particle: E' = {:.12}, p' = {:?}", rest.energy, rest.momentum);
    println!("boosted wave:     w' = {w:.12}, k' = {k:?}");
    Ok(())
}
