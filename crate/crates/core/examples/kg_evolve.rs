//! March exact plane-wave data forward with the implicit lattice Klein-Gordon scheme.

use latwave::dispersion::{self, DispersionForm};
use latwave::extended::Wavelength;
use latwave::grid::GridSpec;
use latwave::kg_lattice::{self, KGParams};
use latwave::waves::{WaveForm, WaveSpec};

fn main() -> latwave::error::Result<()> {
    let grid = GridSpec::default();
    let cases = [
        (WaveForm::Cayley, DispersionForm::Cayley, 6, Wavelength::Infinite),
        (WaveForm::Exponential, DispersionForm::Exponential, 4, Wavelength::Sites(8)),
    ];
    for (form, relation, n, m) in cases {
        let spec = WaveSpec::new(form, n, m)?;
        let m0 = dispersion::mass_for_mode(relation, n, m, &grid)?;
        let params = KGParams::new(m0, grid)?;
        let residual = kg_lattice::plane_wave_residual(&spec, &params, (32, 32))?;
        let (slab, deviation) = kg_lattice::evolve_plane_wave(&spec, &params, 32, 64)?;
        println!(
            "{form:?} N={n} M={m}: m0 = {m0:.6}, operator residual {residual:.1e}, {} slices, max deviation {deviation:.1e}",
            slab.nt()
        );
    }
    Ok(())
}
