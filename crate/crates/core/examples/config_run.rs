//! Build a run config in code, execute it and print the CSV it would write.

use latwave::cli::config::{BeatMeasure, Experiment, Format, RunConfig};
use latwave::cli::run;
use latwave::grid::GridSpec;

fn main() -> latwave::error::Result<()> {
    let mut cfg = RunConfig::new(
        GridSpec::natural(256, 1024),
        Experiment::BeatMeasure(BeatMeasure { period_a: 4.0, period_b: 6.0, wavelength_a: 3.0, wavelength_b: 5.0 }),
    );
    cfg.seed = Some(7);
    println!("config: {}", cfg.canonical_json());

    let artifact = run::execute(&cfg)?;
    let provenance = run::Provenance::new(&cfg, &artifact);
    let bytes = run::render(&artifact, &provenance, Format::Csv)?;
    print!("{}", String::from_utf8_lossy(&bytes));
    Ok(())
}
