//! Forward differences and averages, and the discrete product rule they obey.
//!
//! ```bash
//! cargo run --example difference_identities
//! ```

use latwave::diffcalc::{DiffOp, SampledSequence};
use latwave::grid::Boundary;
use num_complex::Complex64;

fn main() -> latwave::error::Result<()> {
    let f = SampledSequence::from_real(&[1.0, 3.0, 6.0, 10.0], Boundary::Shrinking);
    let g = SampledSequence::new(
        (0..4).map(|j| Complex64::from_polar(1.0, 0.4 * j as f64)).collect(),
        Boundary::Shrinking,
    );

    println!("f          = {:?}", re(&f));
    println!("forward f  = {:?}", re(&f.apply(DiffOp::Forward)?));
    println!("average f  = {:?}", re(&f.apply(DiffOp::ForwardAvg)?));

    let lhs = f.mul(&g)?.apply(DiffOp::Forward)?;
    let rhs = f
        .apply(DiffOp::Forward)?
        .mul(&g.apply(DiffOp::ForwardAvg)?)?
        .add(&f.apply(DiffOp::ForwardAvg)?.mul(&g.apply(DiffOp::Forward)?)?)?;
    let gap = lhs.values.iter().zip(&rhs.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("D(fg) vs Df Ag + Af Dg: max gap {gap:.2e}");
    Ok(())
}

fn re(s: &SampledSequence) -> Vec<f64> {
    s.values.iter().map(|z| z.re).collect()
}
