//! Integral Lorentz matrices: enumerate a ball of words, then factorize.

use latwave::lorentz_int::{self, GeneratorWord, Letter};

fn main() -> latwave::error::Result<()> {
    let spheres = lorentz_int::ball_spheres(6)?;
    let sizes: Vec<usize> = spheres.iter().map(Vec::len).collect();
    println!("sphere sizes up to word length 6: {sizes:?}");

    let word: GeneratorWord = "S4 S1 S4 S2 S3 S4 S1".parse().expect("valid word");
    let l = lorentz_int::eval_word(&word)?;
    println!("L = [{}]", l.as_matrix());

    let normal = lorentz_int::factorize(&l)?;
    println!("factorized: {normal}  ({} reflections through S4)", normal.count(Letter::S4));
    assert_eq!(lorentz_int::eval_word(&normal)?, l);

    let printed = lorentz_int::s4_as_printed();
    println!("S4 with +1 at row 3, column 4 keeps the metric: {}", lorentz_int::preserves_metric(&printed));
    Ok(())
}
