//! Lattice plane waves and the two-mode beat.
//!
//! The exponential wave `A exp{2 pi i (n/N - j/M)}` is exactly periodic. The
//! Cayley wave `A ((1 + i pi/N)/(1 - i pi/N))^n ((1 - i pi/M)/(1 + i pi/M))^j`
//! is unimodular with phase advancing by `2 atan(pi/N)` per time step and
//! `-2 atan(pi/M)` per space step.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, LatticeError, Result};
use crate::extended::{Extended, Wavelength};
use crate::field::FieldSlab;
use crate::grid::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveForm {
    Exponential,
    Cayley,
}

/// A lattice plane-wave mode with period `N` time steps and wavelength `M` space steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpec {
    pub form: WaveForm,
    pub period: u32,
    pub wavelength: Wavelength,
    pub amplitude: Complex64,
}

impl WaveSpec {
    pub fn new(form: WaveForm, period: u32, wavelength: Wavelength) -> Result<Self> {
        let spec = WaveSpec { form, period, wavelength, amplitude: Complex64::new(1.0, 0.0) };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_amplitude(mut self, amplitude: Complex64) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.period < 2 {
            return domain(format!("wave period N must be >= 2, got {}", self.period));
        }
        if let Wavelength::Sites(m) = self.wavelength {
            if m < 2 {
                return domain(format!("wavelength M must be >= 2, got {m}"));
            }
        }
        Ok(())
    }

    pub fn eval(&self, n: i64, j: i64) -> Complex64 {
        match self.form {
            WaveForm::Exponential => exponential_value(self, n, j),
            WaveForm::Cayley => cayley_value(self, n, j),
        }
    }

    /// Phase advance per time step.
    pub fn time_phase_step(&self) -> f64 {
        match self.form {
            WaveForm::Exponential => 2.0 * PI / self.period as f64,
            WaveForm::Cayley => 2.0 * (PI / self.period as f64).atan(),
        }
    }

    /// Phase advance per space step (the wave carries `-j` times this).
    pub fn space_phase_step(&self) -> f64 {
        match (self.form, self.wavelength) {
            (_, Wavelength::Infinite) => 0.0,
            (WaveForm::Exponential, Wavelength::Sites(m)) => 2.0 * PI / m as f64,
            (WaveForm::Cayley, Wavelength::Sites(m)) => 2.0 * (PI / m as f64).atan(),
        }
    }

    /// Samples the wave on the grid's `nt x nx` sites, starting at `(n0, j0)`.
    pub fn sample(&self, grid: GridSpec, n0: i64, j0: i64) -> FieldSlab {
        let nx = grid.nx;
        let psi: Vec<Complex64> = (0..grid.nt * nx)
            .into_par_iter()
            .map(|k| self.eval(n0 + (k / nx) as i64, j0 + (k % nx) as i64))
            .collect();
        FieldSlab::new(grid, psi).expect("sample length matches grid")
    }
}

fn exponential_value(spec: &WaveSpec, n: i64, j: i64) -> Complex64 {
    let big_n = spec.period as i64;
    let t = n.rem_euclid(big_n) as f64 / big_n as f64;
    let x = match spec.wavelength {
        Wavelength::Sites(m) => j.rem_euclid(m as i64) as f64 / m as f64,
        Wavelength::Infinite => 0.0,
    };
    spec.amplitude * Complex64::cis(2.0 * PI * (t - x))
}

fn cayley_value(spec: &WaveSpec, n: i64, j: i64) -> Complex64 {
    let a = PI / spec.period as f64;
    let time_base = Complex64::new(1.0, a) / Complex64::new(1.0, -a);
    let mut z = spec.amplitude * unimodular_pow(time_base, n);
    if let Wavelength::Sites(m) = spec.wavelength {
        let b = PI / m as f64;
        let space_base = Complex64::new(1.0, -b) / Complex64::new(1.0, b);
        z *= unimodular_pow(space_base, j);
    }
    z
}

/// Multiplications between modulus renormalizations in [`unimodular_pow`].
pub const RENORMALIZE_EVERY: u32 = 64;

/// `z^e` for `|z| = 1`, by repeated squaring.
///
/// Negative exponents use the conjugate. The accumulator is pulled back to the
/// unit circle every [`RENORMALIZE_EVERY`] multiplications; the base after every
/// squaring, since squaring doubles its modulus error.
pub fn unimodular_pow(z: Complex64, e: i64) -> Complex64 {
    let z = z / z.norm();
    let mut base = if e < 0 { z.conj() } else { z };
    let mut exp = e.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut mults = 0u32;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
            mults += 1;
        }
        exp >>= 1;
        if exp > 0 {
            base *= base;
            base /= base.norm();
        }
        if mults >= RENORMALIZE_EVERY {
            acc /= acc.norm();
            mults = 0;
        }
    }
    acc
}

pub fn eval_exponential(spec: &WaveSpec, n: i64, j: i64) -> Result<Complex64> {
    if spec.form != WaveForm::Exponential {
        return domain("eval_exponential called on a cayley wave");
    }
    Ok(exponential_value(spec, n, j))
}

pub fn eval_cayley(spec: &WaveSpec, n: i64, j: i64) -> Result<Complex64> {
    if spec.form != WaveForm::Cayley {
        return domain("eval_cayley called on an exponential wave");
    }
    Ok(cayley_value(spec, n, j))
}

/// `|eval_form(n, j) - exp{2 pi i (n/N - j/M)}|` for a unit-amplitude wave.
pub fn continuum_limit_error(form: WaveForm, period: u32, wavelength: Wavelength, n: i64, j: i64) -> Result<f64> {
    let spec = WaveSpec::new(form, period, wavelength)?;
    let continuum = WaveSpec { form: WaveForm::Exponential, ..spec };
    Ok((spec.eval(n, j) - continuum.eval(n, j)).norm())
}

/// Two real cosine modes with periods `T, T'` and wavelengths `lambda, lambda'`.
///
/// A negative wavelength encodes a mode travelling in `-x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeatSpec {
    pub period_a: f64,
    pub period_b: f64,
    pub wavelength_a: f64,
    pub wavelength_b: f64,
}

impl BeatSpec {
    pub fn new(period_a: f64, period_b: f64, wavelength_a: f64, wavelength_b: f64) -> Result<Self> {
        let b = BeatSpec { period_a, period_b, wavelength_a, wavelength_b };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("T", self.period_a), ("T'", self.period_b)] {
            if !(v.is_finite() && v > 0.0) {
                return domain(format!("beat period {name} must be finite and > 0, got {v}"));
            }
        }
        for (name, v) in [("lambda", self.wavelength_a), ("lambda'", self.wavelength_b)] {
            if !(v.is_finite() && v != 0.0) {
                return domain(format!("beat wavelength {name} must be finite and nonzero, got {v}"));
            }
        }
        Ok(())
    }

    /// `1/T - 1/T'`
    pub fn delta_frequency(&self) -> f64 {
        1.0 / self.period_a - 1.0 / self.period_b
    }

    /// `1/lambda - 1/lambda'`
    pub fn delta_wavenumber(&self) -> f64 {
        1.0 / self.wavelength_a - 1.0 / self.wavelength_b
    }

    /// `1/T + 1/T'`
    pub fn sum_frequency(&self) -> f64 {
        1.0 / self.period_a + 1.0 / self.period_b
    }

    /// `1/lambda + 1/lambda'`
    pub fn sum_wavenumber(&self) -> f64 {
        1.0 / self.wavelength_a + 1.0 / self.wavelength_b
    }

    /// `cos 2pi(t/T - x/lambda) + cos 2pi(t/T' - x/lambda')`
    pub fn value(&self, t: f64, x: f64) -> f64 {
        (2.0 * PI * (t / self.period_a - x / self.wavelength_a)).cos()
            + (2.0 * PI * (t / self.period_b - x / self.wavelength_b)).cos()
    }

    /// The product form `2 cos(pi{t d(1/T) - x d(1/lambda)}) cos(pi{t s(1/T) - x s(1/lambda)})`.
    pub fn product_value(&self, t: f64, x: f64) -> f64 {
        2.0 * self.envelope(t, x) * self.carrier(t, x)
    }

    /// Slow factor `cos pi{t (1/T - 1/T') - x (1/lambda - 1/lambda')}`.
    pub fn envelope(&self, t: f64, x: f64) -> f64 {
        (PI * (t * self.delta_frequency() - x * self.delta_wavenumber())).cos()
    }

    /// Fast factor `cos pi{t (1/T + 1/T') - x (1/lambda + 1/lambda')}`.
    pub fn carrier(&self, t: f64, x: f64) -> f64 {
        (PI * (t * self.sum_frequency() - x * self.sum_wavenumber())).cos()
    }

    /// Spatial period of the slow cosine, infinite when the wavelengths coincide.
    pub fn envelope_wavelength(&self) -> Extended {
        let d = self.delta_wavenumber().abs();
        if d == 0.0 {
            Extended::Infinite
        } else {
            Extended::Finite(2.0 / d)
        }
    }

    /// Spatial period of the fast cosine, infinite for a standing beat.
    pub fn carrier_wavelength(&self) -> Extended {
        let s = self.sum_wavenumber().abs();
        if s == 0.0 {
            Extended::Infinite
        } else {
            Extended::Finite(2.0 / s)
        }
    }
}

/// Samples the beat on the grid: `psi[n][j] = value(n tau, j eps)`.
///
/// The spatial extent must cover at least two periods of the slow cosine
/// whenever that period is finite.
pub fn beat_field(b: &BeatSpec, grid: &GridSpec) -> Result<FieldSlab> {
    b.validate()?;
    grid.validate()?;
    if grid.nt < 2 || grid.nx < 2 {
        return domain(format!("beat grid {}x{} is below 2x2", grid.nt, grid.nx));
    }
    if let Extended::Finite(period) = b.envelope_wavelength() {
        let extent = grid.nx as f64 * grid.eps;
        if extent < 2.0 * period {
            return domain(format!(
                "spatial extent {extent} does not cover two envelope periods ({period} each)"
            ));
        }
    }
    let nx = grid.nx;
    let psi: Vec<Complex64> = (0..grid.nt * nx)
        .into_par_iter()
        .map(|k| {
            let t = (k / nx) as f64 * grid.tau;
            let x = (k % nx) as f64 * grid.eps;
            Complex64::new(b.value(t, x), 0.0)
        })
        .collect();
    FieldSlab::new(*grid, psi)
}

/// `(1/T + 1/T') / (1/lambda + 1/lambda')`, infinite for a standing beat.
pub fn phase_velocity(b: &BeatSpec) -> Extended {
    let den = b.sum_wavenumber();
    if den == 0.0 {
        Extended::Infinite
    } else {
        Extended::Finite(b.sum_frequency() / den)
    }
}

/// `(1/T - 1/T') / (1/lambda - 1/lambda')`.
pub fn group_velocity(b: &BeatSpec) -> Result<f64> {
    let den = b.delta_wavenumber();
    if den == 0.0 {
        return domain("group velocity undefined: the two wavelengths coincide");
    }
    Ok(b.delta_frequency() / den)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeatVelocities {
    pub phase: Extended,
    pub group: f64,
}

pub fn beat_velocities(b: &BeatSpec) -> Result<BeatVelocities> {
    b.validate()?;
    Ok(BeatVelocities { phase: phase_velocity(b), group: group_velocity(b)? })
}

/// Relative contrast below which an envelope profile counts as flat.
pub const FLAT_ENVELOPE_CONTRAST: f64 = 0.1;

/// Minimum number of tracked time slices for a velocity fit.
pub const MIN_TRACKED_SLICES: usize = 8;

/// Measures the envelope velocity of a field by tracking its maximum.
///
/// Each time slice is reduced to a coarse-grained envelope: `|psi|` averaged
/// over a box of length `carrier_period_sites` (fractional ends weighted).
/// The maximum nearest the middle of the first slice is followed from slice
/// to slice, refined by a three-point parabola, and the positions are fitted
/// against time by least squares. Slices whose envelope is negligible
/// (carrier nodes) are skipped. Returns the slope in `eps / tau` units.
pub fn measure_group_velocity(field: &FieldSlab, carrier_period_sites: f64) -> Result<f64> {
    let grid = *field.grid();
    let (nt, nx) = (field.nt(), field.nx());
    if !(carrier_period_sites.is_finite() && carrier_period_sites >= 1.0) {
        return domain(format!("carrier period must be >= 1 site, got {carrier_period_sites}"));
    }
    let half = carrier_period_sites / 2.0;
    let reach = (half + 0.5).ceil() as usize;
    if nx < 2 * reach + 5 || nt < MIN_TRACKED_SLICES {
        return domain(format!("field {nt}x{nx} too small for window {carrier_period_sites}"));
    }
    let weights: Vec<f64> = (0..=reach).map(|k| (half + 0.5 - k as f64).clamp(0.0, 1.0)).collect();
    let norm: f64 = weights[0] + 2.0 * weights[1..].iter().sum::<f64>();
    let lo = reach;
    let hi = nx - reach; // valid positions are lo..hi

    let profiles: Vec<Vec<f64>> = (0..nt)
        .into_par_iter()
        .map(|n| {
            let row = field.row(n);
            (lo..hi)
                .map(|j| {
                    let mut s = weights[0] * row[j].norm();
                    for (k, w) in weights.iter().enumerate().skip(1) {
                        if *w > 0.0 {
                            s += w * (row[j - k].norm() + row[j + k].norm());
                        }
                    }
                    s / norm
                })
                .collect()
        })
        .collect();

    let global_max = profiles.iter().flatten().cloned().fold(0.0, f64::max);
    if global_max == 0.0 {
        return Err(LatticeError::Unreliable("field is identically zero".into()));
    }
    let live = |p: &[f64]| p.iter().cloned().fold(0.0, f64::max) > 0.05 * global_max;

    let first = profiles
        .iter()
        .position(|p| live(p))
        .ok_or_else(|| LatticeError::Unreliable("no slice carries a measurable envelope".into()))?;
    let p0 = &profiles[first];
    let (pmin, pmax) = p0.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    if (pmax - pmin) / pmax < FLAT_ENVELOPE_CONTRAST {
        return Err(LatticeError::Unreliable(format!(
            "envelope is flat (contrast {:.3e}); no group motion to track",
            (pmax - pmin) / pmax
        )));
    }

    // prominent local maxima of the first live slice
    let peaks: Vec<usize> = (1..p0.len() - 1)
        .filter(|&i| p0[i] >= p0[i - 1] && p0[i] > p0[i + 1] && p0[i] >= pmin + 0.5 * (pmax - pmin))
        .collect();
    if peaks.is_empty() {
        return Err(LatticeError::Unreliable("no interior envelope maximum".into()));
    }
    let mid = p0.len() as f64 / 2.0;
    let start = *peaks
        .iter()
        .min_by(|a, b| (**a as f64 - mid).abs().total_cmp(&(**b as f64 - mid).abs()))
        .unwrap();
    let spacing = peaks.windows(2).map(|w| w[1] - w[0]).min().unwrap_or(p0.len() / 2);
    let radius = (spacing / 2).max(1);

    let mut times = Vec::new();
    let mut positions = Vec::new();
    let mut pos = start;
    for (n, prof) in profiles.iter().enumerate().skip(first) {
        if !live(prof) {
            continue;
        }
        let a = pos.saturating_sub(radius).max(1);
        let b = (pos + radius).min(prof.len() - 2);
        if a >= b {
            break;
        }
        let best = (a..=b).max_by(|&x, &y| prof[x].total_cmp(&prof[y])).unwrap();
        if best == a && a == 1 || best == b && b == prof.len() - 2 {
            // the peak has run into the edge of the valid region
            break;
        }
        let (ym, y0, yp) = (prof[best - 1], prof[best], prof[best + 1]);
        let curv = ym - 2.0 * y0 + yp;
        let offset = if curv < 0.0 { 0.5 * (ym - yp) / curv } else { 0.0 };
        pos = best;
        times.push(n as f64 * grid.tau);
        positions.push((lo + best) as f64 * grid.eps + offset * grid.eps);
    }
    if times.len() < MIN_TRACKED_SLICES {
        return Err(LatticeError::Unreliable(format!(
            "envelope tracked over only {} slices",
            times.len()
        )));
    }
    Ok(least_squares_slope(&times, &positions))
}

pub(crate) fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Builds the beat on `grid` and measures its envelope velocity, using one
/// carrier wavelength as the coarse-graining window.
pub fn measure_beat_group_velocity(b: &BeatSpec, grid: &GridSpec) -> Result<f64> {
    if b.delta_wavenumber() == 0.0 && b.delta_frequency() == 0.0 {
        return Err(LatticeError::Unreliable("identical modes have a flat envelope".into()));
    }
    let field = beat_field(b, grid)?;
    let window = match b.carrier_wavelength() {
        Extended::Finite(l) => (l / grid.eps).max(1.0),
        Extended::Infinite => 1.0,
    };
    measure_group_velocity(&field, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wave(form: WaveForm, n: u32, m: u32) -> WaveSpec {
        WaveSpec::new(form, n, Wavelength::Sites(m)).unwrap()
    }

    #[test]
    fn exponential_quarter_turn() {
        let w = wave(WaveForm::Exponential, 4, 4);
        assert_eq!(w.eval(4, 0), Complex64::new(1.0, 0.0));
        let z = eval_exponential(&w, 1, 0).unwrap();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(eval_cayley(&w, 0, 0).is_err());
    }

    #[test]
    fn cayley_phase_of_first_step() {
        let w = wave(WaveForm::Cayley, 4, 7);
        assert_eq!(w.eval(0, 0), Complex64::new(1.0, 0.0));
        let a = PI / 4.0;
        let oracle = (Complex64::new(1.0, a) / Complex64::new(1.0, -a)).arg();
        let got = eval_cayley(&w, 1, 0).unwrap().arg();
        assert!((got - oracle).abs() < 1e-15);
        assert!((got - 1.3315475000567076).abs() < 1e-14);
        assert!(eval_exponential(&w, 0, 0).is_err());
    }

    #[test]
    fn invalid_wave_specs() {
        assert!(WaveSpec::new(WaveForm::Cayley, 1, Wavelength::Sites(4)).is_err());
        assert!(WaveSpec::new(WaveForm::Cayley, 4, Wavelength::Sites(1)).is_err());
        assert!(WaveSpec::new(WaveForm::Cayley, 4, Wavelength::Infinite).is_ok());
    }

    #[test]
    fn unimodular_pow_matches_exponent_law() {
        let z = Complex64::cis(0.123);
        for e in [-300i64, -7, 0, 1, 2, 63, 64, 1_000_003] {
            let want = Complex64::cis(0.123 * e as f64);
            assert!((unimodular_pow(z, e) - want).norm() < 1e-9, "e = {e}");
        }
    }

    #[test]
    fn continuum_error_cases() {
        for (n, j) in [(0, 0), (3, -9), (17, 5)] {
            assert_eq!(continuum_limit_error(WaveForm::Exponential, 5, Wavelength::Sites(6), n, j).unwrap(), 0.0);
        }
        assert!(continuum_limit_error(WaveForm::Cayley, 9, Wavelength::Sites(9), 4, 4).unwrap() < 1e-15);
    }

    #[test]
    fn beat_velocities_by_fractions() {
        let b = BeatSpec::new(4.0, 6.0, 3.0, 5.0).unwrap();
        let v = beat_velocities(&b).unwrap();
        assert!((v.group - 0.625).abs() < 1e-15);
        assert!((v.phase.finite().unwrap() - 0.78125).abs() < 1e-15);
    }

    #[test]
    fn degenerate_beat() {
        let b = BeatSpec::new(3.0, 3.0, 3.0, 3.0).unwrap();
        assert_eq!(phase_velocity(&b), Extended::Finite(1.0));
        assert!(beat_velocities(&b).is_err());
        let grid = GridSpec::natural(8, 64);
        assert!(matches!(measure_beat_group_velocity(&b, &grid), Err(LatticeError::Unreliable(_))));
    }

    #[test]
    fn light_cone_beat() {
        let b = BeatSpec::new(5.0, 7.0, 5.0, 7.0).unwrap();
        let v = beat_velocities(&b).unwrap();
        assert!((v.group - 1.0).abs() < 1e-15);
        assert!((v.phase.finite().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identical_modes_double_the_wave() {
        let b = BeatSpec::new(6.0, 6.0, 9.0, 9.0).unwrap();
        let f = beat_field(&b, &GridSpec::natural(16, 32)).unwrap();
        assert_eq!(f.get(0, 0).re, 2.0);
        for n in 0..16 {
            for j in 0..32 {
                let want = 2.0 * (2.0 * PI * (n as f64 / 6.0 - j as f64 / 9.0)).cos();
                assert!((f.get(n, j).re - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn beat_grid_too_small() {
        let b = BeatSpec::new(10.0, 11.0, 10.0, 11.0).unwrap();
        assert!(beat_field(&b, &GridSpec::natural(16, 200)).is_err());
        assert!(beat_field(&b, &GridSpec::natural(16, 440)).is_ok());
    }
}
