//! Lattice and continuum dispersion relations, the rest-mass spectrum and
//! energy/momentum quantization.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::extended::{Extended, Wavelength};
use crate::grid::GridSpec;
use crate::kinematics::{discrete_energy_momentum, norm, LatticeStep};
use crate::waves::WaveForm;

/// Which dispersion relation a mode is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DispersionForm {
    /// `(4/(c^2 tau^2)) tan^2(pi/N) - (4/eps^2) tan^2(pi/M) = m0^2 c^2 / hbar^2`,
    /// solved exactly by the exponential wave.
    Exponential,
    /// The tangent relation with the time coefficient `1/(c^2 tau^2)` instead
    /// of `4/(c^2 tau^2)`. Kept for comparison; the lattice operator does not
    /// satisfy it.
    ExponentialAsPrinted,
    /// `(1/c^2)(1/(N tau))^2 - (1/(M eps))^2 = m0^2 c^2 / h^2`, solved exactly
    /// by the Cayley wave.
    Cayley,
    /// `w^2/c^2 - k^2 = m0^2 c^2 / hbar^2` with `w = 2pi/(N tau)`, `k = 2pi/(M eps)`.
    Continuum,
}

impl DispersionForm {
    /// The lattice wave whose plane-wave solutions this relation describes.
    pub fn wave_form(self) -> Option<WaveForm> {
        match self {
            DispersionForm::Exponential | DispersionForm::ExponentialAsPrinted => Some(WaveForm::Exponential),
            DispersionForm::Cayley => Some(WaveForm::Cayley),
            DispersionForm::Continuum => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DispersionForm::Exponential => "exponential",
            DispersionForm::ExponentialAsPrinted => "exponential-as-printed",
            DispersionForm::Cayley => "cayley",
            DispersionForm::Continuum => "continuum",
        }
    }
}

impl std::str::FromStr for DispersionForm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exponential" => Ok(DispersionForm::Exponential),
            "exponential-as-printed" => Ok(DispersionForm::ExponentialAsPrinted),
            "cayley" => Ok(DispersionForm::Cayley),
            "continuum" => Ok(DispersionForm::Continuum),
            other => Err(format!("unknown dispersion form {other:?}")),
        }
    }
}

/// A lattice mode `(N, M)` satisfying a dispersion relation for rest mass `m0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionSolution {
    pub form: DispersionForm,
    pub period: u32,
    pub wavelength: Wavelength,
    pub rest_mass: f64,
    pub residual: f64,
}

/// Rest mass of the mode with period `N` in its rest frame: `h / (c^2 N tau)`.
pub fn mass_from_rest_period(period: u32, grid: &GridSpec) -> Result<f64> {
    grid.validate()?;
    if period < 1 {
        return domain("rest period N must be >= 1");
    }
    Ok(2.0 * PI * grid.hbar / (grid.c * grid.c * period as f64 * grid.tau))
}

/// The two kinetic terms `(time, space)` of a relation, before the mass term.
fn kinetic_terms(form: DispersionForm, period: u32, wavelength: Wavelength, grid: &GridSpec) -> (f64, f64) {
    let (tau, eps, c) = (grid.tau, grid.eps, grid.c);
    let n = period as f64;
    let tan_sq = |x: f64| x.tan().powi(2);
    let space_tan = match wavelength {
        Wavelength::Sites(m) => tan_sq(PI / m as f64),
        Wavelength::Infinite => 0.0,
    };
    let span = |per_site: f64| match wavelength {
        Wavelength::Sites(m) => per_site / (m as f64 * eps),
        Wavelength::Infinite => 0.0,
    };
    match form {
        DispersionForm::Exponential => {
            (4.0 / (c * c * tau * tau) * tan_sq(PI / n), 4.0 / (eps * eps) * space_tan)
        }
        DispersionForm::ExponentialAsPrinted => {
            (1.0 / (c * c * tau * tau) * tan_sq(PI / n), 4.0 / (eps * eps) * space_tan)
        }
        DispersionForm::Cayley => ((1.0 / (n * tau)).powi(2) / (c * c), span(1.0).powi(2)),
        DispersionForm::Continuum => {
            let w = 2.0 * PI / (n * tau);
            let k = span(2.0 * PI);
            (w * w / (c * c), k * k)
        }
    }
}

fn mass_term(form: DispersionForm, m0: f64, grid: &GridSpec) -> f64 {
    let quantum = match form {
        DispersionForm::Cayley => grid.h(),
        _ => grid.hbar,
    };
    (m0 * grid.c / quantum).powi(2)
}

/// Signed residual `time - space - mass` of the chosen relation.
pub fn dispersion_residual(form: DispersionForm, period: u32, wavelength: Wavelength, m0: f64, grid: &GridSpec) -> f64 {
    let (t, s) = kinetic_terms(form, period, wavelength, grid);
    t - s - mass_term(form, m0, grid)
}

/// The rest mass that puts `(N, M)` exactly on the chosen relation.
pub fn mass_for_mode(form: DispersionForm, period: u32, wavelength: Wavelength, grid: &GridSpec) -> Result<f64> {
    grid.validate()?;
    if period < 2 {
        return domain(format!("period N must be >= 2, got {period}"));
    }
    let (t, s) = kinetic_terms(form, period, wavelength, grid);
    let diff = t - s;
    if !(diff >= 0.0) || !diff.is_finite() {
        return domain(format!(
            "mode (N={period}, M={wavelength}) is spacelike for the {} relation",
            form.name()
        ));
    }
    let quantum = match form {
        DispersionForm::Cayley => grid.h(),
        _ => grid.hbar,
    };
    Ok(diff.sqrt() * quantum / grid.c)
}

/// Relative gap between the exponential and continuum relations on one mode,
/// `|r_exp - r_cont| / (w^2/c^2 + k^2)`. Independent of the rest mass.
pub fn continuum_discrepancy(period: u32, wavelength: Wavelength, grid: &GridSpec) -> f64 {
    let (te, se) = kinetic_terms(DispersionForm::Exponential, period, wavelength, grid);
    let (tc, sc) = kinetic_terms(DispersionForm::Continuum, period, wavelength, grid);
    ((te - se) - (tc - sc)).abs() / (tc + sc)
}

/// Exhaustive scan of `2 <= N <= n_max`, `M in {2..=m_max, inf}` for modes with
/// `|residual| <= tol`, sorted by `(N, M)` with the infinite wavelength last.
pub fn solve_modes(
    m0: f64,
    form: DispersionForm,
    n_max: u32,
    m_max: u32,
    tol: f64,
    grid: &GridSpec,
) -> Result<Vec<DispersionSolution>> {
    grid.validate()?;
    if !(m0 >= 0.0 && m0.is_finite()) {
        return domain(format!("rest mass must be finite and >= 0, got {m0}"));
    }
    if n_max < 2 || m_max < 2 {
        return domain(format!("scan bounds must be >= 2, got N <= {n_max}, M <= {m_max}"));
    }
    if !(tol >= 0.0) {
        return domain(format!("tolerance must be >= 0, got {tol}"));
    }
    let per_period: Vec<Vec<DispersionSolution>> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            (2..=m_max)
                .map(Wavelength::Sites)
                .chain(std::iter::once(Wavelength::Infinite))
                .filter_map(|m| {
                    let r = dispersion_residual(form, n, m, m0, grid);
                    (r.abs() <= tol).then_some(DispersionSolution {
                        form,
                        period: n,
                        wavelength: m,
                        rest_mass: m0,
                        residual: r,
                    })
                })
                .collect()
        })
        .collect();
    Ok(per_period.into_iter().flatten().collect())
}

/// Outcome of matching a lattice step's energy and momentum to `h/(N tau)`, `h/(M eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantization {
    pub energy: f64,
    pub momentum: f64,
    /// `h / (tau E)`
    pub period_real: f64,
    /// `h / (eps |p|)`, infinite at rest
    pub wavelength_real: Extended,
    pub period: Option<i64>,
    pub wavelength: Option<i64>,
}

fn nearest_integer(x: f64, tol: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() <= tol && r.abs() < 9.0e15).then_some(r as i64)
}

pub fn quantization_check(step: LatticeStep, m0: f64, grid: &GridSpec, tol: f64) -> Result<Quantization> {
    if m0 <= 0.0 {
        return domain("quantization needs a positive rest mass");
    }
    let lk = discrete_energy_momentum(m0, step, grid)?;
    let energy = lk.state.energy;
    let momentum = norm(&lk.state.momentum);
    let h = grid.h();
    let period_real = h / (grid.tau * energy);
    let wavelength_real = if momentum == 0.0 {
        Extended::Infinite
    } else {
        Extended::Finite(h / (grid.eps * momentum))
    };
    Ok(Quantization {
        energy,
        momentum,
        period_real,
        wavelength_real,
        period: nearest_integer(period_real, tol),
        wavelength: wavelength_real.finite().and_then(|m| nearest_integer(m, tol)),
    })
}
