//! The lattice Klein-Gordon operator in 1+1 dimensions.
//!
//! ```text
//! L[psi] = -(1/(c^2 tau^2)) Dn Aj psi + (1/eps^2) Dj An psi - (m0^2 c^2 / hbar^2) Aj An psi
//! ```
//!
//! with `D f = f(+1) - 2 f + f(-1)` (the product of forward and backward
//! differences) and `A f = (f(+1) + 2 f + f(-1)) / 4` (the product of the two
//! averages) along the subscripted axis. The operator is evaluated on
//! interior time slices `1..Nt-1`; space is periodic or interior-only
//! according to the slab's boundary mode.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, LatticeError, Result};
use crate::extended::Extended;
use crate::field::FieldSlab;
use crate::grid::{Boundary, GridSpec};
use crate::tridiag::CyclicTridiagonal;
use crate::waves::WaveSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGParams {
    pub rest_mass: f64,
    pub grid: GridSpec,
}

impl KGParams {
    pub fn new(rest_mass: f64, grid: GridSpec) -> Result<Self> {
        let p = KGParams { rest_mass, grid };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if !(self.rest_mass >= 0.0) || !self.mass_term().is_finite() {
            return domain(format!("rest mass must be >= 0 with a finite mass term, got {}", self.rest_mass));
        }
        Ok(())
    }

    /// `m0^2 c^2 / hbar^2`
    pub fn mass_term(&self) -> f64 {
        (self.rest_mass * self.grid.c / self.grid.hbar).powi(2)
    }

    fn time_coef(&self) -> f64 {
        1.0 / (self.grid.c * self.grid.tau).powi(2)
    }

    fn space_coef(&self) -> f64 {
        1.0 / (self.grid.eps * self.grid.eps)
    }
}

fn second_diff(row: &[Complex64], j: usize, periodic: bool) -> Complex64 {
    let nx = row.len();
    let (l, r) = if periodic { ((j + nx - 1) % nx, (j + 1) % nx) } else { (j - 1, j + 1) };
    row[r] - row[j] * 2.0 + row[l]
}

fn double_avg(row: &[Complex64], j: usize, periodic: bool) -> Complex64 {
    let nx = row.len();
    let (l, r) = if periodic { ((j + nx - 1) % nx, (j + 1) % nx) } else { (j - 1, j + 1) };
    (row[r] + row[j] * 2.0 + row[l]) * 0.25
}

/// Operator residual on the interior time slices.
///
/// The result has `Nt - 2` rows and either `Nx` columns (periodic) or `Nx - 2`
/// columns (shrinking); row `r` corresponds to time index `r + 1`.
pub fn apply_kg_operator(f: &FieldSlab, p: &KGParams) -> Result<FieldSlab> {
    p.validate()?;
    let (nt, nx) = (f.nt(), f.nx());
    if nt < 3 || nx < 3 {
        return domain(format!("kg operator needs a slab of at least 3x3, got {nt}x{nx}"));
    }
    let periodic = f.grid().boundary == Boundary::Periodic;
    let (a, b, mu2) = (p.time_coef(), p.space_coef(), p.mass_term());
    let cols: Vec<usize> = if periodic { (0..nx).collect() } else { (1..nx - 1).collect() };
    let rows: Vec<Vec<Complex64>> = (1..nt - 1)
        .into_par_iter()
        .map(|n| {
            let (prev, cur, next) = (f.row(n - 1), f.row(n), f.row(n + 1));
            cols.iter()
                .map(|&j| {
                    let (am, a0, ap) = (double_avg(prev, j, periodic), double_avg(cur, j, periodic), double_avg(next, j, periodic));
                    let (dm, d0, dp) = (second_diff(prev, j, periodic), second_diff(cur, j, periodic), second_diff(next, j, periodic));
                    let time_part = ap - a0 * 2.0 + am;
                    let space_part = (dp + d0 * 2.0 + dm) * 0.25;
                    let mass_part = (ap + a0 * 2.0 + am) * 0.25;
                    -time_part * a + space_part * b - mass_part * mu2
                })
                .collect()
        })
        .collect();
    let out_grid = f.grid().with_extents(nt - 2, cols.len());
    FieldSlab::new(out_grid, rows.into_iter().flatten().collect())
}

/// Largest residual of a sampled plane wave, interior sites only.
pub fn plane_wave_residual(spec: &WaveSpec, p: &KGParams, extent: (usize, usize)) -> Result<f64> {
    spec.validate()?;
    let (nt, nx) = extent;
    if nt < 8 || nx < 8 {
        return domain(format!("plane-wave residual needs an extent of at least 8x8, got {nt}x{nx}"));
    }
    let grid = p.grid.with_extents(nt, nx).with_boundary(Boundary::Shrinking);
    let slab = spec.sample(grid, 0, 0);
    Ok(apply_kg_operator(&slab, &KGParams { grid, ..*p })?.max_abs())
}

/// `-(Dn psi)/(An psi)` for the pure time mode `exp(2 pi i n / N)`.
///
/// Equals `4 tan^2(pi/N)`; infinite for `N = 2`, where averaging annihilates
/// the alternating mode.
pub fn calibrate_time_coefficient(period: u32, extent: usize) -> Result<Extended> {
    if period < 2 {
        return domain(format!("period must be >= 2, got {period}"));
    }
    if extent < 3 {
        return domain(format!("calibration needs at least 3 time samples, got {extent}"));
    }
    let psi: Vec<Complex64> = (0..extent)
        .map(|n| Complex64::cis(2.0 * PI * (n % period as usize) as f64 / period as f64))
        .collect();
    let n = extent / 2;
    let d = psi[n + 1] - psi[n] * 2.0 + psi[n - 1];
    let avg = (psi[n + 1] + psi[n] * 2.0 + psi[n - 1]) * 0.25;
    if avg.norm() <= 1e-12 * psi[n].norm() {
        return Ok(Extended::Infinite);
    }
    Ok(Extended::Finite((-d / avg).re))
}

/// The constant-coefficient spatial system that advances one time slice.
#[derive(Debug, Clone)]
pub struct Stepper {
    params: KGParams,
    nx: usize,
    /// first row of the inverse circulant
    green: Vec<f64>,
}

impl Stepper {
    pub fn new(params: KGParams, nx: usize) -> Result<Self> {
        params.validate()?;
        if nx < 3 {
            return domain(format!("evolution needs Nx >= 3, got {nx}"));
        }
        let (a, b, mu2) = (params.time_coef(), params.space_coef(), params.mass_term());
        let off = (-a + b - 0.25 * mu2) * 0.25;
        let diag = (-a - b - 0.25 * mu2) * 0.5;
        // eigenvalues of the circulant: diag + 2 off cos(2 pi q / nx)
        let scale = diag.abs() + 2.0 * off.abs();
        let smallest = (0..nx)
            .map(|q| (diag + 2.0 * off * (2.0 * PI * q as f64 / nx as f64).cos()).abs())
            .fold(f64::INFINITY, f64::min);
        if !(smallest > 1e-12 * scale) {
            return Err(LatticeError::Singular(format!(
                "time-step matrix is singular for m0 = {}, tau = {}, eps = {}, c = {}, hbar = {}, Nx = {nx}",
                params.rest_mass, params.grid.tau, params.grid.eps, params.grid.c, params.grid.hbar
            )));
        }
        let system = CyclicTridiagonal::circulant(nx, diag, off);
        let mut unit = vec![Complex64::new(0.0, 0.0); nx];
        unit[0] = Complex64::new(1.0, 0.0);
        let green = system.solve(&unit)?.into_iter().map(|z| z.re).collect();
        Ok(Stepper { params, nx, green })
    }

    /// Solves the operator equation at slice `n` for slice `n + 1`.
    pub fn advance(&self, prev: &[Complex64], cur: &[Complex64]) -> Vec<Complex64> {
        let nx = self.nx;
        let (a, b, mu2) = (self.params.time_coef(), self.params.space_coef(), self.params.mass_term());
        let rhs: Vec<Complex64> = (0..nx)
            .map(|j| {
                let (am, a0) = (double_avg(prev, j, true), double_avg(cur, j, true));
                let (dm, d0) = (second_diff(prev, j, true), second_diff(cur, j, true));
                let known = -(am - a0 * 2.0) * a + (dm + d0 * 2.0) * (0.25 * b) - (am + a0 * 2.0) * (0.25 * mu2);
                -known
            })
            .collect();
        // circular convolution with a fixed summation order keeps shifts exact
        (0..nx)
            .map(|j| {
                let mut s = Complex64::new(0.0, 0.0);
                for (m, g) in self.green.iter().enumerate() {
                    s += rhs[(j + nx - m) % nx] * g;
                }
                s
            })
            .collect()
    }
}

/// Evolves two initial slices by `steps` implicit time steps, periodic in space.
///
/// The returned slab has `steps + 2` rows, starting with the initial slices.
pub fn evolve(initial: [&[Complex64]; 2], steps: usize, p: &KGParams) -> Result<FieldSlab> {
    let nx = initial[0].len();
    if initial[1].len() != nx {
        return domain(format!("initial slices differ in length: {nx} vs {}", initial[1].len()));
    }
    let stepper = Stepper::new(*p, nx)?;
    let mut psi = Vec::with_capacity((steps + 2) * nx);
    psi.extend_from_slice(initial[0]);
    psi.extend_from_slice(initial[1]);
    for n in 1..=steps {
        let next = stepper.advance(&psi[(n - 1) * nx..n * nx], &psi[n * nx..(n + 1) * nx]);
        psi.extend(next);
    }
    FieldSlab::new(p.grid.with_extents(steps + 2, nx).with_boundary(Boundary::Periodic), psi)
}

/// Evolves the first two slices of a plane wave and compares with the closed form.
pub fn evolve_plane_wave(spec: &WaveSpec, p: &KGParams, nx: usize, steps: usize) -> Result<(FieldSlab, f64)> {
    let grid = p.grid.with_extents(steps + 2, nx).with_boundary(Boundary::Periodic);
    let exact = spec.sample(grid, 0, 0);
    let slab = evolve([exact.row(0), exact.row(1)], steps, &KGParams { grid, ..*p })?;
    let dev = slab.max_abs_diff(&exact)?;
    Ok((slab, dev))
}
