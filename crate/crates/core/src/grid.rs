use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{domain, Result};

/// How an operator treats the ends of a sampled axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Indices wrap; lengths are preserved.
    #[default]
    Periodic,
    /// No wrap; each difference or average drops one sample.
    Shrinking,
}

/// Fundamental constants and lattice extents.
///
/// Times are `n * tau`, positions `j * eps`. Planck's constant `h` is always
/// derived from `hbar`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub tau: f64,
    pub eps: f64,
    pub c: f64,
    pub hbar: f64,
    pub nt: usize,
    pub nx: usize,
    pub boundary: Boundary,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            tau: 1.0,
            eps: 1.0,
            c: 1.0,
            hbar: 1.0,
            nt: 32,
            nx: 32,
            boundary: Boundary::Periodic,
        }
    }
}

impl GridSpec {
    /// Natural-unit lattice (`tau = eps = c = hbar = 1`) with the given extents.
    pub fn natural(nt: usize, nx: usize) -> Self {
        GridSpec { nt, nx, ..Default::default() }
    }

    pub fn with_extents(mut self, nt: usize, nx: usize) -> Self {
        self.nt = nt;
        self.nx = nx;
        self
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn h(&self) -> f64 {
        2.0 * PI * self.hbar
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("tau", self.tau), ("eps", self.eps), ("c", self.c), ("hbar", self.hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return domain(format!("grid constant {name} must be finite and > 0, got {v}"));
            }
        }
        if self.nt == 0 || self.nx == 0 {
            return domain(format!("grid extents must be positive, got {}x{}", self.nt, self.nx));
        }
        Ok(())
    }
}
