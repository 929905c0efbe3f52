//! Calculus of finite differences on sampled sequences and 2-D fields.
//!
//! The four operators are dimensionless index-space maps:
//!
//! | op | symbol | value at `i` |
//! |----|--------|--------------|
//! | [`DiffOp::Forward`] | Δ | `f[i+1] - f[i]` |
//! | [`DiffOp::Backward`] | ∇ | `f[i] - f[i-1]` |
//! | [`DiffOp::ForwardAvg`] | Δ̃ | `(f[i+1] + f[i]) / 2` |
//! | [`DiffOp::BackwardAvg`] | ∇̃ | `(f[i] + f[i-1]) / 2` |
//!
//! In [`Boundary::Periodic`] mode indices wrap and lengths are preserved. In
//! [`Boundary::Shrinking`] mode only the pairs that exist are used, so every
//! application drops one sample; a forward and a backward operator then
//! produce the same values, attached to different base indices.
//! Division by `tau` or `eps` is left to callers.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::field::FieldSlab;
pub use crate::grid::Boundary;

#[derive(Debug, Clone, PartialEq)]
pub struct SampledSequence {
    pub values: Vec<Complex64>,
    pub boundary: Boundary,
}

impl SampledSequence {
    pub fn new(values: Vec<Complex64>, boundary: Boundary) -> Self {
        SampledSequence { values, boundary }
    }

    pub fn periodic(values: Vec<Complex64>) -> Self {
        Self::new(values, Boundary::Periodic)
    }

    pub fn shrinking(values: Vec<Complex64>) -> Self {
        Self::new(values, Boundary::Shrinking)
    }

    /// Real samples, convenient for tests and examples.
    pub fn from_real(values: &[f64], boundary: Boundary) -> Self {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect(), boundary)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn apply(&self, op: DiffOp) -> Result<SampledSequence> {
        Ok(SampledSequence::new(apply_slice(op, &self.values, self.boundary)?, self.boundary))
    }

    /// Elementwise product; both sequences must share length and boundary.
    pub fn mul(&self, other: &SampledSequence) -> Result<SampledSequence> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &SampledSequence) -> Result<SampledSequence> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, k: Complex64) -> SampledSequence {
        SampledSequence::new(self.values.iter().map(|&z| z * k).collect(), self.boundary)
    }

    fn zip_with(
        &self,
        other: &SampledSequence,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<SampledSequence> {
        if self.len() != other.len() || self.boundary != other.boundary {
            return domain(format!(
                "sequence mismatch: len {} ({:?}) vs len {} ({:?})",
                self.len(),
                self.boundary,
                other.len(),
                other.boundary
            ));
        }
        Ok(SampledSequence::new(
            self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
            self.boundary,
        ))
    }
}

/// The four first-order operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffOp {
    Forward,
    Backward,
    ForwardAvg,
    BackwardAvg,
}

impl DiffOp {
    pub const ALL: [DiffOp; 4] = [DiffOp::Forward, DiffOp::Backward, DiffOp::ForwardAvg, DiffOp::BackwardAvg];

    fn combine(self, next: Complex64, prev: Complex64) -> Complex64 {
        match self {
            DiffOp::Forward | DiffOp::Backward => next - prev,
            DiffOp::ForwardAvg | DiffOp::BackwardAvg => (next + prev) * 0.5,
        }
    }

    fn is_forward(self) -> bool {
        matches!(self, DiffOp::Forward | DiffOp::ForwardAvg)
    }
}

/// Which index of a field an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    TimeN,
    SpaceJ,
}

pub fn forward_diff(f: &SampledSequence) -> Result<SampledSequence> {
    f.apply(DiffOp::Forward)
}

pub fn backward_diff(f: &SampledSequence) -> Result<SampledSequence> {
    f.apply(DiffOp::Backward)
}

pub fn forward_avg(f: &SampledSequence) -> Result<SampledSequence> {
    f.apply(DiffOp::ForwardAvg)
}

pub fn backward_avg(f: &SampledSequence) -> Result<SampledSequence> {
    f.apply(DiffOp::BackwardAvg)
}

pub(crate) fn apply_slice(op: DiffOp, f: &[Complex64], boundary: Boundary) -> Result<Vec<Complex64>> {
    let len = f.len();
    if len < 2 {
        return domain(format!("difference operator needs at least 2 samples, got {len}"));
    }
    Ok(match boundary {
        Boundary::Shrinking => f.windows(2).map(|w| op.combine(w[1], w[0])).collect(),
        Boundary::Periodic => (0..len)
            .map(|i| {
                if op.is_forward() {
                    op.combine(f[(i + 1) % len], f[i])
                } else {
                    op.combine(f[i], f[(i + len - 1) % len])
                }
            })
            .collect(),
    })
}

/// Applies a 1-D operator along one axis of a field, using the field's boundary mode.
///
/// In shrinking mode the result is one sample shorter along `axis`.
pub fn apply_1d(field: &FieldSlab, axis: Axis, op: DiffOp) -> Result<FieldSlab> {
    let grid = *field.grid();
    let (nt, nx) = (field.nt(), field.nx());
    let extent = match axis {
        Axis::TimeN => nt,
        Axis::SpaceJ => nx,
    };
    if extent < 2 {
        return domain(format!("field extent {extent} along {axis:?} is below 2"));
    }
    match axis {
        Axis::SpaceJ => {
            let mut out = Vec::with_capacity(nt * nx);
            for n in 0..nt {
                out.extend(apply_slice(op, field.row(n), grid.boundary)?);
            }
            let new_nx = out.len() / nt;
            FieldSlab::new(grid.with_extents(nt, new_nx), out)
        }
        Axis::TimeN => {
            let mut columns = Vec::with_capacity(nx);
            let mut column = vec![Complex64::new(0.0, 0.0); nt];
            for j in 0..nx {
                for (n, slot) in column.iter_mut().enumerate() {
                    *slot = field.get(n, j);
                }
                columns.push(apply_slice(op, &column, grid.boundary)?);
            }
            let new_nt = columns[0].len();
            let mut out = Vec::with_capacity(new_nt * nx);
            for n in 0..new_nt {
                out.extend(columns.iter().map(|c| c[n]));
            }
            FieldSlab::new(grid.with_extents(new_nt, nx), out)
        }
    }
}

/// Applies a sequence of `(axis, op)` pairs, rightmost first (operator-product order).
pub fn apply_chain(field: &FieldSlab, chain: &[(Axis, DiffOp)]) -> Result<FieldSlab> {
    let mut cur = field.clone();
    for &(axis, op) in chain.iter().rev() {
        cur = apply_1d(&cur, axis, op)?;
    }
    Ok(cur)
}
