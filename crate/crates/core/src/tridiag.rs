//! Cyclic tridiagonal systems with real coefficients and complex right-hand sides.

use num_complex::Complex64;

use crate::error::{LatticeError, Result};

/// `A x = r` where `A` has sub-diagonal `a`, diagonal `b`, super-diagonal `c`
/// and corners `A[0][n-1] = alpha`, `A[n-1][0] = beta`.
#[derive(Debug, Clone)]
pub struct CyclicTridiagonal {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl CyclicTridiagonal {
    /// Constant-coefficient circulant with `off` on both off-diagonals and corners.
    pub fn circulant(n: usize, diag: f64, off: f64) -> Self {
        CyclicTridiagonal {
            sub: vec![off; n.saturating_sub(1)],
            diag: vec![diag; n],
            sup: vec![off; n.saturating_sub(1)],
            alpha: off,
            beta: off,
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Sherman-Morrison reduction to two Thomas solves.
    pub fn solve(&self, r: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.len();
        if n < 3 || r.len() != n {
            return Err(LatticeError::Domain(format!(
                "cyclic tridiagonal solve needs n >= 3 and a matching rhs (n = {n}, rhs = {})",
                r.len()
            )));
        }
        let gamma = -self.diag[0];
        let mut bb = self.diag.clone();
        bb[0] -= gamma;
        bb[n - 1] -= self.alpha * self.beta / gamma;
        let x = thomas(&self.sub, &bb, &self.sup, r)?;
        let mut u = vec![Complex64::new(0.0, 0.0); n];
        u[0] = Complex64::new(gamma, 0.0);
        u[n - 1] = Complex64::new(self.beta, 0.0);
        let z = thomas(&self.sub, &bb, &self.sup, &u)?;
        let num = x[0] + x[n - 1] * (self.alpha / gamma);
        let den = Complex64::new(1.0, 0.0) + z[0] + z[n - 1] * (self.alpha / gamma);
        if den.norm() < 1e-300 {
            return Err(LatticeError::Singular("Sherman-Morrison denominator vanished".into()));
        }
        let fact = num / den;
        Ok(x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect())
    }

    /// `A x`, for residual checks.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = x[i] * self.diag[i];
                if i > 0 {
                    s += x[i - 1] * self.sub[i - 1];
                }
                if i + 1 < n {
                    s += x[i + 1] * self.sup[i];
                }
                if i == 0 {
                    s += x[n - 1] * self.alpha;
                }
                if i == n - 1 {
                    s += x[0] * self.beta;
                }
                s
            })
            .collect()
    }
}

fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], r: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = diag.len();
    let mut gam = vec![0.0; n];
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut bet = diag[0];
    if bet == 0.0 {
        return Err(LatticeError::Singular("zero pivot in tridiagonal elimination".into()));
    }
    x[0] = r[0] / bet;
    for j in 1..n {
        gam[j] = sup[j - 1] / bet;
        bet = diag[j] - sub[j - 1] * gam[j];
        if bet == 0.0 {
            return Err(LatticeError::Singular("zero pivot in tridiagonal elimination".into()));
        }
        x[j] = (r[j] - x[j - 1] * sub[j - 1]) / bet;
    }
    for j in (0..n - 1).rev() {
        let next = x[j + 1];
        x[j] -= next * gam[j + 1];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_general_cyclic_system() {
        let m = CyclicTridiagonal {
            sub: vec![1.0, -2.0, 0.5, 1.5],
            diag: vec![5.0, 6.0, -7.0, 8.0, 9.0],
            sup: vec![-1.0, 2.0, 0.25, 1.0],
            alpha: 0.75,
            beta: -1.25,
        };
        let r: Vec<Complex64> = (0..5).map(|i| Complex64::new(i as f64 - 2.0, 0.5 * i as f64)).collect();
        let x = m.solve(&r).unwrap();
        let back = m.apply(&x);
        for (a, b) in back.iter().zip(&r) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn three_by_three_circulant() {
        let m = CyclicTridiagonal::circulant(3, 4.0, 1.0);
        let r = vec![Complex64::new(6.0, 0.0); 3];
        let x = m.solve(&r).unwrap();
        for xi in x {
            assert!((xi - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_tiny_systems() {
        let m = CyclicTridiagonal::circulant(2, 4.0, 1.0);
        assert!(m.solve(&[Complex64::new(1.0, 0.0); 2]).is_err());
    }
}
