//! Continuum and lattice relativistic kinematics.
//!
//! Boosts act on four-vectors `(t, x, y, z)` through metric-preserving 4x4
//! matrices. Waves enter as `(w/c, k)` and particles as `(E/c, p)`; the
//! printed scalar and vector transformation laws are available in
//! [`printed`] as independent checks of the matrix route.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::extended::Extended;
use crate::grid::GridSpec;

pub type Vec3 = [f64; 3];
pub type Matrix4 = [[f64; 4]; 4];

/// Minkowski metric `diag(1, -1, -1, -1)`.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Relative tolerance for the mass-shell invariant, measured against `E^2`.
pub const MASS_SHELL_REL_TOL: f64 = 1e-12;

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: &Vec3, k: f64) -> Vec3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector { t, x, y, z }
    }

    pub fn from_parts(t: f64, s: Vec3) -> Self {
        FourVector { t, x: s[0], y: s[1], z: s[2] }
    }

    pub fn spatial(&self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn minkowski_sq(&self) -> f64 {
        self.t * self.t - self.x * self.x - self.y * self.y - self.z * self.z
    }

    pub fn transform(&self, m: &Matrix4) -> FourVector {
        let v = self.as_array();
        let r: Vec<f64> = m.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        FourVector::new(r[0], r[1], r[2], r[3])
    }
}

/// Energy, momentum, rest mass and velocity of a free particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleState {
    pub energy: f64,
    pub momentum: Vec3,
    pub rest_mass: f64,
    pub velocity: Vec3,
}

impl ParticleState {
    /// On-shell state with the given rest mass and momentum.
    pub fn on_shell(rest_mass: f64, momentum: Vec3, c: f64) -> Result<Self> {
        if !(rest_mass >= 0.0 && rest_mass.is_finite()) {
            return domain(format!("rest mass must be finite and >= 0, got {rest_mass}"));
        }
        let p2 = dot(&momentum, &momentum);
        let energy = (p2 * c * c + rest_mass * rest_mass * c.powi(4)).sqrt();
        let velocity = if energy > 0.0 { scale(&momentum, c * c / energy) } else { [0.0; 3] };
        let s = ParticleState { energy, momentum, rest_mass, velocity };
        s.validate(c)?;
        Ok(s)
    }

    /// `(E^2 - |p|^2 c^2 - m0^2 c^4) / E^2`, or the absolute residual when `E = 0`.
    pub fn mass_shell_defect(&self, c: f64) -> f64 {
        let e2 = self.energy * self.energy;
        let r = e2 - dot(&self.momentum, &self.momentum) * c * c - (self.rest_mass * c * c).powi(2);
        if e2 > 0.0 {
            r / e2
        } else {
            r
        }
    }

    pub fn speed(&self) -> f64 {
        norm(&self.velocity)
    }

    pub fn validate(&self, c: f64) -> Result<()> {
        if !(c > 0.0 && c.is_finite()) {
            return domain(format!("speed of light must be finite and > 0, got {c}"));
        }
        let finite = self.energy.is_finite()
            && self.rest_mass.is_finite()
            && self.momentum.iter().chain(&self.velocity).all(|x| x.is_finite());
        if !finite || self.rest_mass < 0.0 || self.energy < 0.0 {
            return domain(format!("particle state is not physical: {self:?}"));
        }
        let defect = self.mass_shell_defect(c);
        if defect.abs() > MASS_SHELL_REL_TOL {
            return domain(format!("particle off mass shell: relative defect {defect:e}"));
        }
        let speed = self.speed();
        if self.rest_mass > 0.0 && speed >= c {
            return domain(format!("massive particle with speed {speed} >= c = {c}"));
        }
        if self.energy > 0.0 {
            let expect = scale(&self.momentum, c * c / self.energy);
            let dev = norm(&sub(&expect, &self.velocity));
            if dev > 1e-12 * c {
                return domain(format!("velocity inconsistent with p c^2 / E (deviation {dev:e})"));
            }
        }
        Ok(())
    }
}

/// Pure boost with velocity `v`. Satisfies `L^T eta L = eta`.
pub fn boost_matrix(v: Vec3, c: f64) -> Result<Matrix4> {
    if !(c > 0.0 && c.is_finite()) {
        return domain(format!("speed of light must be finite and > 0, got {c}"));
    }
    let speed = norm(&v);
    if !speed.is_finite() || speed >= c {
        return domain(format!("boost speed {speed} must be below c = {c}"));
    }
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    if speed == 0.0 {
        return Ok(m);
    }
    let beta = scale(&v, 1.0 / c);
    let b2 = dot(&beta, &beta);
    let gamma = 1.0 / (1.0 - b2).sqrt();
    m[0][0] = gamma;
    for i in 0..3 {
        m[0][i + 1] = -gamma * beta[i];
        m[i + 1][0] = -gamma * beta[i];
        for k in 0..3 {
            m[i + 1][k + 1] += (gamma - 1.0) * beta[i] * beta[k] / b2;
        }
    }
    Ok(m)
}

/// Largest entry of `|L^T eta L - eta|`.
pub fn metric_defect(m: &Matrix4) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let g: f64 = (0..4).map(|k| m[k][a] * ETA[k] * m[k][b]).sum();
            let target = if a == b { ETA[a] } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    worst
}

pub fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut r = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            r[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    r
}

/// Boosts a plane wave `(w, k)` into the frame moving with velocity `v`.
pub fn transform_wave(w: f64, k: Vec3, v: Vec3, c: f64) -> Result<(f64, Vec3)> {
    let l = boost_matrix(v, c)?;
    let q = FourVector::from_parts(w / c, k).transform(&l);
    Ok((q.t * c, q.spatial()))
}

/// Boosts a particle state into the frame moving with velocity `v`.
pub fn transform_particle(s: &ParticleState, v: Vec3, c: f64) -> Result<ParticleState> {
    s.validate(c)?;
    let l = boost_matrix(v, c)?;
    let q = FourVector::from_parts(s.energy / c, s.momentum).transform(&l);
    let energy = q.t * c;
    let momentum = q.spatial();
    let velocity = if energy > 0.0 { scale(&momentum, c * c / energy) } else { [0.0; 3] };
    Ok(ParticleState { energy, momentum, rest_mass: s.rest_mass, velocity })
}

/// The wave associated with a particle through `E = hbar w`, `p = hbar k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeBroglieWave {
    pub w: f64,
    pub k: Vec3,
    /// `w / |k|`; infinite for a particle at rest.
    pub phase_velocity: Extended,
    /// `dE/dp = |p| c^2 / E`, the particle speed.
    pub group_velocity: f64,
}

pub fn debroglie_map(s: &ParticleState, hbar: f64) -> Result<DeBroglieWave> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return domain(format!("hbar must be finite and > 0, got {hbar}"));
    }
    let w = s.energy / hbar;
    let k = scale(&s.momentum, 1.0 / hbar);
    let kn = norm(&k);
    let phase_velocity = if kn == 0.0 { Extended::Infinite } else { Extended::Finite(w / kn) };
    Ok(DeBroglieWave { w, k, phase_velocity, group_velocity: s.speed() })
}

/// A displacement between two lattice events: `dn` time steps and `dj` space steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeStep {
    pub dn: u64,
    pub dj: [i64; 3],
}

impl LatticeStep {
    pub fn new(dn: u64, dj: [i64; 3]) -> Self {
        LatticeStep { dn, dj }
    }

    /// One-dimensional step along x.
    pub fn along_x(dn: u64, dj: i64) -> Self {
        LatticeStep { dn, dj: [dj, 0, 0] }
    }
}

/// Energy and momentum of a particle that moves by one lattice step.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeKinematics {
    pub state: ParticleState,
    /// `dj * eps / (dn * tau)`, exact in rational arithmetic.
    pub velocity_exact: [BigRational; 3],
    /// `(c dt)^2 - |dx|^2`, exact.
    pub interval_sq_exact: BigRational,
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite grid constant")
}

/// Energy and momentum of a particle of rest mass `m0` crossing `step`.
///
/// The velocity is evaluated exactly from the binary values of `tau` and
/// `eps`; `E` and `p` then take one square root of the exact interval.
pub fn discrete_energy_momentum(m0: f64, step: LatticeStep, grid: &GridSpec) -> Result<LatticeKinematics> {
    grid.validate()?;
    if !(m0 >= 0.0 && m0.is_finite()) {
        return domain(format!("rest mass must be finite and >= 0, got {m0}"));
    }
    if step.dn == 0 {
        return domain("lattice step needs dn >= 1");
    }
    let (tau, eps, c) = (exact(grid.tau), exact(grid.eps), exact(grid.c));
    let dt = tau * BigRational::from_integer(BigInt::from(step.dn));
    let dx: [BigRational; 3] = step.dj.map(|d| &eps * BigRational::from_integer(BigInt::from(d)));
    let ct = &c * &dt;
    let dx2 = dx.iter().fold(BigRational::zero(), |acc, d| acc + d * d);
    let interval_sq = &ct * &ct - dx2;
    if interval_sq <= BigRational::zero() && m0 > 0.0 {
        return domain(format!(
            "step (dn={}, dj={:?}) is not strictly timelike; a massive particle cannot take it",
            step.dn, step.dj
        ));
    }
    let velocity_exact: [BigRational; 3] = [&dx[0] / &dt, &dx[1] / &dt, &dx[2] / &dt];
    let velocity = velocity_exact.clone().map(|u| u.to_f64().unwrap_or(f64::NAN));
    let cf = grid.c;
    let (energy, momentum) = if m0 == 0.0 {
        (0.0, [0.0; 3])
    } else {
        // E = m0 c^2 / sqrt(1 - u^2/c^2), p = E u / c^2
        let one_minus = (&interval_sq / (&ct * &ct)).to_f64().unwrap_or(f64::NAN);
        let gamma = 1.0 / one_minus.sqrt();
        let energy = m0 * cf * cf * gamma;
        (energy, scale(&velocity, m0 * gamma))
    };
    let state = ParticleState { energy, momentum, rest_mass: m0, velocity };
    if m0 > 0.0 {
        state.validate(cf)?;
    }
    Ok(LatticeKinematics { state, velocity_exact, interval_sq_exact: interval_sq })
}

/// Checks `p c^2 / E = dx / dt` exactly.
///
/// `E` and `p` share the factor `m0 / sqrt((c dt)^2 - |dx|^2)`, which cancels
/// in the ratio; the remaining rational parts `c^2 (c dt)` and `c dx` are
/// compared with `dx / dt` without rounding.
pub fn velocity_matches_exactly(step: LatticeStep, grid: &GridSpec) -> bool {
    let (tau, eps, c) = (exact(grid.tau), exact(grid.eps), exact(grid.c));
    let dt = tau * BigRational::from_integer(BigInt::from(step.dn));
    let energy_part = &c * &c * (&c * &dt);
    step.dj.iter().all(|&d| {
        let dx = &eps * BigRational::from_integer(BigInt::from(d));
        let momentum_part = &c * &dx;
        momentum_part * &c * &c / &energy_part == &dx / &dt
    })
}

/// Residuals of the total-difference argument applied to a pair of states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalDifference {
    /// `(2 E dE + dE^2)/c^2 - 2 p.dp - |dp|^2`.
    pub residual23: f64,
    /// `dE - u~ . dp` with the averaged velocity `u~ = c^2 (p + p')/(E + E')`.
    pub residual24: f64,
    /// `dE - u . dp` with the velocity of the first state.
    pub residual24_pointwise: f64,
    /// `dE^2 / c^2 - |dp|^2`.
    pub invariant: f64,
    pub averaged_velocity: Vec3,
}

pub fn total_difference_mass_shell(s: &ParticleState, s_next: &ParticleState, c: f64) -> Result<TotalDifference> {
    s.validate(c)?;
    s_next.validate(c)?;
    let scale_m = s.rest_mass.abs().max(1.0);
    if (s.rest_mass - s_next.rest_mass).abs() > 1e-10 * scale_m {
        return domain(format!(
            "states lie on different mass shells: m0 = {} vs {}",
            s.rest_mass, s_next.rest_mass
        ));
    }
    let de = s_next.energy - s.energy;
    let dp = sub(&s_next.momentum, &s.momentum);
    let c2 = c * c;
    let residual23 = (2.0 * s.energy * de + de * de) / c2 - 2.0 * dot(&s.momentum, &dp) - dot(&dp, &dp);
    let e_sum = s.energy + s_next.energy;
    let averaged_velocity = if e_sum > 0.0 {
        let p_sum = [
            s.momentum[0] + s_next.momentum[0],
            s.momentum[1] + s_next.momentum[1],
            s.momentum[2] + s_next.momentum[2],
        ];
        scale(&p_sum, c2 / e_sum)
    } else {
        [0.0; 3]
    };
    Ok(TotalDifference {
        residual23,
        residual24: de - dot(&averaged_velocity, &dp),
        residual24_pointwise: de - dot(&s.velocity, &dp),
        invariant: de * de / c2 - dot(&dp, &dp),
        averaged_velocity,
    })
}

/// The printed scalar and vector transformation laws for waves and particles.
///
/// These reproduce the boost along an arbitrary velocity from scalar data and
/// serve as an independent route against [`transform_wave`] and
/// [`transform_particle`].
pub mod printed {
    use super::*;

    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct PrintedWave {
        /// `w (1 - v.n / v_phase) / sqrt(1 - v^2/c^2)`
        pub w: f64,
        /// `k + (v/v^2) [ (v.k)(1 - sqrt(1 - v^2/c^2)) - v^2 k v_phase / c^2 ] / sqrt(1 - v^2/c^2)`
        pub k: Vec3,
        /// `k sqrt(1 - v^2/c^2 + v^2 v_phase^2/c^4 + (v.n)^2/c^2 - 2 (v.n) v_phase / c^2) / sqrt(1 - v^2/c^2)`
        pub k_magnitude: f64,
    }

    pub fn wave(w: f64, k: Vec3, v: Vec3, c: f64) -> Result<PrintedWave> {
        let kn = norm(&k);
        if kn == 0.0 {
            return domain("printed wave law needs a finite phase velocity (|k| > 0)");
        }
        let v2 = dot(&v, &v);
        if v2 >= c * c {
            return domain("boost speed must be below c");
        }
        let v_phase = w / kn;
        let n = scale(&k, 1.0 / kn);
        let root = (1.0 - v2 / (c * c)).sqrt();
        let vn = dot(&v, &n);
        let w_p = w * (1.0 - vn / v_phase) / root;
        let k_p = if v2 == 0.0 {
            k
        } else {
            let coef = (dot(&v, &k) * (1.0 - root) - v2 * kn * v_phase / (c * c)) / root / v2;
            [k[0] + v[0] * coef, k[1] + v[1] * coef, k[2] + v[2] * coef]
        };
        let c2 = c * c;
        let inner = 1.0 - v2 / c2 + v2 * v_phase * v_phase / (c2 * c2) + vn * vn / c2 - 2.0 * vn * v_phase / c2;
        Ok(PrintedWave { w: w_p, k: k_p, k_magnitude: kn * inner.sqrt() / root })
    }

    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct PrintedParticle {
        /// `E (1 - v.u/c^2) / sqrt(1 - v^2/c^2)`
        pub energy: f64,
        /// `p + (v/v^2) [ (v.p)(1 - sqrt(1 - v^2/c^2)) - v^2 p / u ] / sqrt(1 - v^2/c^2)`
        pub momentum: Vec3,
        /// `sqrt(p^2 (1 - v^2/c^2) + p^2 v^2/u^2 + (v.p)^2/c^2 - 2 p (v.p)/u) / sqrt(1 - v^2/c^2)`
        pub momentum_magnitude: f64,
    }

    pub fn particle(s: &ParticleState, v: Vec3, c: f64) -> Result<PrintedParticle> {
        let u = s.speed();
        let p = norm(&s.momentum);
        if u == 0.0 || p == 0.0 {
            return domain("printed particle law divides by the particle speed; needs u > 0");
        }
        let v2 = dot(&v, &v);
        if v2 >= c * c {
            return domain("boost speed must be below c");
        }
        let c2 = c * c;
        let root = (1.0 - v2 / c2).sqrt();
        let energy = s.energy * (1.0 - dot(&v, &s.velocity) / c2) / root;
        let vp = dot(&v, &s.momentum);
        let momentum = if v2 == 0.0 {
            s.momentum
        } else {
            let coef = (vp * (1.0 - root) - v2 * p / u) / root / v2;
            [
                s.momentum[0] + v[0] * coef,
                s.momentum[1] + v[1] * coef,
                s.momentum[2] + v[2] * coef,
            ]
        };
        let inner = p * p * (1.0 - v2 / c2) + p * p * v2 / (u * u) + vp * vp / c2 - 2.0 * p * vp / u;
        Ok(PrintedParticle { energy, momentum, momentum_magnitude: inner.sqrt() / root })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_boost_is_identity() {
        let m = boost_matrix([0.0; 3], 1.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn boost_gamma_five_quarters() {
        let m = boost_matrix([0.6, 0.0, 0.0], 1.0).unwrap();
        assert!((m[0][0] - 1.25).abs() < 1e-15);
        assert!((m[0][1] + 0.75).abs() < 1e-15);
        let m3 = boost_matrix([1.8, 0.0, 0.0], 3.0).unwrap();
        assert!((m3[0][0] - 1.25).abs() < 1e-15);
    }

    #[test]
    fn superluminal_boost_rejected() {
        assert!(boost_matrix([1.0, 0.0, 0.0], 1.0).is_err());
        assert!(boost_matrix([0.6, 0.6, 0.6], 1.0).is_err());
        assert!(boost_matrix([f64::NAN, 0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn boost_and_inverse_compose_to_identity() {
        let v = [0.3, -0.4, 0.5];
        let a = boost_matrix(v, 1.0).unwrap();
        let b = boost_matrix([-0.3, 0.4, -0.5], 1.0).unwrap();
        let p = mat_mul(&a, &b);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p[i][j] - want).abs() < 1e-12);
            }
        }
        assert!(metric_defect(&a) < 1e-13);
    }

    #[test]
    fn light_wave_redshift() {
        let (w, k) = transform_wave(1.0, [1.0, 0.0, 0.0], [0.6, 0.0, 0.0], 1.0).unwrap();
        assert!((w - 0.5).abs() < 1e-15);
        assert!((k[0] - 0.5).abs() < 1e-15 && k[1] == 0.0 && k[2] == 0.0);
        let (w0, k0) = transform_wave(2.0, [0.1, 0.2, 0.3], [0.0; 3], 1.0).unwrap();
        assert_eq!((w0, k0), (2.0, [0.1, 0.2, 0.3]));
    }

    #[test]
    fn wave_into_rest_frame() {
        let (w, k) = transform_wave(1.25, [0.75, 0.0, 0.0], [0.6, 0.0, 0.0], 1.0).unwrap();
        assert!((w - 1.0).abs() < 1e-15);
        assert!(k.iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn particle_into_rest_frame() {
        let s = ParticleState::on_shell(1.0, [0.75, 0.0, 0.0], 1.0).unwrap();
        assert_eq!(s.energy, 1.25);
        let r = transform_particle(&s, [0.6, 0.0, 0.0], 1.0).unwrap();
        assert!((r.energy - 1.0).abs() < 1e-15);
        assert!(norm(&r.momentum) < 1e-15);
        assert_eq!(transform_particle(&s, [0.0; 3], 1.0).unwrap(), s);
    }

    #[test]
    fn photon_stays_lightlike() {
        let s = ParticleState::on_shell(0.0, [0.0, 2.0, 0.0], 1.0).unwrap();
        let r = transform_particle(&s, [0.5, 0.3, -0.2], 1.0).unwrap();
        assert!((r.energy - norm(&r.momentum)).abs() < 1e-14);
    }

    #[test]
    fn off_shell_state_rejected() {
        let s = ParticleState { energy: 2.0, momentum: [0.75, 0.0, 0.0], rest_mass: 1.0, velocity: [0.375, 0.0, 0.0] };
        assert!(transform_particle(&s, [0.1, 0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn debroglie_velocities() {
        let s = ParticleState::on_shell(1.0, [0.75, 0.0, 0.0], 1.0).unwrap();
        let d = debroglie_map(&s, 1.0).unwrap();
        assert_eq!((d.w, d.k[0]), (1.25, 0.75));
        let vp = d.phase_velocity.finite().unwrap();
        assert!((vp - 5.0 / 3.0).abs() < 1e-15);
        assert!((d.group_velocity - 0.6).abs() < 1e-15);
        assert!((vp * d.group_velocity - 1.0).abs() < 1e-15);

        let rest = ParticleState::on_shell(2.0, [0.0; 3], 1.0).unwrap();
        assert_eq!(debroglie_map(&rest, 1.0).unwrap().phase_velocity, Extended::Infinite);

        let photon = ParticleState::on_shell(0.0, [0.0, 0.0, 3.0], 2.0).unwrap();
        assert_eq!(debroglie_map(&photon, 0.5).unwrap().phase_velocity, Extended::Finite(2.0));
    }

    #[test]
    fn lattice_step_five_three() {
        let lk = discrete_energy_momentum(1.0, LatticeStep::along_x(5, 3), &GridSpec::default()).unwrap();
        assert_eq!(lk.state.energy, 1.25);
        assert_eq!(lk.state.momentum[0], 0.75);
        assert_eq!(lk.state.velocity[0], 0.6);
        assert_eq!(lk.velocity_exact[0], BigRational::new(3.into(), 5.into()));
        assert_eq!(lk.interval_sq_exact, BigRational::from_integer(16.into()));
    }

    #[test]
    fn lattice_rest_step() {
        let grid = GridSpec { c: 3.0, ..Default::default() };
        let lk = discrete_energy_momentum(2.0, LatticeStep::new(7, [0, 0, 0]), &grid).unwrap();
        assert_eq!(lk.state.energy, 18.0);
        assert_eq!(lk.state.momentum, [0.0; 3]);
    }

    #[test]
    fn lightlike_or_spacelike_steps_rejected() {
        let g = GridSpec::default();
        assert!(discrete_energy_momentum(1.0, LatticeStep::along_x(3, 3), &g).is_err());
        assert!(discrete_energy_momentum(1.0, LatticeStep::new(3, [2, 2, 1]), &g).is_err());
        assert!(discrete_energy_momentum(1.0, LatticeStep::new(0, [0, 0, 0]), &g).is_err());
    }

    #[test]
    fn total_difference_of_equal_states_vanishes() {
        let s = ParticleState::on_shell(1.0, [0.75, 0.0, 0.0], 1.0).unwrap();
        let td = total_difference_mass_shell(&s, &s, 1.0).unwrap();
        assert_eq!(td.residual23, 0.0);
        assert_eq!(td.residual24, 0.0);
        assert_eq!(td.invariant, 0.0);
    }

    #[test]
    fn total_difference_rejects_different_shells() {
        let a = ParticleState::on_shell(1.0, [0.5, 0.0, 0.0], 1.0).unwrap();
        let b = ParticleState::on_shell(1.1, [0.5, 0.0, 0.0], 1.0).unwrap();
        assert!(total_difference_mass_shell(&a, &b, 1.0).is_err());
    }

    #[test]
    fn printed_laws_need_finite_phase_velocity() {
        assert!(printed::wave(1.0, [0.0; 3], [0.1, 0.0, 0.0], 1.0).is_err());
        let rest = ParticleState::on_shell(1.0, [0.0; 3], 1.0).unwrap();
        assert!(printed::particle(&rest, [0.1, 0.0, 0.0], 1.0).is_err());
    }
}
