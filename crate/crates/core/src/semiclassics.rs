//! Local-temperature kinematics: potentials, accelerations, constant-probability
//! wavepacket motion, redshift and Tolman ratios, Unruh and boosted-gas
//! formulas, and the classical entropic-force relations they generalise.
//!
//! Units default to `ħ = c = k_B = 1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub c: f64,
    pub hbar: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants { c: 1.0, hbar: 1.0 }
    }
}

impl PhysicalConstants {
    pub fn new(c: f64, hbar: f64) -> Result<Self> {
        if !(c > 0.0 && hbar > 0.0 && c.is_finite() && hbar.is_finite()) {
            return Err(Error::InvalidArgument(format!("constants must be positive (c = {c}, ħ = {hbar})")));
        }
        Ok(PhysicalConstants { c, hbar })
    }
}

/// Samples `values[i]` at `x0 + i * spacing`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid {
    x0: f64,
    spacing: f64,
    values: Vec<f64>,
}

impl UniformGrid {
    pub fn new(x0: f64, spacing: f64, values: Vec<f64>) -> Result<Self> {
        if !(spacing > 0.0) || !spacing.is_finite() || !x0.is_finite() {
            return Err(Error::InvalidProfile(format!("bad grid spacing {spacing}")));
        }
        if values.len() < 3 {
            return Err(Error::InvalidProfile("a grid needs at least 3 points".into()));
        }
        Ok(UniformGrid { x0, spacing, values })
    }

    /// Builds a grid from explicit abscissae, which must be uniformly spaced
    /// to `1e-12` (relative to the spacing).
    pub fn from_points(xs: &[f64], values: Vec<f64>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::DimensionMismatch(xs.len(), values.len()));
        }
        if xs.len() < 3 {
            return Err(Error::InvalidProfile("a grid needs at least 3 points".into()));
        }
        let spacing = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        for (i, &x) in xs.iter().enumerate() {
            let expected = xs[0] + i as f64 * spacing;
            if (x - expected).abs() > 1e-12 * spacing.abs().max(1.0) {
                return Err(Error::InvalidProfile(format!("non-uniform spacing at x = {x}")));
            }
        }
        Self::new(xs[0], spacing, values)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x_at(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.spacing
    }

    pub fn x_max(&self) -> f64 {
        self.x_at(self.values.len() - 1)
    }

    /// Fractional grid coordinate of `x`, snapped to a node within 1e-9 cells.
    fn coordinate(&self, x: f64) -> f64 {
        let u = (x - self.x0) / self.spacing;
        let r = u.round();
        if (u - r).abs() < 1e-9 {
            r
        } else {
            u
        }
    }

    /// Linear interpolation; outside `[x0, x_max]` is a domain error.
    pub fn value(&self, x: f64) -> Result<f64> {
        let u = self.coordinate(x);
        let last = (self.values.len() - 1) as f64;
        if !(0.0..=last).contains(&u) {
            return Err(Error::DomainExit(x));
        }
        let i = (u.floor() as usize).min(self.values.len() - 2);
        let frac = u - i as f64;
        Ok(self.values[i] * (1.0 - frac) + self.values[i + 1] * frac)
    }

    fn node_derivative(&self, i: usize) -> f64 {
        (self.values[i + 1] - self.values[i - 1]) / (2.0 * self.spacing)
    }

    /// Second-order central difference at interior nodes, linearly
    /// interpolated between them. The outermost cells are boundary points.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.derivative_with(x, |i| self.node_derivative(i))
    }

    fn derivative_with(&self, x: f64, node: impl Fn(usize) -> f64) -> Result<f64> {
        let u = self.coordinate(x);
        let last = (self.values.len() - 1) as f64;
        if !(1.0..=last - 1.0).contains(&u) {
            return Err(Error::BoundaryPoint(x));
        }
        let i = u.floor() as usize;
        let frac = u - i as f64;
        if frac == 0.0 {
            return Ok(node(i));
        }
        Ok(node(i) * (1.0 - frac) + node(i + 1) * frac)
    }
}

/// Scalar function of position, analytic or sampled.
#[derive(Clone)]
pub enum ScalarField {
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    Sampled(UniformGrid),
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Function(_) => f.write_str("ScalarField::Function(..)"),
            ScalarField::Sampled(g) => f.debug_tuple("ScalarField::Sampled").field(g).finish(),
        }
    }
}

impl ScalarField {
    pub fn function(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ScalarField::Function(Arc::new(f))
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        match self {
            ScalarField::Function(f) => Ok(f(x)),
            ScalarField::Sampled(g) => g.value(x),
        }
    }

    /// Analytic fields use a central difference with step `1e-5 (1 + |x|)`.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        match self {
            ScalarField::Function(f) => {
                let h = 1e-5 * (1.0 + x.abs());
                Ok((f(x + h) - f(x - h)) / (2.0 * h))
            }
            ScalarField::Sampled(g) => g.derivative(x),
        }
    }
}

/// Local temperature `Θ(x)`.
#[derive(Debug, Clone)]
pub enum TemperatureProfile {
    Constant(f64),
    /// `Θ(x) = theta0 · exp(rate · x)`: uniform acceleration `-c² rate`.
    Exponential { theta0: f64, rate: f64 },
    Field(ScalarField),
}

impl TemperatureProfile {
    pub fn sampled(grid: UniformGrid) -> Result<Self> {
        if let Some((i, &v)) = grid.values().iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
            let _ = v;
            return Err(Error::NonPositiveTemperature(grid.x_at(i)));
        }
        Ok(TemperatureProfile::Field(ScalarField::Sampled(grid)))
    }

    pub fn function(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        TemperatureProfile::Field(ScalarField::function(f))
    }

    pub fn theta(&self, x: f64) -> Result<f64> {
        let v = match self {
            TemperatureProfile::Constant(t) => *t,
            TemperatureProfile::Exponential { theta0, rate } => theta0 * (rate * x).exp(),
            TemperatureProfile::Field(f) => f.value(x)?,
        };
        if v > 0.0 {
            Ok(v)
        } else {
            Err(Error::NonPositiveTemperature(x))
        }
    }

    /// `d ln Θ / dx`.
    pub fn dln_theta(&self, x: f64) -> Result<f64> {
        match self {
            TemperatureProfile::Constant(t) => {
                if *t > 0.0 {
                    Ok(0.0)
                } else {
                    Err(Error::NonPositiveTemperature(x))
                }
            }
            TemperatureProfile::Exponential { theta0, rate } => {
                if *theta0 > 0.0 {
                    Ok(*rate)
                } else {
                    Err(Error::NonPositiveTemperature(x))
                }
            }
            TemperatureProfile::Field(ScalarField::Sampled(g)) => {
                // node derivatives use the node temperature
                g.derivative_with(x, |i| g.node_derivative(i) / g.values()[i])
            }
            TemperatureProfile::Field(f) => {
                let theta = self.theta(x)?;
                Ok(f.derivative(x)? / theta)
            }
        }
    }
}

/// `φ = c² ln Θ(x)`.
pub fn potential_from_temperature(profile: &TemperatureProfile, x: f64, consts: &PhysicalConstants) -> Result<f64> {
    Ok(consts.c * consts.c * profile.theta(x)?.ln())
}

/// `a = -c² d ln Θ / dx`.
pub fn acceleration(profile: &TemperatureProfile, x: f64, consts: &PhysicalConstants) -> Result<f64> {
    Ok(-consts.c * consts.c * profile.dln_theta(x)?)
}

/// `ν(x)/ν(x') = Θ(x')/Θ(x)`.
pub fn redshift_ratio(profile: &TemperatureProfile, x: f64, x_prime: f64) -> Result<f64> {
    Ok(profile.theta(x_prime)? / profile.theta(x)?)
}

/// `T_phys(x) / T_phys(x')` with `T_phys = T / Θ`.
pub fn tolman_ratio(t_global: f64, profile: &TemperatureProfile, x: f64, x_prime: f64) -> Result<f64> {
    let local = |y: f64| profile.theta(y).map(|theta| t_global / theta);
    Ok(local(x)? / local(x_prime)?)
}

/// `(ΔE, T_U) = (ħ|a|/c, ħ|a|/(2πc))`.
pub fn unruh_temperature(a: f64, consts: &PhysicalConstants) -> (f64, f64) {
    let delta_e = consts.hbar * a.abs() / consts.c;
    (delta_e, delta_e / (2.0 * std::f64::consts::PI))
}

/// Entropy of a phonon gas of temperature `t` and volume `v` moving at
/// speed `speed`: `prefactor · T³ V γ⁴`.
pub fn lorentz_entropy(t: f64, v: f64, speed: f64, consts: &PhysicalConstants, prefactor: f64) -> Result<f64> {
    if speed.abs() >= consts.c {
        return Err(Error::SuperluminalVelocity(speed.abs()));
    }
    if !(t > 0.0 && v > 0.0 && prefactor > 0.0) {
        return Err(Error::InvalidArgument("T, V and prefactor must be positive".into()));
    }
    let gamma = lorentz_gamma(speed, consts)?;
    Ok(prefactor * t.powi(3) * v * gamma.powi(4))
}

pub fn lorentz_gamma(speed: f64, consts: &PhysicalConstants) -> Result<f64> {
    let beta = speed / consts.c;
    if beta.abs() >= 1.0 {
        return Err(Error::SuperluminalVelocity(speed.abs()));
    }
    Ok(1.0 / (1.0 - beta * beta).sqrt())
}

/// `F = T dS/dx`.
pub fn classical_entropic_force(entropy: &ScalarField, t: f64, x: f64) -> Result<f64> {
    Ok(t * entropy.derivative(x)?)
}

/// `-T S(x)`: the entropic term added to the mechanical energy when the
/// probability is held constant.
pub fn entropic_potential(entropy: &ScalarField, t: f64, x: f64) -> Result<f64> {
    Ok(-t * entropy.value(x)?)
}

/// `dP/dt = -E d ln T/dx` with equipartition `E = (3/2) N T`.
pub fn adiabatic_gas_force(n: f64, t: f64, dln_t_dx: f64) -> f64 {
    -equipartition_energy(n, t) * dln_t_dx
}

pub fn equipartition_energy(n: f64, t: f64) -> f64 {
    1.5 * n * t
}

/// `dP/dt = -(E/c²) dφ/dx`.
pub fn potential_gradient_force(energy: f64, dphi_dx: f64, consts: &PhysicalConstants) -> f64 {
    -energy / (consts.c * consts.c) * dphi_dx
}

/// Gaussian characteristic function `φ(β) = Θ² β² / 2` of the energy
/// fluctuations at one position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianFluctuations {
    pub theta: f64,
}

impl GaussianFluctuations {
    pub fn phi(&self, beta: f64) -> f64 {
        0.5 * self.theta * self.theta * beta * beta
    }

    /// Saddle point of `φ(β) + βE`.
    pub fn saddle_beta(&self, energy: f64) -> f64 {
        -energy / (self.theta * self.theta)
    }

    /// `E = -∂φ/∂β`.
    pub fn energy_at(&self, beta: f64) -> f64 {
        -self.theta * self.theta * beta
    }

    /// `ln p(E) = min_β [φ(β) + βE]`, evaluated at the saddle.
    pub fn ln_probability(&self, energy: f64) -> f64 {
        let beta = self.saddle_beta(energy);
        self.phi(beta) + beta * energy
    }
}

/// `dP/dt = (1/β) ∂φ/∂x` at the saddle for energy `E`, where `∂φ/∂x = Θ Θ' β²`.
pub fn saddle_point_force(profile: &TemperatureProfile, energy: f64, x: f64) -> Result<f64> {
    let theta = profile.theta(x)?;
    let dtheta = profile.dln_theta(x)? * theta;
    let beta = GaussianFluctuations { theta }.saddle_beta(energy);
    if beta == 0.0 {
        return Ok(0.0);
    }
    let dphi_dx = theta * dtheta * beta * beta;
    Ok(dphi_dx / beta)
}

/// `dP/dt = -E d ln Θ/dx`.
pub fn entropic_force(profile: &TemperatureProfile, e_int: f64, x: f64) -> Result<f64> {
    Ok(-e_int * profile.dln_theta(x)?)
}

/// Position, velocity, momentum and internal (rest) energy of a wavepacket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavepacketState {
    pub x: f64,
    pub v: f64,
    pub momentum: f64,
    pub e_int: f64,
}

impl WavepacketState {
    /// `P = m v` with `m = E_int / c²`.
    pub fn new(x: f64, v: f64, e_int: f64, consts: &PhysicalConstants) -> Self {
        WavepacketState {
            x,
            v,
            momentum: e_int * v / (consts.c * consts.c),
            e_int,
        }
    }

    pub fn mass(&self, consts: &PhysicalConstants) -> f64 {
        self.e_int / (consts.c * consts.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub x: f64,
    pub v: f64,
    pub momentum: f64,
    pub e_int: f64,
    /// `E_int / Θ(x)`, constant along ideal motion.
    pub conserved_ratio: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectoryPoint {
        self.points.last().expect("trajectory has the initial point")
    }

    /// Largest `|r(t)/r(0) - 1|` of the conserved ratio.
    pub fn max_ratio_drift(&self) -> f64 {
        let r0 = self.points[0].conserved_ratio;
        self.points
            .iter()
            .map(|p| (p.conserved_ratio / r0 - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Fixed-step RK4 for `dx/dt = v`, `dP/dt = -E_int d ln Θ/dx`, where the
/// internal energy is slaved to the profile, `E_int(x) = E_int(0) Θ(x)/Θ(x₀)`,
/// and `v = c² P / E_int`.
pub fn integrate_wavepacket(
    profile: &TemperatureProfile,
    init: WavepacketState,
    dt: f64,
    n_steps: usize,
    consts: &PhysicalConstants,
) -> Result<Trajectory> {
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!("dt = {dt} must be positive")));
    }
    if !(init.e_int > 0.0) {
        return Err(Error::InvalidArgument("internal energy must be positive".into()));
    }
    let c2 = consts.c * consts.c;
    let exit = |x: f64| move |e: Error| match e {
        Error::BoundaryPoint(_) | Error::DomainExit(_) => Error::DomainExit(x),
        other => other,
    };
    let ratio = init.e_int / profile.theta(init.x).map_err(exit(init.x))?;
    let rhs = |x: f64, p: f64| -> Result<(f64, f64)> {
        let e = ratio * profile.theta(x).map_err(exit(x))?;
        let dln = profile.dln_theta(x).map_err(exit(x))?;
        Ok((c2 * p / e, -e * dln))
    };
    let point = |t: f64, x: f64, p: f64| -> Result<TrajectoryPoint> {
        let theta = profile.theta(x).map_err(exit(x))?;
        let e = ratio * theta;
        Ok(TrajectoryPoint {
            t,
            x,
            v: c2 * p / e,
            momentum: p,
            e_int: e,
            conserved_ratio: e / theta,
        })
    };

    let (mut x, mut p) = (init.x, init.momentum);
    let mut points = Vec::with_capacity(n_steps + 1);
    points.push(point(0.0, x, p)?);
    for step in 1..=n_steps {
        let (k1x, k1p) = rhs(x, p)?;
        let (k2x, k2p) = rhs(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p)?;
        let (k3x, k3p) = rhs(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p)?;
        let (k4x, k4p) = rhs(x + dt * k3x, p + dt * k3p)?;
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        points.push(point(step as f64 * dt, x, p)?);
    }
    Ok(Trajectory { points })
}
