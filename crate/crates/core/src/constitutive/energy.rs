//! The mixing energy `W(theta, chi, q)` with `q = |grad chi|^2`.

use super::params::FluidParams;

/// Value and derivatives of `W` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnergyDerivs {
    pub w: f64,
    pub w_theta: f64,
    pub w_chi: f64,
    pub w_q: f64,
    pub w_theta_theta: f64,
    pub w_theta_chi: f64,
    pub w_theta_q: f64,
    pub w_chi_chi: f64,
}

/// Interface for the temperature/concentration/gradient part of the Gibbs energy.
///
/// Everything downstream (Gibbs and Helmholtz evaluation, fluxes, checkers,
/// state recovery) only calls through this trait.
pub trait PhaseEnergy: Send + Sync + std::fmt::Debug {
    fn eval(&self, theta: f64, chi: f64, q: f64) -> EnergyDerivs;

    /// Contribution `W - theta W_theta` to the internal energy.
    fn internal_energy(&self, theta: f64, chi: f64, q: f64) -> f64 {
        let d = self.eval(theta, chi, q);
        d.w - theta * d.w_theta
    }

    /// Inverts [`internal_energy`](Self::internal_energy) for temperature by Newton iteration.
    ///
    /// Returns `None` if the iteration leaves `theta > 0` or fails to converge.
    fn temperature(&self, e: f64, chi: f64, q: f64, guess: f64) -> Option<f64> {
        let mut theta = if guess > 0.0 { guess } else { 1.0 };
        for _ in 0..50 {
            let d = self.eval(theta, chi, q);
            let f = d.w - theta * d.w_theta - e;
            let df = -theta * d.w_theta_theta;
            if !(df > 0.0) {
                return None;
            }
            let next = theta - f / df;
            if !(next > 0.0) || !next.is_finite() {
                return None;
            }
            if (next - theta).abs() <= 1e-15 * next {
                return Some(next);
            }
            theta = next;
        }
        Some(theta)
    }
}

/// `W = cv theta (1 - ln theta) + a chi^2 (1 - chi)^2 + (lambda / 2) q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleEnergy {
    pub cv: f64,
    pub a: f64,
    pub lambda: f64,
}

impl SampleEnergy {
    pub fn from_params(p: &FluidParams) -> Self {
        Self { cv: p.cv, a: p.a, lambda: p.lambda }
    }
}

impl PhaseEnergy for SampleEnergy {
    fn eval(&self, theta: f64, chi: f64, q: f64) -> EnergyDerivs {
        let ln = theta.ln();
        let m = 1.0 - chi;
        EnergyDerivs {
            w: self.cv * theta * (1.0 - ln) + self.a * chi * chi * m * m + 0.5 * self.lambda * q,
            w_theta: -self.cv * ln,
            w_chi: 2.0 * self.a * chi * m * (m - chi),
            w_q: 0.5 * self.lambda,
            w_theta_theta: -self.cv / theta,
            w_theta_chi: 0.0,
            w_theta_q: 0.0,
            w_chi_chi: 2.0 * self.a * (1.0 - 6.0 * chi + 6.0 * chi * chi),
        }
    }

    fn internal_energy(&self, theta: f64, chi: f64, q: f64) -> f64 {
        let m = 1.0 - chi;
        self.cv * theta + self.a * chi * chi * m * m + 0.5 * self.lambda * q
    }

    fn temperature(&self, e: f64, chi: f64, q: f64, _guess: f64) -> Option<f64> {
        let m = 1.0 - chi;
        let theta = (e - self.a * chi * chi * m * m - 0.5 * self.lambda * q) / self.cv;
        (theta > 0.0 && theta.is_finite()).then_some(theta)
    }
}

/// Constitutive constants bundled with the mixing energy in use.
#[derive(Debug, Clone)]
pub struct Material<W: PhaseEnergy = SampleEnergy> {
    pub params: FluidParams,
    pub energy: W,
}

impl Material<SampleEnergy> {
    /// Validated material with the sample mixing energy.
    pub fn new(params: FluidParams) -> crate::Result<Self> {
        params.validate()?;
        Ok(Self { energy: SampleEnergy::from_params(&params), params })
    }
}

impl<W: PhaseEnergy> Material<W> {
    pub fn with_energy(params: FluidParams, energy: W) -> crate::Result<Self> {
        params.validate()?;
        Ok(Self { params, energy })
    }

    pub fn tau_star(&self) -> f64 {
        self.params.tau_star()
    }
}
