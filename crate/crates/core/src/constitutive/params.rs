use crate::error::{domain, Result};

/// Two-phase constitutive constants.
///
/// `tau1`, `tau2` are the specific volumes of the pure phases, `a` the
/// double-well height, `lambda` the gradient-energy coefficient, `cv` the
/// heat capacity, `eta`/`zeta` shear and bulk viscosity, `beta` the heat
/// conductivity, `eps` the Allen-Cahn relaxation coefficient, `gamma` the
/// Cahn-Hilliard mobility and `delta` the compressibility regularisation used
/// only by the general phase-field models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams {
    pub tau1: f64,
    pub tau2: f64,
    pub a: f64,
    pub lambda: f64,
    pub cv: f64,
    pub eta: f64,
    pub zeta: f64,
    pub beta: f64,
    pub eps: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl Default for FluidParams {
    fn default() -> Self {
        Self {
            tau1: 1.0,
            tau2: 0.5,
            a: 1.0,
            lambda: 1e-2,
            cv: 1.0,
            eta: 1e-2,
            zeta: 1e-2,
            beta: 1e-2,
            eps: 1e-2,
            gamma: 1e-2,
            delta: 1e-2,
        }
    }
}

impl FluidParams {
    /// Phase contrast `tau1 - tau2`.
    pub fn tau_star(&self) -> f64 {
        self.tau1 - self.tau2
    }

    /// Specific volume of the mixture at concentration `chi`.
    pub fn mixture_volume(&self, chi: f64) -> f64 {
        chi * self.tau1 + (1.0 - chi) * self.tau2
    }

    /// Checks every sign constraint; the error names the offending key.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tau1", self.tau1),
            ("tau2", self.tau2),
            ("cv", self.cv),
            ("beta", self.beta),
            ("eps", self.eps),
            ("gamma", self.gamma),
        ];
        let non_negative =
            [("a", self.a), ("lambda", self.lambda), ("eta", self.eta), ("zeta", self.zeta), ("delta", self.delta)];
        for (key, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(domain(format!("{key} must be positive, got {v}")));
            }
        }
        for (key, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(domain(format!("{key} must be non-negative, got {v}")));
            }
        }
        if self.tau_star() == 0.0 {
            return Err(domain("tau* must be nonzero (tau1 == tau2)"));
        }
        Ok(())
    }
}
