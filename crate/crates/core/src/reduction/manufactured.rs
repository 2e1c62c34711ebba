//! The smooth manufactured field family shared by every checker.

use std::f64::consts::PI;

use crate::constitutive::{chi_bar, FluidParams};
use crate::error::Result;
use crate::fields::{GridSpec, ScalarField, VectorField};
use crate::models::{ModelKind, PrimState};

/// `rho = rho0 (1 + alpha sin kx)`, `u = u0 sin 2kx`, `theta = theta0 (1 + alpha_theta cos kx)`;
/// 2D variants use tensor-product modes. General models add
/// `chi = chi(rho) + chi_amp cos kx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Manufactured {
    pub rho0: f64,
    pub alpha: f64,
    pub u0: f64,
    pub theta0: f64,
    pub alpha_theta: f64,
    pub chi_amp: f64,
    /// Wavenumber in units of `2 pi / length`.
    pub mode: f64,
}

impl Default for Manufactured {
    fn default() -> Self {
        Self { rho0: 1.5, alpha: 0.1, u0: 0.05, theta0: 1.0, alpha_theta: 0.01, chi_amp: 0.02, mode: 1.0 }
    }
}

impl Manufactured {
    /// Small-amplitude variant around the stable pure-phase-2 side, used for dynamics.
    pub fn dynamic() -> Self {
        Self { rho0: 1.9, alpha: 0.02, u0: 0.05, alpha_theta: 0.01, ..Self::default() }
    }

    fn k(&self, grid: &GridSpec) -> f64 {
        2.0 * PI * self.mode / grid.length()
    }

    pub fn rho_at(&self, grid: &GridSpec, x: [f64; 2]) -> f64 {
        let k = self.k(grid);
        let shape = if grid.dim() == 1 { (k * x[0]).sin() } else { (k * x[0]).sin() * (k * x[1]).cos() };
        self.rho0 * (1.0 + self.alpha * shape)
    }

    pub fn u_at(&self, grid: &GridSpec, x: [f64; 2]) -> [f64; 2] {
        let k = self.k(grid);
        if grid.dim() == 1 {
            [self.u0 * (2.0 * k * x[0]).sin(), 0.0]
        } else {
            [self.u0 * (2.0 * k * x[0]).sin() * (k * x[1]).cos(), self.u0 * (k * x[0]).sin() * (2.0 * k * x[1]).sin()]
        }
    }

    pub fn theta_at(&self, grid: &GridSpec, x: [f64; 2]) -> f64 {
        let k = self.k(grid);
        let shape = if grid.dim() == 1 { (k * x[0]).cos() } else { (k * x[0]).cos() * (k * x[1]).cos() };
        self.theta0 * (1.0 + self.alpha_theta * shape)
    }

    pub fn chi_at(&self, params: &FluidParams, grid: &GridSpec, x: [f64; 2]) -> Result<f64> {
        let k = self.k(grid);
        let shape = if grid.dim() == 1 { (k * x[0]).cos() } else { (k * x[0]).cos() * (k * x[1]).cos() };
        Ok(chi_bar(params, self.rho_at(grid, x))?.chi + self.chi_amp * shape)
    }

    /// Samples the family on `grid` in the shape `kind` expects.
    pub fn state(&self, params: &FluidParams, kind: ModelKind, grid: GridSpec) -> Result<PrimState> {
        let rho = ScalarField::from_fn(grid, |x| self.rho_at(&grid, x));
        let u = VectorField::from_fn(grid, |x| self.u_at(&grid, x));
        let theta = ScalarField::from_fn(grid, |x| self.theta_at(&grid, x));
        let chi = if kind.is_general() {
            let values =
                (0..grid.cells()).map(|i| self.chi_at(params, &grid, grid.coords(i))).collect::<Result<Vec<_>>>()?;
            Some(ScalarField::new(grid, values)?)
        } else {
            None
        };
        PrimState::new(rho, u, theta, chi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_family_keeps_concentration_inside_unit_interval() {
        let p = FluidParams::default();
        for m in [Manufactured::default(), Manufactured::dynamic()] {
            let lo = m.rho0 * (1.0 - m.alpha);
            let hi = m.rho0 * (1.0 + m.alpha);
            for r in [lo, hi] {
                let c = chi_bar(&p, r).unwrap().chi;
                assert!(c > m.chi_amp && c < 1.0 - m.chi_amp, "chi = {c}");
            }
        }
    }
}
