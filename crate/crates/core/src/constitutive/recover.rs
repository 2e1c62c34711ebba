//! Conserved-to-primitive conversion.

use super::energy::{Material, PhaseEnergy};
use super::thermo::chi_bar;
use crate::error::{Error, Result};
use crate::fields::{ScalarField, VectorField};

fn check_density(rho: &ScalarField) -> Result<()> {
    if let Some(i) = rho.values().iter().position(|&r| !(r > 0.0)) {
        return Err(Error::Blowup { cell: i, message: format!("density {} is not positive", rho.get(i)) });
    }
    Ok(())
}

/// Velocity and temperature from `(rho, rho u, rho (E + |u|^2/2))` with `chi = chi(rho)`.
///
/// `grad_rho` must be the discrete gradient used by the flux assembly.
pub fn recover_state<W: PhaseEnergy>(
    mat: &Material<W>,
    rho: &ScalarField,
    momentum: &VectorField,
    energy: &ScalarField,
    grad_rho: &VectorField,
) -> Result<(VectorField, ScalarField)> {
    check_density(rho)?;
    let u = momentum.map_comps(|m| m / rho);
    let u2 = u.norm_sq();
    let mut theta = Vec::with_capacity(rho.len());
    for i in 0..rho.len() {
        let r = rho.get(i);
        let cb = chi_bar(&mat.params, r)?;
        let gr = grad_rho.at(i);
        let q = cb.d1 * cb.d1 * (gr[0] * gr[0] + gr[1] * gr[1]);
        let e = energy.get(i) / r - 0.5 * u2.get(i);
        let t = mat.energy.temperature(e, cb.chi, q, 1.0).ok_or_else(|| Error::Blowup {
            cell: i,
            message: format!("recovered temperature is not positive (specific energy {e})"),
        })?;
        theta.push(t);
    }
    Ok((u, ScalarField::new(*rho.grid(), theta)?))
}

/// Velocity, temperature, concentration and pressure for the general phase-field models.
pub fn recover_state_general<W: PhaseEnergy>(
    mat: &Material<W>,
    rho: &ScalarField,
    momentum: &VectorField,
    energy: &ScalarField,
    rho_chi: &ScalarField,
    grad_chi: impl Fn(&ScalarField) -> VectorField,
) -> Result<GeneralPrimitives> {
    check_density(rho)?;
    let delta = mat.params.delta;
    if !(delta > 0.0) {
        return Err(Error::Domain("general phase-field models need delta > 0".into()));
    }
    let u = momentum.map_comps(|m| m / rho);
    let u2 = u.norm_sq();
    let chi = rho_chi / rho;
    let gchi = grad_chi(&chi);
    let q = gchi.norm_sq();
    let mut theta = Vec::with_capacity(rho.len());
    let mut pressure = Vec::with_capacity(rho.len());
    for i in 0..rho.len() {
        let r = rho.get(i);
        let c = chi.get(i);
        let p = (mat.params.mixture_volume(c) - 1.0 / r) / delta;
        let e = energy.get(i) / r - 0.5 * u2.get(i) - 0.5 * delta * p * p;
        let t = mat.energy.temperature(e, c, q.get(i), 1.0).ok_or_else(|| Error::Blowup {
            cell: i,
            message: format!("recovered temperature is not positive (specific energy {e})"),
        })?;
        theta.push(t);
        pressure.push(p);
    }
    let grid = *rho.grid();
    Ok(GeneralPrimitives { u, theta: ScalarField::new(grid, theta)?, chi, pressure: ScalarField::new(grid, pressure)? })
}

#[derive(Debug, Clone)]
pub struct GeneralPrimitives {
    pub u: VectorField,
    pub theta: ScalarField,
    pub chi: ScalarField,
    pub pressure: ScalarField,
}
