//! Two-phase Gibbs energy family, the density-slaved Helmholtz energy and
//! state recovery.

mod energy;
mod params;
mod recover;
mod thermo;

pub use energy::{EnergyDerivs, Material, PhaseEnergy, SampleEnergy};
pub use params::FluidParams;
pub use recover::{recover_state, recover_state_general, GeneralPrimitives};
pub use thermo::{
    chi_bar, gibbs_eval, helmholtz_reduced_eval, ChiBar, GibbsPoint, HelmholtzPoint, ThermoGibbs, ThermoHelmholtz,
};

#[cfg(test)]
mod tests;
