//! Flux, stress and entropy assembly for the Korteweg, Allen-Cahn and
//! Cahn-Hilliard systems.

mod entropy;
mod fluxes;
mod local;
mod rates;
mod state;
mod terms;

pub use entropy::{cahn_hilliard_terms, entropy_production, potential_terms, EntropyPair};
pub use fluxes::{
    assemble_fluxes, assemble_with_route, conserved_rate, from_conserved, rhs, to_conserved, Assembly, Auxiliaries,
    FluxSet, PhaseFlux,
};
pub use local::{total_energy, LocalThermo, ReducedClosure};
pub use rates::{primitive_rates, PrimRates};
pub use state::{Conserved, ModelKind, PhaseLaw, PrimState, Route};
pub use terms::{
    chemical_potential, ericksen_tensor, kinematic_rate, korteweg_tensor, korteweg_work, phase_field_work, phase_rate,
    reduced_pressure, viscous_stress, zeta_eps,
};

pub(crate) use fluxes::modified_viscous;
pub(crate) use terms::{
    chemical_potential_from, ericksen_from, kinetic_mu, korteweg_from, korteweg_work_from, phase_field_work_from,
    pressure_from_mu, reduced_pressure_from,
};
