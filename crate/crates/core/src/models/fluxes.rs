//! Conservative flux assembly for all model kinds.

use super::local::{admissible, total_energy, LocalThermo};
use super::state::{Conserved, ModelKind, PhaseLaw, PrimState, Route};
use super::terms::{
    chemical_potential_from, ericksen_from, grad_theta, kinematic_rate, kinetic_mu, korteweg_from, korteweg_work_from,
    phase_field_work_from, phase_rate, pressure_from_mu, viscous_stress, zeta_eps,
};
use crate::constitutive::{recover_state, recover_state_general, Material, PhaseEnergy};
use crate::error::{usage, Result};
use crate::fields::{div, div_tensor, grad, solve_lambda_gamma, Coefficient, ScalarField, TensorField, VectorField};

/// Concentration transport of the general models.
#[derive(Debug, Clone)]
pub struct PhaseFlux {
    /// `rho chi u`.
    pub flux: VectorField,
    /// `rho j`.
    pub source: ScalarField,
}

/// Fluxes whose negative divergence (plus sources) is the time derivative of
/// the conserved variables.
#[derive(Debug, Clone)]
pub struct FluxSet {
    /// `rho u`.
    pub mass: VectorField,
    /// `rho u (x) u - T`.
    pub momentum: TensorField,
    /// `E u - T u + w - beta grad theta`.
    pub energy: VectorField,
    /// Interstitial work flux, already contained in `energy`.
    pub work: VectorField,
    /// Heat flux `-beta grad theta`, already contained in `energy`.
    pub heat: VectorField,
    pub phase: Option<PhaseFlux>,
}

/// Intermediate fields produced during assembly.
#[derive(Debug, Clone)]
pub struct Auxiliaries {
    /// Total Cauchy stress `T`.
    pub stress: TensorField,
    /// Viscous stress as used in `T` (modified for the reduced Korteweg route).
    pub viscous: TensorField,
    /// Unmodified `eta (Du)^s + zeta div(u) I`.
    pub base_viscous: TensorField,
    /// Pressure as used in `T`.
    pub pressure: ScalarField,
    pub div_u: ScalarField,
    pub j: Option<ScalarField>,
    pub mu: Option<ScalarField>,
    /// `Lambda_gamma(div u)` for the reduced Cahn-Hilliard model.
    pub phi: Option<ScalarField>,
    pub local: LocalThermo,
    pub total_energy: ScalarField,
}

#[derive(Debug, Clone)]
pub struct Assembly {
    pub fluxes: FluxSet,
    pub aux: Auxiliaries,
}

/// Fluxes with the default route (Korteweg route for density-slaved models).
pub fn assemble_fluxes<W: PhaseEnergy>(mat: &Material<W>, kind: ModelKind, state: &PrimState) -> Result<Assembly> {
    assemble_with_route(mat, kind, Route::Korteweg, state)
}

pub fn assemble_with_route<W: PhaseEnergy>(
    mat: &Material<W>,
    kind: ModelKind,
    route: Route,
    state: &PrimState,
) -> Result<Assembly> {
    admissible(mat, kind, state)?;
    if route == Route::Gibbs && !kind.is_reduced() {
        return Err(usage(format!("the Gibbs route applies to density-slaved phase-field models, not {kind}")));
    }
    let prm = &mat.params;
    let local = LocalThermo::evaluate(mat, state)?;
    let div_u = div(&state.u);
    let base_viscous = viscous_stress(prm, &state.u, None);

    let (pressure, capillary, viscous, work, j, mu, phi) = match kind {
        ModelKind::Nsk => {
            let red = local.reduced_part();
            let k = korteweg_from(&state.rho, &local);
            let w = korteweg_work_from(state, &local, &div_u);
            (red.pbar.clone(), k, base_viscous.clone(), w, None, None, None)
        }
        ModelKind::NsacReduced | ModelKind::NschReduced => {
            let law = kind.phase_law().expect("phase-field kind");
            let j = kinematic_rate(prm, &state.rho, &div_u);
            let phi = match law {
                PhaseLaw::AllenCahn => None,
                PhaseLaw::CahnHilliard => Some(solve_lambda_gamma(&state.u, &Coefficient::Constant(prm.gamma))?),
            };
            let mu = kinetic_mu(prm, law, state, &j, phi.as_ref());
            match route {
                Route::Korteweg => {
                    let viscous = modified_viscous(prm, law, state, phi.as_ref());
                    let k = korteweg_from(&state.rho, &local);
                    let w = korteweg_work_from(state, &local, &div_u);
                    (local.reduced_part().pbar.clone(), k, viscous, w, Some(j), Some(mu), phi)
                }
                Route::Gibbs => {
                    let p = pressure_from_mu(prm, state, &local, &mu);
                    let c = ericksen_from(state, &local);
                    let w = phase_field_work_from(state, &local, &j);
                    (p, c, base_viscous.clone(), w, Some(j), Some(mu), phi)
                }
            }
        }
        ModelKind::NsacGeneral | ModelKind::NschGeneral => {
            let law = kind.phase_law().expect("phase-field kind");
            let p = local.eos_pressure.clone().expect("general state");
            let mu = chemical_potential_from(prm, state, &local, &p);
            let j = phase_rate(prm, law, &mu, &state.theta, &state.rho);
            let c = ericksen_from(state, &local);
            let w = phase_field_work_from(state, &local, &j);
            (p, c, base_viscous.clone(), w, Some(j), Some(mu), None)
        }
    };

    let stress = &(&TensorField::isotropic(&(-&pressure)) + &capillary) + &viscous;
    let e_tot = total_energy(state, &local);
    let mass = state.u.scale_by(&state.rho);
    let momentum = &mass.outer(&state.u) - &stress;
    let heat = grad_theta(state).scale(-prm.beta);
    let energy = &(&(&state.u.scale_by(&e_tot) - &stress.apply(&state.u)) + &work) + &heat;
    let phase = match (&state.chi, &j) {
        (Some(chi), Some(j)) if kind.is_general() => {
            Some(PhaseFlux { flux: mass.scale_by(chi), source: &state.rho * j })
        }
        _ => None,
    };

    Ok(Assembly {
        fluxes: FluxSet { mass, momentum, energy, work, heat, phase },
        aux: Auxiliaries { stress, viscous, base_viscous, pressure, div_u, j, mu, phi, local, total_energy: e_tot },
    })
}

/// `S^eps` (AC) or `S_gamma` (CH).
pub(crate) fn modified_viscous(
    prm: &crate::constitutive::FluidParams,
    law: PhaseLaw,
    state: &PrimState,
    phi: Option<&ScalarField>,
) -> TensorField {
    match law {
        PhaseLaw::AllenCahn => viscous_stress(prm, &state.u, Some(&zeta_eps(prm, &state.rho))),
        PhaseLaw::CahnHilliard => {
            let ts2 = prm.tau_star() * prm.tau_star();
            let extra = (&state.theta * phi.expect("CH needs Lambda_gamma")).scale(1.0 / ts2);
            &viscous_stress(prm, &state.u, None) + &TensorField::isotropic(&extra)
        }
    }
}

/// Time derivative of the conserved variables from an assembly.
pub fn conserved_rate(assembly: &Assembly) -> Conserved {
    let f = &assembly.fluxes;
    Conserved {
        rho: -&div(&f.mass),
        momentum: -&div_tensor(&f.momentum),
        energy: -&div(&f.energy),
        rho_chi: f.phase.as_ref().map(|ph| &ph.source - &div(&ph.flux)),
    }
}

/// Assembles and differentiates in one go.
pub fn rhs<W: PhaseEnergy>(
    mat: &Material<W>,
    kind: ModelKind,
    route: Route,
    state: &PrimState,
) -> Result<(Conserved, Assembly)> {
    let assembly = assemble_with_route(mat, kind, route, state)?;
    Ok((conserved_rate(&assembly), assembly))
}

/// Primitive to conserved variables.
pub fn to_conserved<W: PhaseEnergy>(mat: &Material<W>, state: &PrimState) -> Result<Conserved> {
    let local = LocalThermo::evaluate(mat, state)?;
    Ok(Conserved {
        rho: state.rho.clone(),
        momentum: state.u.scale_by(&state.rho),
        energy: total_energy(state, &local),
        rho_chi: state.chi.as_ref().map(|c| &state.rho * c),
    })
}

/// Conserved to primitive variables; fails with a blow-up diagnostic on loss of positivity.
pub fn from_conserved<W: PhaseEnergy>(mat: &Material<W>, cons: &Conserved) -> Result<PrimState> {
    match &cons.rho_chi {
        None => {
            let (u, theta) = recover_state(mat, &cons.rho, &cons.momentum, &cons.energy, &grad(&cons.rho))?;
            Ok(PrimState { rho: cons.rho.clone(), u, theta, chi: None })
        }
        Some(rc) => {
            let g = recover_state_general(mat, &cons.rho, &cons.momentum, &cons.energy, rc, grad)?;
            Ok(PrimState { rho: cons.rho.clone(), u: g.u, theta: g.theta, chi: Some(g.chi) })
        }
    }
}
