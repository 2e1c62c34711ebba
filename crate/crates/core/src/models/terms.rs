//! Individual constitutive terms: viscous, Korteweg and Ericksen stresses,
//! chemical potential, phase rates, interstitial work and the reduced
//! pressure representations.

use super::local::LocalThermo;
use super::state::{PhaseLaw, PrimState};
use crate::constitutive::{FluidParams, Material, PhaseEnergy};
use crate::error::Result;
use crate::fields::{
    div, elliptic, grad, solve_lambda_gamma, sym_grad, Coefficient, ScalarField, TensorField, VectorField,
};

/// `S = eta (Du)^s + (zeta + extra_bulk) div(u) I`.
pub fn viscous_stress(params: &FluidParams, u: &VectorField, extra_bulk: Option<&ScalarField>) -> TensorField {
    let du = div(u);
    let bulk = match extra_bulk {
        Some(extra) => &extra.map(|z| z + params.zeta) * &du,
        None => du.scale(params.zeta),
    };
    &sym_grad(u).scale(params.eta) + &TensorField::isotropic(&bulk)
}

/// Extra bulk viscosity `eps / (rho tau*^2)` produced by the Allen-Cahn reduction.
pub fn zeta_eps(params: &FluidParams, rho: &ScalarField) -> ScalarField {
    let c = params.eps / (params.tau_star() * params.tau_star());
    rho.map(|r| c / r)
}

/// `K = rho div(V) I - grad rho (x) V` with `V = d(rho F)/d(grad rho)`.
pub fn korteweg_tensor<W: PhaseEnergy>(
    mat: &Material<W>,
    rho: &ScalarField,
    theta: &ScalarField,
) -> Result<TensorField> {
    let state = PrimState::new(rho.clone(), VectorField::zeros(*rho.grid()), theta.clone(), None)?;
    let local = LocalThermo::evaluate(mat, &state)?;
    Ok(korteweg_from(rho, &local))
}

pub(crate) fn korteweg_from(rho: &ScalarField, local: &LocalThermo) -> TensorField {
    let red = local.reduced_part();
    let iso = rho * &div(&red.rho_f_r);
    &TensorField::isotropic(&iso) - &red.grad_rho.outer(&red.rho_f_r)
}

/// `C = -rho grad chi (x) dG/d(grad chi)`.
pub fn ericksen_tensor<W: PhaseEnergy>(mat: &Material<W>, state: &PrimState) -> Result<TensorField> {
    let local = LocalThermo::evaluate(mat, state)?;
    Ok(ericksen_from(state, &local))
}

pub(crate) fn ericksen_from(state: &PrimState, local: &LocalThermo) -> TensorField {
    local.grad_chi.scale_by(&state.rho).outer(&local.g_grad).scale(-1.0)
}

/// `mu = G_chi - (1/rho) div(rho dG/d(grad chi))` with `G_chi = tau* p + W_chi`.
pub fn chemical_potential<W: PhaseEnergy>(
    mat: &Material<W>,
    state: &PrimState,
    p: &ScalarField,
) -> Result<ScalarField> {
    let local = LocalThermo::evaluate(mat, state)?;
    Ok(chemical_potential_from(&mat.params, state, &local, p))
}

pub(crate) fn chemical_potential_from(
    params: &FluidParams,
    state: &PrimState,
    local: &LocalThermo,
    p: &ScalarField,
) -> ScalarField {
    let g_chi = &p.scale(params.tau_star()) + &local.w_chi;
    let divergence = div(&local.g_grad.scale_by(&state.rho));
    &g_chi - &(&divergence / &state.rho)
}

/// `j_AC = -mu / eps`, `j_CH = (1/rho) div(gamma grad(mu / theta))`.
pub fn phase_rate(
    params: &FluidParams,
    law: PhaseLaw,
    mu: &ScalarField,
    theta: &ScalarField,
    rho: &ScalarField,
) -> ScalarField {
    match law {
        PhaseLaw::AllenCahn => mu.scale(-1.0 / params.eps),
        PhaseLaw::CahnHilliard => {
            let flux_div = elliptic(&Coefficient::Constant(params.gamma), &(mu / theta));
            &flux_div / rho
        }
    }
}

/// Concentration rate slaved to density: `rho j = div(u) / tau*`.
pub fn kinematic_rate(params: &FluidParams, rho: &ScalarField, div_u: &ScalarField) -> ScalarField {
    let ts = params.tau_star();
    div_u.zip_map(rho, |d, r| d / (r * ts))
}

/// Korteweg interstitial work `w_bar = kappa rho div(u) grad rho`.
pub fn korteweg_work<W: PhaseEnergy>(mat: &Material<W>, state: &PrimState) -> Result<VectorField> {
    let local = LocalThermo::evaluate(mat, state)?;
    Ok(korteweg_work_from(state, &local, &div(&state.u)))
}

pub(crate) fn korteweg_work_from(state: &PrimState, local: &LocalThermo, div_u: &ScalarField) -> VectorField {
    let red = local.reduced_part();
    let coef = &(&red.kappa * &state.rho) * div_u;
    red.grad_rho.scale_by(&coef)
}

/// Phase-field interstitial work `w = -rho j dG/d(grad chi)`.
pub fn phase_field_work<W: PhaseEnergy>(mat: &Material<W>, state: &PrimState, j: &ScalarField) -> Result<VectorField> {
    let local = LocalThermo::evaluate(mat, state)?;
    Ok(phase_field_work_from(state, &local, j))
}

pub(crate) fn phase_field_work_from(state: &PrimState, local: &LocalThermo, j: &ScalarField) -> VectorField {
    let coef = (&state.rho * j).scale(-1.0);
    local.g_grad.scale_by(&coef)
}

/// Pressure of the density-slaved phase-field model, in Korteweg variables.
///
/// AC: `p = -(eps/(tau*^2 rho)) div u - rho chi' div(chi'^-1 V) - W_chi / tau*`.
/// CH: the first term becomes `-(theta/tau*^2) Lambda_gamma(div u)`.
pub fn reduced_pressure<W: PhaseEnergy>(mat: &Material<W>, law: PhaseLaw, state: &PrimState) -> Result<ScalarField> {
    let local = LocalThermo::evaluate(mat, state)?;
    let phi = match law {
        PhaseLaw::AllenCahn => None,
        PhaseLaw::CahnHilliard => Some(solve_lambda_gamma(&state.u, &Coefficient::Constant(mat.params.gamma))?),
    };
    Ok(reduced_pressure_from(&mat.params, law, state, &local, &div(&state.u), phi.as_ref()))
}

/// Kinetic part of the reduced pressure: `-(eps/(tau*^2 rho)) div u` or `-(theta/tau*^2) phi`.
pub(crate) fn kinetic_pressure(
    params: &FluidParams,
    law: PhaseLaw,
    state: &PrimState,
    div_u: &ScalarField,
    phi: Option<&ScalarField>,
) -> ScalarField {
    let ts2 = params.tau_star() * params.tau_star();
    match law {
        PhaseLaw::AllenCahn => (&zeta_eps(params, &state.rho) * div_u).scale(-1.0),
        PhaseLaw::CahnHilliard => (&state.theta * phi.expect("CH needs Lambda_gamma")).scale(-1.0 / ts2),
    }
}

/// `-rho chi' div(chi'^-1 V) - W_chi / tau*`, the capillary and chemical part.
pub(crate) fn static_pressure(params: &FluidParams, state: &PrimState, local: &LocalThermo) -> ScalarField {
    let red = local.reduced_part();
    let inner = red.rho_f_r.scale_by(&red.chi_d1.map(|d| 1.0 / d));
    let capillary = &(&state.rho * &red.chi_d1) * &div(&inner);
    &(-&capillary) - &local.w_chi.scale(1.0 / params.tau_star())
}

pub(crate) fn reduced_pressure_from(
    params: &FluidParams,
    law: PhaseLaw,
    state: &PrimState,
    local: &LocalThermo,
    div_u: &ScalarField,
    phi: Option<&ScalarField>,
) -> ScalarField {
    &kinetic_pressure(params, law, state, div_u, phi) + &static_pressure(params, state, local)
}

/// Chemical potential fixed by the phase law on density-slaved fields:
/// AC `mu = -eps j` with `rho j = div(u)/tau*`; CH `mu = -(theta/tau*) phi`.
pub(crate) fn kinetic_mu(
    params: &FluidParams,
    law: PhaseLaw,
    state: &PrimState,
    j: &ScalarField,
    phi: Option<&ScalarField>,
) -> ScalarField {
    match law {
        PhaseLaw::AllenCahn => j.scale(-params.eps),
        PhaseLaw::CahnHilliard => (&state.theta * phi.expect("CH needs Lambda_gamma")).scale(-1.0 / params.tau_star()),
    }
}

/// Pressure solved from the chemical potential definition:
/// `p = (mu - W_chi + (1/rho) div(rho dG/d(grad chi))) / tau*`.
pub(crate) fn pressure_from_mu(
    params: &FluidParams,
    state: &PrimState,
    local: &LocalThermo,
    mu: &ScalarField,
) -> ScalarField {
    let divergence = &div(&local.g_grad.scale_by(&state.rho)) / &state.rho;
    (&(mu - &local.w_chi) + &divergence).scale(1.0 / params.tau_star())
}

pub(crate) fn grad_theta(state: &PrimState) -> VectorField {
    grad(&state.theta)
}
