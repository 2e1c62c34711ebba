//! Entropy flux and production for every model kind.

use super::fluxes::Auxiliaries;
use super::state::{ModelKind, PhaseLaw, PrimState};
use crate::constitutive::{FluidParams, Material, PhaseEnergy};
use crate::fields::{grad, sym_grad, ScalarField, VectorField};

/// Entropy flux `Sigma` and production `sigma` in
/// `d_t(rho s) + div(rho s u) = div(Sigma) + sigma`, with the named
/// contributions kept separately.
#[derive(Debug, Clone)]
pub struct EntropyPair {
    pub flux: VectorField,
    pub production: ScalarField,
    pub flux_terms: Vec<(&'static str, VectorField)>,
    pub production_terms: Vec<(&'static str, ScalarField)>,
}

/// Heat and viscous parts shared by every model.
fn base_terms(params: &FluidParams, state: &PrimState, div_u: &ScalarField) -> (VectorField, ScalarField, ScalarField) {
    let grad_theta = grad(&state.theta);
    let flux = grad_theta.scale_by(&state.theta.map(|t| params.beta / t));
    let dus = sym_grad(&state.u);
    let visc = &(&dus.contract(&dus).scale(params.eta) + &(div_u * div_u).scale(params.zeta)) / &state.theta;
    let heat = grad_theta.norm_sq().zip_map(&state.theta, |g, t| params.beta * g / (t * t));
    (flux, visc, heat)
}

/// Cahn-Hilliard parts in chemical-potential form:
/// `-gamma (mu/theta) grad(mu/theta)` and `gamma |grad(mu/theta)|^2`.
pub fn cahn_hilliard_terms(params: &FluidParams, state: &PrimState, mu: &ScalarField) -> (VectorField, ScalarField) {
    let m = mu / &state.theta;
    let gm = grad(&m);
    (gm.scale_by(&m.scale(-params.gamma)), gm.norm_sq().scale(params.gamma))
}

/// Reduced Cahn-Hilliard parts in potential form:
/// `-(gamma/tau*^2) phi grad phi` and `(gamma/tau*^2) |grad phi|^2`.
pub fn potential_terms(params: &FluidParams, phi: &ScalarField) -> (VectorField, ScalarField) {
    let c = params.gamma / (params.tau_star() * params.tau_star());
    let gp = grad(phi);
    (gp.scale_by(&phi.scale(-c)), gp.norm_sq().scale(c))
}

pub fn entropy_production<W: PhaseEnergy>(
    mat: &Material<W>,
    kind: ModelKind,
    state: &PrimState,
    aux: &Auxiliaries,
) -> EntropyPair {
    let prm = &mat.params;
    let (heat_flux, visc, heat) = base_terms(prm, state, &aux.div_u);
    let mut flux_terms = vec![("heat", heat_flux)];
    let mut production_terms = vec![("viscous", visc), ("heat", heat)];

    match (kind, kind.phase_law()) {
        (_, Some(PhaseLaw::AllenCahn)) => {
            let j = aux.j.as_ref().expect("phase rate");
            let rj2 = &(&state.rho * j) * j;
            production_terms.push(("phase", rj2.zip_map(&state.theta, |v, t| prm.eps * v / t)));
        }
        (ModelKind::NschReduced, _) => {
            let (f, s) = potential_terms(prm, aux.phi.as_ref().expect("Lambda_gamma"));
            flux_terms.push(("phase", f));
            production_terms.push(("phase", s));
        }
        (_, Some(PhaseLaw::CahnHilliard)) => {
            let (f, s) = cahn_hilliard_terms(prm, state, aux.mu.as_ref().expect("chemical potential"));
            flux_terms.push(("phase", f));
            production_terms.push(("phase", s));
        }
        _ => {}
    }

    let flux = flux_terms.iter().skip(1).fold(flux_terms[0].1.clone(), |acc, (_, f)| &acc + f);
    let production = production_terms.iter().skip(1).fold(production_terms[0].1.clone(), |acc, (_, s)| &acc + s);
    EntropyPair { flux, production, flux_terms, production_terms }
}
