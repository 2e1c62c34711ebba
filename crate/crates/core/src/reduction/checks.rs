//! Residual checkers for the reduction identities and entropy balances.

use super::report::{term, ResidualReport};
use crate::constitutive::{Material, PhaseEnergy};
use crate::error::{usage, Result};
use crate::fields::{
    div, forward, grad, integrate_domain, jacobian, solve_lambda_gamma, Coefficient, ScalarField, TensorField,
    VectorField,
};
use crate::models::{
    assemble_fluxes, cahn_hilliard_terms, chemical_potential_from, entropy_production, ericksen_from, kinematic_rate,
    kinetic_mu, korteweg_from, modified_viscous, phase_field_work_from, phase_rate, potential_terms, pressure_from_mu,
    primitive_rates, reduced_pressure_from, viscous_stress, zeta_eps, Conserved, LocalThermo, ModelKind, PhaseLaw,
    PrimState,
};

/// Deliberate formula faults used to show a checker can fail.
///
/// Each checker honours the mutations listed on it and ignores the others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Drop the extra bulk term (`zeta_eps` for AC, the `Lambda_gamma` term for CH).
    OmitZetaEps,
    /// Use `2 tau*` on one side of the identity.
    DoubleTauStar,
    /// Drop a density factor: in the phase-field work flux, or in
    /// `rho theta s_dot` and `rho d_t s` for the entropy checks.
    DropRho,
    /// Replace one centred difference by a one-sided first-order difference.
    BiasedStencil,
}

impl Mutation {
    pub const ALL: [Mutation; 5] =
        [Mutation::None, Mutation::OmitZetaEps, Mutation::DoubleTauStar, Mutation::DropRho, Mutation::BiasedStencil];

    pub fn name(&self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::OmitZetaEps => "omit_zeta_eps",
            Mutation::DoubleTauStar => "double_tau_star",
            Mutation::DropRho => "drop_rho",
            Mutation::BiasedStencil => "biased_stencil",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Which entropy identity a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyPart {
    /// `rho theta s_dot` against the full right-hand side with interstitial work.
    ParticlePath,
    /// Simplified form `S:Du + div(beta grad theta) - rho j mu`.
    WorkForm,
    /// `d_t(rho s) + div(rho s u) - div(Sigma) - sigma`.
    Balance,
    /// `d/dt int rho s - int sigma`.
    Budget,
}

impl EntropyPart {
    pub const ALL: [EntropyPart; 4] =
        [EntropyPart::ParticlePath, EntropyPart::WorkForm, EntropyPart::Balance, EntropyPart::Budget];

    pub fn name(&self) -> &'static str {
        match self {
            EntropyPart::ParticlePath => "particle_path",
            EntropyPart::WorkForm => "work_form",
            EntropyPart::Balance => "balance",
            EntropyPart::Budget => "budget",
        }
    }
}

fn law_suffix(law: PhaseLaw) -> &'static str {
    match law {
        PhaseLaw::AllenCahn => "ac",
        PhaseLaw::CahnHilliard => "ch",
    }
}

fn require_reduced(state: &PrimState) -> Result<()> {
    if state.chi.is_some() {
        return Err(usage("reduction checkers need a density-slaved state (no concentration field)"));
    }
    Ok(())
}

fn biased_div(v: &VectorField) -> ScalarField {
    let grid = *v.grid();
    (0..grid.dim()).fold(ScalarField::zeros(grid), |acc, a| &acc + &forward(v.comp(a), a))
}

fn biased_grad(f: &ScalarField) -> VectorField {
    let grid = *f.grid();
    VectorField::from_comps_unchecked(grid, (0..grid.dim()).map(|a| forward(f, a)).collect())
}

fn lambda_phi(state: &PrimState, gamma: f64) -> Result<ScalarField> {
    solve_lambda_gamma(&state.u, &Coefficient::Constant(gamma))
}

/// `(1/tau*) div u` against `rho chi'(rho) (-div(rho u) + u . grad rho)`.
///
/// Mutations: `DoubleTauStar`, `BiasedStencil` (left side).
pub fn check_kinematic<W: PhaseEnergy>(
    mat: &Material<W>,
    state: &PrimState,
    mutation: Mutation,
) -> Result<ResidualReport> {
    require_reduced(state)?;
    let local = LocalThermo::evaluate(mat, state)?;
    let red = local.reduced_part();
    let ts = match mutation {
        Mutation::DoubleTauStar => 2.0 * mat.tau_star(),
        _ => mat.tau_star(),
    };
    let div_u = match mutation {
        Mutation::BiasedStencil => biased_div(&state.u),
        _ => div(&state.u),
    };
    let lhs = div_u.scale(1.0 / ts);
    let rho_dot = &state.u.dot(&red.grad_rho) - &div(&state.u.scale_by(&state.rho));
    let rhs = &(&state.rho * &red.chi_d1) * &rho_dot;
    let residual = &lhs - &rhs;
    let scale = lhs.max_abs().max(rhs.max_abs());
    Ok(ResidualReport::scalar(
        "kinematic",
        &residual,
        scale,
        vec![term("div_u", lhs.max_abs()), term("continuity", rhs.max_abs())],
    ))
}

/// `w = -rho j dG/d(grad chi)` against `w_bar = kappa rho div(u) grad rho`, with
/// `j` from the kinematic identity.
///
/// Mutations: `DropRho`.
pub fn check_w_equiv<W: PhaseEnergy>(
    mat: &Material<W>,
    state: &PrimState,
    mutation: Mutation,
) -> Result<ResidualReport> {
    require_reduced(state)?;
    let local = LocalThermo::evaluate(mat, state)?;
    let div_u = div(&state.u);
    let j = kinematic_rate(&mat.params, &state.rho, &div_u);
    let w = match mutation {
        Mutation::DropRho => local.g_grad.scale_by(&j.scale(-1.0)),
        _ => phase_field_work_from(state, &local, &j),
    };
    let w_bar = crate::models::korteweg_work_from(state, &local, &div_u);
    let residual = &w - &w_bar;
    let scale = w.max_abs().max(w_bar.max_abs());
    Ok(ResidualReport::vector(
        "work_flux",
        &residual,
        scale,
        vec![term("phase_field", w.max_abs()), term("korteweg", w_bar.max_abs())],
    ))
}

/// Reduced pressure against the pressure solved from the chemical potential.
///
/// Mutations: `DoubleTauStar` (chemical-potential route).
pub fn check_pressure<W: PhaseEnergy>(
    mat: &Material<W>,
    law: PhaseLaw,
    state: &PrimState,
    mutation: Mutation,
) -> Result<ResidualReport> {
    require_reduced(state)?;
    let prm = &mat.params;
    let local = LocalThermo::evaluate(mat, state)?;
    let div_u = div(&state.u);
    let phi = match law {
        PhaseLaw::AllenCahn => None,
        PhaseLaw::CahnHilliard => Some(lambda_phi(state, prm.gamma)?),
    };
    let j = kinematic_rate(prm, &state.rho, &div_u);
    let mu = kinetic_mu(prm, law, state, &j, phi.as_ref());
    let p_red = reduced_pressure_from(prm, law, state, &local, &div_u, phi.as_ref());
    let mut p_mu = pressure_from_mu(prm, state, &local, &mu);
    if mutation == Mutation::DoubleTauStar {
        p_mu = p_mu.scale(0.5);
    }
    let residual = &p_red - &p_mu;
    let scale = p_red.max_abs().max(p_mu.max_abs());
    Ok(ResidualReport::scalar(
        &format!("pressure_{}", law_suffix(law)),
        &residual,
        scale,
        vec![term("reduced", p_red.max_abs()), term("chemical_potential", p_mu.max_abs())],
    ))
}

/// `-p I + C + S` against `-p_bar I + K + S_mod`, where `S_mod` is `S_eps` (AC)
/// or `S_gamma` (CH).
///
/// Terms: `pressure` (isotropic mismatch), `capillary` (`C` against the
/// anisotropic part of `K`), `viscous`.
/// Mutations: `OmitZetaEps` (Korteweg side), `BiasedStencil` (isotropic part of `K`).
pub fn check_stress<W: PhaseEnergy>(
    mat: &Material<W>,
    law: PhaseLaw,
    state: &PrimState,
    mutation: Mutation,
) -> Result<ResidualReport> {
    require_reduced(state)?;
    let prm = &mat.params;
    let local = LocalThermo::evaluate(mat, state)?;
    let red = local.reduced_part();
    let div_u = div(&state.u);
    let phi = match law {
        PhaseLaw::AllenCahn => None,
        PhaseLaw::CahnHilliard => Some(lambda_phi(state, prm.gamma)?),
    };

    // phase-field route
    let p = reduced_pressure_from(prm, law, state, &local, &div_u, phi.as_ref());
    let c = ericksen_from(state, &local);
    let s = viscous_stress(prm, &state.u, None);
    let t_pf = &(&TensorField::isotropic(&(-&p)) + &c) + &s;

    // Korteweg route
    let s_mod = match mutation {
        Mutation::OmitZetaEps => s.clone(),
        _ => modified_viscous(prm, law, state, phi.as_ref()),
    };
    let k_full = korteweg_from(&state.rho, &local);
    let k_iso = &state.rho * &div(&red.rho_f_r);
    let k_dev = &k_full - &TensorField::isotropic(&k_iso);
    let k_iso_used = match mutation {
        Mutation::BiasedStencil => &state.rho * &biased_div(&red.rho_f_r),
        _ => k_iso,
    };
    let k = &k_dev + &TensorField::isotropic(&k_iso_used);
    let t_k = &(&TensorField::isotropic(&(-&red.pbar)) + &k) + &s_mod;

    let extra = (&s_mod - &s).trace().scale(1.0 / state.rho.grid().dim() as f64);
    let pressure_term = &(&(&red.pbar - &p) - &k_iso_used) - &extra;
    let capillary_term = &c - &k_dev;
    let viscous_term = &s - &(&s_mod - &TensorField::isotropic(&extra));

    let residual = &t_pf - &t_k;
    let scale = t_pf.max_abs().max(t_k.max_abs());
    Ok(ResidualReport::tensor(
        &format!("stress_{}", law_suffix(law)),
        &residual,
        scale,
        vec![
            term("pressure", pressure_term.max_abs()),
            term("capillary", capillary_term.max_abs()),
            term("viscous", viscous_term.max_abs()),
        ],
    ))
}

/// AC: `(eps/theta) rho j^2` against `(zeta_eps/theta) (div u)^2`.
/// CH: `phi + tau* mu / theta` with `mu` from the reduced pressure, plus the
/// potential-form and chemical-potential-form entropy terms as a breakdown.
///
/// Mutations: `DoubleTauStar`.
pub fn check_dissipation<W: PhaseEnergy>(
    mat: &Material<W>,
    law: PhaseLaw,
    state: &PrimState,
    mutation: Mutation,
) -> Result<ResidualReport> {
    require_reduced(state)?;
    let prm = &mat.params;
    let ts = match mutation {
        Mutation::DoubleTauStar => 2.0 * prm.tau_star(),
        _ => prm.tau_star(),
    };
    let div_u = div(&state.u);
    match law {
        PhaseLaw::AllenCahn => {
            let j = div_u.zip_map(&state.rho, |d, r| d / (r * ts));
            let lhs = (&(&(&state.rho * &j) * &j) / &state.theta).scale(prm.eps);
            let rhs = &(&zeta_eps(prm, &state.rho) * &(&div_u * &div_u)) / &state.theta;
            let residual = &lhs - &rhs;
            let scale = lhs.max_abs().max(rhs.max_abs());
            Ok(ResidualReport::scalar(
                "dissipation_ac",
                &residual,
                scale,
                vec![term("phase_rate", lhs.max_abs()), term("bulk_viscosity", rhs.max_abs())],
            ))
        }
        PhaseLaw::CahnHilliard => {
            let local = LocalThermo::evaluate(mat, state)?;
            let phi = lambda_phi(state, prm.gamma)?;
            let p = reduced_pressure_from(prm, law, state, &local, &div_u, Some(&phi));
            let mu = chemical_potential_from(prm, state, &local, &p);
            let residual = &phi + &(&mu / &state.theta).scale(ts);

            let (flux_mu, prod_mu) = cahn_hilliard_terms(prm, state, &mu);
            let (flux_phi, prod_phi) = potential_terms(prm, &phi);
            let j_mu = phase_rate(prm, law, &mu, &state.theta, &state.rho);
            let j_kin = kinematic_rate(prm, &state.rho, &div_u);
            let scale = phi.max_abs().max((&mu / &state.theta).max_abs() * prm.tau_star());
            Ok(ResidualReport::scalar(
                "dissipation_ch",
                &residual,
                scale,
                vec![
                    term("potential", residual.max_abs()),
                    term("entropy_flux", (&flux_mu - &flux_phi).max_abs()),
                    term("entropy_production", (&prod_mu - &prod_phi).max_abs()),
                    term("phase_rate", (&j_mu - &j_kin).max_abs()),
                ],
            ))
        }
    }
}

/// Residuals of the entropy identities for a state and its time derivative.
///
/// Mutations: `DropRho`, `BiasedStencil` (advective derivative of `s`),
/// `OmitZetaEps` (drops the phase contributions of density-slaved models).
pub fn check_entropy_lemmas<W: PhaseEnergy>(
    mat: &Material<W>,
    kind: ModelKind,
    state: &PrimState,
    rate: &Conserved,
    mutation: Mutation,
) -> Result<[ResidualReport; 4]> {
    let prm = &mat.params;
    let assembly = assemble_fluxes(mat, kind, state)?;
    let aux = &assembly.aux;
    let local = &aux.local;
    let rates = primitive_rates(mat, state, local, rate);
    let s = &local.entropy;
    let rho = &state.rho;
    let tag = kind.name();
    let drop_phase = mutation == Mutation::OmitZetaEps && kind.is_reduced();

    let grad_s = match mutation {
        Mutation::BiasedStencil => biased_grad(s),
        _ => grad(s),
    };
    let s_dot = &rates.s_t + &state.u.dot(&grad_s);
    let rho_used = match mutation {
        Mutation::DropRho => ScalarField::constant(*rho.grid(), 1.0),
        _ => rho.clone(),
    };
    let lhs = &(&rho_used * &state.theta) * &s_dot;
    let viscous = aux.base_viscous.contract(&jacobian(&state.u));
    let heat = div(&grad(&state.theta)).scale(prm.beta);

    // phase contributions
    let (work_div, gibbs, rho_j_mu) = match (kind, &aux.j, &aux.mu) {
        (ModelKind::Nsk, _, _) => {
            let z = ScalarField::zeros(*rho.grid());
            (z.clone(), z.clone(), z)
        }
        (_, Some(j), Some(mu)) => {
            let (w, p) = if kind.is_reduced() {
                let law = kind.phase_law().expect("phase-field kind");
                let w = phase_field_work_from(state, local, j);
                let p = reduced_pressure_from(prm, law, state, local, &aux.div_u, aux.phi.as_ref());
                (w, p)
            } else {
                (assembly.fluxes.work.clone(), aux.pressure.clone())
            };
            let g_chi = &p.scale(prm.tau_star()) + &local.w_chi;
            let gibbs = rho * &(&local.g_grad.dot(&grad(j)) + &(&g_chi * j));
            (div(&w), gibbs, &(rho * j) * mu)
        }
        _ => unreachable!("phase-field assemblies carry j and mu"),
    };
    let (work_div, gibbs, rho_j_mu) = if drop_phase {
        let z = ScalarField::zeros(*rho.grid());
        (z.clone(), z.clone(), z)
    } else {
        (work_div, gibbs, rho_j_mu)
    };

    let rhs_a = &(&(&viscous + &heat) - &work_div) - &gibbs;
    let res_a = &lhs - &rhs_a;
    let terms_a = vec![
        term("rho_theta_s_dot", lhs.max_abs()),
        term("viscous", viscous.max_abs()),
        term("heat", heat.max_abs()),
        term("work", work_div.max_abs()),
        term("gibbs", gibbs.max_abs()),
    ];
    let scale_a = terms_a.iter().map(|t| t.linf).fold(0.0, f64::max);
    let a = ResidualReport::scalar(&format!("entropy_particle_path/{tag}"), &res_a, scale_a, terms_a);

    let rhs_b = &(&viscous + &heat) - &rho_j_mu;
    let res_b = &lhs - &rhs_b;
    let terms_b = vec![
        term("rho_theta_s_dot", lhs.max_abs()),
        term("viscous", viscous.max_abs()),
        term("heat", heat.max_abs()),
        term("rho_j_mu", rho_j_mu.max_abs()),
    ];
    let scale_b = terms_b.iter().map(|t| t.linf).fold(0.0, f64::max);
    let b = ResidualReport::scalar(&format!("entropy_work_form/{tag}"), &res_b, scale_b, terms_b);

    let mut pair = entropy_production(mat, kind, state, aux);
    if drop_phase {
        pair.flux = pair.flux_terms[0].1.clone();
        pair.production_terms.retain(|(name, _)| *name != "phase");
        pair.production = &pair.production_terms[0].1 + &pair.production_terms[1].1;
    }
    let rho_s_t = &(&rates.rho_t * s) + &(&rho_used * &rates.s_t);
    let convective = div(&state.u.scale_by(&(rho * s)));
    let flux_div = div(&pair.flux);
    let res_c = &(&(&rho_s_t + &convective) - &flux_div) - &pair.production;
    let mut terms_c = vec![
        term("d_t_rho_s", rho_s_t.max_abs()),
        term("convection", convective.max_abs()),
        term("entropy_flux", flux_div.max_abs()),
    ];
    terms_c.extend(pair.production_terms.iter().map(|(name, f)| term(&format!("sigma_{name}"), f.max_abs())));
    let scale_c = terms_c.iter().map(|t| t.linf).fold(0.0, f64::max);
    let c = ResidualReport::scalar(&format!("entropy_balance/{tag}"), &res_c, scale_c, terms_c);

    let ds = integrate_domain(&rho_s_t);
    let sig = integrate_domain(&pair.production);
    let budget = (ds - sig).abs();
    let d = ResidualReport {
        identity: format!("entropy_budget/{tag}"),
        n: rho.grid().n(),
        linf: budget,
        l2: budget,
        scale: ds.abs().max(sig.abs()),
        terms: vec![term("d_dt_entropy", ds.abs()), term("sigma", sig.abs())],
        order: None,
    };
    Ok([a, b, c, d])
}

/// Entropy identities with the time derivative taken from the model itself.
pub fn entropy_reports<W: PhaseEnergy>(
    mat: &Material<W>,
    kind: ModelKind,
    state: &PrimState,
    mutation: Mutation,
) -> Result<[ResidualReport; 4]> {
    let (rate, _) = crate::models::rhs(mat, kind, crate::models::Route::Korteweg, state)?;
    check_entropy_lemmas(mat, kind, state, &rate, mutation)
}
