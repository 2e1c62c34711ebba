//! Stability-limited step size and the classical RK4 update on conserved variables.

use crate::constitutive::{chi_bar, Material, PhaseEnergy};
use crate::error::{Error, Result};
use crate::fields::integrate_domain;
use crate::models::{entropy_production, from_conserved, rhs, Assembly, Conserved, ModelKind, PrimState, Route};

/// Step size and the individual constraints it was taken from (before the CFL factor).
#[derive(Debug, Clone, PartialEq)]
pub struct StepLimit {
    pub dt: f64,
    pub constraints: Vec<(&'static str, f64)>,
}

impl StepLimit {
    /// Name of the binding constraint.
    pub fn limiting(&self) -> &'static str {
        self.constraints.iter().min_by(|a, b| a.1.total_cmp(&b.1)).map(|c| c.0).unwrap_or("none")
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.constraints.iter().find(|c| c.0 == name).map(|c| c.1)
    }
}

const TINY: f64 = 1e-300;

/// `dt = cfl * min(constraints)`; every constraint is monotone in `h`.
pub fn stable_dt<W: PhaseEnergy>(mat: &Material<W>, kind: ModelKind, state: &PrimState, cfl: f64) -> Result<StepLimit> {
    let prm = &mat.params;
    let grid = state.grid();
    let h = grid.h();
    let h2 = h * h;
    let dim = grid.dim() as f64;
    let ts = prm.tau_star();
    let u2 = state.u.norm_sq();

    let mut wave = 0.0f64;
    let mut visc = f64::INFINITY;
    let mut thermal = f64::INFINITY;
    let mut cap = 0.0f64;
    let mut damping = f64::INFINITY;
    let mut relax = f64::INFINITY;
    let mut diffuse = f64::INFINITY;
    for i in 0..grid.cells() {
        let rho = state.rho.get(i);
        let theta = state.theta.get(i);
        let cb = chi_bar(prm, rho)?;
        let chi = state.chi.as_ref().map_or(cb.chi, |c| c.get(i));
        let w = mat.energy.eval(theta, chi, 0.0);
        let c2 =
            if kind.is_general() { 1.0 / (prm.delta * rho * rho) } else { (w.w_chi_chi / (rho * rho * ts * ts)).abs() };
        wave = wave.max(u2.get(i).sqrt() + c2.sqrt());
        let extra = if kind == ModelKind::NsacReduced { prm.eps / (rho * ts * ts) } else { 0.0 };
        visc = visc.min(rho / (prm.eta + prm.zeta + extra + TINY));
        thermal = thermal.min(rho * prm.cv / (prm.beta + TINY));
        let kappa = 2.0 * w.w_q * rho * cb.d1 * cb.d1;
        cap = cap.max(kappa * rho);
        let stiffness = ts * ts / prm.delta + w.w_chi_chi.abs() + 4.0 * dim * 2.0 * w.w_q / h2;
        match kind {
            ModelKind::NschReduced => damping = damping.min(rho * prm.gamma * ts * ts / theta),
            ModelKind::NsacGeneral => relax = relax.min(prm.eps / stiffness),
            ModelKind::NschGeneral => {
                diffuse = diffuse.min(1.0 / ((prm.gamma / (rho * theta)) * (4.0 * dim / h2) * stiffness))
            }
            _ => {}
        }
    }

    let mut constraints = vec![
        ("advective", h / (wave + TINY)),
        ("viscous", h2 * visc),
        ("thermal", h2 * thermal),
        ("capillary", h2 / (cap + TINY).sqrt()),
    ];
    match kind {
        ModelKind::NschReduced => constraints.push(("cahn_hilliard_damping", damping)),
        ModelKind::NsacGeneral => constraints.push(("phase_relaxation", relax)),
        ModelKind::NschGeneral => constraints.push(("phase_diffusion", diffuse)),
        _ => {}
    }
    let min = constraints.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    Ok(StepLimit { dt: cfl * min, constraints })
}

/// Rate, assembly and entropy-production integral at one stage.
pub(crate) struct Stage {
    pub state: PrimState,
    pub rate: Conserved,
    pub assembly: Assembly,
    pub sigma_integral: f64,
    pub sigma_min: f64,
}

pub(crate) fn finite(c: &Conserved) -> bool {
    c.rho.is_finite()
        && c.momentum.is_finite()
        && c.energy.is_finite()
        && c.rho_chi.as_ref().is_none_or(|r| r.is_finite())
}

fn blowup_cell(c: &Conserved) -> usize {
    let bad = |f: &crate::fields::ScalarField| f.values().iter().position(|v| !v.is_finite());
    bad(&c.rho)
        .or_else(|| c.momentum.comps().iter().find_map(bad))
        .or_else(|| bad(&c.energy))
        .or_else(|| c.rho_chi.as_ref().and_then(bad))
        .unwrap_or(0)
}

pub(crate) fn stage<W: PhaseEnergy>(
    mat: &Material<W>,
    kind: ModelKind,
    route: Route,
    state: PrimState,
) -> Result<Stage> {
    let (rate, assembly) = rhs(mat, kind, route, &state)?;
    if !finite(&rate) {
        return Err(Error::Blowup { cell: blowup_cell(&rate), message: "non-finite rate".into() });
    }
    let sigma = entropy_production(mat, kind, &state, &assembly.aux).production;
    Ok(Stage { sigma_integral: integrate_domain(&sigma), sigma_min: sigma.min(), state, rate, assembly })
}

/// Result of one RK4 step.
pub(crate) struct Advanced {
    pub cons: Conserved,
    pub state: PrimState,
    /// RK4 quadrature of `int sigma dx` over the step.
    pub sigma_time_integral: f64,
}

/// Classical RK4 on the conserved variables, recovering primitives at every stage.
pub(crate) fn rk4<W: PhaseEnergy>(
    mat: &Material<W>,
    kind: ModelKind,
    route: Route,
    cons: &Conserved,
    first: &Stage,
    dt: f64,
) -> Result<Advanced> {
    let eval = |c: &Conserved| -> Result<Stage> { stage(mat, kind, route, from_conserved(mat, c)?) };
    let k1 = &first.rate;
    let s2 = eval(&cons.axpy(0.5 * dt, k1))?;
    let s3 = eval(&cons.axpy(0.5 * dt, &s2.rate))?;
    let s4 = eval(&cons.axpy(dt, &s3.rate))?;
    let next = cons.axpy(dt / 6.0, k1).axpy(dt / 3.0, &s2.rate).axpy(dt / 3.0, &s3.rate).axpy(dt / 6.0, &s4.rate);
    let state = from_conserved(mat, &next)?;
    let sig = dt / 6.0 * (first.sigma_integral + 2.0 * s2.sigma_integral + 2.0 * s3.sigma_integral + s4.sigma_integral);
    Ok(Advanced { cons: next, state, sigma_time_integral: sig })
}

/// One RK4 step from a primitive state.
pub fn step<W: PhaseEnergy>(
    mat: &Material<W>,
    kind: ModelKind,
    route: Route,
    state: &PrimState,
    dt: f64,
) -> Result<PrimState> {
    if !(dt > 0.0) {
        return Err(crate::error::usage(format!("dt must be positive, got {dt}")));
    }
    let cons = crate::models::to_conserved(mat, state)?;
    let first = stage(mat, kind, route, state.clone())?;
    Ok(rk4(mat, kind, route, &cons, &first, dt)?.state)
}
