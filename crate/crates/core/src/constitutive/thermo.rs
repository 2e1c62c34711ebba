//! Pointwise Gibbs and reduced Helmholtz evaluations with analytic derivatives.

use super::energy::{Material, PhaseEnergy};
use super::params::FluidParams;
use crate::error::{domain, Result};

#[inline]
fn dot2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsPoint {
    pub p: f64,
    pub theta: f64,
    pub chi: f64,
    /// `grad chi`; unused trailing components are zero.
    pub g: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoGibbs {
    pub g: f64,
    /// Specific volume `dG/dp`.
    pub tau: f64,
    /// Specific entropy `-dG/dtheta`.
    pub s: f64,
    pub g_chi: f64,
    pub g_grad: [f64; 2],
}

/// `G = T(chi) p - (delta/2) p^2 + W(theta, chi, |g|^2)`.
pub fn gibbs_eval<W: PhaseEnergy>(mat: &Material<W>, pt: &GibbsPoint) -> Result<ThermoGibbs> {
    if !(pt.theta > 0.0) {
        return Err(domain(format!("temperature must be positive, got {}", pt.theta)));
    }
    let prm = &mat.params;
    let q = dot2(pt.g, pt.g);
    let w = mat.energy.eval(pt.theta, pt.chi, q);
    let t = prm.mixture_volume(pt.chi);
    Ok(ThermoGibbs {
        g: t * pt.p - 0.5 * prm.delta * pt.p * pt.p + w.w,
        tau: t - prm.delta * pt.p,
        s: -w.w_theta,
        g_chi: prm.tau_star() * pt.p + w.w_chi,
        g_grad: [2.0 * w.w_q * pt.g[0], 2.0 * w.w_q * pt.g[1]],
    })
}

/// Concentration slaved to density and its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiBar {
    pub chi: f64,
    pub d1: f64,
    pub d2: f64,
}

/// `chi(rho) = (1/rho - tau2) / tau*`.
pub fn chi_bar(params: &FluidParams, rho: f64) -> Result<ChiBar> {
    if !(rho > 0.0) {
        return Err(domain(format!("density must be positive, got {rho}")));
    }
    let ts = params.tau_star();
    Ok(ChiBar { chi: (1.0 / rho - params.tau2) / ts, d1: -1.0 / (rho * rho * ts), d2: 2.0 / (rho * rho * rho * ts) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelmholtzPoint {
    pub rho: f64,
    pub theta: f64,
    /// `grad rho`.
    pub r: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoHelmholtz {
    pub f: f64,
    pub s: f64,
    pub f_rho: f64,
    pub f_r: [f64; 2],
    /// Capillarity coefficient with `rho F_r = kappa r`.
    pub kappa: f64,
    /// Internal energy `F + theta s`.
    pub e: f64,
    /// Pressure `rho^2 F_rho`.
    pub p: f64,
    /// `W_chi` at `chi(rho)`, exposed for the pressure identities.
    pub w_chi: f64,
    pub chi: ChiBar,
}

/// `F(theta, rho, r) = W(theta, chi(rho), chi'(rho)^2 |r|^2)`.
pub fn helmholtz_reduced_eval<W: PhaseEnergy>(mat: &Material<W>, pt: &HelmholtzPoint) -> Result<ThermoHelmholtz> {
    if !(pt.theta > 0.0) {
        return Err(domain(format!("temperature must be positive, got {}", pt.theta)));
    }
    let cb = chi_bar(&mat.params, pt.rho)?;
    let r2 = dot2(pt.r, pt.r);
    let q = cb.d1 * cb.d1 * r2;
    let w = mat.energy.eval(pt.theta, cb.chi, q);
    let f_rho = w.w_chi * cb.d1 + w.w_q * 2.0 * cb.d1 * cb.d2 * r2;
    let c = 2.0 * w.w_q * cb.d1 * cb.d1;
    let s = -w.w_theta;
    Ok(ThermoHelmholtz {
        f: w.w,
        s,
        f_rho,
        f_r: [c * pt.r[0], c * pt.r[1]],
        kappa: pt.rho * c,
        e: w.w + pt.theta * s,
        p: pt.rho * pt.rho * f_rho,
        w_chi: w.w_chi,
        chi: cb,
    })
}
