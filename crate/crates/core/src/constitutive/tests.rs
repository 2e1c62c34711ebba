//! Finite-difference oracles for the analytic derivatives and state recovery.

use proptest::prelude::*;

use super::*;
use crate::fields::{grad, GridSpec, ScalarField, VectorField};

const STEP: f64 = 1e-6;

fn mat() -> Material<SampleEnergy> {
    Material::new(FluidParams::default()).unwrap()
}

fn central(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = STEP * x.abs().max(1.0);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

fn close(analytic: f64, fd: f64, scale: f64) -> bool {
    (analytic - fd).abs() <= 1e-6 * analytic.abs().max(scale)
}

proptest! {
    #[test]
    fn mixing_energy_derivatives(theta in 0.2f64..3.0, chi in 0.02f64..0.98, q in 0.0f64..2.0) {
        let w = SampleEnergy::from_params(&FluidParams::default());
        let d = w.eval(theta, chi, q);
        let fd = |g: &dyn Fn(f64) -> f64, x| central(g, x);
        prop_assert!(close(d.w_theta, fd(&|t| w.eval(t, chi, q).w, theta), 1.0));
        prop_assert!(close(d.w_chi, fd(&|c| w.eval(theta, c, q).w, chi), 1.0));
        prop_assert!(close(d.w_q, fd(&|s| w.eval(theta, chi, s).w, q), 1.0));
        prop_assert!(close(d.w_theta_theta, fd(&|t| w.eval(t, chi, q).w_theta, theta), 1.0));
        prop_assert!(close(d.w_theta_chi, fd(&|c| w.eval(theta, c, q).w_theta, chi), 1.0));
        prop_assert!(close(d.w_theta_q, fd(&|s| w.eval(theta, chi, s).w_theta, q), 1.0));
        prop_assert!(close(d.w_chi_chi, fd(&|c| w.eval(theta, c, q).w_chi, chi), 1.0));
    }

    #[test]
    fn gibbs_derivatives(p in -2.0f64..2.0, theta in 0.2f64..3.0, chi in 0.02f64..0.98, g0 in -2.0f64..2.0, g1 in -2.0f64..2.0) {
        let m = mat();
        let at = |p, theta, chi, g| gibbs_eval(&m, &GibbsPoint { p, theta, chi, g }).unwrap();
        let t = at(p, theta, chi, [g0, g1]);
        prop_assert!(close(t.tau, central(|x| at(x, theta, chi, [g0, g1]).g, p), 1.0));
        prop_assert!(close(-t.s, central(|x| at(p, x, chi, [g0, g1]).g, theta), 1.0));
        prop_assert!(close(t.g_chi, central(|x| at(p, theta, x, [g0, g1]).g, chi), 1.0));
        prop_assert!(close(t.g_grad[0], central(|x| at(p, theta, chi, [x, g1]).g, g0), 1.0));
        prop_assert!(close(t.g_grad[1], central(|x| at(p, theta, chi, [g0, x]).g, g1), 1.0));
    }

    #[test]
    fn reduced_helmholtz_derivatives(rho in 1.02f64..1.98, theta in 0.2f64..3.0, r0 in -2.0f64..2.0, r1 in -2.0f64..2.0) {
        let m = mat();
        let at = |rho, theta, r| helmholtz_reduced_eval(&m, &HelmholtzPoint { rho, theta, r }).unwrap();
        let t = at(rho, theta, [r0, r1]);
        prop_assert!(close(t.f_rho, central(|x| at(x, theta, [r0, r1]).f, rho), 1.0));
        prop_assert!(close(-t.s, central(|x| at(rho, x, [r0, r1]).f, theta), 1.0));
        prop_assert!(close(t.f_r[0], central(|x| at(rho, theta, [x, r1]).f, r0), 1.0));
        prop_assert!(close(t.f_r[1], central(|x| at(rho, theta, [r0, x]).f, r1), 1.0));
        let cb = chi_bar(&m.params, rho).unwrap();
        prop_assert!(close(cb.d1, central(|x| chi_bar(&m.params, x).unwrap().chi, rho), 1.0));
        prop_assert!(close(cb.d2, central(|x| chi_bar(&m.params, x).unwrap().d1, rho), 1.0));
    }

    /// Chain rule: `dG/d(grad chi) = F_r / chi'` at `grad chi = chi' grad rho`.
    #[test]
    fn gradient_derivative_chain_rule(rho in 1.02f64..1.98, theta in 0.2f64..3.0, r0 in -2.0f64..2.0, r1 in -2.0f64..2.0) {
        let m = mat();
        let h = helmholtz_reduced_eval(&m, &HelmholtzPoint { rho, theta, r: [r0, r1] }).unwrap();
        let d1 = h.chi.d1;
        let g = gibbs_eval(&m, &GibbsPoint { p: 0.0, theta, chi: h.chi.chi, g: [d1 * r0, d1 * r1] }).unwrap();
        for a in 0..2 {
            prop_assert!((g.g_grad[a] - h.f_r[a] / d1).abs() <= 1e-12 * g.g_grad[a].abs().max(1e-300));
        }
    }

    /// `(1/tau*) W_chi = -rho^2 chi' W_chi`.
    #[test]
    fn slaved_chemical_identity(rho in 1.02f64..1.98, theta in 0.2f64..3.0) {
        let m = mat();
        let h = helmholtz_reduced_eval(&m, &HelmholtzPoint { rho, theta, r: [0.0; 2] }).unwrap();
        let lhs = h.w_chi / m.tau_star();
        let rhs = -rho * rho * h.chi.d1 * h.w_chi;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1e-300));
    }

    #[test]
    fn recover_round_trip(
        amp in 0.0f64..0.3, u0 in -1.0f64..1.0, t0 in 0.3f64..2.0, phase in 0.0f64..6.0,
    ) {
        let m = mat();
        let grid = GridSpec::new(1, 16, 1.0).unwrap();
        let w = 2.0 * std::f64::consts::PI;
        let rho = ScalarField::from_fn(grid, |x| 1.5 + amp * (w * x[0] + phase).sin());
        let u = VectorField::from_fn(grid, |x| [u0 * (w * x[0]).cos(), 0.0]);
        let theta = ScalarField::from_fn(grid, |x| t0 * (1.0 + 0.2 * (w * x[0]).sin()));
        let gr = grad(&rho);
        let n = grid.cells();
        let energy: Vec<f64> = (0..n)
            .map(|i| {
                let r = rho.get(i);
                let cb = chi_bar(&m.params, r).unwrap();
                let q = cb.d1 * cb.d1 * gr.at(i)[0].powi(2);
                r * (m.energy.internal_energy(theta.get(i), cb.chi, q) + 0.5 * u.at(i)[0].powi(2))
            })
            .collect();
        let energy = ScalarField::new(grid, energy).unwrap();
        let momentum = u.scale_by(&rho);
        let (u_back, t_back) = recover_state(&m, &rho, &momentum, &energy, &gr).unwrap();
        prop_assert!((&u_back - &u).max_abs() <= 1e-12);
        prop_assert!((&t_back - &theta).max_abs() <= 1e-12 * t0);
    }
}

#[test]
fn recover_rejects_non_positive_density() {
    let m = mat();
    let grid = GridSpec::new(1, 8, 1.0).unwrap();
    let rho = ScalarField::from_fn(grid, |x| if x[0] > 0.5 { -1.0 } else { 1.5 });
    let e = ScalarField::constant(grid, 1.0);
    let err = recover_state(&m, &rho, &VectorField::zeros(grid), &e, &grad(&rho)).unwrap_err();
    assert!(matches!(err, crate::Error::Blowup { .. }));
}

#[test]
fn recover_rejects_negative_temperature() {
    let m = mat();
    let grid = GridSpec::new(1, 8, 1.0).unwrap();
    let rho = ScalarField::constant(grid, 1.5);
    let e = ScalarField::constant(grid, -1.0);
    let err = recover_state(&m, &rho, &VectorField::zeros(grid), &e, &grad(&rho)).unwrap_err();
    assert!(matches!(err, crate::Error::Blowup { cell: 0, .. }));
}

#[test]
fn general_recovery_returns_eos_pressure() {
    let m = mat();
    let grid = GridSpec::new(1, 8, 1.0).unwrap();
    let rho = ScalarField::constant(grid, 1.8);
    let chi = 0.2;
    let p = (m.params.mixture_volume(chi) - 1.0 / 1.8) / m.params.delta;
    let e = 1.8 * (m.energy.internal_energy(1.0, chi, 0.0) + 0.5 * m.params.delta * p * p);
    let g = recover_state_general(
        &m,
        &rho,
        &VectorField::zeros(grid),
        &ScalarField::constant(grid, e),
        &ScalarField::constant(grid, 1.8 * chi),
        grad,
    )
    .unwrap();
    assert!((g.theta.get(3) - 1.0).abs() < 1e-12);
    assert!((g.pressure.get(0) - p).abs() < 1e-12 * p.abs());
}
