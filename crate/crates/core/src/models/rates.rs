//! Primitive time derivatives implied by a conserved-variable rate.
//!
//! This is the exact linearisation of the discrete state recovery, so
//! `theta_t` is what the simulator would see in the limit of a vanishing step.

use super::local::LocalThermo;
use super::state::{Conserved, PrimState};
use crate::constitutive::{Material, PhaseEnergy};
use crate::fields::{grad, ScalarField, VectorField};

#[derive(Debug, Clone)]
pub struct PrimRates {
    pub rho_t: ScalarField,
    pub u_t: VectorField,
    pub theta_t: ScalarField,
    pub chi_t: ScalarField,
    /// Specific entropy rate `d_t s`.
    pub s_t: ScalarField,
}

pub fn primitive_rates<W: PhaseEnergy>(
    mat: &Material<W>,
    state: &PrimState,
    local: &LocalThermo,
    rate: &Conserved,
) -> PrimRates {
    let prm = &mat.params;
    let rho = &state.rho;
    let grid = *rho.grid();
    let rho_t = rate.rho.clone();
    let u_t = VectorField::from_comps_unchecked(
        grid,
        rate.momentum.comps().iter().zip(state.u.comps()).map(|(mt, u)| &(mt - &(u * &rho_t)) / rho).collect(),
    );
    let e_spec = &(&local.e_int + &state.u.norm_sq().scale(0.5)) * rho;
    // d_t of the specific internal energy
    let mut e_int_t = &(&(&rate.energy - &(&e_spec / rho * &rho_t)) / rho) - &state.u.dot(&u_t);

    let (chi_t, q_t) = match (&state.chi, &local.reduced) {
        (None, Some(red)) => {
            let chi_t = &red.chi_d1 * &rho_t;
            let r2 = red.grad_rho.norm_sq();
            let first = &(&(&red.chi_d1 * &red.chi_d2) * &r2).scale(2.0) * &rho_t;
            let second = &(&red.chi_d1 * &red.chi_d1).scale(2.0) * &red.grad_rho.dot(&grad(&rho_t));
            (chi_t, &first + &second)
        }
        (Some(chi), _) => {
            let rho_chi_t = rate.rho_chi.as_ref().expect("general rate carries rho chi");
            let chi_t = &(rho_chi_t - &(chi * &rho_t)) / rho;
            let q_t = local.grad_chi.dot(&grad(&chi_t)).scale(2.0);
            let p = local.eos_pressure.as_ref().expect("general state");
            let p_t = (&chi_t.scale(prm.tau_star()) + &(&rho_t / &(rho * rho))).scale(1.0 / prm.delta);
            e_int_t = &e_int_t - &(p * &p_t).scale(prm.delta);
            (chi_t, q_t)
        }
        _ => unreachable!("local closure matches the state"),
    };

    let q = local.grad_chi.norm_sq();
    let n = grid.cells();
    let mut theta_t = vec![0.0; n];
    let mut s_t = vec![0.0; n];
    for i in 0..n {
        let th = state.theta.get(i);
        let w = mat.energy.eval(th, local.chi.get(i), q.get(i));
        let e_theta = -th * w.w_theta_theta;
        let e_chi = w.w_chi - th * w.w_theta_chi;
        let e_q = w.w_q - th * w.w_theta_q;
        let tt = (e_int_t.get(i) - e_chi * chi_t.get(i) - e_q * q_t.get(i)) / e_theta;
        theta_t[i] = tt;
        s_t[i] = -(w.w_theta_theta * tt + w.w_theta_chi * chi_t.get(i) + w.w_theta_q * q_t.get(i));
    }
    PrimRates {
        rho_t,
        u_t,
        theta_t: ScalarField::from_vec_unchecked(grid, theta_t),
        chi_t,
        s_t: ScalarField::from_vec_unchecked(grid, s_t),
    }
}
