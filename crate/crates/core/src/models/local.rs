//! Pointwise constitutive closures evaluated over a whole state.

use super::state::{ModelKind, PrimState};
use crate::constitutive::{chi_bar, helmholtz_reduced_eval, HelmholtzPoint, Material, PhaseEnergy};
use crate::error::Result;
use crate::fields::{grad, ScalarField, VectorField};

/// Density-based quantities of the reduced Helmholtz energy.
#[derive(Debug, Clone)]
pub struct ReducedClosure {
    pub chi_d1: ScalarField,
    pub chi_d2: ScalarField,
    pub kappa: ScalarField,
    /// `p_bar = rho^2 F_rho`.
    pub pbar: ScalarField,
    pub grad_rho: VectorField,
    /// `F_r = dF/d(grad rho)`.
    pub f_r: VectorField,
    /// `d(rho F)/d(grad rho) = kappa grad rho`.
    pub rho_f_r: VectorField,
}

/// Concentration, its gradient and the Gibbs derivatives at every cell.
///
/// For density-slaved states the concentration gradient is the pointwise
/// chain rule `chi'(rho) grad rho`; for general states it is the discrete
/// gradient of the concentration field.
#[derive(Debug, Clone)]
pub struct LocalThermo {
    pub chi: ScalarField,
    pub grad_chi: VectorField,
    /// `W_chi` (the `tau* p` part of `G_chi` is added where `p` is known).
    pub w_chi: ScalarField,
    /// `dG/d(grad chi) = 2 W_q grad chi`.
    pub g_grad: VectorField,
    /// Specific internal energy.
    pub e_int: ScalarField,
    /// Specific entropy `-W_theta`.
    pub entropy: ScalarField,
    pub reduced: Option<ReducedClosure>,
    /// delta-EOS pressure of the general models.
    pub eos_pressure: Option<ScalarField>,
}

impl LocalThermo {
    pub fn evaluate<W: PhaseEnergy>(mat: &Material<W>, state: &PrimState) -> Result<Self> {
        match &state.chi {
            None => Self::reduced(mat, state),
            Some(chi) => Self::general(mat, state, chi),
        }
    }

    fn reduced<W: PhaseEnergy>(mat: &Material<W>, state: &PrimState) -> Result<Self> {
        let grid = *state.grid();
        let n = grid.cells();
        let d = grid.dim();
        let grad_rho = grad(&state.rho);
        let mut cols: [Vec<f64>; 8] = Default::default();
        let mut vecs: [Vec<Vec<f64>>; 3] = std::array::from_fn(|_| vec![Vec::with_capacity(n); d]);
        for i in 0..n {
            let rho = state.rho.get(i);
            let r = grad_rho.at(i);
            let t = helmholtz_reduced_eval(mat, &HelmholtzPoint { rho, theta: state.theta.get(i), r })?;
            let w_q2 = 2.0
                * mat.energy.eval(state.theta.get(i), t.chi.chi, t.chi.d1 * t.chi.d1 * (r[0] * r[0] + r[1] * r[1])).w_q;
            let row = [t.chi.chi, t.chi.d1, t.chi.d2, t.kappa, t.p, t.w_chi, t.e, t.s];
            for (c, v) in cols.iter_mut().zip(row) {
                c.push(v);
            }
            for a in 0..d {
                let gchi = t.chi.d1 * r[a];
                vecs[0][a].push(gchi);
                vecs[1][a].push(w_q2 * gchi);
                vecs[2][a].push(t.f_r[a]);
            }
        }
        let sf = |v: Vec<f64>| ScalarField::from_vec_unchecked(grid, v);
        let vf = |v: Vec<Vec<f64>>| VectorField::from_comps_unchecked(grid, v.into_iter().map(sf).collect());
        let [chi, d1, d2, kappa, pbar, w_chi, e_int, entropy] = cols.map(sf);
        let [grad_chi, g_grad, f_r] = vecs.map(vf);
        let rho_f_r = grad_rho.scale_by(&kappa);
        Ok(Self {
            chi,
            grad_chi,
            w_chi,
            g_grad,
            e_int,
            entropy,
            reduced: Some(ReducedClosure { chi_d1: d1, chi_d2: d2, kappa, pbar, grad_rho, f_r, rho_f_r }),
            eos_pressure: None,
        })
    }

    fn general<W: PhaseEnergy>(mat: &Material<W>, state: &PrimState, chi: &ScalarField) -> Result<Self> {
        let grid = *state.grid();
        let prm = &mat.params;
        let grad_chi = grad(chi);
        let q = grad_chi.norm_sq();
        let n = grid.cells();
        let (mut w_chi, mut w_q2, mut e_int, mut entropy, mut p) =
            (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        for i in 0..n {
            let c = chi.get(i);
            let th = state.theta.get(i);
            let w = mat.energy.eval(th, c, q.get(i));
            let pi = (prm.mixture_volume(c) - 1.0 / state.rho.get(i)) / prm.delta;
            w_chi[i] = w.w_chi;
            w_q2[i] = 2.0 * w.w_q;
            e_int[i] = 0.5 * prm.delta * pi * pi + w.w - th * w.w_theta;
            entropy[i] = -w.w_theta;
            p[i] = pi;
        }
        let sf = |v: Vec<f64>| ScalarField::from_vec_unchecked(grid, v);
        let g_grad = grad_chi.scale_by(&sf(w_q2));
        Ok(Self {
            chi: chi.clone(),
            grad_chi,
            w_chi: sf(w_chi),
            g_grad,
            e_int: sf(e_int),
            entropy: sf(entropy),
            reduced: None,
            eos_pressure: Some(sf(p)),
        })
    }

    pub(crate) fn reduced_part(&self) -> &ReducedClosure {
        self.reduced.as_ref().expect("density-slaved state")
    }
}

/// Total energy density `rho (e + |u|^2 / 2)`.
pub fn total_energy(state: &PrimState, thermo: &LocalThermo) -> ScalarField {
    let ke = state.u.norm_sq().scale(0.5);
    &state.rho * &(&thermo.e_int + &ke)
}

/// Checks that `kind` fits the state and that `chi(rho)` is evaluable.
pub(crate) fn admissible<W: PhaseEnergy>(mat: &Material<W>, kind: ModelKind, state: &PrimState) -> Result<()> {
    state.check_for(kind, &mat.params)?;
    if state.chi.is_none() {
        chi_bar(&mat.params, state.rho.min())?;
    }
    Ok(())
}
