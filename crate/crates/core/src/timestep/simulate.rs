//! Scenario integration with diagnostics and per-snapshot identity residuals.

use std::fmt::Write as _;

use super::scenario::Scenario;
use super::stepper::{rk4, stable_dt, stage, Stage};
use crate::error::{Error, Result};
use crate::fields::integrate_domain;
use crate::models::{to_conserved, Conserved, PrimState};
use crate::reduction::Mutation;

/// Domain totals and extrema at one output time.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub t: f64,
    pub step: usize,
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
    /// `int rho s dx`.
    pub entropy: f64,
    /// `int_0^t int sigma dx dt`.
    pub sigma_integral: f64,
    pub min_theta: f64,
    pub min_sigma: f64,
    /// Relative L-infinity residual of each requested identity.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub state: PrimState,
}

/// Why and where a run stopped early.
#[derive(Debug, Clone, PartialEq)]
pub struct Abort {
    pub step: usize,
    pub t: f64,
    pub error: Error,
    /// Last admissible state.
    pub state: PrimState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub residual_names: Vec<String>,
    pub snapshots: Vec<Snapshot>,
    pub diagnostics: Vec<Diagnostics>,
    pub steps: usize,
    pub abort: Option<Abort>,
}

impl Trajectory {
    pub fn final_time(&self) -> f64 {
        self.diagnostics.last().map_or(0.0, |d| d.t)
    }

    pub fn final_state(&self) -> Option<&PrimState> {
        self.snapshots.last().map(|s| &s.state)
    }

    pub fn csv_header(&self) -> String {
        let mut h = String::from("t,mass,momentum,energy,entropy,sigma_integral,min_theta,min_sigma");
        for name in &self.residual_names {
            h.push(',');
            h.push_str(name);
        }
        h
    }

    pub fn diagnostics_csv(&self) -> String {
        let mut out = self.csv_header();
        out.push('\n');
        for d in &self.diagnostics {
            let _ = write!(
                out,
                "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                d.t, d.mass, d.momentum, d.energy, d.entropy, d.sigma_integral, d.min_theta, d.min_sigma
            );
            for r in &d.residuals {
                let _ = write!(out, ",{r:e}");
            }
            out.push('\n');
        }
        out
    }
}

fn diagnostics(
    sc: &Scenario,
    t: f64,
    step: usize,
    cons: &Conserved,
    st: &Stage,
    sigma_integral: f64,
) -> Result<Diagnostics> {
    let state = &st.state;
    let entropy = integrate_domain(&(&state.rho * &st.assembly.aux.local.entropy));
    let residuals = sc
        .residuals
        .iter()
        .map(|id| id.check(&sc.material, state, Mutation::None).map(|r| r.relative()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Diagnostics {
        t,
        step,
        mass: integrate_domain(&cons.rho),
        momentum: integrate_domain(cons.momentum.comp(0)),
        energy: integrate_domain(&cons.energy),
        entropy,
        sigma_integral,
        min_theta: state.theta.min(),
        min_sigma: st.sigma_min,
        residuals,
    })
}

/// Integrates the scenario to its end time. Invalid scenarios are errors;
/// a failure during stepping ends the run with [`Trajectory::abort`] set and
/// the partial trajectory kept.
pub fn simulate(sc: &Scenario) -> Result<Trajectory> {
    sc.validate()?;
    let mat = &sc.material;
    let initial = sc.initial_state()?;
    let mut cons = to_conserved(mat, &initial)?;
    let mut current = stage(mat, sc.kind, sc.route, initial)?;
    let mut traj = Trajectory {
        residual_names: sc.residuals.iter().map(|id| id.name()).collect(),
        snapshots: vec![Snapshot { t: 0.0, state: current.state.clone() }],
        diagnostics: vec![diagnostics(sc, 0.0, 0, &cons, &current, 0.0)?],
        steps: 0,
        abort: None,
    };

    let mut t = 0.0;
    let mut sigma_integral = 0.0;
    let mut step = 0usize;
    let end = sc.end_time;
    while end - t > 1e-12 * end.max(1.0) {
        let outcome = (|| -> Result<_> {
            let dt_stable = match sc.fixed_dt {
                Some(dt) => dt,
                None => stable_dt(mat, sc.kind, &current.state, sc.cfl)?.dt,
            };
            let dt = dt_stable.min(end - t);
            let adv = rk4(mat, sc.kind, sc.route, &cons, &current, dt)?;
            let next = stage(mat, sc.kind, sc.route, adv.state)?;
            Ok((dt, adv.cons, adv.sigma_time_integral, next))
        })();
        match outcome {
            Ok((dt, next_cons, dsig, next)) => {
                t += dt;
                step += 1;
                sigma_integral += dsig;
                cons = next_cons;
                current = next;
                let last = end - t <= 1e-12 * end.max(1.0);
                if step.is_multiple_of(sc.output_every) || last {
                    traj.diagnostics.push(diagnostics(sc, t, step, &cons, &current, sigma_integral)?);
                    traj.snapshots.push(Snapshot { t, state: current.state.clone() });
                }
            }
            Err(error) => {
                traj.abort = Some(Abort { step: step + 1, t, error, state: current.state.clone() });
                break;
            }
        }
    }
    traj.steps = step;
    Ok(traj)
}
