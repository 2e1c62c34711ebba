//! Scenario description and initial-state presets.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constitutive::{chi_bar, Material};
use crate::error::{usage, Result};
use crate::fields::{GridSpec, ScalarField, VectorField};
use crate::models::{ModelKind, PrimState, Route};
use crate::reduction::{Identity, Manufactured};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Preset {
    #[default]
    Uniform,
    /// `rho = rho0 + amplitude tanh(cos(kx) / width)`.
    SmoothInterface,
    /// The manufactured family (dynamic variant amplitudes).
    Manufactured,
    /// Seeded random Fourier modes with `1/m^2` decay.
    RandomSmooth,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Uniform, Preset::SmoothInterface, Preset::Manufactured, Preset::RandomSmooth];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Uniform => "uniform",
            Preset::SmoothInterface => "smooth_interface",
            Preset::Manufactured => "manufactured",
            Preset::RandomSmooth => "random_smooth",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Amplitudes shared by the presets. General models start from
/// `chi = chi(rho) + chi_amplitude * shape`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetParams {
    pub rho0: f64,
    pub rho_amplitude: f64,
    pub velocity: f64,
    pub theta0: f64,
    pub theta_amplitude: f64,
    pub chi_amplitude: f64,
    pub width: f64,
    pub mode: f64,
    pub seed: u64,
}

impl Default for PresetParams {
    fn default() -> Self {
        let m = Manufactured::dynamic();
        Self {
            rho0: m.rho0,
            rho_amplitude: m.alpha,
            velocity: m.u0,
            theta0: m.theta0,
            theta_amplitude: m.alpha_theta,
            chi_amplitude: m.chi_amp,
            width: 0.3,
            mode: 1.0,
            seed: 7,
        }
    }
}

/// A one-dimensional initial-value problem.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub kind: ModelKind,
    pub route: Route,
    pub material: Material,
    pub grid: GridSpec,
    pub preset: Preset,
    pub preset_params: PresetParams,
    pub end_time: f64,
    pub cfl: f64,
    /// Steps between diagnostics rows and snapshots.
    pub output_every: usize,
    /// Overrides the stability-limited step when set.
    pub fixed_dt: Option<f64>,
    /// Identities evaluated on every snapshot.
    pub residuals: Vec<Identity>,
}

pub const DEFAULT_CFL: f64 = 0.4;

impl Scenario {
    pub fn new(kind: ModelKind, material: Material, grid: GridSpec, preset: Preset) -> Self {
        Self {
            kind,
            route: Route::Korteweg,
            material,
            grid,
            preset,
            preset_params: PresetParams::default(),
            end_time: 1.0,
            cfl: DEFAULT_CFL,
            output_every: 10,
            fixed_dt: None,
            residuals: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.dim() != 1 {
            return Err(usage("time integration is one-dimensional (dim = 1)"));
        }
        if !(self.end_time >= 0.0) || !self.end_time.is_finite() {
            return Err(usage(format!("end_time must be finite and non-negative, got {}", self.end_time)));
        }
        if !(self.cfl > 0.0) {
            return Err(usage(format!("cfl must be positive, got {}", self.cfl)));
        }
        if self.output_every == 0 {
            return Err(usage("output_every must be at least 1"));
        }
        if self.fixed_dt.is_some_and(|dt| !(dt > 0.0)) {
            return Err(usage("dt must be positive"));
        }
        for id in &self.residuals {
            let fits = match id {
                Identity::Entropy(k, _) => *k == self.kind,
                _ => !self.kind.is_general(),
            };
            if !fits {
                return Err(usage(format!("identity {id} does not apply to model {}", self.kind)));
            }
        }
        Ok(())
    }

    /// Samples the preset; the result is admissible for `kind` or an error.
    pub fn initial_state(&self) -> Result<PrimState> {
        let g = self.grid;
        let pp = &self.preset_params;
        let prm = &self.material.params;
        let k = 2.0 * PI * pp.mode / g.length();
        let x_of = |x: [f64; 2]| x[0];
        let (rho, u, theta, shape): (ScalarField, VectorField, ScalarField, ScalarField) = match self.preset {
            Preset::Uniform => (
                ScalarField::constant(g, pp.rho0),
                VectorField::zeros(g),
                ScalarField::constant(g, pp.theta0),
                ScalarField::zeros(g),
            ),
            Preset::SmoothInterface => {
                let profile = |x: [f64; 2]| ((k * x_of(x)).cos() / pp.width).tanh();
                (
                    ScalarField::from_fn(g, |x| pp.rho0 + pp.rho_amplitude * profile(x)),
                    VectorField::zeros(g),
                    ScalarField::constant(g, pp.theta0),
                    ScalarField::from_fn(g, profile),
                )
            }
            Preset::Manufactured => {
                let m = Manufactured {
                    rho0: pp.rho0,
                    alpha: pp.rho_amplitude,
                    u0: pp.velocity,
                    theta0: pp.theta0,
                    alpha_theta: pp.theta_amplitude,
                    chi_amp: pp.chi_amplitude,
                    mode: pp.mode,
                };
                (
                    ScalarField::from_fn(g, |x| m.rho_at(&g, x)),
                    VectorField::from_fn(g, |x| m.u_at(&g, x)),
                    ScalarField::from_fn(g, |x| m.theta_at(&g, x)),
                    ScalarField::from_fn(g, |x| (k * x_of(x)).cos()),
                )
            }
            Preset::RandomSmooth => {
                let mut rng = ChaCha8Rng::seed_from_u64(pp.seed);
                let mut series = || {
                    let c: Vec<(f64, f64)> = (1..=4)
                        .map(|m| {
                            let w = 1.0 / (m * m) as f64;
                            (w * rng.gen_range(-1.0..1.0), w * rng.gen_range(-1.0..1.0))
                        })
                        .collect();
                    // normalised so that the amplitude bounds the sup norm
                    let norm: f64 = c.iter().map(|(a, b)| a.abs() + b.abs()).sum();
                    move |x: [f64; 2]| {
                        c.iter()
                            .enumerate()
                            .map(|(i, (a, b))| {
                                let arg = (i + 1) as f64 * k * x[0];
                                a * arg.cos() + b * arg.sin()
                            })
                            .sum::<f64>()
                            / norm
                    }
                };
                let (sr, su, st, sc) = (series(), series(), series(), series());
                (
                    ScalarField::from_fn(g, |x| pp.rho0 * (1.0 + pp.rho_amplitude * sr(x))),
                    VectorField::from_fn(g, |x| [pp.velocity * su(x), 0.0]),
                    ScalarField::from_fn(g, |x| pp.theta0 * (1.0 + pp.theta_amplitude * st(x))),
                    ScalarField::from_fn(g, sc),
                )
            }
        };
        let chi = if self.kind.is_general() {
            let values = (0..g.cells())
                .map(|i| Ok(chi_bar(prm, rho.get(i))?.chi + pp.chi_amplitude * shape.get(i)))
                .collect::<Result<Vec<_>>>()?;
            Some(ScalarField::new(g, values)?)
        } else {
            None
        };
        let state = PrimState::new(rho, u, theta, chi)?;
        state.check_for(self.kind, prm)?;
        Ok(state)
    }
}

/// Draws a random smooth state, for property tests and benchmarks.
pub fn random_smooth_state(kind: ModelKind, material: &Material, grid: GridSpec, seed: u64) -> Result<PrimState> {
    let mut sc = Scenario::new(kind, material.clone(), grid, Preset::RandomSmooth);
    sc.preset_params.seed = seed;
    sc.preset_params.rho_amplitude = 0.05;
    sc.preset_params.theta_amplitude = 0.2;
    sc.preset_params.velocity = 0.2;
    sc.initial_state()
}
