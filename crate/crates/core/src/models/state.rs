use crate::constitutive::FluidParams;
use crate::error::{domain, usage, Result};
use crate::fields::{GridSpec, ScalarField, VectorField};

/// The five systems the crate assembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Navier-Stokes-Korteweg with interstitial work.
    Nsk,
    /// Allen-Cahn phase field with density-slaved concentration.
    NsacReduced,
    /// Cahn-Hilliard phase field with density-slaved concentration.
    NschReduced,
    /// Allen-Cahn phase field with independent concentration and the delta-EOS.
    NsacGeneral,
    /// Cahn-Hilliard phase field with independent concentration and the delta-EOS.
    NschGeneral,
}

/// Phase-change law closing the concentration balance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseLaw {
    AllenCahn,
    CahnHilliard,
}

/// Which set of constitutive quantities builds the stress of a reduced model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Route {
    /// `-p_bar I + K + S_mod` from the density-based Helmholtz energy.
    #[default]
    Korteweg,
    /// `-p I + C + S` from the Gibbs energy, pressure from the chemical potential.
    Gibbs,
}

impl Route {
    pub const ALL: [Route; 2] = [Route::Korteweg, Route::Gibbs];

    pub fn name(&self) -> &'static str {
        match self {
            Route::Korteweg => "korteweg",
            Route::Gibbs => "gibbs",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::Nsk,
        ModelKind::NsacReduced,
        ModelKind::NschReduced,
        ModelKind::NsacGeneral,
        ModelKind::NschGeneral,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Nsk => "nsk",
            ModelKind::NsacReduced => "nsac_reduced",
            ModelKind::NschReduced => "nsch_reduced",
            ModelKind::NsacGeneral => "nsac_general",
            ModelKind::NschGeneral => "nsch_general",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Independent concentration field with the delta-EOS.
    pub fn is_general(&self) -> bool {
        matches!(self, ModelKind::NsacGeneral | ModelKind::NschGeneral)
    }

    pub fn is_reduced(&self) -> bool {
        matches!(self, ModelKind::NsacReduced | ModelKind::NschReduced)
    }

    pub fn phase_law(&self) -> Option<PhaseLaw> {
        match self {
            ModelKind::Nsk => None,
            ModelKind::NsacReduced | ModelKind::NsacGeneral => Some(PhaseLaw::AllenCahn),
            ModelKind::NschReduced | ModelKind::NschGeneral => Some(PhaseLaw::CahnHilliard),
        }
    }

    pub fn reduced(law: PhaseLaw) -> Self {
        match law {
            PhaseLaw::AllenCahn => ModelKind::NsacReduced,
            PhaseLaw::CahnHilliard => ModelKind::NschReduced,
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Primitive fields. `chi` is present only for the general phase-field models;
/// everywhere else the concentration is `chi(rho)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimState {
    pub rho: ScalarField,
    pub u: VectorField,
    pub theta: ScalarField,
    pub chi: Option<ScalarField>,
}

impl PrimState {
    /// Checks grid agreement and positivity of density and temperature.
    pub fn new(rho: ScalarField, u: VectorField, theta: ScalarField, chi: Option<ScalarField>) -> Result<Self> {
        let g = *rho.grid();
        if *u.grid() != g || *theta.grid() != g || chi.as_ref().is_some_and(|c| *c.grid() != g) {
            return Err(usage("state fields live on different grids"));
        }
        if rho.min() <= 0.0 {
            return Err(domain(format!("density must be positive, min is {}", rho.min())));
        }
        if theta.min() <= 0.0 {
            return Err(domain(format!("temperature must be positive, min is {}", theta.min())));
        }
        Ok(Self { rho, u, theta, chi })
    }

    /// Constant state at rest.
    pub fn uniform(grid: GridSpec, rho: f64, theta: f64, chi: Option<f64>) -> Result<Self> {
        Self::new(
            ScalarField::constant(grid, rho),
            VectorField::zeros(grid),
            ScalarField::constant(grid, theta),
            chi.map(|c| ScalarField::constant(grid, c)),
        )
    }

    pub fn grid(&self) -> &GridSpec {
        self.rho.grid()
    }

    /// Rejects a state whose shape does not fit `kind`.
    pub fn check_for(&self, kind: ModelKind, params: &FluidParams) -> Result<()> {
        match (kind.is_general(), self.chi.is_some()) {
            (true, false) => return Err(usage(format!("{kind} needs a concentration field"))),
            (false, true) => return Err(usage(format!("{kind} derives the concentration from density; drop chi"))),
            _ => {}
        }
        if kind.is_general() && !(params.delta > 0.0) {
            return Err(domain(format!("{kind} needs delta > 0")));
        }
        Ok(())
    }

    /// Adds a constant to the velocity.
    pub fn shifted(&self, u0: &[f64]) -> Self {
        let u = VectorField::from_comps_unchecked(
            *self.grid(),
            self.u.comps().iter().zip(u0).map(|(c, &s)| c.map(|v| v + s)).collect(),
        );
        Self { u, ..self.clone() }
    }
}

/// Conserved variables `(rho, rho u, total energy, rho chi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Conserved {
    pub rho: ScalarField,
    pub momentum: VectorField,
    pub energy: ScalarField,
    pub rho_chi: Option<ScalarField>,
}

impl Conserved {
    /// `self + c * other`, componentwise.
    pub fn axpy(&self, c: f64, other: &Conserved) -> Conserved {
        let f = |a: &ScalarField, b: &ScalarField| a.zip_map(b, |x, y| x + c * y);
        Conserved {
            rho: f(&self.rho, &other.rho),
            momentum: VectorField::from_comps_unchecked(
                *self.rho.grid(),
                self.momentum.comps().iter().zip(other.momentum.comps()).map(|(a, b)| f(a, b)).collect(),
            ),
            energy: f(&self.energy, &other.energy),
            rho_chi: match (&self.rho_chi, &other.rho_chi) {
                (Some(a), Some(b)) => Some(f(a, b)),
                _ => None,
            },
        }
    }
}
