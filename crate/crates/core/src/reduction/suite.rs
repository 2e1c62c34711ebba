use std::fmt;

use super::checks::{
    check_dissipation, check_kinematic, check_pressure, check_stress, check_w_equiv, entropy_reports, EntropyPart,
    Mutation,
};
use super::convergence::convergence_order;
use super::manufactured::Manufactured;
use super::report::ResidualReport;
use crate::constitutive::{Material, PhaseEnergy};
use crate::error::{usage, Result};
use crate::fields::GridSpec;
use crate::models::{ModelKind, PhaseLaw};

/// Named identity a checker verifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    Kinematic,
    WorkFlux,
    Pressure(PhaseLaw),
    Stress(PhaseLaw),
    Dissipation(PhaseLaw),
    Entropy(ModelKind, EntropyPart),
}

/// How an identity is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Relative L-infinity residual below the algebraic tolerance on every grid.
    Algebraic,
    /// Observed order at least the minimum (or exact).
    Differential,
}

const LAWS: [PhaseLaw; 2] = [PhaseLaw::AllenCahn, PhaseLaw::CahnHilliard];

impl Identity {
    pub fn all() -> Vec<Identity> {
        let mut out = vec![Identity::Kinematic, Identity::WorkFlux];
        out.extend(LAWS.map(Identity::Pressure));
        out.extend(LAWS.map(Identity::Stress));
        out.extend(LAWS.map(Identity::Dissipation));
        for kind in ModelKind::ALL {
            for part in EntropyPart::ALL {
                out.push(Identity::Entropy(kind, part));
            }
        }
        out
    }

    pub fn name(&self) -> String {
        let law = |l: &PhaseLaw| match l {
            PhaseLaw::AllenCahn => "ac",
            PhaseLaw::CahnHilliard => "ch",
        };
        match self {
            Identity::Kinematic => "kinematic".into(),
            Identity::WorkFlux => "work_flux".into(),
            Identity::Pressure(l) => format!("pressure_{}", law(l)),
            Identity::Stress(l) => format!("stress_{}", law(l)),
            Identity::Dissipation(l) => format!("dissipation_{}", law(l)),
            Identity::Entropy(k, p) => format!("entropy_{}/{}", p.name(), k.name()),
        }
    }

    /// Parses a single name, or a group: `all`, `pressure`, `stress`,
    /// `dissipation`, `entropy`, `entropy/<model>`.
    pub fn parse_group(s: &str) -> Result<Vec<Identity>> {
        let all = Self::all();
        let picked: Vec<Identity> = match s {
            "all" => all,
            "pressure" | "stress" | "dissipation" | "entropy" => {
                all.into_iter().filter(|i| i.name().starts_with(s)).collect()
            }
            _ => match s.strip_prefix("entropy/") {
                Some(model) if ModelKind::parse(model).is_some() => {
                    let kind = ModelKind::parse(model).expect("checked");
                    EntropyPart::ALL.into_iter().map(|p| Identity::Entropy(kind, p)).collect()
                }
                _ => all.into_iter().filter(|i| i.name() == s).collect(),
            },
        };
        if picked.is_empty() {
            return Err(usage(format!("unknown identity '{s}'")));
        }
        Ok(picked)
    }

    pub fn criterion(&self) -> Criterion {
        match self {
            Identity::WorkFlux | Identity::Dissipation(PhaseLaw::AllenCahn) => Criterion::Algebraic,
            _ => Criterion::Differential,
        }
    }

    /// Model kind whose state shape the identity consumes.
    pub fn state_kind(&self) -> ModelKind {
        match self {
            Identity::Entropy(k, _) => *k,
            _ => ModelKind::Nsk,
        }
    }

    /// Runs the checker on one state.
    pub fn check<W: PhaseEnergy>(
        &self,
        mat: &Material<W>,
        state: &crate::models::PrimState,
        mutation: Mutation,
    ) -> Result<ResidualReport> {
        match *self {
            Identity::Kinematic => check_kinematic(mat, state, mutation),
            Identity::WorkFlux => check_w_equiv(mat, state, mutation),
            Identity::Pressure(l) => check_pressure(mat, l, state, mutation),
            Identity::Stress(l) => check_stress(mat, l, state, mutation),
            Identity::Dissipation(l) => check_dissipation(mat, l, state, mutation),
            Identity::Entropy(k, p) => {
                let reports = entropy_reports(mat, k, state, mutation)?;
                let idx = EntropyPart::ALL.iter().position(|q| *q == p).expect("listed part");
                Ok(reports[idx].clone())
            }
        }
    }

    /// Refinement study of this identity on the manufactured family.
    pub fn study<W: PhaseEnergy>(
        &self,
        mat: &Material<W>,
        family: &Manufactured,
        grids: &[GridSpec],
        mutation: Mutation,
    ) -> Result<Vec<ResidualReport>> {
        let kind = self.state_kind();
        convergence_order(|g| family.state(&mat.params, kind, g), |s| self.check(mat, s, mutation), grids)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Thresholds for judging a study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub algebraic: f64,
    pub min_order: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { algebraic: 1e-10, min_order: 1.9 }
    }
}

/// Whether a refinement study passes its criterion.
pub fn passes(identity: &Identity, reports: &[ResidualReport], th: &Thresholds) -> bool {
    if reports.iter().any(|r| !r.linf.is_finite()) {
        return false;
    }
    match identity.criterion() {
        Criterion::Algebraic => reports.iter().all(|r| r.relative() <= th.algebraic),
        Criterion::Differential => {
            let orders: Vec<_> = reports.iter().filter_map(|r| r.order).collect();
            !orders.is_empty() && orders.iter().all(|o| o.at_least(th.min_order))
        }
    }
}
