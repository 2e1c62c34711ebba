use std::f64::consts::PI;

use super::*;
use crate::constitutive::{FluidParams, Material};
use crate::fields::{GridSpec, ScalarField, VectorField};
use crate::models::{ModelKind, PhaseLaw, PrimState};

fn mat() -> Material {
    Material::new(FluidParams::default()).unwrap()
}

fn grids() -> Vec<GridSpec> {
    refinement_grids(1, 64, 3, 2.0 * PI).unwrap()
}

fn slaved(g: GridSpec, rho: impl Fn(f64) -> f64, u: impl Fn(f64) -> f64, theta: impl Fn(f64) -> f64) -> PrimState {
    PrimState::new(
        ScalarField::from_fn(g, |x| rho(x[0])),
        VectorField::from_fn(g, |x| [u(x[0]), 0.0]),
        ScalarField::from_fn(g, |x| theta(x[0])),
        None,
    )
    .unwrap()
}

fn order(reports: &[ResidualReport]) -> Order {
    final_order(reports).unwrap()
}

fn observed(reports: &[ResidualReport]) -> f64 {
    match order(reports) {
        Order::Observed(p) => p,
        Order::Exact => f64::INFINITY,
    }
}

const NON_ENTROPY: [Identity; 8] = [
    Identity::Kinematic,
    Identity::WorkFlux,
    Identity::Pressure(PhaseLaw::AllenCahn),
    Identity::Pressure(PhaseLaw::CahnHilliard),
    Identity::Stress(PhaseLaw::AllenCahn),
    Identity::Stress(PhaseLaw::CahnHilliard),
    Identity::Dissipation(PhaseLaw::AllenCahn),
    Identity::Dissipation(PhaseLaw::CahnHilliard),
];

#[test]
fn every_checker_vanishes_on_uniform_states() {
    let m = mat();
    for dim in [1, 2] {
        let g = GridSpec::new(dim, 8, 1.0).unwrap();
        let st = PrimState::uniform(g, 1.5, 1.3, None).unwrap();
        for id in NON_ENTROPY {
            let r = id.check(&m, &st, Mutation::None).unwrap();
            assert!(r.linf <= 1e-15 * r.scale.max(1.0), "{id}: {}", r.linf);
        }
        for kind in ModelKind::ALL {
            let st = PrimState::uniform(g, 2.0, 1.3, kind.is_general().then_some(0.0)).unwrap();
            for r in entropy_reports(&m, kind, &st, Mutation::None).unwrap() {
                assert_eq!(r.linf, 0.0, "{}", r.identity);
            }
        }
    }
}

#[test]
fn kinematic_identity_converges() {
    let m = mat();
    let run = |mutation| {
        convergence_order(
            |g| Ok(slaved(g, |x| 1.0 + 0.1 * x.sin(), |x| 0.1 * x.cos(), |_| 1.0)),
            |s| check_kinematic(&m, s, mutation),
            &grids(),
        )
        .unwrap()
    };
    assert!(observed(&run(Mutation::None)) >= 1.9);
    assert!(observed(&run(Mutation::DoubleTauStar)).abs() < 0.1);
    assert!((observed(&run(Mutation::BiasedStencil)) - 1.0).abs() < 0.1);
}

#[test]
fn work_flux_identity_is_exact() {
    let m = mat();
    let still = slaved(GridSpec::new(1, 16, 1.0).unwrap(), |x| 1.5 + 0.1 * (6.0 * x).sin(), |_| 0.3, |_| 1.0);
    let r = check_w_equiv(&m, &still, Mutation::None).unwrap();
    assert_eq!(r.terms[0].linf, 0.0);
    assert_eq!(r.terms[1].linf, 0.0);
    let reports = Identity::WorkFlux.study(&m, &Manufactured::default(), &grids(), Mutation::None).unwrap();
    assert_eq!(order(&reports), Order::Exact);
    assert!(reports.iter().all(|r| r.relative() <= 1e-12));
    // dropping rho leaves a relative residual of order |1 - 1/rho|
    let r = Identity::WorkFlux.study(&m, &Manufactured::default(), &grids(), Mutation::DropRho).unwrap();
    assert!(r[2].relative() > 0.25 && r[2].relative() < 0.45, "{}", r[2].relative());
}

#[test]
fn pressure_routes_agree() {
    let m = mat();
    for law in [PhaseLaw::AllenCahn, PhaseLaw::CahnHilliard] {
        let reports = Identity::Pressure(law).study(&m, &Manufactured::default(), &grids(), Mutation::None).unwrap();
        assert!(order(&reports).at_least(1.9));
        let bad =
            Identity::Pressure(law).study(&m, &Manufactured::default(), &grids(), Mutation::DoubleTauStar).unwrap();
        assert!(observed(&bad) <= 0.5);
    }
    // constant velocity: the CH route reduces to the AC route without eps
    let g = GridSpec::new(1, 32, 2.0 * PI).unwrap();
    let st = slaved(g, |x| 1.5 + 0.1 * x.sin(), |_| 0.2, |_| 1.0);
    let r = check_pressure(&m, PhaseLaw::CahnHilliard, &st, Mutation::None).unwrap();
    assert!(r.relative() < 1e-14);
    let no_eps = Material::new(FluidParams { eps: 1e-300, ..FluidParams::default() }).unwrap();
    let ch = crate::models::reduced_pressure(&m, PhaseLaw::CahnHilliard, &st).unwrap();
    let ac = crate::models::reduced_pressure(&no_eps, PhaseLaw::AllenCahn, &st).unwrap();
    assert!((&ch - &ac).max_abs() < 1e-14);
}

#[test]
fn stress_identity_converges_at_second_order() {
    let m = mat();
    for law in [PhaseLaw::AllenCahn, PhaseLaw::CahnHilliard] {
        let reports = convergence_order(
            |g| Ok(slaved(g, |x| 1.0 + 0.1 * x.sin(), |x| 0.05 * (2.0 * x).sin(), |x| 1.0 + 0.01 * x.cos())),
            |s| check_stress(&m, law, s, Mutation::None),
            &grids(),
        )
        .unwrap();
        let p = observed(&reports);
        assert!((1.9..=2.1).contains(&p), "{law:?}: {p}");
        // the only mismatch is the isotropic part
        let last = reports.last().unwrap();
        assert!(last.terms[1].linf < 1e-14 && last.terms[2].linf < 1e-14);

        let biased =
            Identity::Stress(law).study(&m, &Manufactured::default(), &grids(), Mutation::BiasedStencil).unwrap();
        assert!((observed(&biased) - 1.0).abs() < 0.1);
    }
}

#[test]
fn omitting_extra_bulk_viscosity_breaks_the_stress_identity() {
    let m = mat();
    let fam = Manufactured::default();
    let reports = Identity::Stress(PhaseLaw::AllenCahn).study(&m, &fam, &grids(), Mutation::OmitZetaEps).unwrap();
    assert!(observed(&reports) <= 0.5);
    // the residual is at least the omitted term where div u is largest
    let g = grids()[2];
    let st = fam.state(&m.params, ModelKind::Nsk, g).unwrap();
    let omitted = &crate::models::zeta_eps(&m.params, &st.rho) * &crate::fields::div(&st.u);
    assert!(reports[2].linf >= 0.99 * omitted.max_abs());
    let ch = Identity::Stress(PhaseLaw::CahnHilliard).study(&m, &fam, &grids(), Mutation::OmitZetaEps).unwrap();
    assert!(observed(&ch) <= 0.5);
}

#[test]
fn dissipation_identities() {
    let m = mat();
    let fam = Manufactured::default();
    let ac = Identity::Dissipation(PhaseLaw::AllenCahn).study(&m, &fam, &grids(), Mutation::None).unwrap();
    assert!(ac.iter().all(|r| r.relative() <= 1e-12));
    let ch = Identity::Dissipation(PhaseLaw::CahnHilliard).study(&m, &fam, &grids(), Mutation::None).unwrap();
    assert!(order(&ch).at_least(1.9));
    for law in [PhaseLaw::AllenCahn, PhaseLaw::CahnHilliard] {
        let bad = Identity::Dissipation(law).study(&m, &fam, &grids(), Mutation::DoubleTauStar).unwrap();
        assert!(observed(&bad) <= 0.5);
    }
    // divergence-free velocity: nothing to dissipate
    let st = slaved(GridSpec::new(1, 16, 1.0).unwrap(), |x| 1.5 + 0.1 * (6.0 * x).sin(), |_| 0.3, |_| 1.0);
    for law in [PhaseLaw::AllenCahn, PhaseLaw::CahnHilliard] {
        let r = check_dissipation(&m, law, &st, Mutation::None).unwrap();
        assert!(r.terms.iter().all(|t| t.linf < 1e-14), "{law:?}");
    }
}

#[test]
fn entropy_identities_converge_for_every_model() {
    let m = mat();
    let fam = Manufactured::default();
    for kind in ModelKind::ALL {
        for part in EntropyPart::ALL {
            let id = Identity::Entropy(kind, part);
            let reports = id.study(&m, &fam, &grids(), Mutation::None).unwrap();
            assert!(order(&reports).at_least(1.9), "{id}: {}", order(&reports));
            let bad = id.study(&m, &fam, &grids(), Mutation::DropRho).unwrap();
            assert!(observed(&bad) <= 0.5, "{id}");
        }
    }
}

#[test]
fn two_dimensional_stress_identity_converges() {
    let m = mat();
    let grids = refinement_grids(2, 32, 3, 2.0 * PI).unwrap();
    let reports =
        Identity::Stress(PhaseLaw::AllenCahn).study(&m, &Manufactured::default(), &grids, Mutation::None).unwrap();
    assert!(observed(&reports) >= 1.9);
}

#[test]
fn convergence_needs_a_refinement_sequence() {
    let m = mat();
    let fam = Manufactured::default();
    let one = vec![GridSpec::new(1, 64, 1.0).unwrap()];
    assert!(Identity::Kinematic.study(&m, &fam, &one, Mutation::None).is_err());
    let skip = vec![GridSpec::new(1, 64, 1.0).unwrap(), GridSpec::new(1, 256, 1.0).unwrap()];
    assert!(Identity::Kinematic.study(&m, &fam, &skip, Mutation::None).is_err());
    let r = Identity::Kinematic.study(&m, &fam, &grids()[..2], Mutation::None).unwrap();
    assert!(r[0].order.is_none() && r[1].order.is_some());
}

#[test]
fn general_states_are_rejected_by_reduction_checkers() {
    let m = mat();
    let st = PrimState::uniform(GridSpec::new(1, 8, 1.0).unwrap(), 1.5, 1.0, Some(0.3)).unwrap();
    assert!(matches!(check_stress(&m, PhaseLaw::AllenCahn, &st, Mutation::None), Err(crate::Error::Usage(_))));
}

#[test]
fn identity_names_round_trip() {
    for id in Identity::all() {
        assert_eq!(Identity::parse_group(&id.name()).unwrap(), vec![id]);
    }
    assert_eq!(Identity::parse_group("all").unwrap().len(), Identity::all().len());
    assert_eq!(Identity::parse_group("stress").unwrap().len(), 2);
    assert_eq!(Identity::parse_group("entropy/nsk").unwrap().len(), 4);
    assert!(Identity::parse_group("nonsense").is_err());
    for m in Mutation::ALL {
        assert_eq!(Mutation::parse(m.name()), Some(m));
    }
}

#[test]
fn reports_are_finite_and_nonnegative() {
    let m = mat();
    let st = Manufactured::default().state(&m.params, ModelKind::Nsk, grids()[0]).unwrap();
    for id in NON_ENTROPY {
        let r = id.check(&m, &st, Mutation::None).unwrap();
        assert!(r.linf.is_finite() && r.linf >= 0.0 && r.l2 >= 0.0 && r.l2.is_finite());
        assert!(r.terms.iter().all(|t| t.linf >= 0.0));
    }
}
