use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use korteweg_core::constitutive::{FluidParams, Material};
use korteweg_core::fields::{solve_elliptic, solve_lambda_gamma, Coefficient, GridSpec, ScalarField, SolverOptions};
use korteweg_core::models::{assemble_fluxes, ModelKind, Route};
use korteweg_core::reduction::Manufactured;
use korteweg_core::timestep::{stable_dt, step, DEFAULT_CFL};

fn material() -> Material {
    Material::new(FluidParams::default()).unwrap()
}

fn assembly(c: &mut Criterion) {
    let m = material();
    let mut group = c.benchmark_group("assemble_fluxes");
    for kind in ModelKind::ALL {
        for (dim, n) in [(1, 256), (2, 64)] {
            let g = GridSpec::new(dim, n, 2.0 * PI).unwrap();
            let st = Manufactured::default().state(&m.params, kind, g).unwrap();
            group.bench_with_input(BenchmarkId::new(kind.name(), format!("{dim}d_n{n}")), &st, |b, st| {
                b.iter(|| assemble_fluxes(&m, kind, black_box(st)).unwrap())
            });
        }
    }
    group.finish();
}

fn lambda_gamma(c: &mut Criterion) {
    let m = material();
    let mut group = c.benchmark_group("lambda_gamma");
    for (dim, n) in [(1, 1024), (2, 64), (2, 128)] {
        let g = GridSpec::new(dim, n, 2.0 * PI).unwrap();
        let st = Manufactured::default().state(&m.params, ModelKind::Nsk, g).unwrap();
        let gamma = Coefficient::Constant(m.params.gamma);
        group.bench_with_input(BenchmarkId::new("spectral", format!("{dim}d_n{n}")), &st.u, |b, u| {
            b.iter(|| solve_lambda_gamma(black_box(u), &gamma).unwrap())
        });
        let varying = Coefficient::Field(ScalarField::from_fn(g, |x| 1.0 + 0.5 * x[0].sin()));
        let rhs = korteweg_core::fields::div(&st.u);
        group.bench_with_input(BenchmarkId::new("pcg", format!("{dim}d_n{n}")), &rhs, |b, f| {
            b.iter(|| solve_elliptic(black_box(f), &varying, &SolverOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn rk4_step(c: &mut Criterion) {
    let m = material();
    let mut group = c.benchmark_group("rk4_step");
    for kind in ModelKind::ALL {
        let g = GridSpec::new(1, 256, 2.0 * PI).unwrap();
        let st = Manufactured::dynamic().state(&m.params, kind, g).unwrap();
        let dt = stable_dt(&m, kind, &st, DEFAULT_CFL).unwrap().dt;
        group.bench_with_input(BenchmarkId::new(kind.name(), "n256"), &st, |b, st| {
            b.iter(|| step(&m, kind, Route::Korteweg, black_box(st), dt).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, assembly, lambda_gamma, rk4_step);
criterion_main!(benches);
