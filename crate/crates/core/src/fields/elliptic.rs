//! Periodic solver for `-div(gamma grad phi) = rhs` in the zero-mean gauge.
//!
//! Constant `gamma` is inverted exactly in Fourier space using the symbol of
//! the compact Laplacian. A variable `gamma` goes through conjugate gradients
//! on the zero-mean subspace, preconditioned by the constant solve at the
//! mean coefficient.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::field::{ScalarField, VectorField};
use super::grid::GridSpec;
use super::ops::{div, elliptic, Coefficient};
use crate::error::{usage, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative infinity-norm residual target.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 2000 }
    }
}

#[derive(Debug, Clone)]
pub struct EllipticSolution {
    pub phi: ScalarField,
    /// `||-div(gamma grad phi) - rhs||_inf / ||rhs||_inf`.
    pub relative_residual: f64,
    pub iterations: usize,
}

/// `Lambda_gamma(div u)`: the zero-mean solution of `-div(gamma grad phi) = div u`.
pub fn solve_lambda_gamma(u: &VectorField, gamma: &Coefficient) -> Result<ScalarField> {
    Ok(solve_elliptic(&div(u), gamma, &SolverOptions::default())?.phi)
}

pub fn solve_elliptic(rhs: &ScalarField, gamma: &Coefficient, opts: &SolverOptions) -> Result<EllipticSolution> {
    let grid = *rhs.grid();
    if !(gamma.min() > 0.0) {
        return Err(usage(format!("elliptic coefficient must be positive, min is {}", gamma.min())));
    }
    if let Coefficient::Field(f) = gamma {
        if *f.grid() != grid {
            return Err(usage("coefficient and right-hand side live on different grids"));
        }
    }
    // periodic solvability: remove the (round-off) mean of the source
    let mean = rhs.mean();
    let b = rhs.map(|v| v - mean);
    let b_norm = b.max_abs();
    if b_norm == 0.0 {
        return Ok(EllipticSolution { phi: ScalarField::zeros(grid), relative_residual: 0.0, iterations: 0 });
    }
    let (phi, iterations) = match gamma {
        Coefficient::Constant(k) => (spectral_solve(&b, *k), 0),
        Coefficient::Field(_) => pcg(&b, gamma, opts)?,
    };
    let residual = (&(-&elliptic(gamma, &phi)) - &b).max_abs() / b_norm;
    if residual > opts.tol {
        return Err(Error::Numeric {
            message: format!("elliptic solve stalled after {iterations} iterations"),
            residual,
        });
    }
    Ok(EllipticSolution { phi, relative_residual: residual, iterations })
}

fn pcg(b: &ScalarField, gamma: &Coefficient, opts: &SolverOptions) -> Result<(ScalarField, usize)> {
    let grid = *b.grid();
    let apply = |x: &ScalarField| -&elliptic(gamma, x);
    let precond_k = gamma.mean();
    let precond = |r: &ScalarField| spectral_solve(r, precond_k);
    let dot = |a: &ScalarField, c: &ScalarField| -> f64 { a.values().iter().zip(c.values()).map(|(x, y)| x * y).sum() };

    let b_norm = b.max_abs();
    let mut x = ScalarField::zeros(grid);
    let mut r = b.clone();
    let mut z = precond(&r);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut res = 1.0;
    for it in 1..=opts.max_iter {
        let ap = apply(&p);
        let alpha = rz / dot(&p, &ap);
        x = x.zip_map(&p, |xi, pi| xi + alpha * pi);
        r = r.zip_map(&ap, |ri, ai| ri - alpha * ai);
        res = r.max_abs() / b_norm;
        if res <= 0.1 * opts.tol {
            let m = x.mean();
            return Ok((x.map(|v| v - m), it));
        }
        z = precond(&r);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        p = z.zip_map(&p, |zi, pi| zi + beta * pi);
    }
    Err(Error::Numeric {
        message: format!("conjugate gradients did not converge in {} iterations", opts.max_iter),
        residual: res,
    })
}

/// Exact inverse of `-k * laplacian` on the zero-mean subspace.
pub(crate) fn spectral_solve(b: &ScalarField, k: f64) -> ScalarField {
    let grid = *b.grid();
    let n = grid.n();
    let h = grid.h();
    let mut data: Vec<Complex64> = b.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_nd(&mut data, &grid, false);

    let axis_symbol: Vec<f64> = (0..n)
        .map(|m| {
            let s = (std::f64::consts::PI * m as f64 / n as f64).sin();
            4.0 * s * s / (h * h)
        })
        .collect();
    for (idx, c) in data.iter_mut().enumerate() {
        let [i, j] = grid.multi_index(idx);
        let mut symbol = axis_symbol[i];
        if grid.dim() == 2 {
            symbol += axis_symbol[j];
        }
        *c = if idx == 0 { Complex64::new(0.0, 0.0) } else { *c / (k * symbol) };
    }

    fft_nd(&mut data, &grid, true);
    let scale = 1.0 / grid.cells() as f64;
    let values = data.iter().map(|c| c.re * scale).collect();
    ScalarField::from_vec_unchecked(grid, values)
}

/// Unnormalised forward or inverse DFT over every axis of the grid.
fn fft_nd(data: &mut [Complex64], grid: &GridSpec, inverse: bool) {
    let n = grid.n();
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    if grid.dim() == 1 {
        fft.process(data);
        return;
    }
    // contiguous axis
    for row in data.chunks_mut(n) {
        fft.process(row);
    }
    // strided axis
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for iy in 0..n {
        for ix in 0..n {
            column[ix] = data[ix * n + iy];
        }
        fft.process(&mut column);
        for ix in 0..n {
            data[ix * n + iy] = column[ix];
        }
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn line(n: usize) -> GridSpec {
        GridSpec::new(1, n, 2.0 * PI).unwrap()
    }

    #[test]
    fn constant_velocity_gives_zero_potential() {
        let g = GridSpec::new(2, 16, 1.0).unwrap();
        let u = VectorField::constant(g, &[0.3, -1.2]);
        let phi = solve_lambda_gamma(&u, &Coefficient::Constant(0.5)).unwrap();
        assert_eq!(phi.max_abs(), 0.0);
    }

    #[test]
    fn sine_velocity_gives_cosine_potential() {
        for n in [32, 64, 128] {
            let g = line(n);
            let u = VectorField::from_fn(g, |x| [x[0].sin(), 0.0]);
            let phi = solve_lambda_gamma(&u, &Coefficient::Constant(1.0)).unwrap();
            let exact = ScalarField::from_fn(g, |x| x[0].cos());
            let err = (&phi - &exact).max_abs();
            assert!(err < 0.2 * g.h() * g.h(), "n={n} err={err}");
        }
    }

    #[test]
    fn doubling_gamma_halves_phi() {
        let g = line(64);
        let u = VectorField::from_fn(g, |x| [(2.0 * x[0]).sin() + 0.3 * x[0].cos(), 0.0]);
        let a = solve_lambda_gamma(&u, &Coefficient::Constant(0.2)).unwrap();
        let b = solve_lambda_gamma(&u, &Coefficient::Constant(0.4)).unwrap();
        assert!((&a.scale(0.5) - &b).max_abs() < 1e-14);
    }

    #[test]
    fn iterative_path_matches_spectral_path_for_constant_gamma() {
        let g = GridSpec::new(2, 32, 2.0 * PI).unwrap();
        let u = VectorField::from_fn(g, |x| [x[0].sin() * x[1].cos(), (2.0 * x[1]).sin()]);
        let spectral = solve_lambda_gamma(&u, &Coefficient::Constant(0.7)).unwrap();
        let cg =
            solve_elliptic(&div(&u), &Coefficient::Field(ScalarField::constant(g, 0.7)), &SolverOptions::default())
                .unwrap();
        assert!((&cg.phi - &spectral).max_abs() < 1e-9 * spectral.max_abs());
    }

    #[test]
    fn variable_gamma_meets_residual_and_gauge() {
        let g = GridSpec::new(2, 32, 2.0 * PI).unwrap();
        let gamma = ScalarField::from_fn(g, |x| 1.0 + 0.5 * x[0].sin() * x[1].cos());
        let u = VectorField::from_fn(g, |x| [x[1].sin(), (x[0] + x[1]).cos()]);
        let sol = solve_elliptic(&div(&u), &Coefficient::Field(gamma.clone()), &SolverOptions::default()).unwrap();
        assert!(sol.relative_residual <= 1e-10);
        assert!(sol.phi.mean().abs() < 1e-14);
        assert!(sol.iterations > 0);
    }

    #[test]
    fn stalled_solver_reports_residual() {
        let g = line(64);
        let gamma = ScalarField::from_fn(g, |x| 1.0 + 0.9 * x[0].sin());
        let rhs = ScalarField::from_fn(g, |x| (3.0 * x[0]).cos());
        let err =
            solve_elliptic(&rhs, &Coefficient::Field(gamma), &SolverOptions { tol: 1e-14, max_iter: 2 }).unwrap_err();
        match err {
            Error::Numeric { residual, .. } => assert!(residual > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_positive_gamma() {
        let g = line(16);
        assert!(solve_lambda_gamma(&VectorField::zeros(g), &Coefficient::Constant(0.0)).is_err());
    }
}
