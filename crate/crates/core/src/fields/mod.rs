//! Periodic structured grids, fields, finite-difference operators and the
//! zero-mean elliptic solver.

mod elliptic;
mod field;
mod grid;
mod io;
mod ops;

pub use elliptic::{solve_elliptic, solve_lambda_gamma, EllipticSolution, SolverOptions};
pub use field::{Field, ScalarField, TensorField, VectorField};
pub use grid::{GridSpec, MIN_CELLS};
pub use io::{snapshot_csv, write_atomic};
pub use ops::{
    advect, backward, differentiate, div, div_tensor, elliptic, face_div, face_grad, forward, grad, integrate_domain,
    jacobian, laplacian, partial, sym_grad, Coefficient, DiffKind,
};
